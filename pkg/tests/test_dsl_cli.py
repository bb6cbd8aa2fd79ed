import io
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from umbral.algebra import format_rational
from umbral.cli import main
from umbral.dsl import format_spec, parse_functional, parse_spec
from umbral.errors import ParseError, ValidationError
from umbral.families import make_family
from umbral.functionals import functional_power, indicator_series, uniform01
from umbral.sheffer import sheffer_egf

from strategies import nonzero_rationals, rationals

F = Fraction
GOLDEN = Path(__file__).parent / "golden"


def spec_text(functional, delta="derivative", nmax=6, extra=""):
    return f"sequence s\ndelta = {delta}\nfunctional = {functional}\nnmax = {nmax}\n{extra}"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


# -- parsing -----------------------------------------------------------------

def test_parse_bernoulli_spec():
    s = parse_spec("# comment\nsequence bern\ndelta = derivative\nfunctional = uniform01\nnmax = 6\n")
    assert s.name == "bern" and s.nmax == 6 and s.truncation == 10
    assert sheffer_egf(s.sheffer_spec(), 6) == sheffer_egf(make_family("bernoulli").spec, 6)


def test_parse_euler_mix():
    L = parse_functional("mix(1/2*eval(0) + 1/2*eval(1))")
    assert L.moments(10) == make_family("euler").spec.functional.moments(10)


def test_parse_third_order_bernoulli():
    L = parse_functional("pow(uniform01, 3)")
    assert indicator_series(L, 10) == indicator_series(functional_power(uniform01(), 3), 10)
    assert indicator_series(L, 10) == indicator_series(uniform01(), 10) ** 3


def test_parse_all_atoms_and_combinators():
    cases = {
        "eval(-2/3)": [1, F(-2, 3)],
        "moments[1, 1/2]": [1, F(1, 2), 0],
        "exp_z(1)": [1, 1, 2, 5],
        "translate(eval(0), 2)": [1, 2, 4],
        "dilate(eval(1), 2)": [1, F(1, 2), F(1, 4)],
        "ramify(eval(1), 2)": [1, 0, 1, 0],
        "dilate_power(ramify(eval(1), 2), 4, 2)": [1, 0, F(1, 4), 0, F(1, 16)],
        "mix(3/2*eval(0) - 1/2*eval(1))": [1, F(-1, 2)],
        "family(kummer, 1, 1)": [1, F(1, 2), F(1, 3)],
        "family(strodt, [1/2, 1/2], [0, 1])": [1, F(1, 2), F(1, 2)],
        "family(bernoulli)": [1, F(1, 2)],
    }
    for text, moments in cases.items():
        assert parse_functional(text).moments(len(moments)) == moments, text


def test_delta_forms():
    s = parse_spec(spec_text("uniform01", "difference h=1/2"))
    assert s.delta.descriptor == "difference h=1/2"
    s = parse_spec(spec_text("uniform01", "difference"))
    assert s.delta.descriptor == "difference h=1"
    s = parse_spec(spec_text("uniform01", "series [1, 2, 0, 3]"))
    assert s.delta.bbar[2] == 1


@pytest.mark.parametrize("text,line,col", [
    (spec_text("eval(1/0)"), 3, 19),
    (spec_text("uniform01") + "colour = red\n", 5, 1),
    (spec_text("unif"), 3, 14),
    (spec_text("mix(1/2 eval(0))"), 3, 22),
    ("delta = derivative\n", 1, 1),
    (spec_text("uniform01").replace("nmax = 6", "nmax = six"), 4, 8),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.column) == (line, col)


@pytest.mark.parametrize("text,needle", [
    (spec_text("moments[0, 1]"), "L_0 = 0"),
    (spec_text("uniform01", "series [0, 1]"), "bhat_1"),
    (spec_text("uniform01", extra="truncation = 6\n"), "truncation"),
    (spec_text("uniform01", "difference h=0"), "nonzero"),
    (spec_text("family(strodt, [1], [0])"), "0 < w_j < 1"),
    (spec_text("dilate_power(uniform01, 2, 2)"), "grid"),
])
def test_validation_errors(text, needle):
    with pytest.raises(ValidationError, match=needle):
        parse_spec(text)


atoms = st.one_of(
    st.just("uniform01"),
    rationals.map(lambda q: f"eval({format_rational(q)})"),
    rationals.map(lambda q: f"exp_z({format_rational(q)})"),
    st.lists(rationals, min_size=1, max_size=3).map(
        lambda qs: "moments[" + ", ".join(format_rational(q) for q in qs) + "]"),
)


def _extend(inner):
    return st.one_of(
        st.tuples(inner, rationals).map(lambda a: f"translate({a[0]}, {format_rational(a[1])})"),
        st.tuples(inner, nonzero_rationals).map(lambda a: f"dilate({a[0]},{format_rational(a[1])})"),
        st.tuples(inner, st.integers(1, 3)).map(lambda a: f"pow( {a[0]} , {a[1]})"),
        st.tuples(inner, st.integers(1, 3)).map(lambda a: f"ramify({a[0]}, {a[1]})"),
        st.lists(st.tuples(rationals, inner), min_size=1, max_size=3).map(
            lambda ts: "mix(" + " + ".join(f"{format_rational(w)}*{e}" for w, e in ts) + ")"),
    )


expressions = st.recursive(atoms, _extend, max_leaves=4)


@given(expressions)
def test_functional_roundtrip(expr):
    L = parse_functional(expr)
    again = parse_functional(L.descriptor)
    assert again.descriptor == L.descriptor
    assert again.moments(6) == L.moments(6)


@given(st.sampled_from(["uniform01", "mix(1/3*eval(0) + 2/3*eval(1))", "pow(eval(1), 2)",
                        "family(apostol_euler, 1/3)", "family(norlund_euler, [1, 2/3])"]),
       st.sampled_from(["derivative", "difference h=2/3", "series [1,-1, 1/2]"]),
       st.integers(0, 8))
def test_spec_roundtrip(functional, delta, nmax):
    text = spec_text(functional, delta, nmax)
    once = format_spec(parse_spec(text))
    assert format_spec(parse_spec(once)) == once


# -- CLI -------------------------------------------------------------------

@pytest.mark.parametrize("family", ["bernoulli", "euler", "hermite"])
def test_table_matches_golden(family, tmp_path):
    out = tmp_path / "t.tsv"
    code, _, _ = run(["table", "--family", family, "--nmax", "8", "--out", str(out)])
    assert code == 0
    assert out.read_bytes() == (GOLDEN / f"{family}.tsv").read_bytes()


def test_table_examples():
    assert run(["table", "--family", "bernoulli", "--nmax", "2"])[1] == "0\t1\n1\t-1/2,1\n2\t1/6,-1,1\n"
    assert run(["table", "--family", "euler", "--nmax", "1"])[1].splitlines()[1] == "1\t-1/2,1"
    rows = run(["table", "--family", "monomial", "--a", "0", "--nmax", "3"])[1].splitlines()
    assert rows == ["0\t1", "1\t0,1", "2\t0,0,1", "3\t0,0,0,1"]


@pytest.mark.parametrize("route", ["egf", "recurrence", "delta_expansion"])
def test_table_routes_identical(route):
    code, out, _ = run(["table", "--family", "apostol_euler", "--beta", "1/3", "--nmax", "8", "--route", route])
    assert code == 0
    assert out == run(["table", "--family", "apostol_euler", "--beta", "1/3", "--nmax", "8"])[1]


def test_table_all_routes_from_spec(tmp_path):
    f = tmp_path / "c.spec"
    f.write_text(spec_text("uniform01", "series [1, 2]", 5))
    code, out, _ = run(["table", "--spec", str(f), "--all-routes"])
    assert code == 0
    assert all(line.endswith("\tagree") for line in out.splitlines())


def test_delta_expansion_route_needs_appell(tmp_path):
    f = tmp_path / "c.spec"
    f.write_text(spec_text("uniform01", "series [1, 2]", 5))
    assert run(["table", "--spec", str(f), "--route", "delta_expansion"])[0] == 2


def test_check_examples():
    code, out, _ = run(["check", "--family", "bernoulli", "--nmax", "12"])
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(["check", "--family", "kummer", "--a", "1/1", "--b", "1/1", "--nmax", "8"])
    assert code == 0 and "equivalent to family(bernoulli)" in out
    code, out, _ = run(["check", "--family", "strodt", "--w", "1/2,1/2", "--x", "0,1", "--nmax", "8"])
    assert code == 0 and "equivalent to family(euler)" in out


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.spec"
    bad.write_text(spec_text("uniform01", "series [0, 2]"))
    assert run(["table", "--spec", str(bad)])[0] == 2
    garbled = tmp_path / "garbled.spec"
    garbled.write_text(spec_text("uniform01 )"))
    code, _, err = run(["check", "--spec", str(garbled)])
    assert code == 2 and "line 3" in err
    assert run(["check", "--family", "strodt", "--w", "1/2,1/2"])[0] == 2
    assert run(["check", "--family", "apostol_euler", "--beta", "0"])[0] == 2
    assert run(["table", "--spec", str(tmp_path / "missing.spec")])[0] == 2
    assert run(["verify", "--target", "nope"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["table", "--family", "nope"])
    assert exc.value.code == 2


def test_verify_examples():
    code, out, err = run(["verify", "--target", "abel_plana", "--tol", "1e-9"])
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("check\tparams\texact")
    assert len(lines) == 1 + 13 * 4 and all(line.split("\t")[6] == "pass" for line in lines[1:])
    assert "max abs error" in err
    assert run(["verify", "--target", "weierstrass", "--tol", "1e-10"])[0] == 0
    assert run(["verify", "--target", "d_hermite", "--d", "2", "--tol", "1e-6"])[0] == 0
    assert run(["verify", "--target", "d_hermite(2)"])[0] == 0


def test_verify_failure_names_worst_offender():
    code, _, err = run(["verify", "--target", "euler_numbers", "--tol", "1e-30"])
    assert code == 1 and "worst offender" in err


@pytest.mark.parametrize("family", ["bernoulli", "euler", "hermite"])
def test_golden_files_agree_with_sympy(family):
    sp = pytest.importorskip("sympy")
    x = sp.Symbol("x")
    fn = {"bernoulli": sp.bernoulli, "euler": sp.euler, "hermite": sp.hermite_prob}[family]
    for line in (GOLDEN / f"{family}.tsv").read_text().splitlines():
        n, row = line.split("\t")
        coeffs = [F(c) for c in row.split(",")]
        expected = sp.Poly(fn(int(n), x), x).all_coeffs()[::-1]
        assert coeffs == [F(int(c.p), int(c.q)) for c in expected]
