"""Command-line front end.

    python -m umbral table  --family bernoulli --nmax 8
    python -m umbral table  --spec bern.spec --all-routes
    python -m umbral check  --family kummer --a 1/1 --b 1/1 --nmax 8
    python -m umbral verify --target d_hermite --d 2 --tol 1e-6

Exit codes: 0 success, 1 check failure, 2 parse or validation error.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from fractions import Fraction

from .algebra import format_rational, parse_rational
from .dsl import SequenceSpec, parse_spec
from .errors import ParseError, UmbralError, ValidationError
from .families import FAMILY_IDS, FAMILY_PARAMS, make_family
from .operators import DeltaOperator
from .sheffer import appell_delta_expansion, sheffer_egf, sheffer_recurrence, verify_characterizations

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

ROUTES = ("egf", "recurrence", "delta_expansion")
INT_PARAMS = {"k", "d", "N", "l", "m"}
LIST_PARAMS = {"omega", "w", "x"}
# families whose positional tests in `check` look for an equivalent catalog entry
CANONICAL = (("bernoulli", {}), ("euler", {}), ("hermite", {}), ("monomial", {"a": Fraction(0)}))


class InputError(Exception):
    pass


def _param_names() -> list:
    names = []
    for params in FAMILY_PARAMS.values():
        for p in params:
            if p not in names:
                names.append(p)
    return names


def _parse_param(fid: str, name: str, raw: str):
    try:
        if name in LIST_PARAMS or (fid == "bernoulli_type" and name == "a"):
            return [parse_rational(v) for v in raw.split(",") if v.strip()]
        v = parse_rational(raw)
    except ValueError as exc:
        raise InputError(f"--{name}: {exc}") from None
    if name in INT_PARAMS:
        if v.denominator != 1:
            raise InputError(f"--{name} must be an integer, got {raw}")
        return int(v)
    return v


def _family_params(args) -> dict:
    fid = args.family
    params = {}
    for name in FAMILY_PARAMS[fid]:
        raw = getattr(args, "p_" + name)
        if raw is None:
            raise InputError(f"family {fid} needs --{name}")
        params[name] = _parse_param(fid, name, raw)
    return params


def _target_spec(args) -> tuple:
    """``(label, ShefferSpec, nmax)`` from ``--spec`` or ``--family``."""
    if bool(args.spec) == bool(args.family):
        raise InputError("give exactly one of --spec or --family")
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.spec}: {exc.strerror}") from None
        seq: SequenceSpec = parse_spec(text)
        nmax = args.nmax if args.nmax is not None else seq.nmax
        truncation = max(seq.truncation, nmax + 1)
        return seq.name, SequenceSpec(seq.name, seq.delta, seq.functional, nmax, truncation).sheffer_spec(), nmax
    nmax = args.nmax if args.nmax is not None else 8
    if nmax < 0:
        raise InputError("--nmax must be nonnegative")
    fam = make_family(args.family, _family_params(args), order=nmax + 4)
    return fam.spec.functional.descriptor, fam.spec, nmax


@contextmanager
def _output(path):
    if path in (None, "-", "stdout"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _row(polys, n) -> str:
    return ",".join(format_rational(c) for c in polys[n].coeffs)


def _routes(spec, nmax: int) -> dict:
    out = {"egf": sheffer_egf(spec, nmax)}
    for x0 in (Fraction(0), Fraction(1)):
        out[f"recurrence x0={x0}"] = sheffer_recurrence(spec, nmax, x0)
    if spec.is_appell:
        order = nmax + 2
        for q in (DeltaOperator.derivative(order), DeltaOperator.difference(1, order)):
            out[f"delta_expansion {q.descriptor}"] = appell_delta_expansion(spec.functional, q, nmax)[1]
    return out


def cmd_table(args) -> int:
    label, spec, nmax = _target_spec(args)
    if args.all_routes:
        routes = _routes(spec, nmax)
        ref = routes["egf"]
        status = EXIT_OK
        with _output(args.out) as fh:
            for n in range(nmax + 1):
                bad = [r for r, polys in routes.items() if polys[n] != ref[n]]
                if bad:
                    status = EXIT_FAIL
                    print(f"route disagreement at n={n}: {', '.join(bad)}", file=sys.stderr)
                fh.write(f"{n}\t{_row(ref, n)}\t{'agree' if not bad else 'DISAGREE'}\n")
        return status
    route = args.route
    if route == "egf":
        polys = sheffer_egf(spec, nmax)
    elif route == "recurrence":
        polys = sheffer_recurrence(spec, nmax)
    else:
        if not spec.is_appell:
            raise InputError("delta_expansion needs an Appell spec (delta = derivative)")
        polys = appell_delta_expansion(spec.functional, DeltaOperator.difference(1, nmax + 2), nmax)[1]
    with _output(args.out) as fh:
        for n in range(nmax + 1):
            fh.write(f"{n}\t{_row(polys, n)}\n")
    return EXIT_OK


def _equivalents(spec, nmax: int, label: str) -> list:
    if not spec.is_appell:
        return []
    found = []
    L = spec.functional
    count = nmax + 1
    for fid, params in CANONICAL:
        other = make_family(fid, params, order=count + 1).spec.functional
        if other.descriptor != label and L.moments(count) == other.moments(count):
            found.append(other.descriptor)
    return found


def cmd_check(args) -> int:
    label, spec, nmax = _target_spec(args)
    polys = sheffer_egf(spec, nmax)
    report = verify_characterizations(spec, polys, biorth_max=min(nmax, 10))
    with _output(args.out) as fh:
        fh.write(f"# target {label} nmax={nmax}\n")
        counts = {}
        for e in report.entries:
            counts[e.identity] = counts.get(e.identity, 0) + 1
        for identity, ok in report.summary().items():
            fh.write(f"{identity}\t{'pass' if ok else 'FAIL'}\t{counts[identity]}\n")
        for other in _equivalents(spec, nmax, label):
            fh.write(f"# equivalent to {other} (moments agree for n <= {nmax})\n")
    for e in report.failures():
        print(f"{e.identity} n={e.n}: {e.witness}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    from .numcheck import DEFAULT_TOL, VERIFY_HEADER, VERIFY_TARGETS, run_suite

    target = args.target
    d = args.p_d
    if target.endswith(")") and "(" in target:
        target, inner = target[:-1].split("(", 1)
        d = inner
    if target not in VERIFY_TARGETS:
        raise InputError(f"unknown target {target!r}; expected one of {', '.join(VERIFY_TARGETS)}")
    if d is not None:
        try:
            d = int(d)
        except ValueError:
            raise InputError(f"--d must be an integer, got {d}") from None
        if d < 1:
            raise InputError("--d must be >= 1")
    elif target == "d_hermite":
        d = 2
    tol = args.tol if args.tol is not None else DEFAULT_TOL[target]
    rows = run_suite(target, tol, d)
    with _output(args.out) as fh:
        fh.write(VERIFY_HEADER + "\n")
        for r in rows:
            fh.write(r.to_tsv() + "\n")
    worst = max(rows, key=lambda r: r.abs_err)
    failed = [r for r in rows if not r.passed]
    print(f"{target}: {len(rows) - len(failed)}/{len(rows)} within tol {tol:g}; "
          f"max abs error {worst.abs_err:.3e} ({worst.check_id} {worst.params})", file=sys.stderr)
    if failed:
        print(f"worst offender: {worst.check_id} {worst.params} abs error {worst.abs_err:.3e}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="umbral", description="Exact Sheffer/Appell sequences and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def target_args(p):
        p.add_argument("--spec", help="sequence spec file")
        p.add_argument("--family", choices=FAMILY_IDS, help="catalog family id")
        p.add_argument("--nmax", type=int, help="largest degree (default: the spec's nmax, or 8)")
        for name in _param_names():
            p.add_argument(f"--{name}", dest="p_" + name, metavar="VAL",
                           help="family parameter; lists are comma separated")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("table", help="emit the polynomial table as TSV")
    target_args(p)
    p.add_argument("--route", choices=ROUTES, default="egf")
    p.add_argument("--all-routes", action="store_true", help="run every route and add an agreement column")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check", help="run the exact identity suite")
    target_args(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a numeric verification suite")
    p.add_argument("--target", required=True,
                   help="abel_plana, euler_rep, euler_numbers, weierstrass, d_hermite, "
                        "accelerator_moments or accelerator_c2")
    p.add_argument("--d", dest="p_d", help="accelerator index d (d_hermite, accelerator_moments)")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (ValidationError, InputError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
    except UmbralError as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
