"""Sheffer and Appell sequences: three constructions and their identity checks.

Routes
------
* :func:`sheffer_egf` -- coefficients of ``exp(x B(t)) / A(t)``.
* :func:`sheffer_recurrence` -- the left-inverse recursion
  ``s_n = n Q^{-1}_{x0}(s_{n-1}) - n s_0 S(Q^{-1}_{x0}(s_{n-1}))``.
* :func:`appell_delta_expansion` -- ``p_n = sum_k alpha_k/k! Q^k(x^n)`` for
  an arbitrary auxiliary delta operator ``Q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra import Polynomial, Series, format_rational, poly_jet_exp
from .errors import NotInversePair, NotInvertible, OrderTooLow
from .functionals import (
    MomentFunctional,
    functional_apply,
    functional_apply_shifted,
    indicator_series,
)
from .operators import (
    DeltaOperator,
    ShiftInvariantOp,
    basic_sequence,
    delta_left_inverse,
    functional_to_op,
    op_apply,
)


@dataclass(frozen=True)
class ShefferSpec:
    """A delta operator paired with a functional of nonzero mass ``S(1)``."""

    delta: DeltaOperator
    functional: MomentFunctional

    def __post_init__(self):
        if self.functional.exact_grid != 1:
            raise NotInvertible(f"{self.functional.descriptor} is not an exact functional")
        if self.functional.moment(0) == 0:
            raise NotInvertible(f"{self.functional.descriptor} has L(1) = 0")

    @property
    def order(self) -> int:
        return self.delta.order

    @property
    def is_appell(self) -> bool:
        bbar = self.delta.bbar
        return bbar[1] == 1 and all(c == 0 for c in bbar.coeffs[2:])


def _check_order(spec_or_op, nmax: int):
    order = spec_or_op.order
    if order <= nmax:
        raise OrderTooLow(f"working order {order} must exceed nmax = {nmax}")


def sheffer_a_series(spec: ShefferSpec, nmax: int) -> Series:
    """``A(t) = S(exp(x B(t))) = sum S(q_n) t^n / n!``."""
    qs = basic_sequence(spec.delta, nmax)
    return Series.from_egf([functional_apply(spec.functional, q) for q in qs], nmax + 1)


def sheffer_egf(spec: ShefferSpec, nmax: int) -> list:
    """``s_n = n! [t^n] exp(x B(t)) / A(t)`` for ``n <= nmax``."""
    _check_order(spec, nmax)
    jet = poly_jet_exp(spec.delta.b.truncate(nmax + 1))
    c = sheffer_a_series(spec, nmax).recip()
    out = []
    for n in range(nmax + 1):
        acc = Polynomial()
        for k in range(n + 1):
            if c[n - k] != 0:
                acc = acc + jet[k] * c[n - k]
        out.append(acc * factorial(n))
    return out


def sheffer_recurrence(spec: ShefferSpec, nmax: int, x0=0) -> list:
    """Left-inverse recursion anchored at ``x0``.

    The correction term carries the factor ``n * s_0``; with it ``S(s_n) = 0``
    for every ``n >= 1`` whatever the value of ``S(1)``.
    """
    _check_order(spec, nmax)
    S, q = spec.functional, spec.delta
    s0 = 1 / S.moment(0)
    out = [Polynomial([s0])]
    for n in range(1, nmax + 1):
        y = delta_left_inverse(q, out[-1], x0)
        out.append(y * n - n * s0 * functional_apply(S, y))
    return out


def appell_delta_expansion(L: MomentFunctional, q: DeltaOperator, nmax: int):
    """Expand the ``L``-Appell sequence in powers of the delta operator ``q``.

    Returns ``(alphas, polys)`` with ``(C o B)(t) = sum alpha_k t^k / k!``,
    ``C = 1 / L(e^{xt})`` and ``p_n = sum_k alpha_k / k! q^k(x^n)``.
    """
    _check_order(q, nmax)
    if L.moment(0) == 0:
        raise NotInvertible(f"{L.descriptor} has L(1) = 0")
    order = nmax + 1
    c = indicator_series(L, order).recip()
    cb = c.compose(q.b.truncate(order))
    alphas = cb.egf_coeffs()
    qop = ShiftInvariantOp(q.bbar)
    polys = []
    for n in range(nmax + 1):
        term = Polynomial.monomial(n)
        acc = Polynomial()
        for k in range(n + 1):
            if cb[k] != 0:
                acc = acc + term * cb[k]
            term = op_apply(qop, term)
        polys.append(acc)
    return alphas, polys


@dataclass(frozen=True)
class StirlingTable:
    """Connection coefficients ``s_B(n, k)`` and ``S_B(n, k)``, lower triangular."""

    s: tuple
    S: tuple
    nmax: int

    def product(self) -> list:
        """``sum_k s(n, k) S(k, m)``; the identity matrix when the pair is valid."""
        size = self.nmax + 1
        return [[sum((self.s[n][k] * self.S[k][m] for k in range(size)), Fraction(0))
                 for m in range(size)] for n in range(size)]


def _power_table(f: Series, nmax: int) -> tuple:
    rows = [[Fraction(0)] * (nmax + 1) for _ in range(nmax + 1)]
    power = Series.one(nmax + 1)
    f = f.truncate(nmax + 1)
    for k in range(nmax + 1):
        # power == f^k here
        for n in range(k, nmax + 1):
            rows[n][k] = power[n] * factorial(n) / factorial(k)
        power = power * f
    return tuple(tuple(r) for r in rows)


def generalized_stirling(b: Series, bbar: Series, nmax: int) -> StirlingTable:
    """``s_B(n,k) = n! [t^n] B^k / k!`` and ``S_B(n,k) = n! [t^n] Bbar^k / k!``."""
    if min(b.order, bbar.order) <= nmax:
        raise OrderTooLow(f"series order must exceed nmax = {nmax}")
    n = nmax + 1
    bt, bbt = b.truncate(n), bbar.truncate(n)
    if bt[0] != 0 or bbt[0] != 0 or bt[1] == 0 or bbt[1] == 0:
        raise NotInversePair("both series must start at t with nonzero slope")
    ident = Series.t(n)
    if not (bt.compose(bbt) == ident and bbt.compose(bt) == ident):
        raise NotInversePair("series are not compositional inverses")
    return StirlingTable(_power_table(bt, nmax), _power_table(bbt, nmax), nmax)


def classical_stirling(nmax: int) -> StirlingTable:
    """Signed first-kind and second-kind Stirling numbers by their recurrences."""
    s = [[Fraction(0)] * (nmax + 1) for _ in range(nmax + 1)]
    S = [[Fraction(0)] * (nmax + 1) for _ in range(nmax + 1)]
    s[0][0] = S[0][0] = Fraction(1)
    for n in range(nmax):
        for k in range(1, n + 2):
            s[n + 1][k] = s[n][k - 1] - n * s[n][k]
            S[n + 1][k] = S[n][k - 1] + k * S[n][k]
    return StirlingTable(tuple(map(tuple, s)), tuple(map(tuple, S)), nmax)


# ---------------------------------------------------------------------------
# identity checks

@dataclass
class CheckEntry:
    identity: str
    n: int
    passed: bool
    witness: str = ""


@dataclass
class Report:
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]

    def identities(self) -> list:
        seen = []
        for e in self.entries:
            if e.identity not in seen:
                seen.append(e.identity)
        return seen

    def summary(self) -> dict:
        out = {}
        for e in self.entries:
            out[e.identity] = out.get(e.identity, True) and e.passed
        return out

    def to_tsv(self) -> str:
        lines = ["identity\tn\tresult\twitness"]
        for e in self.entries:
            lines.append(f"{e.identity}\t{e.n}\t{'pass' if e.passed else 'fail'}\t{e.witness}")
        return "\n".join(lines) + "\n"


def _poly_witness(lhs: Polynomial, rhs: Polynomial) -> str:
    for k in range(max(len(lhs), len(rhs))):
        if lhs[k] != rhs[k]:
            return f"x^{k}: {format_rational(lhs[k])} != {format_rational(rhs[k])}"
    return ""


def _compare(report: Report, identity: str, n: int, lhs, rhs):
    if isinstance(lhs, Polynomial):
        ok = lhs == rhs
        witness = "" if ok else _poly_witness(lhs, rhs)
    elif isinstance(lhs, list):
        ok = lhs == rhs
        witness = ""
        if not ok:
            for j, (a, b) in enumerate(zip(lhs, rhs)):
                if a != b:
                    witness = f"x0^{j}: " + _poly_witness(a, b)
                    break
            else:
                witness = "length mismatch"
    else:
        ok = lhs == rhs
        witness = "" if ok else f"{format_rational(lhs)} != {format_rational(rhs)}"
    report.entries.append(CheckEntry(identity, n, ok, witness))


def _taylor_in_x0(p: Polynomial) -> list:
    """``p(x + x0)`` as the list of its x0-coefficients ``p^(j)(x) / j!``."""
    out = []
    for j in range(len(p.coeffs)):
        out.append(p.nth_derivative(j) * Fraction(1, factorial(j)))
    return out


def _bivariate_sum(terms, length) -> list:
    """Accumulate ``sum c * f(x) * x0^j`` given ``(c, f, g)`` with ``g`` a polynomial in x0."""
    out = [Polynomial() for _ in range(length)]
    for c, fx, gx0 in terms:
        for j, a in enumerate(gx0.coeffs):
            if a != 0:
                out[j] = out[j] + fx * (c * a)
    return out


def _trim_bivariate(rows: list) -> list:
    rows = list(rows)
    while rows and rows[-1].is_zero():
        rows.pop()
    return rows


def verify_characterizations(spec: ShefferSpec, polys: list, biorth_max: int | None = None) -> Report:
    """Check every characterization of a Sheffer sequence, exactly.

    Identities (ids used in the report):

    ``Q_sn``        Q(s_n) = n s_{n-1}
    ``Sop_sn``      j(S)(s_n) = q_n, with j(S) applied through its symbol
    ``binom_shift`` s_n(x + x0) = sum C(n,k) s_k(x) q_{n-k}(x0)
    ``binom_zero``  s_n(x) = sum C(n,k) s_k(0) q_{n-k}(x)
    ``biorth``      S(Q^m s_n) = n! delta_{nm}
    ``S_sn``        S(s_0) = 1 and S(s_n) = 0 for n >= 1
    ``STsn_qn``     S(T_x0 s_n) = q_n(x0) as polynomials in x0
    """
    if not polys:
        raise ValueError("need at least one polynomial")
    nmax = len(polys) - 1
    _check_order(spec, nmax)
    S, q = spec.functional, spec.delta
    qs = basic_sequence(q, nmax)
    sop = functional_to_op(S, spec.order)
    qop = ShiftInvariantOp(q.bbar)
    report = Report()

    for n, s in enumerate(polys):
        if n == 0:
            ok = s.degree == 0
            report.entries.append(CheckEntry("Q_sn", 0, ok, "" if ok else f"s_0 = {s} is not a nonzero constant"))
        else:
            _compare(report, "Q_sn", n, op_apply(qop, s), polys[n - 1] * n)

    for n, s in enumerate(polys):
        _compare(report, "Sop_sn", n, op_apply(sop, s), qs[n])

    for n, s in enumerate(polys):
        lhs = _trim_bivariate(_taylor_in_x0(s))
        rhs = _trim_bivariate(_bivariate_sum(
            [(comb(n, k), polys[k], qs[n - k]) for k in range(n + 1)], n + 1))
        _compare(report, "binom_shift", n, lhs, rhs)
        rhs0 = Polynomial()
        for k in range(n + 1):
            rhs0 = rhs0 + qs[n - k] * (comb(n, k) * polys[k](Fraction(0)))
        _compare(report, "binom_zero", n, s, rhs0)

    bmax = nmax if biorth_max is None else min(biorth_max, nmax)
    for n in range(bmax + 1):
        row = []
        term = polys[n]
        for m in range(bmax + 1):
            row.append(functional_apply(S, term))
            term = op_apply(qop, term)
        expected = [Fraction(factorial(n)) if m == n else Fraction(0) for m in range(bmax + 1)]
        ok = row == expected
        witness = ""
        if not ok:
            m = next(i for i, (a, b) in enumerate(zip(row, expected)) if a != b)
            witness = f"m={m}: {format_rational(row[m])} != {format_rational(expected[m])}"
        report.entries.append(CheckEntry("biorth", n, ok, witness))

    for n, s in enumerate(polys):
        _compare(report, "S_sn", n, functional_apply(S, s), Fraction(1 if n == 0 else 0))

    for n, s in enumerate(polys):
        _compare(report, "STsn_qn", n, functional_apply_shifted(S, s), qs[n])

    return report


def kfold_image(L: MomentFunctional, polys_kplus1: list, order: int) -> list:
    """Apply ``j(L)`` to each polynomial (the k-fold law maps order k+1 to order k)."""
    op = functional_to_op(L, order)
    return [op_apply(op, p) for p in polys_kplus1]
