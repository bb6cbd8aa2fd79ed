"""Catalog of Appell families with exact rational moment rules.

Each entry pairs the derivative with the family's functional and records the
indicator series computed independently from its closed form, so the two can
be compared coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import functionals as fn
from .algebra import Polynomial, Series, as_rational, format_rational
from .errors import BadParams, UnsupportedFamily
from .functionals import MomentFunctional
from .operators import DeltaOperator
from .sheffer import ShefferSpec, classical_stirling

FAMILY_IDS = (
    "monomial", "bernoulli", "bernoulli_k", "norlund_bernoulli", "apostol_euler", "euler",
    "apostol_euler_k", "norlund_euler", "strodt", "bernoulli_type", "hermite", "d_hermite",
    "d_hermite_orth", "laguerre", "bernoulli_hyp", "kummer", "touchard",
)

# parameter names in the order the spec-file syntax ``family(id, ...)`` takes them
FAMILY_PARAMS = {
    "monomial": ("a",),
    "bernoulli": (),
    "bernoulli_k": ("k",),
    "norlund_bernoulli": ("omega",),
    "apostol_euler": ("beta",),
    "euler": (),
    "apostol_euler_k": ("beta", "k"),
    "norlund_euler": ("omega",),
    "strodt": ("w", "x"),
    "bernoulli_type": ("l", "m", "a"),
    "hermite": (),
    "d_hermite": ("d",),
    "d_hermite_orth": ("d",),
    "laguerre": ("alpha",),
    "bernoulli_hyp": ("N",),
    "kummer": ("a", "b"),
    "touchard": ("lam",),
}

# sample parameters used by the catalog-wide test suites
SAMPLE_PARAMS = {
    "monomial": {"a": Fraction(2, 3)},
    "bernoulli": {},
    "bernoulli_k": {"k": 3},
    "norlund_bernoulli": {"omega": [Fraction(1), Fraction(1, 2), Fraction(-3)]},
    "apostol_euler": {"beta": Fraction(1, 3)},
    "euler": {},
    "apostol_euler_k": {"beta": Fraction(2, 5), "k": 2},
    "norlund_euler": {"omega": [Fraction(1), Fraction(2, 3)]},
    "strodt": {"w": [Fraction(1, 4), Fraction(3, 4)], "x": [Fraction(0), Fraction(1, 2)]},
    "bernoulli_type": {"l": -1, "m": 1, "a": [Fraction(-1, 4), Fraction(-1, 2), Fraction(3, 4)]},
    "hermite": {},
    "d_hermite": {"d": 2},
    "d_hermite_orth": {"d": 2},
    "laguerre": {"alpha": Fraction(1, 2)},
    "bernoulli_hyp": {"N": 3},
    "kummer": {"a": Fraction(1, 2), "b": Fraction(3, 2)},
    "touchard": {"lam": Fraction(1, 2)},
}


@dataclass(frozen=True)
class FamilySpec:
    id: str
    params: dict = field(compare=False)
    spec: ShefferSpec = field(compare=False)
    expected_indicator: Series = field(compare=False)

    @property
    def functional(self) -> MomentFunctional:
        return self.spec.functional

    @property
    def order(self) -> int:
        return self.spec.order


def _int(params, name, minimum=None):
    v = params.get(name)
    if isinstance(v, Fraction) and v.denominator == 1:
        v = int(v)
    if not isinstance(v, int) or isinstance(v, bool):
        raise BadParams(f"{name} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise BadParams(f"{name} must be >= {minimum}, got {v}")
    return v


def _rat(params, name):
    if name not in params:
        raise BadParams(f"missing parameter {name}")
    try:
        return as_rational(params[name])
    except (TypeError, ValueError) as exc:
        raise BadParams(f"{name} must be rational: {exc}") from None


def _rats(params, name):
    v = params.get(name)
    if v is None or isinstance(v, (str, int, Fraction)):
        raise BadParams(f"{name} must be a list of rationals")
    try:
        return [as_rational(a) for a in v]
    except (TypeError, ValueError) as exc:
        raise BadParams(f"{name} must be rational: {exc}") from None


def _exp_minus_one_over_t(order: int, w=1) -> Series:
    """``(e^{wt} - 1) / (w t)``."""
    w = as_rational(w)
    return Series([w**n / factorial(n + 1) for n in range(order)], order)


def _rising(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def _family_desc(fid: str, params: dict) -> str:
    parts = [fid]
    for name in FAMILY_PARAMS[fid]:
        v = params[name]
        if isinstance(v, (list, tuple)):
            parts.append("[" + ", ".join(format_rational(as_rational(a)) for a in v) + "]")
        else:
            parts.append(format_rational(as_rational(v)))
    return "family(" + ", ".join(parts) + ")"


def family_functional(fid: str, params: dict | None = None):
    """Build ``(functional, indicator_builder)`` for a catalog family.

    ``indicator_builder(order)`` evaluates the closed-form indicator series.
    """
    params = dict(params or {})
    if fid not in FAMILY_PARAMS:
        raise BadParams(f"unknown family {fid!r}")
    missing = [p for p in FAMILY_PARAMS[fid] if p not in params]
    if missing:
        raise BadParams(f"{fid} needs parameters {', '.join(missing)}")
    extra = [p for p in params if p not in FAMILY_PARAMS[fid]]
    if extra:
        raise BadParams(f"{fid} takes no parameter(s) {', '.join(extra)}")

    if fid == "monomial":
        a = _rat(params, "a")
        return fn.point_eval(a), lambda N: Series.exp_t(N, a)

    if fid == "bernoulli":
        return fn.uniform01(), _exp_minus_one_over_t

    if fid == "bernoulli_k":
        k = _int(params, "k", 1)
        return fn.functional_power(fn.uniform01(), k), lambda N: _exp_minus_one_over_t(N) ** k

    if fid == "norlund_bernoulli":
        omega = _rats(params, "omega")
        if not omega or any(w == 0 for w in omega):
            raise BadParams("norlund_bernoulli needs a nonempty list of nonzero omega_j")
        # (e^{wt}-1)/(wt) is the indicator of uniform01 o H_{1/w}
        parts = [fn.dilate(fn.uniform01(), 1 / w) for w in omega]
        L = parts[0]
        for P in parts[1:]:
            L = fn.convolve(L, P)

        def ind(N):
            out = Series.one(N)
            for w in omega:
                out = out * _exp_minus_one_over_t(N, w)
            return out

        return L, ind

    if fid in ("apostol_euler", "euler", "apostol_euler_k"):
        beta = Fraction(1, 2) if fid == "euler" else _rat(params, "beta")
        if beta == 0:
            raise BadParams("beta must be nonzero")
        base = fn.mix([(1 - beta, fn.point_eval(0)), (beta, fn.point_eval(1))])
        k = _int(params, "k", 1) if fid == "apostol_euler_k" else 1
        L = fn.functional_power(base, k) if k > 1 else base
        return L, lambda N: (1 + (Series.exp_t(N) - 1) * beta) ** k

    if fid == "norlund_euler":
        omega = _rats(params, "omega")
        if not omega or any(w == 0 for w in omega):
            raise BadParams("norlund_euler needs a nonempty list of nonzero omega_j")
        parts = [fn.mix([(Fraction(1, 2), fn.point_eval(0)), (Fraction(1, 2), fn.point_eval(w))]) for w in omega]
        L = parts[0]
        for P in parts[1:]:
            L = fn.convolve(L, P)

        def ind(N):
            out = Series.one(N)
            for w in omega:
                out = out * (Series.exp_t(N, w) + 1) * Fraction(1, 2)
            return out

        return L, ind

    if fid == "strodt":
        w, x = _rats(params, "w"), _rats(params, "x")
        if not w or len(w) != len(x):
            raise BadParams("strodt needs equally long nonempty w and x lists")
        if any(not (0 < wj < 1) for wj in w):
            raise BadParams("strodt weights must satisfy 0 < w_j < 1")
        if sum(w) != 1:
            raise BadParams("strodt weights must sum to 1")
        L = fn.mix([(wj, fn.point_eval(xj)) for wj, xj in zip(w, x)])

        def ind(N):
            out = Series.zero(N)
            for wj, xj in zip(w, x):
                out = out + Series.exp_t(N, xj) * wj
            return out

        return L, ind

    if fid == "bernoulli_type":
        lo, hi = _int(params, "l"), _int(params, "m")
        a = _rats(params, "a")
        if hi < lo or len(a) != hi - lo + 1:
            raise BadParams("bernoulli_type needs l <= m and m - l + 1 coefficients a_j")
        js = list(range(lo, hi + 1))
        if sum(a) != 0:
            raise BadParams("bernoulli_type needs sum a_j = 0")
        if sum(j * aj for j, aj in zip(js, a)) != 1:
            raise BadParams("bernoulli_type needs sum j a_j = 1")
        pairs = list(zip(js, a))

        def rule(n, _):
            # integral_0^j s^n ds = j^(n+1) / (n+1)
            return sum((aj * Fraction(j) ** (n + 1) for j, aj in pairs), Fraction(0)) / (n + 1)

        L = fn.MomentFunctional(rule, "")

        def ind(N):
            out = Series.zero(N + 1)
            for j, aj in pairs:
                out = out + Series.exp_t(N + 1, j) * aj
            return out.shift_down(1)

        return L, ind

    if fid == "hermite":
        L = fn.dilate_power(fn.ramify(fn.accelerator_moments(1), 2), 2, 2)
        return L, lambda N: (Series.monomial(2, N, Fraction(1, 2))).exp()

    if fid in ("d_hermite", "d_hermite_orth"):
        d = _int(params, "d", 1)
        L = fn.ramify(fn.accelerator_moments(d), d + 1)
        scale = Fraction(1)
        if fid == "d_hermite_orth":
            scale = Fraction(factorial(d) * (d + 1) ** 2)
            L = fn.dilate_power(L, scale, d + 1)
        return L, lambda N: Series.monomial(d + 1, N, 1 / scale).exp()

    if fid == "laguerre":
        alpha = _rat(params, "alpha")
        if alpha <= -1:
            raise BadParams("laguerre needs alpha > -1")
        L = fn.MomentFunctional(lambda n, _: _rising(alpha + 1, n), "")
        # (1 - t)^{-alpha-1} = exp(-(alpha+1) log(1 - t))
        return L, lambda N: (Series([1, -1], N).log() * (-(alpha + 1))).exp()

    if fid == "bernoulli_hyp":
        N_ = _int(params, "N", 1)
        L = fn.MomentFunctional(
            lambda n, _: Fraction(N_ * factorial(n) * factorial(N_ - 1), factorial(n + N_)), "")

        def ind(N):
            big = Series.exp_t(N + N_) - Series([Fraction(1, factorial(j)) for j in range(N_)], N + N_)
            return big.shift_down(N_) * factorial(N_)

        return L, ind

    if fid == "kummer":
        a, b = _rat(params, "a"), _rat(params, "b")
        if a <= 0 or b <= 0:
            raise BadParams("kummer needs a > 0 and b > 0")
        L = fn.MomentFunctional(lambda n, _: _rising(a, n) / _rising(a + b, n), "")
        return L, lambda N: Series.from_egf([_rising(a, n) / _rising(a + b, n) for n in range(N)], N)

    if fid == "touchard":
        lam = _rat(params, "lam")
        return fn.exp_z(lam), lambda N: ((Series.exp_t(N) - 1) * lam).exp()

    raise BadParams(f"unknown family {fid!r}")  # pragma: no cover


def make_family(fid: str, params: dict | None = None, order: int = 16) -> FamilySpec:
    """Construct a catalog family with working series order ``order``."""
    params = dict(params or {})
    L, ind = family_functional(fid, params)
    L = L.with_descriptor(_family_desc(fid, params))
    spec = ShefferSpec(DeltaOperator.derivative(order), L)
    return FamilySpec(fid, params, spec, ind(order))


# ---------------------------------------------------------------------------
# closed-form difference-operator expansions

def delta_powers(n: int) -> list:
    """``Delta^j(x^n)`` for ``j = 0..n`` by repeated forward differences."""
    out = [Polynomial.monomial(n)]
    for _ in range(n):
        p = out[-1]
        out.append(p.shift(1) - p)
    return out


def _delta_expand(weights, nmax: int) -> list:
    polys = []
    for n in range(nmax + 1):
        acc = Polynomial()
        for j, d in enumerate(delta_powers(n)):
            acc = acc + d * weights(j)
        polys.append(acc)
    return polys


def known_expansions(fid: str, params: dict | None = None, nmax: int = 12) -> list:
    """Explicit ``sum_j c_j Delta^j(x^n)`` expansions for four families."""
    params = dict(params or {})
    if fid == "bernoulli":
        return _delta_expand(lambda j: Fraction((-1) ** j, j + 1), nmax)
    if fid == "euler":
        return _delta_expand(lambda j: Fraction((-1) ** j, 2**j), nmax)
    if fid == "bernoulli_k":
        k = _int(params, "k", 1)
        st = classical_stirling(nmax + k)
        return _delta_expand(lambda j: Fraction(factorial(k), factorial(k + j)) * st.s[k + j][k], nmax)
    if fid == "apostol_euler_k":
        beta = _rat(params, "beta")
        k = _int(params, "k", 1)
        return _delta_expand(lambda j: comb(j + k - 1, j) * (-beta) ** j, nmax)
    raise UnsupportedFamily(f"no closed-form difference expansion for {fid!r}")


# ---------------------------------------------------------------------------
# Touchard polynomials and the e^z entire-function family

def touchard_polynomials(nmax: int, lam) -> list:
    """``T_n(lam) = sum_k S(n, k) lam^k`` for ``n <= nmax``."""
    lam = as_rational(lam)
    S = classical_stirling(nmax).S
    return [sum((S[n][k] * lam**k for k in range(n + 1)), Fraction(0)) for n in range(nmax + 1)]


def touchard_appell(nmax: int, lam) -> list:
    """``P_n(x) = sum_j C(n, j) mu_j x^(n-j)`` with ``mu_j`` the moments of ``1/e^z``.

    For ``F = e^z`` those moments are ``sum_l S(j, l) (-lam)^l``, i.e. ``T_j(-lam)``.
    """
    mu = touchard_polynomials(nmax, -as_rational(lam))
    out = []
    for n in range(nmax + 1):
        out.append(Polynomial([comb(n, n - i) * mu[n - i] for i in range(n + 1)]))
    return out


# ---------------------------------------------------------------------------
# Euler numbers

def euler_numbers_standard(jmax: int) -> list:
    """``E_{2j}`` in the ``sech t = sum E_n t^n / n!`` convention (``E_2 = -1``)."""
    N = 2 * jmax + 1
    cosh = Series([Fraction(1, factorial(n)) if n % 2 == 0 else 0 for n in range(N)], N)
    sech = cosh.recip().egf_coeffs()
    return [sech[2 * j] for j in range(jmax + 1)]


def euler_numbers_positive(jmax: int) -> list:
    """``E_{2j}`` in the ``2/(e^t + e^-t) = sum i^n E_n t^n / n!`` convention (all positive)."""
    return [(-1) ** j * e for j, e in enumerate(euler_numbers_standard(jmax))]
