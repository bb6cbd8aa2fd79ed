"""Floating-point checks of the integral representations against the exact core.

Everything here is double precision.  Exact values (Bernoulli, Euler and
Hermite-type polynomials) come from :mod:`umbral.sheffer` and are converted
to floats only at the comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .algebra import Polynomial
from .errors import DomainError, NoConvergence, RayDivergence, TruncationFailure

# ---------------------------------------------------------------------------
# Gamma

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _lanczos_log(x: float) -> float:
    # log Gamma(x) for x >= 1/2
    x -= 1
    a = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        a += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (x + 0.5) * math.log(t) - t + math.log(a)


def log_gamma(x: float) -> float:
    """``log Gamma(x)`` for real ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    shift = 0.0
    while x < 0.5:
        shift -= math.log(x)
        x += 1
    return _lanczos_log(x) + shift


def gamma_eval(x: float) -> float:
    """Real Gamma function for ``x > 0`` (Lanczos, g = 7, plus the recurrence below 1/2)."""
    if not x > 0:
        raise DomainError(f"gamma_eval needs x > 0, got {x}")
    if x == int(x) and x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return gamma_eval(x + 1) / x
    if x > 20:
        # Gamma(x) = (x-1)(x-2)...(x-k) Gamma(x-k); the product is far more
        # accurate than the large power t^(x-1/2) in the Lanczos form
        k = int(x) - 10
        prod = 1.0
        for i in range(1, k + 1):
            prod *= x - i
        return prod * gamma_eval(x - k)
    y = x - 1
    a = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        a += _LANCZOS[i] / (y + i)
    t = y + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (y + 0.5) * math.exp(-t) * a


# ---------------------------------------------------------------------------
# Accelerator kernel


@dataclass(frozen=True)
class AcceleratorParams:
    alpha: float

    def __post_init__(self):
        if not self.alpha > 1:
            raise DomainError(f"accelerator index must exceed 1, got {self.alpha}")

    @property
    def beta(self) -> float:
        return self.alpha / (self.alpha - 1)


_SERIES_CAP = 5000


def accelerator_eval(params: AcceleratorParams, z: complex, nterms: int | None = None) -> complex:
    """``C_alpha(z) = (1/pi) sum sin((n+1) pi/beta) Gamma((n+1)/alpha) z^n / n!``.

    Summation stops once the term bound ``Gamma((n+1)/alpha)|z|^n/n!`` drops
    below ``1e-18`` of the running sum past the largest term, or after exactly
    ``nterms`` terms when given.
    """
    alpha, beta = params.alpha, params.beta
    z = complex(z)
    r = abs(z)
    logr = math.log(r) if r > 0 else -math.inf
    peak = r**beta + 2 if r > 0 else 1
    re_terms, im_terms = [], []
    zpow = complex(1.0)
    re_sum = im_sum = 0.0
    cap = nterms if nterms is not None else _SERIES_CAP
    for n in range(cap):
        if n == 0:
            bound = gamma_eval(1 / alpha)
        elif r == 0:
            break
        else:
            log_bound = log_gamma((n + 1) / alpha) - log_gamma(n + 1) + n * logr
            if log_bound > 700:
                raise TruncationFailure(f"accelerator series terms overflow at |z| = {r}")
            bound = math.exp(log_bound)
        if nterms is None and n > peak and bound < 1e-18 * max(abs(complex(re_sum, im_sum)), 1e-300):
            break
        phase = zpow / abs(zpow) if zpow != 0 else 1.0
        term = math.sin((n + 1) * math.pi / beta) * bound * phase
        re_terms.append(term.real)
        im_terms.append(term.imag)
        zpow *= z
        if zpow != 0 and (abs(zpow) > 1e200 or abs(zpow) < 1e-200):
            # only the phase of zpow is used, so rescale it into range
            zpow = zpow / abs(zpow)
        if n % 32 == 0:
            re_sum, im_sum = math.fsum(re_terms), math.fsum(im_terms)
    else:
        if nterms is None:
            raise TruncationFailure(f"accelerator series not converged after {_SERIES_CAP} terms at |z| = {r}")
    return complex(math.fsum(re_terms), math.fsum(im_terms)) / math.pi


_GL16 = np.polynomial.legendre.leggauss(16)


def _contour_angle(alpha: float) -> float:
    return min(math.pi / 2, 0.9 * 1.5 * math.pi / alpha)


def contour_supported(alpha: float) -> bool:
    return float(alpha).is_integer() and 2 <= alpha <= 5


def accelerator_contour(alpha: float, s) -> np.ndarray:
    """``C_alpha(s)`` for real ``s >= 0`` via a wedge contour through the saddle.

    ``C_alpha(s) = (alpha/pi) Im[e^{i phi} int_0^inf exp(f(v0 + r e^{i phi})) dr]``
    with ``f(v) = v^alpha - s v`` and saddle ``v0 = (s/alpha)^{1/(alpha-1)}``.
    For integer ``alpha`` every Taylor term of ``f`` about ``v0`` has
    negative real part along the wedge, so the integrand decays
    monotonically and there is no cancellation even where ``C_alpha`` is
    exponentially small.
    """
    if not contour_supported(alpha):
        raise DomainError(f"contour evaluation needs integer alpha in [2, 5], got {alpha}")
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s < 0):
        raise DomainError("contour evaluation needs s >= 0")
    a = int(alpha)
    phi = _contour_angle(alpha)
    e = np.exp(1j * phi)
    v0 = (s / a) ** (1.0 / (a - 1))
    f0 = v0**a - s * v0
    f2 = a * (a - 1) * v0 ** (a - 2)
    c2 = abs(math.cos(2 * phi))
    ca = abs(math.cos(a * phi))
    budget = 50.0
    with np.errstate(divide="ignore"):
        r_quad = np.where(f2 > 0, np.sqrt(2 * budget / (np.maximum(f2, 1e-300) * c2)), np.inf)
    r_top = (budget / ca) ** (1.0 / a)
    rmax = np.minimum(r_quad, r_top)

    x, w = _GL16
    panels = 12
    edges = np.linspace(0.0, 1.0, panels + 1)
    u = ((edges[:-1, None] + edges[1:, None]) / 2 + (edges[1:, None] - edges[:-1, None]) / 2 * x[None, :]).ravel()
    uw = ((edges[1:, None] - edges[:-1, None]) / 2 * w[None, :]).ravel()
    rho = rmax[:, None] * u[None, :]
    v = v0[:, None] + rho * e
    # f(v) - f(v0), expanded so the large parts cancel analytically
    df = v**a - v0[:, None] ** a - s[:, None] * rho * e
    vals = np.exp(f0[:, None] + df)
    integral = (vals * uw[None, :]).sum(axis=1) * rmax
    return (a / math.pi) * np.imag(e * integral)


def accelerator_kernel(alpha: float, s) -> np.ndarray:
    """``C_alpha`` on real nonnegative arguments: contour where available, else series."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if contour_supported(alpha):
        return accelerator_contour(alpha, s)
    p = AcceleratorParams(alpha)
    return np.array([accelerator_eval(p, float(si)).real for si in s])


# ---------------------------------------------------------------------------
# Quadrature on [0, inf)


@dataclass(frozen=True)
class Decay:
    """Declared tail behaviour: ``exp(-rate s)`` or ``exp(-(s/scale)^beta)``."""

    kind: str
    rate: float = 1.0
    beta: float = 2.0
    scale: float = 1.0

    @classmethod
    def exponential(cls, rate: float) -> Decay:
        return cls("exponential", rate=rate)

    @classmethod
    def superexponential(cls, beta: float, scale: float = 1.0) -> Decay:
        return cls("superexponential", beta=beta, scale=scale)

    def panel_width(self) -> float:
        if self.kind == "exponential":
            return min(1.0, 2.0 / self.rate)
        return self.scale / 2


@dataclass(frozen=True)
class QuadratureResult:
    value: float | complex
    err_estimate: float
    evaluations: int


_GL20 = np.polynomial.legendre.leggauss(20)
_EPS = np.finfo(float).eps


def _panel_sums(f, a, h, count, split):
    """Integrals of f over ``count`` panels of width h from a, each split in ``split``."""
    x, w = _GL20
    sub = h / split
    lefts = a + sub * np.arange(count * split)
    nodes = (lefts[:, None] + sub / 2 * (x[None, :] + 1)).ravel()
    vals = np.asarray(f(nodes))
    if vals.shape != nodes.shape:
        vals = np.broadcast_to(vals, nodes.shape)
    vals = vals.reshape(count * split, len(x))
    ww = sub / 2 * w
    per_sub = vals @ ww
    absum = np.abs(vals) @ ww
    per_panel = per_sub.reshape(count, split).sum(axis=1)
    abs_panel = absum.reshape(count, split).sum(axis=1)
    return per_panel, abs_panel, nodes.size


def _tail_bound(abs_panels, decay: Decay, h: float) -> float:
    """Geometric bound on the panels past the last one computed.

    The ratio is the larger of the declared decay and the observed ratio of
    the last two panels, since a polynomial factor slows the early decay.
    """
    if len(abs_panels) < 2:
        return math.inf
    last, prev = abs_panels[-1], abs_panels[-2]
    if last == 0:
        return 0.0
    observed = last / prev if prev > 0 else 1.0
    if decay.kind == "exponential":
        declared = math.exp(-decay.rate * h)
    else:
        declared = 0.0  # faster than any geometric ratio once past the bulk
    ratio = max(declared, observed)
    if ratio >= 0.9:
        return math.inf
    return last * ratio / (1 - ratio)


def integrate_semiaxis(f: Callable, decay: Decay, tol: float = 1e-10, max_panels: int = 4000,
                       max_levels: int = 6, magnitude: Callable | None = None,
                       rel_noise: float = 0.0) -> QuadratureResult:
    """``int_0^inf f(s) ds`` by panel Gauss-Legendre with refinement.

    ``f`` is evaluated on numpy arrays.  Panels are added until the last one
    contributes less than ``tol/4`` in absolute value and the geometric
    tail bound is below ``tol/4``; then every panel is halved until two
    successive levels agree.  The error estimate is the level difference
    plus the tail bound plus a rounding floor.

    ``magnitude``, when given, bounds the size of the intermediate terms in
    an evaluation of ``f`` (for a polynomial integrand, the same polynomial
    with absolute coefficients); the rounding floor is proportional to its
    integral.  ``rel_noise`` is the relative accuracy of any inexact factor
    inside ``f``, such as a kernel evaluated to ~1e-13.
    """
    h = decay.panel_width()
    evaluations = 0
    chunk = 16
    panels = []
    abs_panels = []
    tail = math.inf
    while True:
        if len(panels) >= max_panels:
            raise NoConvergence(f"integrand still significant after {max_panels} panels of width {h}")
        vals, absv, ne = _panel_sums(f, len(panels) * h, h, chunk, 1)
        evaluations += ne
        panels.extend(vals)
        abs_panels.extend(absv)
        tail = _tail_bound(abs_panels, decay, h)
        if abs_panels[-1] < tol / 4 and tail <= tol / 4:
            break
    count = len(panels)
    coarse = sum(panels)
    scale = sum(abs_panels)
    split = 2
    for _ in range(max_levels):
        vals, absv, ne = _panel_sums(f, 0.0, h, count, split)
        evaluations += ne
        fine = vals.sum()
        scale = max(scale, absv.sum())
        diff = abs(fine - coarse)
        rounding = 64 * _EPS * scale + rel_noise * absv.sum()
        err = diff + tail + rounding
        if diff <= max(tol / 8, rounding):
            if magnitude is not None:
                mvals, _, ne = _panel_sums(magnitude, 0.0, h, count, split)
                evaluations += ne
                err += 64 * _EPS * float(np.abs(mvals).sum())
            value = complex(fine) if np.iscomplexobj(fine) else float(fine)
            return QuadratureResult(value, float(err), evaluations)
        coarse = fine
        split *= 2
    raise NoConvergence(f"refinement stalled at difference {diff:.3g} > tol = {tol}")


# ---------------------------------------------------------------------------
# Representations


def _complex_poly(p: Polynomial) -> Callable:
    coeffs = np.array(p.to_floats()[::-1] or [0.0], dtype=complex)
    return lambda z: np.polyval(coeffs, z)


def _abs_poly(p: Polynomial) -> Callable:
    # envelope for rounding: sum |c_k| r^k
    coeffs = np.abs(np.array(p.to_floats()[::-1] or [0.0]))
    return lambda r: np.polyval(coeffs, r)


def _fval(p: Polynomial, x: float) -> float:
    # floats are exact binary rationals, so this is the exact value rounded once
    return float(p(Fraction(x)))


def bernoulli_abel_plana(p: Polynomial, x: float, tol: float = 1e-12) -> QuadratureResult:
    """Inverse of the unit-interval averaging operator applied to p, at x.

    ``p(x) - p'(x)/2 - i int_0^inf (p'(x+is) - p'(x-is)) / (e^{2 pi s} - 1) ds``;
    for real p the bracket is ``2i Im p'(x+is)``, so the integrand is
    ``2 Im p'(x+is) / expm1(2 pi s)``.  Near 0 the numerator is O(s) and the
    quotient stays bounded; Gauss nodes never hit s = 0.
    """
    dp = p.derive()
    dpc = _complex_poly(dp)
    env = _abs_poly(dp)

    def integrand(s):
        return 2 * np.imag(dpc(x + 1j * s)) / np.expm1(2 * np.pi * s)

    def magnitude(s):
        return 2 * env(abs(x) + s) * s / np.expm1(2 * np.pi * s)

    q = integrate_semiaxis(integrand, Decay.exponential(2 * math.pi), tol, magnitude=magnitude)
    base = _fval(p, x) - _fval(dp, x) / 2
    return QuadratureResult(base + q.value, q.err_estimate + 4 * _EPS * abs(base), q.evaluations)


def euler_integral_rep(p: Polynomial, x: float, tol: float = 1e-12) -> QuadratureResult:
    """Inverse of ``p -> (p(x) + p(x+1))/2`` applied to p, at x.

    ``int_0^inf 2 Re p(x - 1/2 + is/2) / (e^{pi s/2} + e^{-pi s/2}) ds``.
    """
    pc = _complex_poly(p)
    env = _abs_poly(p)

    def integrand(s):
        return np.real(pc(x - 0.5 + 0.5j * s)) / np.cosh(np.pi * s / 2)

    def magnitude(s):
        return env(abs(x - 0.5) + s / 2) / np.cosh(np.pi * s / 2)

    return integrate_semiaxis(integrand, Decay.exponential(math.pi / 2), tol, magnitude=magnitude)


def euler_number_integral(j: int, tol: float = 1e-12) -> QuadratureResult:
    """``2 int_0^inf s^{2j} / (e^{pi s/2} + e^{-pi s/2}) ds``."""
    return integrate_semiaxis(lambda s: s ** (2 * j) / np.cosh(np.pi * s / 2),
                              Decay.exponential(math.pi / 2), tol)


def _accelerator_decay(d: int) -> Decay:
    alpha = d + 1
    beta = alpha / (alpha - 1)
    # C_alpha(s) ~ exp(-(alpha-1) (s/alpha)^beta)
    return Decay.superexponential(beta, alpha / (alpha - 1) ** (1 / beta))


# relative accuracy of accelerator_kernel, from the series/contour comparison
KERNEL_REL_ERR = 1e-12


def accelerator_moment(d: int, n: int, tol: float = 1e-10) -> QuadratureResult:
    """``int_0^inf s^n C_{d+1}(s) ds``, expected ``n! / Gamma(1 + n/(d+1))``."""
    if d < 1:
        raise DomainError("d must be a positive integer")
    alpha = d + 1
    return integrate_semiaxis(lambda s: s**n * accelerator_kernel(alpha, s), _accelerator_decay(d), tol,
                              rel_noise=KERNEL_REL_ERR)


def accelerator_moment_exact(d: int, n: int) -> float:
    return math.factorial(n) / gamma_eval(1 + n / (d + 1))


def _ray_integral(p: Polynomial, x: float, d: int, directions, tol: float) -> QuadratureResult:
    alpha = d + 1
    pc = _complex_poly(p)
    env = _abs_poly(p)

    def integrand(s):
        total = np.zeros(np.shape(s), dtype=complex)
        for w in directions:
            total = total + pc(x + w * s)
        return np.real(total) * accelerator_kernel(alpha, s)

    def magnitude(s):
        return len(directions) * env(abs(x) + s) * np.abs(accelerator_kernel(alpha, s))

    # the kernel must be negligible well inside the cut
    probe = np.array([20.0 * _accelerator_decay(d).scale])
    if abs(accelerator_kernel(alpha, probe)[0]) > 1e-30:
        raise RayDivergence(f"accelerator kernel C_{alpha} does not decay along the ray")
    return integrate_semiaxis(integrand, _accelerator_decay(d), tol, magnitude=magnitude,
                              rel_noise=KERNEL_REL_ERR)


def hermite_d_check(d: int, n: int, x: float, direction: str, h_poly: Polynomial | None = None,
                    tol: float = 1e-9) -> QuadratureResult:
    """Ray integrals for the Appell family with EGF ``exp(xt - t^{d+1})``.

    forward: ``int_0^inf sum_j H_n(x + w^j s) C_{d+1}(s) ds`` with ``w = e^{2 pi i/(d+1)}``,
    expected ``(d+1) x^n``.  ``h_poly`` must be the exact ``H_n``.

    inverse: ``(1/(d+1)) int_0^inf sum_j (x + e^{2 pi i (j - 1/2)/(d+1)} s)^n C_{d+1}(s) ds``,
    expected ``H_n(x)``.
    """
    if d < 1:
        raise DomainError("d must be a positive integer")
    m = d + 1
    if direction == "forward":
        if h_poly is None:
            raise ValueError("forward check needs the exact polynomial H_n")
        dirs = [np.exp(2j * np.pi * j / m) for j in range(m)]
        return _ray_integral(h_poly, x, d, dirs, tol)
    if direction == "inverse":
        dirs = [np.exp(2j * np.pi * (j - 0.5) / m) for j in range(m)]
        q = _ray_integral(Polynomial.monomial(n), x, d, dirs, tol * m)
        return QuadratureResult(q.value / m, q.err_estimate / m, q.evaluations)
    raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")


_GAUSS_NORM = 1 / math.sqrt(2 * math.pi)
_GAUSS_DECAY = Decay.superexponential(2.0, math.sqrt(2.0))


def weierstrass_forward(he_poly: Polynomial, x: float, tol: float = 1e-12) -> QuadratureResult:
    """``(1/sqrt(2 pi)) int_R He_n(x + s) e^{-s^2/2} ds``, expected ``x^n``."""
    pc = _complex_poly(he_poly)
    env = _abs_poly(he_poly)

    def integrand(s):
        return _GAUSS_NORM * np.real(pc(x + s) + pc(x - s)) * np.exp(-s * s / 2)

    def magnitude(s):
        return 2 * _GAUSS_NORM * env(abs(x) + s) * np.exp(-s * s / 2)

    return integrate_semiaxis(integrand, _GAUSS_DECAY, tol, magnitude=magnitude)


def weierstrass_inverse(n: int, x: float, tol: float = 1e-12) -> QuadratureResult:
    """``(1/sqrt(2 pi)) int_R (x + is)^n e^{-s^2/2} ds``, expected ``He_n(x)``."""

    def integrand(s):
        return _GAUSS_NORM * 2 * np.real((x + 1j * s) ** n) * np.exp(-s * s / 2)

    def magnitude(s):
        return _GAUSS_NORM * 2 * (abs(x) + s) ** n * np.exp(-s * s / 2)

    return integrate_semiaxis(integrand, _GAUSS_DECAY, tol, magnitude=magnitude)


# ---------------------------------------------------------------------------
# Suites


@dataclass(frozen=True)
class VerifyRow:
    check_id: str
    params: str
    exact: float
    quad: float
    tol: float
    evaluations: int

    @property
    def abs_err(self) -> float:
        return abs(self.quad - self.exact)

    @property
    def passed(self) -> bool:
        return self.abs_err <= self.tol

    def to_tsv(self) -> str:
        return "\t".join([self.check_id, self.params, repr(self.exact), repr(self.quad),
                          f"{self.abs_err:.3e}", f"{self.tol:.1e}", "pass" if self.passed else "FAIL",
                          str(self.evaluations)])


VERIFY_HEADER = "check\tparams\texact\tquad\tabs_err\ttol\tresult\tevaluations"
VERIFY_TARGETS = ("abel_plana", "euler_rep", "euler_numbers", "weierstrass", "d_hermite",
                  "accelerator_moments", "accelerator_c2")
X_GRID = (0.0, 0.5, 1.0, 2.0)
DEFAULT_TOL = {"abel_plana": 1e-9, "euler_rep": 1e-9, "euler_numbers": 1e-8, "weierstrass": 1e-10,
               "d_hermite": 1e-6, "accelerator_moments": 1e-8, "accelerator_c2": 1e-12}


def _exact_polys(fid: str, params: dict, nmax: int) -> list:
    from .families import make_family
    from .sheffer import sheffer_egf
    return sheffer_egf(make_family(fid, params, order=nmax + 4).spec, nmax)


def _xs(x: float) -> str:
    return format(Fraction(x).limit_denominator(1000))


def run_suite(target: str, tol: float | None = None, d: int = 2) -> list:
    """Run one numeric suite; rows come back in a fixed order."""
    if tol is None:
        tol = DEFAULT_TOL.get(target, 1e-9)
    # quadrature asked for well below the acceptance tolerance
    qtol = min(tol / 100, 1e-10)
    rows = []
    if target == "abel_plana":
        polys = _exact_polys("bernoulli", {}, 12)
        for n in range(13):
            for x in X_GRID:
                q = bernoulli_abel_plana(Polynomial.monomial(n), x, qtol)
                rows.append(VerifyRow("abel_plana", f"n={n} x={_xs(x)}", _fval(polys[n], x), q.value, tol,
                                      q.evaluations))
    elif target == "euler_rep":
        polys = _exact_polys("euler", {}, 10)
        for n in range(11):
            for x in X_GRID:
                q = euler_integral_rep(Polynomial.monomial(n), x, qtol)
                rows.append(VerifyRow("euler_rep", f"n={n} x={_xs(x)}", _fval(polys[n], x), q.value, tol,
                                      q.evaluations))
    elif target == "euler_numbers":
        from .families import euler_numbers_positive
        nums = euler_numbers_positive(4)
        for j in range(5):
            q = euler_number_integral(j, qtol)
            rows.append(VerifyRow("euler_numbers", f"j={j}", float(nums[j]), q.value, tol, q.evaluations))
    elif target == "weierstrass":
        polys = _exact_polys("hermite", {}, 10)
        for n in range(11):
            for x in X_GRID:
                q = weierstrass_forward(polys[n], x, qtol)
                rows.append(VerifyRow("weierstrass_forward", f"n={n} x={_xs(x)}", x**n, q.value, tol,
                                      q.evaluations))
                q = weierstrass_inverse(n, x, qtol)
                rows.append(VerifyRow("weierstrass_inverse", f"n={n} x={_xs(x)}", _fval(polys[n], x), q.value,
                                      tol, q.evaluations))
    elif target == "d_hermite":
        if d < 1:
            raise DomainError("d must be a positive integer")
        polys = _exact_polys("d_hermite", {"d": d}, 6)
        for n in range(7):
            for x in (0.0, 0.5, 1.0):
                q = hermite_d_check(d, n, x, "forward", polys[n], qtol)
                rows.append(VerifyRow("d_hermite_forward", f"d={d} n={n} x={_xs(x)}", (d + 1) * x**n, q.value,
                                      tol, q.evaluations))
                q = hermite_d_check(d, n, x, "inverse", tol=qtol)
                rows.append(VerifyRow("d_hermite_inverse", f"d={d} n={n} x={_xs(x)}", _fval(polys[n], x),
                                      q.value, tol, q.evaluations))
    elif target == "accelerator_moments":
        for dd in ((1, 2, 3) if d is None else (d,)):
            for n in range(9):
                q = accelerator_moment(dd, n, qtol)
                rows.append(VerifyRow("accelerator_moment", f"d={dd} n={n}", accelerator_moment_exact(dd, n),
                                      q.value, tol, q.evaluations))
    elif target == "accelerator_c2":
        p = AcceleratorParams(2.0)
        for k in range(51):
            z = k / 10
            rows.append(VerifyRow("accelerator_c2", f"z={_xs(z)}", math.exp(-z * z / 4) / math.sqrt(math.pi),
                                  accelerator_eval(p, z).real, tol, 0))
    else:
        raise ValueError(f"unknown verification target {target!r}; expected one of {', '.join(VERIFY_TARGETS)}")
    return rows
