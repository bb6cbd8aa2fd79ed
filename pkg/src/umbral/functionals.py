"""Linear functionals on polynomials, encoded by their moments ``L_n = L(x^n)``.

A :class:`MomentFunctional` wraps a rule ``n -> L_n`` plus a descriptor string
in the spec-file expression syntax.  Moments are memoized per instance.
Combinators (translate, dilate, convolution powers, ramification, mixtures)
build new functionals from old ones without leaving the rationals.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .algebra import Polynomial, Series, as_rational, format_rational
from .errors import (
    BadExponent,
    BadModulus,
    EmptyMixture,
    OrderTooLow,
    TailNotConvergent,
    UnsupportedDilatePower,
    ZeroDenominator,
    ZeroDilation,
)


class MomentFunctional:
    """A linear functional given by its moment rule.

    Parameters
    ----------
    rule : callable
        ``rule(n, L)`` returns the n-th moment; ``L`` is the functional itself
        so recursive rules can look up lower moments through the cache.
    descriptor : str
        Canonical expression describing how the functional was built.
    exact_grid : int or None
        Moments at indices divisible by ``exact_grid`` are exact Fractions;
        ``1`` means fully exact, ``None`` means numeric throughout.
    """

    def __init__(self, rule: Callable, descriptor: str, exact_grid: int | None = 1):
        self._rule = rule
        self.descriptor = descriptor
        self.exact_grid = exact_grid
        self._cache: list = []
        self._lock = threading.RLock()

    @property
    def exact(self) -> bool:
        return self.exact_grid == 1

    def moment(self, n: int):
        if n < 0:
            raise ValueError("moment index must be nonnegative")
        cache = self._cache
        if n < len(cache):
            return cache[n]
        with self._lock:
            while len(cache) <= n:
                cache.append(self._rule(len(cache), self))
            return cache[n]

    def moments(self, count: int) -> list:
        """The first ``count`` moments ``L_0 .. L_(count-1)``."""
        if count > 0:
            self.moment(count - 1)
        return list(self._cache[:count])

    def __call__(self, p: Polynomial):
        return functional_apply(self, p)

    def with_descriptor(self, descriptor: str) -> MomentFunctional:
        """Same moments (shared cache), different name."""
        other = MomentFunctional(self._rule, descriptor, self.exact_grid)
        other._cache = self._cache
        other._lock = self._lock
        return other

    def __repr__(self):
        return f"MomentFunctional({self.descriptor})"


def functional_apply(L: MomentFunctional, p: Polynomial):
    """``L(p) = sum_k c_k L_k``."""
    total = Fraction(0)
    for k, c in enumerate(p.coeffs):
        if c != 0:
            total += c * L.moment(k)
    return total


def functional_apply_shifted(L: MomentFunctional, p: Polynomial) -> Polynomial:
    """``x0 -> L(T_x0 p)`` as a polynomial in ``x0``.

    ``L((s + x0)^k) = sum_j C(k, j) L_j x0^(k-j)``, collected by powers of x0.
    """
    n = len(p.coeffs)
    out = [Fraction(0)] * n
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            out[k - j] += c * comb(k, j) * L.moment(j)
    return Polynomial(out)


def indicator_series(L: MomentFunctional, order: int) -> Series:
    """``L(e^{xt}) = sum_{n<order} L_n t^n / n!``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return Series.from_egf(L.moments(order), order)


# ---------------------------------------------------------------------------
# atoms

def point_eval(a) -> MomentFunctional:
    """``p -> p(a)``; moments ``a^n`` (with ``0^0 = 1``)."""
    a = as_rational(a)
    return MomentFunctional(lambda n, _: a**n, f"eval({format_rational(a)})")


def uniform01() -> MomentFunctional:
    """``p -> integral_0^1 p``."""
    return MomentFunctional(lambda n, _: Fraction(1, n + 1), "uniform01")


def from_moments(values: Sequence) -> MomentFunctional:
    """Finitely many given moments; every later moment is zero."""
    vals = tuple(as_rational(v) for v in values)
    desc = "moments[" + ", ".join(format_rational(v) for v in vals) + "]"
    return MomentFunctional(lambda n, _: vals[n] if n < len(vals) else Fraction(0), desc)


def from_series(series: Series, descriptor: str | None = None) -> MomentFunctional:
    """The functional whose indicator series is ``series``.

    Moments past the series order are unknown and raise :class:`OrderTooLow`.
    """
    vals = series.egf_coeffs()

    def rule(n, _):
        if n >= len(vals):
            raise OrderTooLow(f"moment {n} needs series order > {n}")
        return vals[n]

    if descriptor is None:
        descriptor = "moments[" + ", ".join(format_rational(v) for v in vals) + "]"
    return MomentFunctional(rule, descriptor)


def exp_z(lam) -> MomentFunctional:
    """Functional of the entire function ``F(z) = e^z`` at ``lam``.

    ``L(p) = e^{-lam} sum_k p(k) lam^k / k!``; its moments are the Touchard
    polynomials ``T_n(lam) = sum_k S(n, k) lam^k`` and its indicator series is
    ``exp(lam (e^t - 1))``.
    """
    lam = as_rational(lam)
    rows: list = [[Fraction(1)]]  # Stirling numbers of the second kind, row by row

    def rule(n, _):
        while len(rows) <= n:
            prev = rows[-1]
            m = len(rows)
            row = [Fraction(0)] * (m + 1)
            for k in range(1, m + 1):
                row[k] = (prev[k - 1] if k - 1 < len(prev) else 0) + k * (prev[k] if k < len(prev) else 0)
            rows.append(row)
        return sum((s * lam**k for k, s in enumerate(rows[n])), Fraction(0))

    return MomentFunctional(rule, f"exp_z({format_rational(lam)})")


def entire_series(coeff: Callable[[int], float], lam: float, tail_bound: float = 1e-15,
                  max_terms: int = 10_000, descriptor: str | None = None) -> MomentFunctional:
    """Numeric functional of a general entire ``F(z) = sum f_k z^k``.

    Moments are ``delta^n(F)(lam) / F(lam)`` with ``delta = z d/dz``, i.e.
    ``sum_k k^n f_k lam^k / F(lam)``, summed until the terms fall below
    ``tail_bound`` relative to the partial sum.  The result is flagged
    inexact (``exact_grid = None``).
    """

    def _sum(power):
        terms = []
        small = 0
        for k in range(max_terms):
            term = (k**power if power else 1) * coeff(k) * lam**k
            terms.append(term)
            partial = abs(math.fsum(t.real for t in terms)) + abs(math.fsum(getattr(t, "imag", 0.0) for t in terms))
            if k > 0 and abs(term) <= tail_bound * max(partial, 1e-300):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        else:
            raise TailNotConvergent(f"series did not reach tail bound {tail_bound} in {max_terms} terms")
        re = math.fsum(t.real for t in terms)
        im = math.fsum(getattr(t, "imag", 0.0) for t in terms)
        return complex(re, im) if im else re

    denom = _sum(0)
    if denom == 0:
        raise ZeroDenominator("F(lambda) = 0")

    def rule(n, _):
        return _sum(n) / denom

    return MomentFunctional(rule, descriptor or f"entire({lam!r})", exact_grid=None)


def entire_functional(kind: str, *args, **kwargs) -> MomentFunctional:
    if kind == "exp_z":
        return exp_z(*args, **kwargs)
    if kind == "series":
        return entire_series(*args, **kwargs)
    raise ValueError(f"unknown entire functional kind {kind!r}")


def accelerator_moments(d: int) -> MomentFunctional:
    """Moments ``n! / Gamma(1 + n/(d+1))`` of the order-(d+1) accelerator kernel.

    Exact (``(k(d+1))! / k!``) at multiples of ``d+1``, floating point elsewhere.
    """
    m = d + 1

    def rule(n, _):
        if n % m == 0:
            return Fraction(factorial(n), factorial(n // m))
        return math.exp(math.lgamma(n + 1) - math.lgamma(1 + n / m))

    return MomentFunctional(rule, f"accelerator({d})", exact_grid=m)


# ---------------------------------------------------------------------------
# combinators

def _grid_and(*fs: MomentFunctional):
    return 1 if all(f.exact_grid == 1 for f in fs) else None


def translate(L: MomentFunctional, a) -> MomentFunctional:
    """``L o T_a``: moments ``sum_j C(n, j) L_j a^(n-j)``."""
    a = as_rational(a)

    def rule(n, _):
        return sum((comb(n, j) * L.moment(j) * a ** (n - j) for j in range(n + 1)), Fraction(0))

    return MomentFunctional(rule, f"translate({L.descriptor}, {format_rational(a)})", L.exact_grid)


def dilate(L: MomentFunctional, beta) -> MomentFunctional:
    """``L o H_beta`` where ``H_beta p(x) = p(x / beta)``: moments ``L_n / beta^n``."""
    beta = as_rational(beta)
    if beta == 0:
        raise ZeroDilation("dilation factor must be nonzero")
    return MomentFunctional(lambda n, _: L.moment(n) / beta**n,
                            f"dilate({L.descriptor}, {format_rational(beta)})", L.exact_grid)


def dilate_power(L: MomentFunctional, r, m: int) -> MomentFunctional:
    """Dilation by a ``beta`` known only through ``beta^m = r``.

    Valid when every nonzero moment of ``L`` sits at an index divisible by
    ``m``; then ``(L o H_beta)_{km} = L_{km} / r^k``.
    """
    r = as_rational(r)
    if r == 0:
        raise ZeroDilation("dilation factor must be nonzero")
    if m < 1:
        raise BadModulus("m must be a positive integer")

    def rule(n, _):
        if n % m:
            if L.moment(n) != 0:
                raise UnsupportedDilatePower(f"moment {n} of {L.descriptor} is off the {m}-grid")
            return Fraction(0)
        return L.moment(n) / r ** (n // m)

    out = MomentFunctional(rule, f"dilate_power({L.descriptor}, {format_rational(r)}, {m})", L.exact_grid)
    for n in range(1, 2 * m + 1):
        out.moment(n)  # fail early on obviously off-grid functionals
    return out


def convolve(L1: MomentFunctional, L2: MomentFunctional, descriptor: str | None = None) -> MomentFunctional:
    """Functional whose indicator series is the product of the two indicators."""

    def rule(n, _):
        return sum((comb(n, j) * L1.moment(j) * L2.moment(n - j) for j in range(n + 1)), Fraction(0))

    return MomentFunctional(rule, descriptor or f"conv({L1.descriptor}, {L2.descriptor})", _grid_and(L1, L2))


def functional_power(L: MomentFunctional, k: int) -> MomentFunctional:
    """k-fold convolution power; the indicator becomes ``indicator(L)^k``."""
    if not isinstance(k, int) or k < 1:
        raise BadExponent(f"exponent must be an integer >= 1, got {k!r}")
    desc = f"pow({L.descriptor}, {k})"
    if k == 1:
        return L.with_descriptor(desc)
    acc = L
    for _ in range(k - 1):
        acc = convolve(L, acc)
    return acc.with_descriptor(desc)


def ramify(L: MomentFunctional, m: int) -> MomentFunctional:
    """Keep the moments at multiples of ``m``; zero the rest."""
    if not isinstance(m, int) or m < 1:
        raise BadModulus(f"modulus must be an integer >= 1, got {m!r}")
    grid = L.exact_grid
    new_grid = 1 if grid is not None and m % grid == 0 else None
    return MomentFunctional(lambda n, _: L.moment(n) if n % m == 0 else Fraction(0),
                            f"ramify({L.descriptor}, {m})", new_grid)


def mix(terms: Sequence) -> MomentFunctional:
    """Weighted sum ``sum w_i L_i`` of functionals."""
    terms = [(as_rational(w), L) for w, L in terms]
    if not terms:
        raise EmptyMixture("mixture needs at least one term")

    def rule(n, _):
        return sum((w * L.moment(n) for w, L in terms), Fraction(0))

    parts = []
    for i, (w, L) in enumerate(terms):
        sign = "-" if w < 0 else "+"
        body = f"{format_rational(abs(w))}*{L.descriptor}"
        parts.append(("-" + body if w < 0 else body) if i == 0 else f" {sign} {body}")
    return MomentFunctional(rule, "mix(" + "".join(parts) + ")", _grid_and(*(L for _, L in terms)))


functional_mix = mix


def functional_translate_dilate(L: MomentFunctional, mode: str, *args) -> MomentFunctional:
    if mode == "translate":
        return translate(L, *args)
    if mode == "dilate":
        return dilate(L, *args)
    if mode == "dilate_power":
        return dilate_power(L, *args)
    raise ValueError(f"unknown mode {mode!r}")
