"""Shift-invariant and delta operators on polynomials.

An operator is stored only through its symbol: the series ``Bbar(t)`` with
``Q = Bbar(d/dx) = sum (bhat_n / n!) d^n``.  Applying it to a polynomial of
degree d touches the first d+1 symbol coefficients only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from .algebra import Polynomial, Series, as_rational, format_rational, poly_jet_exp
from .errors import NotReversible, OrderTooLow, ValidationError
from .functionals import MomentFunctional, from_series, indicator_series


@dataclass(frozen=True)
class ShiftInvariantOp:
    """``B(d)`` for a truncated series ``B``."""

    symbol: Series

    def __call__(self, p: Polynomial) -> Polynomial:
        return op_apply(self, p)

    def __matmul__(self, other: ShiftInvariantOp) -> ShiftInvariantOp:
        # composition of operators is multiplication of symbols
        return ShiftInvariantOp(self.symbol * other.symbol)

    def inverse(self) -> ShiftInvariantOp:
        return ShiftInvariantOp(self.symbol.recip())

    @property
    def order(self) -> int:
        return self.symbol.order


def op_apply(op: ShiftInvariantOp, p: Polynomial) -> Polynomial:
    """``sum_{n <= deg p} c_n p^(n)`` where ``c_n`` are the symbol coefficients."""
    sym = op.symbol
    if p.degree >= sym.order:
        raise OrderTooLow(f"operator symbol of order {sym.order} cannot act on degree {p.degree}")
    out = Polynomial()
    deriv = p
    for n in range(p.degree + 1):
        c = sym[n]
        if c != 0:
            out = out + deriv * c
        deriv = deriv.derive()
    return out


def op_indicator(rule: Callable[[Polynomial], Polynomial], order: int) -> Series:
    """Recover the symbol of a shift-invariant rule from its values on ``x^n`` at 0."""
    return Series.from_egf([rule(Polynomial.monomial(n))(Fraction(0)) for n in range(order)], order)


@dataclass(frozen=True)
class DeltaOperator(ShiftInvariantOp):
    """Delta operator ``Q = Bbar(d)`` with cached compositional inverse ``B``.

    ``descriptor`` is the declaration used in spec files: ``derivative``,
    ``difference h=<rat>`` or ``series [bhat_1, bhat_2, ...]``.
    """

    b: Series = field(default=None, compare=False)
    descriptor: str = field(default="", compare=False)

    def __post_init__(self):
        bbar = self.symbol
        if bbar.order < 2 or bbar[0] != 0 or bbar[1] == 0:
            raise NotReversible("a delta operator needs Bbar(0) = 0 and Bbar'(0) != 0")
        if self.b is None:
            object.__setattr__(self, "b", bbar.reversion())

    @property
    def bbar(self) -> Series:
        return self.symbol

    @classmethod
    def derivative(cls, order: int) -> DeltaOperator:
        return cls(Series.t(order), Series.t(order), "derivative")

    @classmethod
    def difference(cls, h=1, order: int = 16) -> DeltaOperator:
        """``Delta_h p(x) = p(x + h) - p(x)``; ``Bbar = e^{ht} - 1``, ``B = log(1 + t)/h``."""
        h = as_rational(h)
        if h == 0:
            raise ValidationError("difference step h must be nonzero")
        bbar = Series.exp_t(order, h) - 1
        log1p = Series([0] + [Fraction((-1) ** (n + 1), n) / h for n in range(1, order)], order)
        return cls(bbar, log1p, f"difference h={format_rational(h)}")

    @classmethod
    def from_bhat(cls, bhats, order: int | None = None) -> DeltaOperator:
        """From ``bhat_1, bhat_2, ...`` where ``Bbar(t) = sum bhat_n t^n / n!``."""
        bhats = [as_rational(b) for b in bhats]
        if not bhats or bhats[0] == 0:
            raise ValidationError("bhat_1 must be nonzero")
        if order is None:
            order = len(bhats) + 1
        coeffs = [Fraction(0)] + [b / factorial(n) for n, b in enumerate(bhats, start=1)]
        desc = "series [" + ", ".join(format_rational(b) for b in bhats) + "]"
        return cls(Series(coeffs, order), None, desc)

    def with_order(self, order: int) -> DeltaOperator:
        """Rebuild at a different truncation order from the declaration."""
        kind = self.descriptor.split()[0] if self.descriptor else ""
        if kind == "derivative":
            return DeltaOperator.derivative(order)
        if kind == "difference":
            return DeltaOperator.difference(Fraction(self.descriptor.split("=", 1)[1]), order)
        if kind == "series":
            inner = self.descriptor[self.descriptor.index("[") + 1:self.descriptor.rindex("]")]
            return DeltaOperator.from_bhat([s for s in inner.split(",")], order)
        if order <= self.symbol.order:
            return DeltaOperator(self.symbol.truncate(order), self.b.truncate(order), self.descriptor)
        raise OrderTooLow("cannot raise the order of an operator without a declaration")


def basic_sequence(q: DeltaOperator, nmax: int) -> list:
    """``q_n(x) = n! [t^n] exp(x B(t))`` for ``n <= nmax``."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if q.b.order <= nmax:
        raise OrderTooLow(f"series order {q.b.order} too low for n = {nmax}")
    jet = poly_jet_exp(q.b.truncate(nmax + 1))
    return [g * factorial(n) for n, g in enumerate(jet)]


def left_inverse_symbol(q: DeltaOperator) -> Series:
    """``t / Bbar(t)``."""
    return q.bbar.shift_down(1).recip()


def delta_left_inverse(q: DeltaOperator, p: Polynomial, x0=0) -> Polynomial:
    """``(d / Bbar(d)) (integral_{x0}^x p)``, a right inverse of ``q`` on polynomials."""
    prim = p.integrate_from(x0)
    return op_apply(ShiftInvariantOp(left_inverse_symbol(q)), prim)


def functional_to_op(L: MomentFunctional, order: int) -> ShiftInvariantOp:
    """``p -> (x -> L(T_x p))``, whose symbol is the indicator series of ``L``."""
    return ShiftInvariantOp(indicator_series(L, order))


def op_to_functional(op: ShiftInvariantOp) -> MomentFunctional:
    """``p -> op(p)(0)``; the moments are ``n! [t^n]`` of the symbol."""
    return from_series(op.symbol)
