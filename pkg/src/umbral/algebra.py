"""Exact arithmetic kernel: rationals, dense polynomials, truncated power series.

Scalars are :class:`fractions.Fraction` throughout.  :class:`Polynomial` and
:class:`Series` are immutable values; every operation returns a new object.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import (
    BadConstantTerm,
    NonzeroInnerConstant,
    NotReversible,
    ParseError,
    ZeroConstantTerm,
    ZeroDilation,
)

__all__ = [
    "Fraction",
    "Polynomial",
    "Series",
    "format_rational",
    "parse_rational",
    "as_rational",
    "poly_jet_exp",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; refuse floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    """``p/q``, or ``p`` when the denominator is one."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _trim(coeffs: Iterable) -> tuple:
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Dense univariate polynomial with rational coefficients.

    ``coeffs[k]`` is the coefficient of ``x**k``; the zero polynomial has an
    empty coefficient tuple and degree ``-1`` (standing in for -infinity).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "_c", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> Polynomial:
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def from_string(cls, text: str) -> Polynomial:
        text = text.strip()
        if not text:
            return cls()
        return cls(parse_rational(part) for part in text.split(","))

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self._c))

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self._c)}])"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k and abs(c) == 1:
                s = ("-" if c < 0 else "+") + mono
            else:
                s = ("-" if c < 0 else "+") + format_rational(abs(c)) + ("*" + mono if mono else "")
            terms.append(s)
        out = " ".join(t[0] + " " + t[1:] for t in terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def to_string(self) -> str:
        """Comma-separated coefficients from degree 0."""
        return ",".join(format_rational(c) for c in self._c)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self._c])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self._c])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self._c or not other._c:
            return Polynomial()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, a):
        """Horner evaluation; works for Fractions, floats and complex."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * a + c
        if isinstance(a, (int, Fraction)):
            return Fraction(acc)
        return acc

    def derive(self) -> Polynomial:
        return Polynomial([k * self._c[k] for k in range(1, len(self._c))])

    def nth_derivative(self, n: int) -> Polynomial:
        c = self._c
        return Polynomial([c[k] * (factorial(k) // factorial(k - n)) for k in range(n, len(c))])

    def integrate_from(self, x0=0) -> Polynomial:
        """The antiderivative ``q`` with ``q(x0) = 0``."""
        q = Polynomial([0] + [c / (k + 1) for k, c in enumerate(self._c)])
        x0 = as_rational(x0)
        return q - q(x0) if x0 != 0 else q

    def shift(self, a) -> Polynomial:
        """``p(x + a)`` by binomial expansion."""
        a = as_rational(a)
        if a == 0 or not self._c:
            return self
        n = len(self._c)
        out = [Fraction(0)] * n
        apow = [a**j for j in range(n)]
        for k, c in enumerate(self._c):
            if c == 0:
                continue
            for j in range(k + 1):
                out[j] += c * comb(k, j) * apow[k - j]
        return Polynomial(out)

    def dilate(self, beta) -> Polynomial:
        """``p(x / beta)``."""
        beta = as_rational(beta)
        if beta == 0:
            raise ZeroDilation("dilation factor must be nonzero")
        return Polynomial([c / beta**k for k, c in enumerate(self._c)])

    def scale_arg(self, c) -> Polynomial:
        """``p(c x)``; unlike :meth:`dilate`, ``c = 0`` is allowed."""
        c = as_rational(c)
        return Polynomial([a * c**k for k, a in enumerate(self._c)])

    def to_floats(self) -> list:
        return [float(c) for c in self._c]


def poly_shift(p: Polynomial, a) -> Polynomial:
    return p.shift(a)


def poly_dilate(p: Polynomial, beta) -> Polynomial:
    return p.dilate(beta)


class Series:
    """Truncated formal power series ``sum c_k t^k + O(t^order)``.

    Binary operations truncate to the smaller of the operand orders.
    """

    __slots__ = ("_c", "_order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [Fraction(a) for a in coeffs]
        if order is None:
            order = len(c)
        if order < 1:
            raise ValueError("series order must be positive")
        c = c[:order] + [Fraction(0)] * (order - len(c))
        object.__setattr__(self, "_c", tuple(c))
        object.__setattr__(self, "_order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, order: int) -> Series:
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> Series:
        return cls([1], order)

    @classmethod
    def t(cls, order: int) -> Series:
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> Series:
        return cls([0] * k + [c], order)

    @classmethod
    def exp_t(cls, order: int, a=1) -> Series:
        """``exp(a t)``."""
        a = as_rational(a)
        return cls([a**n / factorial(n) for n in range(order)], order)

    @classmethod
    def from_egf(cls, values: Sequence, order: int | None = None) -> Series:
        """Series whose coefficients are ``values[n] / n!``."""
        if order is None:
            order = len(values)
        return cls([Fraction(v) / factorial(n) for n, v in enumerate(values[:order])], order)

    # -- access -----------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def order(self) -> int:
        return self._order

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k]

    def __len__(self):
        return self._order

    def egf_coeffs(self) -> list:
        """``n! [t^n]`` for every available n."""
        return [c * factorial(n) for n, c in enumerate(self._c)]

    def truncate(self, order: int) -> Series:
        return Series(self._c[:order], min(order, self._order))

    def valuation(self) -> int:
        for k, c in enumerate(self._c):
            if c != 0:
                return k
        return self._order

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self._order == other._order and self._c == other._c

    def agrees_with(self, other: Series) -> bool:
        """Equality up to the smaller of the two orders."""
        n = min(self._order, other._order)
        return self._c[:n] == other._c[:n]

    def __hash__(self):
        return hash(("Series", self._c))

    def __repr__(self):
        body = ", ".join(format_rational(c) for c in self._c)
        return f"Series([{body}], order={self._order})"

    # -- ring operations --------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series([other], self._order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self._order, other._order)
        return Series([self._c[i] + other._c[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self._c], self._order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self._c], self._order)
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self._order, other._order)
        a, b = self._c, other._c
        out = [Fraction(0)] * n
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                out[i + j] += ai * b[j]
        return Series(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c / other for c in self._c], self._order)
        if isinstance(other, Series):
            return self * other.recip()
        return NotImplemented

    def __pow__(self, k: int) -> Series:
        if k < 0:
            return self.recip() ** (-k)
        out = Series.one(self._order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift_down(self, k: int) -> Series:
        """Divide by ``t^k``; the first k coefficients must vanish."""
        if any(c != 0 for c in self._c[:k]):
            raise ValueError(f"series is not divisible by t^{k}")
        return Series(self._c[k:], self._order - k)

    def scale_arg(self, c) -> Series:
        """``f(c t)``."""
        c = as_rational(c)
        return Series([a * c**k for k, a in enumerate(self._c)], self._order)

    # -- analytic operations ----------------------------------------------
    def recip(self) -> Series:
        f = self._c
        if f[0] == 0:
            raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
        inv0 = 1 / f[0]
        g = [inv0]
        for n in range(1, self._order):
            acc = sum((f[k] * g[n - k] for k in range(1, n + 1) if f[k] != 0), Fraction(0))
            g.append(-inv0 * acc)
        return Series(g, self._order)

    def compose(self, g: Series) -> Series:
        """``self(g(t))``; g must have zero constant term."""
        if g._c[0] != 0:
            raise NonzeroInnerConstant("inner series must vanish at t = 0")
        n = min(self._order, g._order)
        acc = Series([self._c[n - 1] if n - 1 < self._order else 0], n)
        for k in range(n - 2, -1, -1):
            acc = acc * g + self._c[k]
        return acc.truncate(n)

    def __call__(self, g: Series) -> Series:
        return self.compose(g)

    def reversion(self) -> Series:
        """Compositional inverse by Lagrange inversion.

        ``[t^n] g = (1/n) [t^(n-1)] (t/f)^n``.
        """
        f = self._c
        if f[0] != 0 or self._order < 2 or f[1] == 0:
            raise NotReversible("reversion needs f(0) = 0 and f'(0) != 0")
        h = self.shift_down(1).recip()  # t/f, order N-1
        out = [Fraction(0)]
        hp = Series.one(h.order)
        for n in range(1, self._order):
            hp = hp * h
            out.append(hp[n - 1] / n)
        return Series(out, self._order)

    def derivative(self) -> Series:
        c = self._c
        return Series([k * c[k] for k in range(1, self._order)] or [0], max(self._order - 1, 1))

    def exp(self) -> Series:
        """Formal exponential via ``g' = f' g``."""
        f = self._c
        if f[0] != 0:
            raise BadConstantTerm("exp needs zero constant term")
        g = [Fraction(1)]
        for n in range(1, self._order):
            acc = sum((k * f[k] * g[n - k] for k in range(1, n + 1) if f[k] != 0), Fraction(0))
            g.append(acc / n)
        return Series(g, self._order)

    def log(self) -> Series:
        """Formal logarithm via ``g' = f'/f``."""
        f = self._c
        if f[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        g = [Fraction(0)]
        for n in range(1, self._order):
            acc = n * f[n] - sum((k * g[k] * f[n - k] for k in range(1, n) if f[n - k] != 0), Fraction(0))
            g.append(acc / n)
        return Series(g, self._order)


def series_mul(f: Series, g: Series) -> Series:
    return f * g


def series_recip(f: Series) -> Series:
    return f.recip()


def series_compose(f: Series, g: Series) -> Series:
    return f.compose(g)


def series_reversion(f: Series) -> Series:
    return f.reversion()


def series_exp_log(f: Series, mode: str) -> Series:
    if mode == "exp":
        return f.exp()
    if mode == "log":
        return f.log()
    raise ValueError(f"mode must be 'exp' or 'log', not {mode!r}")


def poly_jet_exp(b: Series) -> list:
    """Coefficients ``g_n(x)`` of ``exp(x b(t)) = sum g_n(x) t^n``.

    Each ``g_n`` is a polynomial in x, found from ``n g_n = sum_k k b_k x g_(n-k)``.
    """
    if b[0] != 0:
        raise BadConstantTerm("exp(x B(t)) needs B(0) = 0")
    x = Polynomial.x()
    g = [Polynomial([1])]
    for n in range(1, b.order):
        acc = Polynomial()
        for k in range(1, n + 1):
            if b[k] != 0:
                acc = acc + g[n - k] * (k * b[k])
        g.append(acc * x * Fraction(1, n))
    return g
