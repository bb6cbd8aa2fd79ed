"""Line-oriented sequence-spec format.

Example::

    # Bernoulli polynomials
    sequence bern
    delta = derivative
    functional = uniform01
    nmax = 6

Keys are ``delta``, ``functional``, ``nmax`` and optionally ``truncation``
(the working series order, default ``nmax + 4``).  Functional expressions::

    expr := atom | translate(expr, rat) | dilate(expr, rat)
          | dilate_power(expr, rat, int) | pow(expr, int) | ramify(expr, int)
          | mix(rat*expr {+|- rat*expr})
    atom := eval(rat) | uniform01 | family(id, params...) | moments[rat, ...] | exp_z(rat)

``family`` takes its parameters positionally, lists in square brackets,
e.g. ``family(strodt, [1/2, 1/2], [0, 1])``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import functionals as fn
from .errors import ParseError, UmbralError, ValidationError
from .families import FAMILY_IDS, FAMILY_PARAMS, _family_desc, family_functional
from .functionals import MomentFunctional
from .operators import DeltaOperator
from .sheffer import ShefferSpec

KEYS = ("delta", "functional", "nmax", "truncation")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*$")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[()\[\],*/+\-=]))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int  # 1-based


def _tokenize(text: str, line: int, col0: int) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text.rstrip())))
    return toks


class _Parser:
    def __init__(self, text: str, line: int, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text:
            found = repr(t.text) if t.kind != "end" else "end of line"
            raise self.error(f"expected {text!r}, found {found}")
        return self.next()

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def finish(self):
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")

    # numbers

    def integer(self) -> int:
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.next().text == "-" else 1
        t = self.peek()
        if t.kind != "num":
            raise self.error("expected an integer")
        self.next()
        return sign * int(t.text)

    def rational(self) -> Fraction:
        start = self.peek()
        p = self.integer()
        if self.at("/"):
            self.next()
            t = self.peek()
            if t.kind != "num":
                raise self.error("expected a denominator")
            self.next()
            q = int(t.text)
            if q == 0:
                raise self.error("zero denominator", start)
            return Fraction(p, q)
        return Fraction(p)

    def rational_list(self) -> list:
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.rational())
            while self.at(","):
                self.next()
                out.append(self.rational())
        self.expect("]")
        return out

    # functional expressions

    def expr(self) -> MomentFunctional:
        t = self.peek()
        if t.kind != "ident":
            raise self.error("expected a functional expression")
        name = t.text
        self.next()
        if name == "uniform01":
            return fn.uniform01()
        if name == "moments":
            vals = self.rational_list()
            if not vals:
                raise self.error("moments list is empty", t)
            return fn.from_moments(vals)
        if name not in ("eval", "exp_z", "translate", "dilate", "dilate_power", "pow", "ramify", "mix", "family"):
            raise self.error(f"unknown functional {name!r}", t)
        self.expect("(")
        try:
            out = self._call(name, t)
        except ParseError:
            raise
        except UmbralError as exc:
            raise ValidationError(f"line {self.line}, column {t.col}: {exc}") from None
        self.expect(")")
        return out

    def _call(self, name: str, head: _Tok) -> MomentFunctional:
        if name == "eval":
            return fn.point_eval(self.rational())
        if name == "exp_z":
            return fn.exp_z(self.rational())
        if name == "mix":
            return self._mix()
        if name == "family":
            return self._family()
        inner = self.expr()
        self.expect(",")
        if name == "translate":
            return fn.translate(inner, self.rational())
        if name == "dilate":
            return fn.dilate(inner, self.rational())
        if name == "dilate_power":
            r = self.rational()
            self.expect(",")
            return fn.dilate_power(inner, r, self.integer())
        if name == "pow":
            return fn.functional_power(inner, self.integer())
        return fn.ramify(inner, self.integer())

    def _mix(self) -> MomentFunctional:
        terms = []
        sign = 1
        while True:
            w = self.rational() * sign
            self.expect("*")
            terms.append((w, self.expr()))
            if self.at("+") or self.at("-"):
                sign = -1 if self.next().text == "-" else 1
                continue
            break
        return fn.mix(terms)

    def _family(self) -> MomentFunctional:
        t = self.peek()
        if t.kind != "ident" or t.text not in FAMILY_IDS:
            raise self.error(f"unknown family {t.text!r}; known: {', '.join(FAMILY_IDS)}")
        fid = self.next().text
        params = {}
        for name in FAMILY_PARAMS[fid]:
            self.expect(",")
            params[name] = self.rational_list() if self.at("[") else self.rational()
        L, _ = family_functional(fid, params)
        return L.with_descriptor(_family_desc(fid, params))

    # delta declarations

    def delta(self) -> DeltaOperator:
        t = self.peek()
        if t.kind != "ident":
            raise self.error("expected derivative, difference or series")
        kind = self.next().text
        if kind == "derivative":
            return DeltaOperator.derivative(2)
        if kind == "difference":
            h = Fraction(1)
            if self.at("h"):
                self.next()
                self.expect("=")
                h = self.rational()
            if h == 0:
                raise ValidationError(f"line {self.line}, column {t.col}: difference step h must be nonzero")
            return DeltaOperator.difference(h, 2)
        if kind == "series":
            start = self.peek()
            bh = self.rational_list()
            if not bh or bh[0] == 0:
                raise ValidationError(f"line {self.line}, column {start.col}: bhat_1 must be nonzero")
            return DeltaOperator.from_bhat(bh)
        raise self.error(f"unknown delta operator {kind!r}", t)


@dataclass(frozen=True)
class SequenceSpec:
    name: str
    delta: DeltaOperator
    functional: MomentFunctional
    nmax: int
    truncation: int

    def sheffer_spec(self) -> ShefferSpec:
        return ShefferSpec(self.delta.with_order(self.truncation), self.functional)

    def format(self) -> str:
        return format_spec(self)


def parse_functional(text: str, line: int = 1, col0: int = 1) -> MomentFunctional:
    p = _Parser(text, line, col0)
    out = p.expr()
    p.finish()
    return out


def parse_spec(text: str) -> SequenceSpec:
    """Parse and validate a spec file; see the module docstring for the format."""
    name = None
    values: dict = {}
    where: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        if name is None:
            parts = line.split()
            if parts[0] != "sequence":
                raise ParseError("expected 'sequence <name>' header", lineno, indent + 1)
            if len(parts) != 2 or not _NAME.match(parts[1]):
                raise ParseError("sequence name must be a single identifier", lineno, indent + 10)
            name = parts[1]
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, indent + 1)
        key, value = line.split("=", 1)
        key = key.strip()
        vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}; expected one of {', '.join(KEYS)}", lineno, indent + 1)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno, indent + 1)
        values[key] = value.strip()
        where[key] = (lineno, vcol)
    if name is None:
        raise ParseError("empty spec: missing 'sequence <name>' header", 1, 1)
    for key in ("delta", "functional", "nmax"):
        if key not in values:
            raise ParseError(f"missing key {key!r}", len(text.splitlines()) or 1, 1)

    p = _Parser(values["delta"], *where["delta"])
    delta = p.delta()
    p.finish()
    functional = parse_functional(values["functional"], *where["functional"])

    def _int(key):
        p = _Parser(values[key], *where[key])
        v = p.integer()
        p.finish()
        return v

    nmax = _int("nmax")
    if nmax < 0:
        raise ValidationError(f"nmax must be nonnegative, got {nmax}")
    truncation = _int("truncation") if "truncation" in values else nmax + 4
    if truncation <= nmax:
        raise ValidationError(f"truncation ({truncation}) must exceed nmax ({nmax})")
    if not functional.exact:
        raise ValidationError("functional moments must be exact rationals")
    try:
        l0 = functional.moment(0)
        functional.moments(truncation)
    except UmbralError as exc:
        raise ValidationError(f"functional: {exc}") from None
    if l0 == 0:
        raise ValidationError("functional has L_0 = 0, so the Sheffer sequence does not exist")
    return SequenceSpec(name, delta.with_order(truncation), functional, nmax, truncation)


def format_spec(spec: SequenceSpec) -> str:
    """Canonical text: fixed key order, explicit truncation, canonical rationals."""
    return "\n".join([
        f"sequence {spec.name}",
        f"delta = {spec.delta.descriptor}",
        f"functional = {spec.functional.descriptor}",
        f"nmax = {spec.nmax}",
        f"truncation = {spec.truncation}",
    ]) + "\n"
