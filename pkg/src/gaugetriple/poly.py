"""
Sparse multivariate polynomials over the rationals.

A polynomial in ``nvars`` chart coordinates ``x0 ... x{nvars-1}`` is a map
from exponent vectors to nonzero :class:`fractions.Fraction` coefficients.
Instances are immutable; every arithmetic operation returns a new object.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple, Union

from .errors import PolyParseError, ShapeError

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def _grlex_key(exps: Exponent):
    # higher total degree first, then lexicographically larger exponent first
    return (-sum(exps), tuple(-e for e in exps))


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Dict[Exponent, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent vector {exps} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = c
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already normalized
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise ShapeError(f"variable x{i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def parse(cls, text: str, nvars: int) -> "Poly":
        return _Parser(text, nvars).parse()

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ShapeError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Poly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def partial(self, axis: int) -> "Poly":
        """Formal partial derivative with respect to ``x{axis}``."""
        if not 0 <= axis < self.nvars:
            raise ShapeError(f"axis {axis} out of range for {self.nvars} variables")
        terms = {}
        for exps, c in self.terms.items():
            k = exps[axis]
            if k:
                e = list(exps)
                e[axis] = k - 1
                terms[tuple(e)] = c * k
        return Poly._raw(self.nvars, terms)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ShapeError(f"point has {len(point)} entries, expected {self.nvars}")
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    __call__ = evaluate

    def compose(self, subs: Sequence["Poly"], nvars: int | None = None) -> "Poly":
        """Substitute ``subs[i]`` for ``x{i}``; all substitutes share one ring."""
        if len(subs) != self.nvars:
            raise ShapeError(f"need {self.nvars} substitutes, got {len(subs)}")
        if nvars is None:
            if not subs:
                raise ShapeError("target variable count required for an empty substitution")
            nvars = subs[0].nvars
        for s in subs:
            if s.nvars != nvars:
                raise ShapeError("substitutes live in different rings")
        result = Poly.zero(nvars)
        powers: Dict[Tuple[int, int], Poly] = {}
        for exps, c in self.terms.items():
            term = Poly.const(nvars, c)
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = subs[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def extend(self, nvars: int, offset: int = 0) -> "Poly":
        """Embed into a ring with more variables, shifting indices by ``offset``."""
        if offset + self.nvars > nvars:
            raise ShapeError("target ring too small")
        pad_after = nvars - offset - self.nvars
        return Poly._raw(
            nvars,
            {(0,) * offset + e + (0,) * pad_after: c for e, c in self.terms.items()},
        )

    # -- comparison and printing -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                f"x{j}" if e == 1 else f"x{j}^{e}" for j, e in enumerate(exps) if e
            )
            mag = abs(c)
            if not mono:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_rational(mag)}*{mono}"
            if i == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"Poly({self.nvars}, {str(self)!r})"


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    total = Poly.zero(nvars)
    for p in polys:
        total = total + p
    return total


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([A-Za-z_]\w*)|(.))")


class _Parser:
    """Recursive descent over ``+ -`` < ``*`` < unary minus < ``^``."""

    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            pos = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("int", int(m.group(1)), pos))
            elif m.group(2):
                self.tokens.append(("var", int(m.group(2)[1:]), pos))
            elif m.group(3):
                raise PolyParseError(f"unknown variable {m.group(3)!r}", text, pos)
            else:
                self.tokens.append(("op", m.group(4), pos))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message):
        raise PolyParseError(message, self.text, self.peek()[2])

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> Poly:
        result = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Poly:
        result = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            result = result * self.unary()
        return result

    def unary(self) -> Poly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, _ = self.peek()
            if kind != "int":
                self.error("exponent must be a nonnegative integer literal")
            self.take()
            base = base ** value
            if self.peek()[:2] == ("op", "^"):
                self.error("chained '^' is ambiguous; use parentheses")
        return base

    def atom(self) -> Poly:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            num = Fraction(value)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, den, _ = self.peek()
                if k2 != "int":
                    self.error("rational literal needs an integer denominator")
                if den == 0:
                    self.error("zero denominator")
                self.take()
                num = Fraction(value, den)
            return Poly.const(self.nvars, num)
        if kind == "var":
            self.take()
            if value >= self.nvars:
                raise PolyParseError(
                    f"variable x{value} out of range for {self.nvars} variables", self.text, pos
                )
            return Poly.var(self.nvars, value)
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.error("unexpected end of expression")
        self.error(f"unexpected {value!r}")
