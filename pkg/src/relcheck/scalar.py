"""Exact arithmetic in a chain of real quadratic extensions of Q.

A :class:`ScalarContext` owns an ordered chain of adjoined square roots
Q ⊂ Q(√r1) ⊂ Q(√r1)(√r2) ⊂ …  Every :class:`Scalar` lives in one context
and is stored in normalized coordinates over the chain basis, so equality
of values is equality of representations.  Each adjoined root is the
non-negative one, which fixes a total order compatible with the field
operations.  Only square roots of non-negative elements are supported;
asking for anything past the configured chain depth raises
:class:`CapacityError` (callers must treat that as "unknown", never as a
truth value).

Scalars are immutable values and safe to share; a context's radicand
chain is append-only, so create one context per worker rather than
sharing one across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

LT, EQ, GT = -1, 0, 1

RatLike = Union[int, Fraction]


class ScalarError(Exception):
    pass


class DomainError(ScalarError):
    """Operation outside its domain (negative sqrt, division by zero)."""


class CapacityError(ScalarError):
    """The extension chain depth cap would be exceeded."""


class ScalarParseError(ScalarError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


def _square_free_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s*s*m and m square-free up to the trial bound."""
    assert n > 0
    s, m = 1, 1
    p = 2
    while p * p <= n and p < 10000:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            s *= r
        else:
            m *= n
    return s, m


class Scalar:
    """Element of the context's current extension chain.

    ``level == 0`` wraps a plain Fraction.  ``level == k > 0`` stores the
    pair (a, b), both of level < k with b != 0, meaning a + b*sqrt(r_k).
    """

    __slots__ = ("ctx", "level", "a", "b", "_hash")

    def __init__(self, ctx: "ScalarContext", level: int, a, b) -> None:
        self.ctx = ctx
        self.level = level
        self.a = a
        self.b = b
        self._hash: Optional[int] = None

    # -- construction -------------------------------------------------

    @staticmethod
    def _make(ctx: "ScalarContext", level: int, a: "Scalar | Fraction", b) -> "Scalar":
        if level == 0:
            return Scalar(ctx, 0, a, None)
        assert isinstance(a, Scalar) and isinstance(b, Scalar)
        if b.is_zero():
            return a
        return Scalar(ctx, level, a, b)

    def _parts(self, level: int) -> tuple["Scalar", "Scalar"]:
        """View of self as (lo, hi) relative to `level` >= self.level."""
        if self.level == level:
            return self.a, self.b
        return self, self.ctx.zero

    def _coerce(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx and other.level > 0 and self.level > 0:
                raise ScalarError("mixing scalars from different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rat(other)
        return None

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        if self.level == 0:
            return self.a == 0
        return False  # normalized: b != 0 means irrational part present

    def is_rational(self) -> bool:
        return self.level == 0

    def as_fraction(self) -> Fraction:
        if self.level != 0:
            raise ScalarError("scalar is not rational")
        return self.a

    def sign(self) -> int:
        if self.level == 0:
            f = self.a
            return 0 if f == 0 else (1 if f > 0 else -1)
        sa = self.a.sign()
        sb = self.b.sign()
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        r = self.ctx.radicands[self.level - 1]
        t = (self.a * self.a - self.b * self.b * r).sign()
        assert t != 0, "radicand was a perfect square; chain invariant broken"
        return sa if t > 0 else sb

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        lvl = max(self.level, o.level)
        if lvl == 0:
            return Scalar._make(self.ctx, 0, self.a + o.a, None)
        xa, xb = self._parts(lvl)
        ya, yb = o._parts(lvl)
        return Scalar._make(self.ctx, lvl, xa + ya, xb + yb)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if self.level == 0:
            return Scalar._make(self.ctx, 0, -self.a, None)
        return Scalar(self.ctx, self.level, -self.a, -self.b)

    def __sub__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        lvl = max(self.level, o.level)
        if lvl == 0:
            return Scalar._make(self.ctx, 0, self.a * o.a, None)
        xa, xb = self._parts(lvl)
        ya, yb = o._parts(lvl)
        r = self.ctx.radicands[lvl - 1]
        return Scalar._make(self.ctx, lvl, xa * ya + xb * yb * r, xa * yb + xb * ya)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.level == 0:
            if self.a == 0:
                raise DomainError("division by zero")
            return Scalar._make(self.ctx, 0, 1 / self.a, None)
        r = self.ctx.radicands[self.level - 1]
        den = self.a * self.a - self.b * self.b * r
        assert not den.is_zero(), "radicand was a perfect square; chain invariant broken"
        inv_den = den.inverse()
        return Scalar._make(self.ctx, self.level, self.a * inv_den, -(self.b * inv_den))

    def __truediv__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- order ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.level == 0 and self.a == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.level != other.level:
            return False
        if self.level == 0:
            return self.a == other.a
        return self.a == other.a and self.b == other.b

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __hash__(self) -> int:
        if self._hash is None:
            if self.level == 0:
                self._hash = hash(self.a)
            else:
                self._hash = hash((self.level, self.a, self.b))
        return self._hash

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        if self.level == 0:
            return str(self.a)
        rad = self.ctx.radicands[self.level - 1].render()
        lo = self.a.render()
        b = self.b
        if b.level == 0:
            if b.a < 0:
                return f"{lo} - {-b.a}*sqrt({rad})"
            return f"{lo} + {b.a}*sqrt({rad})"
        return f"{lo} + ({b.render()})*sqrt({rad})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"

    # -- numeric approximation --------------------------------------------

    def approx(self, eps: Fraction = Fraction(1, 10**12)) -> Fraction:
        """Rational approximation within eps (for rendering, never for logic)."""
        if self.level == 0:
            return self.a
        sub_eps = eps / 8
        r = self.ctx.radicands[self.level - 1].approx(sub_eps)
        root = _approx_sqrt(max(r, Fraction(0)), sub_eps)
        return self.a.approx(sub_eps) + self.b.approx(sub_eps) * root

    def __float__(self) -> float:
        return float(self.approx(Fraction(1, 10**15)))


def _approx_sqrt(x: Fraction, eps: Fraction) -> Fraction:
    if x == 0:
        return Fraction(0)
    guess = Fraction(math.isqrt(x.numerator * x.denominator), x.denominator)
    if guess == 0:
        guess = Fraction(1)
    while True:
        nxt = (guess + x / guess) / 2
        if abs(nxt - guess) < eps:
            return nxt
        guess = nxt


class ScalarContext:
    """Append-only chain of adjoined square roots plus scalar factories."""

    def __init__(self, depth_cap: int = 4) -> None:
        self.depth_cap = depth_cap
        self.radicands: list[Scalar] = []
        self.zero = Scalar(self, 0, Fraction(0), None)
        self.one = Scalar(self, 0, Fraction(1), None)

    def rat(self, num: RatLike, den: Optional[int] = None) -> Scalar:
        if den is not None:
            return Scalar(self, 0, Fraction(num, den), None)
        return Scalar(self, 0, Fraction(num), None)

    @property
    def depth(self) -> int:
        return len(self.radicands)

    # -- square roots -----------------------------------------------------

    def sqrt(self, a: Scalar) -> Scalar:
        s = a.sign()
        if s < 0:
            raise DomainError("sqrt of a negative element")
        if s == 0:
            return self.zero
        found = self._sqrt_in_chain(a, len(self.radicands))
        if found is not None:
            return found if found.sign() >= 0 else -found
        if len(self.radicands) >= self.depth_cap:
            raise CapacityError(
                f"extension chain depth cap {self.depth_cap} reached; "
                f"cannot adjoin sqrt({a.render()})"
            )
        rad, coeff = self._canonical_radicand(a)
        if rad is not a:
            found = self._sqrt_in_chain(rad, len(self.radicands))
            if found is not None:
                root = found if found.sign() >= 0 else -found
                return coeff * root
        self.radicands.append(rad)
        lvl = len(self.radicands)
        root = Scalar(self, lvl, self.zero, self.one)
        return coeff * root

    def _canonical_radicand(self, a: Scalar) -> tuple[Scalar, Scalar]:
        """Split a = coeff^2 * rad with rad integral square-free when rational."""
        if a.level != 0:
            return a, self.one
        f = a.as_fraction()
        s, m = _square_free_split(f.numerator * f.denominator)
        return self.rat(m), self.rat(Fraction(s, f.denominator))

    def _sqrt_in_chain(self, a: Scalar, k: int) -> Optional[Scalar]:
        """Find s with s*s == a inside the level-k subfield, or None."""
        if k == 0:
            if a.level != 0:
                return None
            f = a.as_fraction()
            if f < 0:
                return None
            rn = math.isqrt(f.numerator)
            rd = math.isqrt(f.denominator)
            if rn * rn == f.numerator and rd * rd == f.denominator:
                return self.rat(Fraction(rn, rd))
            return None
        r = self.radicands[k - 1]
        a0, a1 = a._parts(k) if a.level == k else (a, self.zero)
        if a1.is_zero():
            sub = self._sqrt_in_chain(a0, k - 1)
            if sub is not None:
                return sub
            # s = y*sqrt(r) with y*y == a0/r
            y = self._sqrt_in_chain(a0 / r, k - 1)
            if y is not None:
                return Scalar._make(self, k, self.zero, y)
            return None
        # s = x + y*sqrt(r): needs sqrt(a0^2 - a1^2 r) in the subfield
        d = self._sqrt_in_chain(a0 * a0 - a1 * a1 * r, k - 1)
        if d is None:
            return None
        for root in (d, -d):
            x2 = (a0 + root) / 2
            x = self._sqrt_in_chain(x2, k - 1)
            if x is not None and not x.is_zero():
                y = a1 / (x * 2)
                cand = Scalar._make(self, k, x, y)
                if cand * cand == a:
                    return cand
        return None

    # -- parsing -----------------------------------------------------------

    def parse(self, text: str) -> Scalar:
        parser = _ScalarParser(self, text)
        value = parser.parse_expr()
        parser.skip_ws()
        if parser.pos != len(text):
            raise ScalarParseError("trailing input", parser.pos)
        return value


class _ScalarParser:
    def __init__(self, ctx: ScalarContext, text: str) -> None:
        self.ctx = ctx
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_expr(self) -> Scalar:
        value = self.parse_term()
        while True:
            self.skip_ws()
            c = self.peek()
            if c == "+":
                self.pos += 1
                value = value + self.parse_term()
            elif c == "-":
                self.pos += 1
                value = value - self.parse_term()
            else:
                return value

    def parse_term(self) -> Scalar:
        value = self.parse_factor()
        while True:
            self.skip_ws()
            c = self.peek()
            if c == "*":
                self.pos += 1
                value = value * self.parse_factor()
            elif c == "/":
                self.pos += 1
                value = value / self.parse_factor()
            else:
                return value

    def parse_factor(self) -> Scalar:
        self.skip_ws()
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.parse_factor()
        if c == "(":
            self.pos += 1
            value = self.parse_expr()
            self.skip_ws()
            if self.peek() != ")":
                raise ScalarParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            self.skip_ws()
            if self.peek() != "(":
                raise ScalarParseError("expected '(' after sqrt", self.pos)
            self.pos += 1
            arg = self.parse_expr()
            self.skip_ws()
            if self.peek() != ")":
                raise ScalarParseError("expected ')'", self.pos)
            self.pos += 1
            return self.ctx.sqrt(arg)
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return self.ctx.rat(int(self.text[start : self.pos]))
        raise ScalarParseError("expected a number, sqrt(...), or '('", self.pos)


def arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Field operation by name; div b=0 raises DomainError."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def compare(a: Scalar, b: Scalar) -> int:
    """Total-order comparison: LT (-1), EQ (0), or GT (1)."""
    return (a - b).sign()
