"""Exact geometry of F^4 with the Minkowski form diag(-1,1,1,1).

Points, lines, null segments, and affine isometries over a
:class:`~relcheck.scalar.ScalarContext`.  Everything here is a pure value:
lines are kept in a canonical parametrization so set equality of lines is
representation equality.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from relcheck.scalar import Scalar, ScalarContext


class IntervalClass(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


class Vec4:
    __slots__ = ("c",)

    def __init__(self, x0: Scalar, x1: Scalar, x2: Scalar, x3: Scalar) -> None:
        self.c = (x0, x1, x2, x3)

    @property
    def ctx(self) -> ScalarContext:
        return self.c[0].ctx

    @property
    def x0(self) -> Scalar:
        return self.c[0]

    def __getitem__(self, i: int) -> Scalar:
        return self.c[i]

    def __iter__(self):
        return iter(self.c)

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(*(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(*(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "Vec4":
        return Vec4(*(-a for a in self.c))

    def scale(self, k: Scalar) -> "Vec4":
        return Vec4(*(a * k for a in self.c))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vec4):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def render(self) -> str:
        return "(" + ", ".join(a.render() for a in self.c) + ")"

    def __repr__(self) -> str:
        return f"Vec4{self.render()}"

    @staticmethod
    def of(ctx: ScalarContext, *vals) -> "Vec4":
        out = []
        for v in vals:
            out.append(v if isinstance(v, Scalar) else ctx.rat(Fraction(v)))
        assert len(out) == 4
        return Vec4(*out)


def inner(x: Vec4, y: Vec4) -> Scalar:
    """Minkowski inner product -x0*y0 + x1*y1 + x2*y2 + x3*y3."""
    return -(x[0] * y[0]) + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]


def lam(v: Vec4) -> Scalar:
    return inner(v, v)


def classify(v: Vec4) -> IntervalClass:
    s = lam(v).sign()
    if s < 0:
        return IntervalClass.TIMELIKE
    if s == 0:
        return IntervalClass.LIGHTLIKE
    return IntervalClass.SPACELIKE


def classify_interval(p: Vec4, q: Vec4) -> IntervalClass:
    return classify(q - p)


def quotient_norm(u: Vec4, d: Vec4) -> Scalar:
    """Induced form on F^4 / <d>: lam of u with its d-component removed.

    Positive definite for timelike d, Lorentzian (signature -++) for
    spacelike d.  Requires lam(d) != 0.
    """
    ud = inner(u, d)
    return lam(u) - ud * ud / lam(d)


def quotient_inner(u: Vec4, v: Vec4, d: Vec4) -> Scalar:
    return inner(u, v) - inner(u, d) * inner(v, d) / lam(d)


def quotient_lift(u: Vec4, d: Vec4) -> Vec4:
    """Representative of u's class orthogonal to d."""
    return u - d.scale(inner(u, d) / lam(d))


# --- Tarski relations on rest-frame space F^3 ------------------------------


def tarski_bw_f(a: Sequence[Scalar], b: Sequence[Scalar], c: Sequence[Scalar]) -> bool:
    """Affine betweenness: b - a = t*(c - a) for some 0 <= t <= 1."""
    ab = [bb - aa for aa, bb in zip(a, b)]
    ac = [cc - aa for aa, cc in zip(a, c)]
    t: Optional[Scalar] = None
    for num, den in zip(ab, ac):
        if not den.is_zero():
            t = num / den
            break
    if t is None:  # a == c
        return all(x.is_zero() for x in ab)
    if t.sign() < 0 or (t - 1).sign() > 0:
        return False
    return all((num - t * den).is_zero() for num, den in zip(ab, ac))


def tarski_eq_f(
    a: Sequence[Scalar], b: Sequence[Scalar], c: Sequence[Scalar], d: Sequence[Scalar]
) -> bool:
    """Squared Euclidean distance ab equals squared distance cd."""

    def sq(p, q):
        acc = None
        for x, y in zip(p, q):
            term = (y - x) * (y - x)
            acc = term if acc is None else acc + term
        return acc

    return sq(a, b) == sq(c, d)


# --- lines and segments -----------------------------------------------------


class Line:
    """Affine line in canonical form.

    dir is scaled so its first non-zero coordinate is 1 and base is the
    unique point of the line whose pivot coordinate is 0; two Lines are
    equal as point sets iff their canonical fields are equal.
    """

    __slots__ = ("base", "dir", "pivot")

    def __init__(self, base: Vec4, direction: Vec4) -> None:
        if direction.is_zero():
            raise ValueError("line direction must be non-zero")
        pivot = next(i for i in range(4) if not direction[i].is_zero())
        d = direction.scale(direction[pivot].inverse())
        b = base - d.scale(base[pivot])
        self.base = b
        self.dir = d
        self.pivot = pivot

    @property
    def ctx(self) -> ScalarContext:
        return self.base.ctx

    @property
    def interval_class(self) -> IntervalClass:
        return classify(self.dir)

    def at(self, t: Scalar) -> Vec4:
        return self.base + self.dir.scale(t)

    def param_of(self, p: Vec4) -> Scalar:
        """Parameter of p along the line (p need not lie on it; pivot rule)."""
        return p[self.pivot]

    def contains(self, p: Vec4) -> bool:
        return (p - self.at(self.param_of(p))).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Line):
            return NotImplemented
        return self.base == other.base and self.dir == other.dir

    def __hash__(self) -> int:
        return hash((self.base, self.dir))

    def __repr__(self) -> str:
        return f"Line(base={self.base.render()}, dir={self.dir.render()})"

    @staticmethod
    def through(p: Vec4, q: Vec4) -> "Line":
        if (q - p).is_zero():
            raise ValueError("two distinct points are required")
        return Line(p, q - p)

    def same_direction(self, other: "Line") -> bool:
        return self.dir == other.dir


class _IdenticalLines:
    __slots__ = ()

    def __repr__(self) -> str:
        return "IDENTICAL_LINES"


IDENTICAL_LINES = _IdenticalLines()

LineMeet = Union[Vec4, _IdenticalLines, None]


def lines_intersect(a: Line, b: Line) -> LineMeet:
    """Unique common point, IDENTICAL_LINES marker, or None."""
    if a == b:
        return IDENTICAL_LINES
    # solve base_a + s*da = base_b + t*db exactly
    rows = []
    rhs = []
    diff = b.base - a.base
    for i in range(4):
        rows.append([a.dir[i], -b.dir[i]])
        rhs.append(diff[i])
    sol = _solve_two_unknowns(rows, rhs)
    if sol is None:
        return None
    s, t = sol
    p = a.at(s)
    if (p - b.at(t)).is_zero():
        return p
    return None


def _solve_two_unknowns(
    rows: list[list[Scalar]], rhs: list[Scalar]
) -> Optional[tuple[Scalar, Scalar]]:
    """Unique solution of an overdetermined 2-unknown linear system, or None.

    None covers both inconsistent and underdetermined systems; callers
    re-verify any returned solution.
    """
    pivot_row = None
    for i, row in enumerate(rows):
        if not row[0].is_zero():
            pivot_row = i
            break
    if pivot_row is None:
        # s is unconstrained: system degenerate in the first unknown
        for i, row in enumerate(rows):
            if not row[1].is_zero():
                t = rhs[i] / row[1]
                ok = all((rows[j][1] * t - rhs[j]).is_zero() for j in range(len(rows)))
                return (rows[0][0].ctx.zero, t) if ok else None
        return None
    r0 = rows[pivot_row]
    b0 = rhs[pivot_row]
    second = None
    for i, row in enumerate(rows):
        if i == pivot_row:
            continue
        coef = row[1] - row[0] * r0[1] / r0[0]
        val = rhs[i] - row[0] * b0 / r0[0]
        if not coef.is_zero():
            second = (coef, val)
            break
    if second is None:
        return None  # underdetermined: parallel or identical
    t = second[1] / second[0]
    s = (b0 - r0[1] * t) / r0[0]
    return s, t


def rank_of(vectors: Iterable[Vec4]) -> int:
    """Exact rank of a list of 4-vectors."""
    rows = [list(v.c) for v in vectors]
    rank = 0
    col = 0
    while col < 4 and rank < len(rows):
        piv = None
        for i in range(rank, len(rows)):
            if not rows[i][col].is_zero():
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


class Segment:
    """Future-directed null segment; beg == end is the degenerate event case."""

    __slots__ = ("beg", "end")

    def __init__(self, beg: Vec4, end: Vec4) -> None:
        d = end - beg
        if not lam(d).is_zero():
            raise ValueError("segment endpoints are not lightlike separated")
        if d.x0.sign() < 0:
            raise ValueError("segment is past-directed (end.x0 < beg.x0)")
        self.beg = beg
        self.end = end

    def is_degenerate(self) -> bool:
        return (self.end - self.beg).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Segment):
            return NotImplemented
        return self.beg == other.beg and self.end == other.end

    def __hash__(self) -> int:
        return hash((self.beg, self.end))

    def __repr__(self) -> str:
        return f"Segment({self.beg.render()} -> {self.end.render()})"


# --- Poincaré maps -----------------------------------------------------------


def _eta_entry(ctx: ScalarContext, i: int, j: int) -> Scalar:
    if i != j:
        return ctx.zero
    return ctx.rat(-1) if i == 0 else ctx.one


class PoincareMap:
    """Affine map x -> L x + t with L^T eta L == eta checked exactly."""

    __slots__ = ("linear", "translation")

    def __init__(self, linear: Sequence[Sequence[Scalar]], translation: Vec4) -> None:
        self.linear = tuple(tuple(row) for row in linear)
        self.translation = translation

    @property
    def ctx(self) -> ScalarContext:
        return self.translation.ctx

    def apply(self, x: Vec4) -> Vec4:
        out = []
        for i in range(4):
            acc = self.ctx.zero
            for j in range(4):
                acc = acc + self.linear[i][j] * x[j]
            out.append(acc)
        return Vec4(*out) + self.translation

    def apply_direction(self, v: Vec4) -> Vec4:
        out = []
        for i in range(4):
            acc = self.ctx.zero
            for j in range(4):
                acc = acc + self.linear[i][j] * v[j]
            out.append(acc)
        return Vec4(*out)

    def validate_isometry(self) -> bool:
        ctx = self.ctx
        for i in range(4):
            for j in range(4):
                acc = ctx.zero
                for k in range(4):
                    acc = acc + self.linear[k][i] * _eta_entry(ctx, k, k) * self.linear[k][j]
                if acc != _eta_entry(ctx, i, j):
                    return False
        return True

    def compose(self, other: "PoincareMap") -> "PoincareMap":
        """self after other: x -> self(other(x))."""
        ctx = self.ctx
        rows = []
        for i in range(4):
            row = []
            for j in range(4):
                acc = ctx.zero
                for k in range(4):
                    acc = acc + self.linear[i][k] * other.linear[k][j]
                row.append(acc)
            rows.append(row)
        return PoincareMap(rows, self.apply(other.translation))

    @staticmethod
    def identity(ctx: ScalarContext) -> "PoincareMap":
        rows = [[ctx.one if i == j else ctx.zero for j in range(4)] for i in range(4)]
        return PoincareMap(rows, Vec4.of(ctx, 0, 0, 0, 0))

    @staticmethod
    def translation_by(v: Vec4) -> "PoincareMap":
        return PoincareMap(PoincareMap.identity(v.ctx).linear, v)

    @staticmethod
    def boost(ctx: ScalarContext, t: Fraction, axis: int = 1) -> "PoincareMap":
        """Exact rational boost along a space axis; velocity v = 2t/(1+t^2)."""
        assert axis in (1, 2, 3)
        den = 1 - t * t
        if den == 0:
            raise ValueError("boost parameter t must satisfy t^2 != 1")
        g = ctx.rat((1 + t * t) / den)
        gv = ctx.rat(2 * t / den)
        m = PoincareMap.identity(ctx)
        rows = [list(r) for r in m.linear]
        rows[0][0] = g
        rows[0][axis] = gv
        rows[axis][0] = gv
        rows[axis][axis] = g
        return PoincareMap(rows, Vec4.of(ctx, 0, 0, 0, 0))

    @staticmethod
    def rotation(ctx: ScalarContext, m: int, n: int, ax1: int = 1, ax2: int = 2) -> "PoincareMap":
        """Rotation by a Pythagorean angle: cos = (m^2-n^2)/(m^2+n^2)."""
        assert ax1 in (1, 2, 3) and ax2 in (1, 2, 3) and ax1 != ax2
        den = m * m + n * n
        if den == 0:
            raise ValueError("rotation parameters must not both be zero")
        c = ctx.rat(Fraction(m * m - n * n, den))
        s = ctx.rat(Fraction(2 * m * n, den))
        pm = PoincareMap.identity(ctx)
        rows = [list(r) for r in pm.linear]
        rows[ax1][ax1] = c
        rows[ax1][ax2] = -s
        rows[ax2][ax1] = s
        rows[ax2][ax2] = c
        return PoincareMap(rows, Vec4.of(ctx, 0, 0, 0, 0))


def apply_poincare(t: PoincareMap, x: Vec4) -> Vec4:
    return t.apply(x)


def validate_isometry(t: PoincareMap) -> bool:
    return t.validate_isometry()
