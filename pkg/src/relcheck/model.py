"""The canonical structures over the tower field and their exact evaluators.

Observers are timelike lines (plus spacelike lines in the FTL structure);
signals are future-directed null segments, with events the degenerate
ones.  Every defined predicate of the language gets a total geometric
decision procedure here; the verifier cross-checks these against the
definitional expansions.  All values are immutable and all evaluators
pure, so everything here can run concurrently (per-worker scalar
contexts).
"""

from __future__ import annotations

import enum
import json
from typing import Optional, Sequence

from relcheck.minkowski import (
    IDENTICAL_LINES,
    IntervalClass,
    Line,
    PoincareMap,
    Segment,
    Vec4,
    classify,
    inner,
    lam,
    lines_intersect,
    quotient_lift,
    quotient_norm,
    rank_of,
)
from relcheck.scalar import Scalar, ScalarContext


class ModelError(Exception):
    pass


class UnsupportedPredicate(ModelError):
    """The predicate's reading is only meaningful for STL observers."""


class ModelKind(enum.Enum):
    STL_ONLY = "stl"
    FTL = "ftl"

    def allows(self, cls: IntervalClass) -> bool:
        if cls is IntervalClass.TIMELIKE:
            return True
        if cls is IntervalClass.SPACELIKE:
            return self is ModelKind.FTL
        return False


class ObserverClass(enum.Enum):
    STL = "stl"
    LIGHTSPEED = "lightspeed"
    FTL = "ftl"


class Incidence(enum.Enum):
    TRANSMITS = "transmits"
    RECEIVES = "receives"
    BOTH = "both"
    NEITHER = "neither"


Observer = Line
Signal = Segment


def event(p: Vec4) -> Signal:
    return Segment(p, p)


def is_event(s: Signal) -> bool:
    return s.is_degenerate()


def transmits(a: Observer, s: Signal) -> bool:
    return a.contains(s.beg)


def receives(a: Observer, s: Signal) -> bool:
    return a.contains(s.end)


def incidence(a: Observer, s: Signal) -> Incidence:
    t = transmits(a, s)
    r = receives(a, s)
    if t and r:
        return Incidence.BOTH
    if t:
        return Incidence.TRANSMITS
    if r:
        return Incidence.RECEIVES
    return Incidence.NEITHER


def observer_class(a: Observer) -> ObserverClass:
    cls = a.interval_class
    if cls is IntervalClass.TIMELIKE:
        return ObserverClass.STL
    if cls is IntervalClass.LIGHTLIKE:
        return ObserverClass.LIGHTSPEED
    return ObserverClass.FTL


# --- elementary relations between observers ----------------------------------


def meets(a: Observer, b: Observer) -> bool:
    m = lines_intersect(a, b)
    return m is IDENTICAL_LINES or isinstance(m, Vec4)


def parallel(a: Observer, b: Observer) -> bool:
    """Identical, or coplanar and disjoint; for lines this is equal canonical
    direction."""
    return a == b or a.dir == b.dir


def coplanar(a: Observer, b: Observer) -> bool:
    return rank_of([a.dir, b.dir, b.base - a.base]) <= 2


# --- events -------------------------------------------------------------------


def lightlike(e1: Signal, e2: Signal) -> bool:
    """Relation L: a (possibly degenerate) future signal from e1 to e2."""
    if not (is_event(e1) and is_event(e2)):
        return False
    d = e2.beg - e1.beg
    return lam(d).is_zero() and d.x0.sign() >= 0


def light_between(e1: Signal, e2: Signal) -> bool:
    return lightlike(e1, e2) or lightlike(e2, e1)


def chron_precedes(e1: Signal, e2: Signal) -> bool:
    if not (is_event(e1) and is_event(e2)):
        return False
    d = e2.beg - e1.beg
    return lam(d).sign() < 0 and d.x0.sign() > 0


# --- null connections between a point and a line ------------------------------


def null_params(p: Vec4, line: Line) -> list[Scalar]:
    """Exact parameters t with lam(line.at(t) - p) == 0 (0, 1, or 2 of them).

    May extend the scalar chain by one square root.
    """
    ctx = p.ctx
    d = line.dir
    u = line.base - p
    a = lam(d)
    assert not a.is_zero(), "null direction lines are not supported"
    b = inner(u, d) * 2
    c = lam(u)
    disc = b * b - a * c * 4
    s = disc.sign()
    if s < 0:
        return []
    if s == 0:
        return [-b / (a * 2)]
    r = ctx.sqrt(disc)
    return [(-b - r) / (a * 2), (-b + r) / (a * 2)]


def count_future_null_to_line(p: Vec4, line: Line) -> int:
    """Number of future null segments with Beg = p and End on the line.

    Exact and sqrt-free: root time-components are signed through Vieta's
    relations, so repeated counting cannot grow the scalar chain.
    """
    d = line.dir
    u = line.base - p
    a = lam(d)
    b = inner(u, d) * 2
    c = lam(u)
    disc = b * b - a * c * 4
    sd = disc.sign()
    if sd < 0:
        return 0
    u0, d0 = u.x0, d.x0
    if sd == 0:
        t = -b / (a * 2)
        v0 = u0 + t * d0
        sv = v0.sign()
        if sv > 0:
            return 1
        if sv == 0:
            # null with zero time component: the zero vector, p on the line
            return 1
        return 0
    # two roots t1 < t2: signs of u0 + ti*d0 via sum and product
    total = u0 * 2 + d0 * (-b / a)  # v0(t1) + v0(t2)
    prod = u0 * u0 + u0 * d0 * (-b / a) + d0 * d0 * (c / a)
    sp = prod.sign()
    st = total.sign()
    if sp > 0:
        return 2 if st > 0 else 0
    if sp < 0:
        return 1
    # one root has v0 == 0, i.e. p on the line; the other contributes st
    return 1 + (1 if st > 0 else 0)


def witness_zero_and_two(line: Line) -> Optional[tuple[Vec4, Vec4]]:
    """For a non-timelike line: an event with 0 and one with 2 future
    connections ending on the line (None for timelike lines)."""
    if line.interval_class is IntervalClass.TIMELIKE:
        return None
    ctx = line.ctx
    d = line.dir
    # spacelike offset orthogonal to d: some coordinate vector's rejection
    w_space = None
    w_time = None
    for i in (1, 2, 3, 0):
        e_i = Vec4.of(ctx, *[1 if j == i else 0 for j in range(4)])
        w = quotient_lift(e_i, d)
        if w.is_zero():
            continue
        sign = lam(w).sign()
        if sign > 0 and w_space is None:
            w_space = w
        if sign < 0 and w_time is None:
            w_time = w
    assert w_space is not None and w_time is not None
    p_zero = line.base + w_space
    if w_time.x0.sign() > 0:
        w_time = -w_time
    p_two = line.base + w_time
    assert count_future_null_to_line(p_zero, line) == 0
    assert count_future_null_to_line(p_two, line) == 2
    return p_zero, p_two


def is_stl_by_counting(line: Line) -> bool:
    """Definitional STL reading: every event has exactly one future null
    segment to the line.  Timelike lines always do; otherwise a verified
    witness with count != 1 exists."""
    if line.interval_class is IntervalClass.TIMELIKE:
        return True
    assert witness_zero_and_two(line) is not None
    return False


# --- betweenness / equidistance on a timelike parallel class -----------------


def _parallel_family(lines: Sequence[Line]) -> Optional[Vec4]:
    first = lines[0]
    for other in lines[1:]:
        if other.dir != first.dir:
            return None
    return first.dir


def bw_geo(a: Observer, b: Observer, c: Observer) -> bool:
    """Quotient betweenness on a timelike parallel class (false otherwise)."""
    d = _parallel_family([a, b, c])
    if d is None or classify(d) is not IntervalClass.TIMELIKE:
        return False
    ab = b.base - a.base
    ac = c.base - a.base
    # affine betweenness of the canonical base points
    t: Optional[Scalar] = None
    for i in range(4):
        if not ac[i].is_zero():
            t = ab[i] / ac[i]
            break
    if t is None:
        return ab.is_zero()
    if t.sign() < 0 or (t - 1).sign() > 0:
        return False
    return (ab - ac.scale(t)).is_zero()


def eq_geo(a: Observer, b: Observer, c: Observer, d: Observer) -> bool:
    dd = _parallel_family([a, b, c, d])
    if dd is None or classify(dd) is not IntervalClass.TIMELIKE:
        return False
    return quotient_norm(b.base - a.base, dd) == quotient_norm(d.base - c.base, dd)


# --- simultaneity and frame time ----------------------------------------------


def sim_geo(c: Observer, e1: Signal, e2: Signal) -> bool:
    if observer_class(c) is not ObserverClass.STL:
        raise UnsupportedPredicate("Sim requires a slower-than-light observer")
    if not (is_event(e1) and is_event(e2)):
        return False
    return inner(e2.beg - e1.beg, c.dir).is_zero()


def delta_geo(a: Observer, a0: Signal, a1: Signal, b0: Signal, b1: Signal) -> bool:
    if observer_class(a) is not ObserverClass.STL:
        raise UnsupportedPredicate("Delta requires a slower-than-light observer")
    if not all(is_event(x) for x in (a0, a1, b0, b1)):
        return False
    ga = inner(a1.beg - a0.beg, a.dir)
    gb = inner(b1.beg - b0.beg, a.dir)
    return ga * ga == gb * gb


def sim_project(a: Observer, e: Signal) -> Vec4:
    """The unique point x on a with <e - x, dir> == 0 (timelike a)."""
    d = a.dir
    t = inner(e.beg - a.base, d) / lam(d)
    return a.at(t)


def tau_geo(b: Observer, e1: Signal, e2: Signal) -> Optional[Observer]:
    """The observer c = tau_b(e1, e2), or None when the preconditions fail."""
    if not chron_precedes(e1, e2):
        return None
    a = Line.through(e1.beg, e2.beg)
    if observer_class(a) is not ObserverClass.STL:
        return None
    if not parallel(b, a) or b == a:
        return None
    gap_sq = -lam(e2.beg - e1.beg)  # squared frame time along a
    offset = a.base - b.base
    qn = quotient_norm(offset, a.dir)
    assert qn.sign() > 0
    ctx = b.ctx
    t = ctx.sqrt(gap_sq / qn)
    c_base = a.base + offset.scale(t)
    return Line(c_base, a.dir)


def tau_ftl(b: Observer, e1: Signal, e2: Signal) -> Optional[Observer]:
    # the transmitting observer of two <<-ordered events is forced timelike,
    # so the FTL variant coincides with the plain one on its whole domain
    return tau_geo(b, e1, e2)


# --- relatability, optical planes, and the rho-generalized relations ----------


def _conic_coefficients(a: Line, b: Line):
    u = b.base - a.base
    return (
        lam(a.dir),
        -(inner(a.dir, b.dir) * 2),
        lam(b.dir),
        -(inner(u, a.dir) * 2),
        inner(u, b.dir) * 2,
        lam(u),
    )


def rho(a: Observer, b: Observer) -> bool:
    """Some null segment connects a point of a with a point of b."""
    A, B, C, D, E, F = _conic_coefficients(a, b)
    # f(s,t) = A s^2 + B s t + C t^2 + D s + E t + F; A != 0 for observers.
    # Zero exists iff the s-discriminant (a quadratic in t) is somewhere >= 0.
    l2 = B * B - A * C * 4
    lin = B * D * 2 - A * E * 4
    const = D * D - A * F * 4
    sl = l2.sign()
    if sl > 0:
        return True
    if sl == 0:
        if not lin.is_zero():
            return True
        return const.sign() >= 0
    # downward parabola: maximum value at the vertex
    vmax = const - lin * lin / (l2 * 4)
    return vmax.sign() >= 0


def rho_witness(a: Observer, b: Observer) -> Optional[tuple[Vec4, Vec4]]:
    """A null-connected point pair (p on a, q on b), constructed exactly."""
    if not rho(a, b):
        return None
    ctx = a.ctx
    A, B, C, D, E, F = _conic_coefficients(a, b)
    l2 = B * B - A * C * 4
    lin = B * D * 2 - A * E * 4
    const = D * D - A * F * 4

    def disc_at(t: Scalar) -> Scalar:
        return l2 * t * t + lin * t + const

    t = None
    if l2.sign() < 0:
        t = -lin / (l2 * 2)
    else:
        for cand in range(0, 40):
            for sign in (1, -1):
                probe = ctx.rat(cand * sign)
                if disc_at(probe).sign() >= 0:
                    t = probe
                    break
            if t is not None:
                break
        assert t is not None
    dsc = disc_at(t)
    assert dsc.sign() >= 0
    root = ctx.sqrt(dsc)
    s = (-(B * t + D) + root) / (A * 2)
    p = a.at(s)
    q = b.at(t)
    assert lam(q - p).is_zero()
    return p, q


def strict_rho_parallel(a: Observer, b: Observer) -> bool:
    """Parallel pair with two distinct null connections from each event
    (discriminant strictly positive)."""
    if not parallel(a, b) or a == b:
        return False
    d = a.dir
    q = quotient_norm(b.base - a.base, d)
    return (-(lam(d)) * q).sign() > 0


def optical_plane(a: Observer, b: Observer) -> bool:
    if not parallel(a, b) or a == b:
        return False
    d = a.dir
    if classify(d) is not IntervalClass.SPACELIKE:
        return False
    u = b.base - a.base
    if quotient_lift(u, d).is_zero():
        return False
    return quotient_norm(u, d).is_zero()


def null_gap_params(u: Vec4, d: Vec4) -> list[Scalar]:
    """Exact r with lam(u + r d) == 0 (for parallel-line event solving)."""
    ctx = u.ctx
    a = lam(d)
    b = inner(u, d) * 2
    c = lam(u)
    disc = b * b - a * c * 4
    s = disc.sign()
    if s < 0:
        return []
    if s == 0:
        return [-b / (a * 2)]
    r = ctx.sqrt(disc)
    return [(-b - r) / (a * 2), (-b + r) / (a * 2)]


def bw_rho(a: Observer, b: Observer, c: Observer) -> bool:
    """Betweenness by null-signal triangles on any common direction class."""
    d = _parallel_family([a, b, c])
    if d is None:
        return False
    u_ab = b.base - a.base
    u_ac = c.base - a.base
    u_bc = c.base - b.base
    for r1 in null_gap_params(u_ab, d):
        v_ab = u_ab + d.scale(r1)
        for r2 in null_gap_params(u_ac, d):
            v_ac = u_ac + d.scale(r2)
            v_bc = u_bc + d.scale(r2 - r1)
            if not lam(v_bc).is_zero():
                continue
            signs = [v.x0.sign() for v in (v_ab, v_ac, v_bc)]
            if all(s >= 0 for s in signs) or all(s <= 0 for s in signs):
                return True
    return False


def eq_rho(a: Observer, b: Observer, c: Observer, d: Observer) -> bool:
    dd = _parallel_family([a, b, c, d])
    if dd is None:
        return False
    if a == b and c == d:
        return True
    if optical_plane(a, b) and optical_plane(c, d):
        return True
    if strict_rho_parallel(a, b) and strict_rho_parallel(c, d):
        return quotient_norm(b.base - a.base, dd) == quotient_norm(d.base - c.base, dd)
    return False


def sim_ftl(c: Observer, e1: Signal, e2: Signal) -> bool:
    """Simultaneity for any observer class: orthogonality plus the
    witness-pair realizability condition."""
    if not (is_event(e1) and is_event(e2)):
        return False
    u = e2.beg - e1.beg
    if u.is_zero():
        return True
    if not inner(u, c.dir).is_zero():
        return False
    cls = c.interval_class
    if cls is IntervalClass.TIMELIKE:
        return True
    # spacelike class: the two witness events must be distinct, which needs
    # the separation to be strictly timelike
    return lam(u).sign() < 0


def delta_ftl(a: Observer, a0: Signal, a1: Signal, b0: Signal, b1: Signal) -> bool:
    if not all(is_event(x) for x in (a0, a1, b0, b1)):
        return False
    if observer_class(a) is ObserverClass.STL:
        return delta_geo(a, a0, a1, b0, b1)
    # spacelike a: each event needs a realizable SimFTL projection onto a
    for e in (a0, a1, b0, b1):
        x = sim_project(a, e)
        u = e.beg - x
        if not (u.is_zero() or lam(u).sign() < 0):
            return False
    ga = inner(a1.beg - a0.beg, a.dir)
    gb = inner(b1.beg - b0.beg, a.dir)
    return ga * ga == gb * gb


# --- the relatable dual --------------------------------------------------------


def dual_candidates(a: Observer, b: Observer) -> list[Observer]:
    """In-plane dual candidates of a with respect to b (future-signed first).

    Empty unless a || b, spacelike class, and not relatable.  The printed
    clauses admit a one-parameter family; the two candidates here span the
    timelike plane through the quotient offset.
    """
    if not parallel(a, b) or a == b:
        return []
    d = a.dir
    if classify(d) is not IntervalClass.SPACELIKE:
        return []
    u = b.base - a.base
    bigU = quotient_lift(u, d)
    if bigU.is_zero() or quotient_norm(u, d).sign() <= 0:
        return []  # relatable (or same quotient class): no dual
    ctx = a.ctx
    e0 = Vec4.of(ctx, 1, 0, 0, 0)
    t_raw = quotient_lift(e0, d)
    t_vec = t_raw - bigU.scale(inner(t_raw, bigU) / lam(bigU))
    assert lam(t_vec).sign() < 0
    ratio = -(lam(t_vec)) / lam(bigU)
    rho_hat = ctx.sqrt(ratio)
    out = []
    for sign in (1, -1):
        n = bigU.scale(rho_hat * ctx.rat(sign)) + t_vec
        kappa = lam(bigU) / inner(bigU, n)
        shift = n.scale(kappa)
        out.append(Line(a.base + shift, d))
    out.sort(key=lambda line: 0 if (line.base - a.base).x0.sign() >= 0 else 1)
    return out


def relatable_dual(a: Observer, b: Observer) -> Optional[Observer]:
    cands = dual_candidates(a, b)
    return cands[0] if cands else None


def midline(a: Observer, ap: Observer) -> Observer:
    half = a.ctx.rat(1, 2)
    return Line((a.base + ap.base).scale(half), a.dir)


def dual_definitional_check(ap: Observer, a: Observer, b: Observer) -> bool:
    """Decision for the Dual clause, derived from its printed conjuncts:
    chain rigidity forces the OP witness onto the quotient midpoint line."""
    if parallel(a, b) is False or a == b:
        return False
    if rho(a, b):
        return False
    if not optical_plane(a, ap):
        return False
    mid = midline(a, ap)
    if not optical_plane(b, mid):
        return False
    return bw_rho(a, mid, ap)


def bw_ftl(a: Observer, b: Observer, c: Observer) -> bool:
    if bw_rho(a, b, c):
        return True
    for a2 in dual_candidates(a, b):
        for c2 in dual_candidates(c, b):
            if bw_rho(a2, b, c2):
                return True
    return False


def eq_ftl(a: Observer, b: Observer, c: Observer, d: Observer) -> bool:
    if eq_rho(a, b, c, d):
        return True
    for b2 in dual_candidates(b, a):
        for d2 in dual_candidates(d, c):
            if eq_rho(a, b2, c, d2):
                return True
    return False


# --- scenarios -----------------------------------------------------------------


class Scenario:
    """Named observers and signals over one scalar context."""

    def __init__(
        self,
        kind: ModelKind,
        ctx: ScalarContext,
        observers: dict[str, Observer],
        signals: dict[str, Signal],
    ) -> None:
        self.kind = kind
        self.ctx = ctx
        self.observers = observers
        self.signals = signals

    @staticmethod
    def from_dict(data: dict, ctx: Optional[ScalarContext] = None) -> "Scenario":
        ctx = ctx or ScalarContext()
        kind_text = data.get("kind")
        if kind_text not in ("stl", "ftl"):
            raise ModelError(f"unknown model kind {kind_text!r} (want 'stl' or 'ftl')")
        kind = ModelKind.STL_ONLY if kind_text == "stl" else ModelKind.FTL
        observers: dict[str, Observer] = {}
        for name, entry in (data.get("observers") or {}).items():
            base = _vec(ctx, entry, "base", f"observer {name!r}")
            direction = _vec(ctx, entry, "dir", f"observer {name!r}")
            if direction.is_zero():
                raise ModelError(f"observer {name!r}: direction is zero")
            line = Line(base, direction)
            cls = line.interval_class
            if cls is IntervalClass.LIGHTLIKE:
                raise ModelError(f"observer {name!r}: direction is lightlike")
            if not kind.allows(cls):
                raise ModelError(
                    f"observer {name!r}: {cls.value} worldline not allowed in the"
                    f" {kind_text} structure"
                )
            observers[name] = line
        signals: dict[str, Signal] = {}
        for name, entry in (data.get("signals") or {}).items():
            beg = _vec(ctx, entry, "beg", f"signal {name!r}")
            end = _vec(ctx, entry, "end", f"signal {name!r}")
            if not lam(end - beg).is_zero():
                raise ModelError(f"signal {name!r}: endpoints are not null separated")
            if (end - beg).x0.sign() < 0:
                raise ModelError(f"signal {name!r}: past-directed (end before beg)")
            signals[name] = Segment(beg, end)
        return Scenario(kind, ctx, observers, signals)

    @staticmethod
    def load(path: str, ctx: Optional[ScalarContext] = None) -> "Scenario":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as err:
                raise ModelError(f"{path}: not valid JSON: {err}") from err
        return Scenario.from_dict(data, ctx)

    def to_dict(self) -> dict:
        return {
            "kind": "stl" if self.kind is ModelKind.STL_ONLY else "ftl",
            "observers": {
                name: {
                    "base": [c.render() for c in line.base],
                    "dir": [c.render() for c in line.dir],
                }
                for name, line in self.observers.items()
            },
            "signals": {
                name: {
                    "beg": [c.render() for c in seg.beg],
                    "end": [c.render() for c in seg.end],
                }
                for name, seg in self.signals.items()
            },
        }


def _vec(ctx: ScalarContext, entry: dict, key: str, what: str) -> Vec4:
    arr = entry.get(key)
    if not isinstance(arr, list) or len(arr) != 4:
        raise ModelError(f"{what}: {key!r} must be an array of 4 scalar strings")
    coords = []
    for i, text in enumerate(arr):
        try:
            coords.append(ctx.parse(str(text)))
        except Exception as err:
            raise ModelError(f"{what}: {key}[{i}] = {text!r}: {err}") from err
    return Vec4(*coords)


GEOMETRIC_PREDICATES = {
    "Ev": lambda args: is_event(args[0]),
    "M": lambda args: meets(args[0], args[1]),
    "Cop": lambda args: coplanar(args[0], args[1]),
    "Par": lambda args: parallel(args[0], args[1]),
    "L": lambda args: lightlike(args[0], args[1]),
    "Lsym": lambda args: light_between(args[0], args[1]),
    "Bw": lambda args: bw_geo(args[0], args[1], args[2]),
    "Eq": lambda args: eq_geo(args[0], args[1], args[2], args[3]),
    "Sim": lambda args: sim_geo(args[0], args[1], args[2]),
    "Delta": lambda args: delta_geo(*args),
    "Prec": lambda args: chron_precedes(args[0], args[1]),
    "STL": lambda args: observer_class(args[0]) is ObserverClass.STL,
    "Lightspeed": lambda args: observer_class(args[0]) is ObserverClass.LIGHTSPEED,
    "FTL": lambda args: observer_class(args[0]) is ObserverClass.FTL,
    "TR": lambda args: transmits(args[0], args[1]) or receives(args[0], args[1]),
    "Rho": lambda args: rho(args[0], args[1]),
    "OP": lambda args: optical_plane(args[0], args[1]),
    "BwRho": lambda args: bw_rho(args[0], args[1], args[2]),
    "EqRho": lambda args: eq_rho(*args),
    "BwFTL": lambda args: bw_ftl(args[0], args[1], args[2]),
    "EqFTL": lambda args: eq_ftl(*args),
    "SimFTL": lambda args: sim_ftl(args[0], args[1], args[2]),
    "DeltaFTL": lambda args: delta_ftl(*args),
    "T": lambda args: transmits(args[0], args[1]),
    "R": lambda args: receives(args[0], args[1]),
}
