import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcheck.scalar import (
    EQ,
    GT,
    LT,
    CapacityError,
    DomainError,
    Scalar,
    ScalarContext,
    ScalarParseError,
    arith,
    compare,
)


# --- independent oracles -------------------------------------------------
#
# The interval oracle compares tower values through shrinking rational
# enclosures computed only from radicand enclosures, never through
# Scalar.sign().


def _interval_sqrt(lo: Fraction, hi: Fraction, steps: int) -> tuple[Fraction, Fraction]:
    assert lo >= 0
    a, b = Fraction(0), max(hi, Fraction(1)) + 1
    for _ in range(steps):
        mid = (a + b) / 2
        if mid * mid <= lo:
            a = mid
        else:
            b = mid
    lo_root = a
    a, b = Fraction(0), max(hi, Fraction(1)) + 1
    for _ in range(steps):
        mid = (a + b) / 2
        if mid * mid < hi:
            a = mid
        else:
            b = mid
    return lo_root, b


def interval_enclosure(s: Scalar, steps: int = 80) -> tuple[Fraction, Fraction]:
    if s.level == 0:
        f = s.as_fraction()
        return f, f
    rad_lo, rad_hi = interval_enclosure(s.ctx.radicands[s.level - 1], steps)
    root_lo, root_hi = _interval_sqrt(rad_lo, rad_hi, steps)
    a_lo, a_hi = interval_enclosure(s.a, steps)
    b_lo, b_hi = interval_enclosure(s.b, steps)
    candidates = [
        b_lo * root_lo,
        b_lo * root_hi,
        b_hi * root_lo,
        b_hi * root_hi,
    ]
    return a_lo + min(candidates), a_hi + max(candidates)


def oracle_compare(x: Scalar, y: Scalar) -> int:
    for steps in (60, 120, 240):
        lo1, hi1 = interval_enclosure(x, steps)
        lo2, hi2 = interval_enclosure(y, steps)
        if hi1 < lo2:
            return LT
        if hi2 < lo1:
            return GT
    # enclosures keep overlapping: fall back to exact difference of squares
    # only through representation equality
    return EQ if x == y else (LT if float(x) < float(y) else GT)


# --- operation examples with frozen values --------------------------------------------


def test_arith_rational_add():
    ctx = ScalarContext()
    assert arith("add", ctx.rat(1, 2), ctx.rat(1, 3)) == Fraction(5, 6)


def test_arith_sqrt2_squared():
    ctx = ScalarContext()
    r2 = ctx.sqrt(ctx.rat(2))
    assert arith("mul", r2, r2) == 2


def test_arith_div_rationalizes():
    # 1/sqrt(2) equals (1/2)*sqrt(2); oracle: squaring gives 1/2 again
    ctx = ScalarContext()
    r2 = ctx.sqrt(ctx.rat(2))
    q = arith("div", ctx.one, r2)
    assert q * q == Fraction(1, 2)
    assert q == ctx.rat(1, 2) * r2
    assert q.render() == "0 + 1/2*sqrt(2)"


def test_div_by_zero_is_domain_error():
    ctx = ScalarContext()
    with pytest.raises(DomainError):
        arith("div", ctx.one, ctx.zero)


def test_compare_sqrt2_three_halves():
    ctx = ScalarContext()
    r2 = ctx.sqrt(ctx.rat(2))
    assert compare(r2, ctx.rat(3, 2)) == LT
    assert oracle_compare(r2, ctx.rat(3, 2)) == LT


def test_compare_reflexive_and_negated_root():
    ctx = ScalarContext()
    x = ctx.rat(7, 3) + ctx.sqrt(ctx.rat(5))
    assert compare(x, x) == EQ
    assert compare(-ctx.sqrt(ctx.rat(2)), ctx.zero) == LT


def test_sqrt_perfect_square():
    ctx = ScalarContext()
    assert ctx.sqrt(ctx.rat(9, 4)) == Fraction(3, 2)
    assert ctx.depth == 0


def test_sqrt_defining_identity():
    ctx = ScalarContext()
    r2 = ctx.sqrt(ctx.rat(2))
    assert r2 * r2 == 2
    assert r2 > 0


def test_sqrt_denesting():
    # sqrt(3 + 2*sqrt(2)) == 1 + sqrt(2); oracle: square the candidate
    ctx = ScalarContext()
    r2 = ctx.sqrt(ctx.rat(2))
    nested = ctx.rat(3) + ctx.rat(2) * r2
    candidate = ctx.one + r2
    assert candidate * candidate == nested
    s = ctx.sqrt(nested)
    assert s == candidate
    assert ctx.depth == 1


def test_sqrt_negative_is_domain_error():
    ctx = ScalarContext()
    with pytest.raises(DomainError):
        ctx.sqrt(ctx.rat(-1))


def test_depth_cap_is_capacity_error():
    ctx = ScalarContext(depth_cap=2)
    ctx.sqrt(ctx.rat(2))
    ctx.sqrt(ctx.rat(3))
    with pytest.raises(CapacityError):
        ctx.sqrt(ctx.rat(5))


def test_sqrt_reuses_chain_for_multiples():
    ctx = ScalarContext()
    r2 = ctx.sqrt(ctx.rat(2))
    r8 = ctx.sqrt(ctx.rat(8))
    assert r8 == ctx.rat(2) * r2
    assert ctx.depth == 1


# --- randomized field/order identities (acceptance criterion 9 core) ------


def _random_rational(rng: random.Random, bound: int = 50) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def test_field_identities_1000_rationals():
    rng = random.Random(20240817)
    ctx = ScalarContext()
    for _ in range(1000):
        a = ctx.rat(_random_rational(rng))
        b = ctx.rat(_random_rational(rng))
        c = ctx.rat(_random_rational(rng))
        assert a + (-a) == 0
        if not a.is_zero():
            assert a * a.inverse() == 1
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        # order compatibility
        if a < b:
            assert a + c < b + c
        if a > 0 and b > 0:
            assert a * b > 0


def test_field_identities_on_tower_elements():
    rng = random.Random(7)
    for _ in range(120):
        ctx = ScalarContext()
        r = ctx.sqrt(ctx.rat(rng.choice([2, 3, 5, 7])))
        a = ctx.rat(_random_rational(rng)) + ctx.rat(_random_rational(rng)) * r
        b = ctx.rat(_random_rational(rng)) + ctx.rat(_random_rational(rng)) * r
        c = ctx.rat(_random_rational(rng)) + ctx.rat(_random_rational(rng)) * r
        assert a + (-a) == 0
        if not a.is_zero():
            assert a * a.inverse() == 1
        assert a * (b + c) == a * b + a * c
        if a < b:
            assert a + c < b + c


def test_sqrt_square_roundtrip_500():
    rng = random.Random(99)
    for _ in range(500):
        ctx = ScalarContext()
        base = ctx.rat(abs(_random_rational(rng)) + Fraction(1, 7))
        extra = rng.choice([None, 2, 3, 5])
        val = base
        if extra is not None:
            val = base + ctx.sqrt(ctx.rat(extra))
        s = ctx.sqrt(val)
        assert s * s == val
        assert s >= 0


def test_compare_total_order_random_triples():
    rng = random.Random(4242)
    for _ in range(300):
        ctx = ScalarContext()
        r = ctx.sqrt(ctx.rat(rng.choice([2, 3, 5])))
        vals = [
            ctx.rat(_random_rational(rng, 9)) + ctx.rat(_random_rational(rng, 9)) * r
            for _ in range(3)
        ]
        a, b, c = vals
        # trichotomy
        assert sum(1 for f in (a < b, a == b, a > b) if f) == 1
        # transitivity
        if a < b and b < c:
            assert a < c
        if a <= b and b <= c:
            assert a <= c


def test_compare_agrees_with_interval_oracle():
    rng = random.Random(31337)
    for _ in range(150):
        ctx = ScalarContext()
        r1 = ctx.sqrt(ctx.rat(rng.choice([2, 3, 5, 7, 11])))
        x = ctx.rat(_random_rational(rng, 12)) + ctx.rat(_random_rational(rng, 12)) * r1
        y = ctx.rat(_random_rational(rng, 12)) + ctx.rat(_random_rational(rng, 12)) * r1
        assert compare(x, y) == oracle_compare(x, y)


@settings(max_examples=200, deadline=None)
@given(
    st.fractions(min_value=-30, max_value=30),
    st.fractions(min_value=-30, max_value=30),
    st.fractions(min_value=-30, max_value=30),
)
def test_ordered_field_axioms_hypothesis(fa, fb, fc):
    ctx = ScalarContext()
    a, b, c = ctx.rat(fa), ctx.rat(fb), ctx.rat(fc)
    assert (a + b) * c == a * c + b * c
    if a < b:
        assert a + c < b + c
    if a > 0 and b > 0:
        assert a * b > 0


# --- parse / render -------------------------------------------------------


def test_parse_grammar_examples():
    ctx = ScalarContext()
    v = ctx.parse("3/2 + 1/2*sqrt(5)")
    assert v == ctx.rat(3, 2) + ctx.rat(1, 2) * ctx.sqrt(ctx.rat(5))
    assert ctx.parse("-7/3") == Fraction(-7, 3)
    assert ctx.parse("4") == 4


def test_render_parse_roundtrip_bit_exact():
    rng = random.Random(5150)
    for _ in range(200):
        ctx = ScalarContext()
        parts = [ctx.rat(_random_rational(rng, 15))]
        for p in rng.sample([2, 3, 5, 7], k=rng.randint(0, 2)):
            parts.append(ctx.rat(_random_rational(rng, 15)) * ctx.sqrt(ctx.rat(p)))
        v = parts[0]
        for p in parts[1:]:
            v = v + p
        text = v.render()
        ctx2 = ScalarContext()
        again = ctx2.parse(text)
        assert again.render() == text
        assert (v * v).render() == (again * again).render()


def test_parse_nested_radicand():
    ctx = ScalarContext()
    v = ctx.parse("0 + 1*sqrt(3 + 2*sqrt(2))")
    r2 = ctx.sqrt(ctx.rat(2))
    assert v == ctx.one + r2


def test_parse_rejects_garbage():
    ctx = ScalarContext()
    with pytest.raises(ScalarParseError):
        ctx.parse("3/2 + ")
    with pytest.raises(ScalarParseError):
        ctx.parse("sqrt 2")
    with pytest.raises(ScalarParseError):
        ctx.parse("1 + 2)")


def test_mixed_context_rejected():
    c1, c2 = ScalarContext(), ScalarContext()
    x = c1.sqrt(c1.rat(2))
    y = c2.sqrt(c2.rat(3))
    with pytest.raises(Exception):
        _ = x + y
