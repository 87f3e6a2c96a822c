from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radsolve.algebra import AlgebraicReal, Polynomial, RationalFunction, isolate_real_roots
from radsolve.realset import (
    RealSet,
    approx_decimal,
    contains,
    domain_of,
    from_sign_condition,
    intersect,
    union,
)

F = Fraction
X = Polynomial.x()


def P(*coeffs):
    return Polynomial(tuple(F(c) for c in coeffs))


def root(p, i):
    return isolate_real_roots(p)[i]


SQRT2 = root(P(-2, 0, 1), 1)


# --- from_sign_condition --------------------------------------------------------------


def test_sign_condition_parabola():
    s = from_sign_condition(P(-2, 0, 1), ">=")
    assert str(s) == "(-∞, ≈-1.41421356237] ∪ [≈1.41421356237, +∞)"
    left, right = s.components
    assert left.lo is None and left.hi_closed and right.hi is None and right.lo_closed
    assert right.lo == SQRT2 and left.hi < 0


def test_sign_condition_negative_square_is_a_point():
    # (b^2 - 2) x^2 >= 0 with b = 1
    assert from_sign_condition(P(0, 0, -1), ">=") == RealSet.point(0)


def test_sign_condition_excludes_poles():
    s = from_sign_condition(RationalFunction(P(1), X), ">")
    assert s == RealSet.interval(F(0), None, False, False)
    t = from_sign_condition(RationalFunction(P(1), X), "!=")
    assert not t.contains(0) and t.contains(1) and t.contains(-1)


def test_sign_condition_identically_zero():
    zero = RationalFunction(Polynomial(), P(1))
    for rel in (">=", "<=", "="):
        assert from_sign_condition(zero, rel) == RealSet.real_line()
    for rel in (">", "<", "!="):
        assert from_sign_condition(zero, rel).is_empty()


def test_sign_condition_identically_zero_keeps_punctures():
    # 0/x reduces to 0, so only a domain set carries the pole
    d = domain_of(RationalFunction(P(1), X))
    assert d == RealSet.real_line().difference(RealSet.point(0))


def test_sign_condition_constant_and_bad_relation():
    assert from_sign_condition(3, ">") == RealSet.real_line()
    assert from_sign_condition(F(-1), ">=").is_empty()
    with pytest.raises(ValueError):
        from_sign_condition(X, "=>")


# --- set algebra ------------------------------------------------------------------------


def test_intersect_examples():
    a = RealSet.interval(F(1), None, True, False)
    b = RealSet.interval(None, F(2), False, True)
    assert intersect(a, b) == RealSet.interval(F(1), F(2))
    c = RealSet.interval(None, F(-1), False, True)
    assert intersect(a, c).is_empty()


def test_union_examples():
    s = union(RealSet.point(-2), RealSet.interval(F(0), F(1)))
    assert len(s.components) == 2
    assert s.components[0].is_point and s.components[0].lo == -2
    assert str(s) == "{-2} ∪ [0, 1]"


def test_union_merges_adjacent_pieces():
    s = RealSet.interval(F(0), F(1), True, False).union(RealSet.interval(F(1), F(2), True, True))
    assert s == RealSet.interval(F(0), F(2))
    t = RealSet.interval(F(0), F(1), True, False).union(RealSet.point(1))
    assert t == RealSet.interval(F(0), F(1))
    gap = RealSet.interval(F(0), F(1), True, False).union(RealSet.interval(F(1), F(2), False, True))
    assert len(gap.components) == 2 and not gap.contains(1)


def test_contains_examples():
    assert contains(RealSet.interval(None, F(2), False, True), SQRT2)
    x1 = root(P(-8, -4, 3), 0)  # (2 - 2*sqrt(7))/3
    assert contains(RealSet.interval(F(-2), F(-1)), x1)
    assert not contains(RealSet.empty(), SQRT2)
    assert not RealSet.empty().contains(0)


def test_point_components_and_helpers():
    s = RealSet.points([F(3), F(1), F(3)])
    assert [p.as_fraction() for p in s.isolated_points()] == [1, 3]
    assert s.is_finite() and not RealSet.real_line().is_finite()
    assert s.issubset(RealSet.interval(F(0), F(5)))
    assert s.distance(2.0) == pytest.approx(1.0)
    assert RealSet.real_line().distance(123.0) == 0
    assert str(RealSet.empty()) == "∅" and str(RealSet.real_line()) == "ℝ"


def test_reversed_or_open_degenerate_interval_is_empty():
    assert RealSet.interval(F(2), F(1)).is_empty()
    assert RealSet.interval(F(1), F(1), True, False).is_empty()
    assert RealSet.interval(F(1), F(1)) == RealSet.point(1)


def test_approx_decimal_rounding():
    assert approx_decimal(SQRT2) == "1.41421356237"
    assert approx_decimal(AlgebraicReal.from_rational(F(1, 3))) == "0.333333333333"
    assert approx_decimal(AlgebraicReal.from_rational(F(0))) == "0"
    # half-even at the 12th significant digit
    assert approx_decimal(AlgebraicReal.from_rational(F(1000000000005, 10**12))) == "1.00000000000"


# --- properties ---------------------------------------------------------------------------

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def realsets(draw):
    out = RealSet.empty()
    for _ in range(draw(st.integers(0, 3))):
        kind = draw(st.sampled_from(["point", "interval", "ray"]))
        a = draw(small)
        if kind == "point":
            piece = RealSet.point(a)
        elif kind == "interval":
            b = draw(small.filter(lambda v: v != a))
            lo, hi = min(a, b), max(a, b)
            piece = RealSet.interval(lo, hi, draw(st.booleans()), draw(st.booleans()))
        else:
            if draw(st.booleans()):
                piece = RealSet.interval(a, None, draw(st.booleans()), False)
            else:
                piece = RealSet.interval(None, a, False, draw(st.booleans()))
        out = out.union(piece)
    if draw(st.booleans()):
        # an irrational endpoint
        out = out.union(from_sign_condition(P(-draw(st.integers(2, 7)), 0, 1), "<="))
    return out


@settings(max_examples=80, deadline=None)
@given(realsets(), realsets(), st.lists(small, min_size=1, max_size=6))
def test_contains_distributes(a, b, xs):
    probes = [AlgebraicReal.from_rational(x) for x in xs] + a.endpoints() + b.endpoints()
    inter, uni = a.intersect(b), a.union(b)
    for x in probes:
        assert inter.contains(x) == (a.contains(x) and b.contains(x))
        assert uni.contains(x) == (a.contains(x) or b.contains(x))


@settings(max_examples=60, deadline=None)
@given(realsets(), realsets(), realsets())
def test_set_laws(a, b, c):
    assert a.intersect(b) == b.intersect(a)
    assert a.union(b) == b.union(a)
    assert a.intersect(b).intersect(c) == a.intersect(b.intersect(c))
    assert a.union(b).union(c) == a.union(b.union(c))
    assert a.intersect(a) == a and a.union(a) == a


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=4), st.lists(small, min_size=1, max_size=3))
def test_sign_partition(num, den):
    f = RationalFunction(Polynomial(tuple(num)),
                         Polynomial(tuple(den)) if any(den) else P(1))
    ge = from_sign_condition(f, ">=")
    lt = from_sign_condition(f, "<")
    assert ge.union(lt) == domain_of(f)
    assert ge.intersect(lt).is_empty()


def test_canonical_form_invariants():
    s = from_sign_condition((X - 1) * (X - 2) * (X - 3) * (X * X - 2), ">=")
    comps = s.components
    for c, d in zip(comps, comps[1:]):
        # sorted, disjoint and not mergeable
        assert c.hi is not None and d.lo is not None
        assert c.hi < d.lo or (c.hi == d.lo and not (c.hi_closed or d.lo_closed))


def test_numeric_sign_agreement_million_points():
    """10^6 random rational points against float signs of random quartics."""
    rng = np.random.default_rng(20240601)
    per_poly = 2000
    checked = 0
    while checked < 1_000_000:
        deg = int(rng.integers(1, 5))
        cs = [F(int(n), int(d)) for n, d in zip(rng.integers(-9, 10, deg + 1),
                                                 rng.integers(1, 10, deg + 1))]
        p = Polynomial(tuple(cs))
        if p.degree < 1:
            continue
        ge = from_sign_condition(p, ">=")
        nums = rng.integers(-4000, 4001, per_poly)
        dens = rng.integers(1, 400, per_poly)
        xs = nums / dens
        vals = np.polyval([float(c) for c in reversed(p.coeffs)], xs)
        for n, d, v in zip(nums, dens, vals):
            if abs(v) < 1e-9:
                continue  # too close to call in floating point
            assert ge.contains(F(int(n), int(d))) == (v > 0)
            checked += 1
