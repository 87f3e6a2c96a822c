"""Finite unions of points and intervals with real algebraic endpoints.

Every set operation goes through a cell decomposition: the sorted list of
all distinct endpoints splits the line into endpoint cells and open gap
cells, membership is decided once per cell (at the endpoint itself, or at
a rational sample inside the gap), and the canonical component list is
rebuilt from the membership pattern.  Canonical form therefore falls out of
construction and equality is component-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import (
    AlgebraicReal,
    Order,
    Polynomial,
    RationalFunction,
    Sign,
    bounds,
    compare,
    compare_rational,
    isolate_real_roots,
    refine,
    shrink,
)

RELATIONS = (">=", "<=", ">", "<", "=", "!=")


@dataclass(frozen=True, eq=False)
class Component:
    """A point (lo is hi, both closed) or a nondegenerate interval.

    ``None`` stands for -inf as ``lo`` and +inf as ``hi``.
    """

    lo: Optional[AlgebraicReal]
    hi: Optional[AlgebraicReal]
    lo_closed: bool
    hi_closed: bool

    @property
    def kind(self) -> str:
        return "point" if self.is_point else "interval"

    @property
    def is_point(self) -> bool:
        return self.lo is not None and self.lo is self.hi

    def contains(self, alpha) -> bool:
        if self.lo is not None:
            c = _cmp(alpha, self.lo)
            if c is Order.LESS or (c is Order.EQUAL and not self.lo_closed):
                return False
        if self.hi is not None:
            c = _cmp(alpha, self.hi)
            if c is Order.GREATER or (c is Order.EQUAL and not self.hi_closed):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Component):
            return NotImplemented
        return (self.lo_closed == other.lo_closed
                and self.hi_closed == other.hi_closed
                and _end_eq(self.lo, other.lo)
                and _end_eq(self.hi, other.hi))

    __hash__ = None

    def __str__(self) -> str:
        if self.is_point:
            return "{" + format_number(self.lo) + "}"
        left = "(" if not self.lo_closed else "["
        right = ")" if not self.hi_closed else "]"
        lo = "-∞" if self.lo is None else format_number(self.lo)
        hi = "+∞" if self.hi is None else format_number(self.hi)
        return f"{left}{lo}, {hi}{right}"


def _end_eq(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return compare(a, b) is Order.EQUAL


def format_number(alpha: AlgebraicReal) -> str:
    if alpha.is_rational:
        return str(alpha.iso_lo)
    return f"≈{approx_decimal(alpha)}"


def approx_decimal(alpha: AlgebraicReal, digits: int = 12) -> str:
    """Correctly rounded decimal with ``digits`` significant digits (half-even)."""
    from decimal import Context, Decimal, ROUND_HALF_EVEN

    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)

    def rnd(q: Fraction) -> Decimal:
        return ctx.divide(Decimal(q.numerator), Decimal(q.denominator))

    if alpha.is_rational:
        return _dec_str(rnd(alpha.iso_lo))
    a = alpha
    scale = max(abs(a.iso_lo), abs(a.iso_hi))
    a = refine(a, scale / Fraction(10) ** (digits + 4) if scale else Fraction(1, 10**20))
    while True:
        lo, hi = rnd(a.iso_lo), rnd(a.iso_hi)
        if lo == hi:
            return _dec_str(lo)
        a = refine(a, a.width / 16)
        if a.is_rational:
            return _dec_str(rnd(a.iso_lo))


def _dec_str(d) -> str:
    if d.is_zero():
        return "0"
    return str(d)


class RealSet:
    """Canonical finite union of disjoint, non-adjacent components."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Component] = ()):
        self.components = tuple(components)

    @classmethod
    def empty(cls) -> "RealSet":
        return cls(())

    @classmethod
    def real_line(cls) -> "RealSet":
        return cls((Component(None, None, False, False),))

    @classmethod
    def point(cls, alpha) -> "RealSet":
        alpha = _alg(alpha)
        return cls((Component(alpha, alpha, True, True),))

    @classmethod
    def points(cls, alphas) -> "RealSet":
        out = cls.empty()
        for a in alphas:
            out = out.union(cls.point(a))
        return out

    @classmethod
    def interval(cls, lo=None, hi=None, lo_closed=True, hi_closed=True) -> "RealSet":
        """Interval with optional infinite ends; empty if lo > hi."""
        lo = None if lo is None else _alg(lo)
        hi = None if hi is None else _alg(hi)
        lo_closed = lo_closed and lo is not None
        hi_closed = hi_closed and hi is not None
        if lo is not None and hi is not None:
            c = compare(lo, hi)
            if c is Order.GREATER:
                return cls.empty()
            if c is Order.EQUAL:
                if lo_closed and hi_closed:
                    return cls.point(lo)
                return cls.empty()
        return cls((Component(lo, hi, lo_closed, hi_closed),))

    def is_empty(self) -> bool:
        return not self.components

    def is_finite(self) -> bool:
        return all(c.is_point for c in self.components)

    def isolated_points(self) -> list[AlgebraicReal]:
        return [c.lo for c in self.components if c.is_point]

    def intervals(self) -> list[Component]:
        return [c for c in self.components if not c.is_point]

    def contains(self, alpha) -> bool:
        if not isinstance(alpha, (AlgebraicReal, Fraction)):
            alpha = Fraction(alpha)
        for c in self.components:
            if c.contains(alpha):
                return True
            if c.hi is None or _cmp(alpha, c.hi) is not Order.GREATER:
                return False
        return False

    __contains__ = contains

    def endpoints(self) -> list[AlgebraicReal]:
        out = []
        for c in self.components:
            if c.lo is not None:
                out.append(c.lo)
            if c.hi is not None and not c.is_point:
                out.append(c.hi)
        return out

    def _is_real_line(self) -> bool:
        return (len(self.components) == 1 and self.components[0].lo is None
                and self.components[0].hi is None)

    def intersect(self, other: "RealSet") -> "RealSet":
        if self.is_empty() or other._is_real_line():
            return self
        if other.is_empty() or self._is_real_line():
            return other
        return _combine(self, other, lambda a, b: a and b)

    def union(self, other: "RealSet") -> "RealSet":
        if self.is_empty() or other._is_real_line():
            return other
        if other.is_empty() or self._is_real_line():
            return self
        return _combine(self, other, lambda a, b: a or b)

    def difference(self, other: "RealSet") -> "RealSet":
        return _combine(self, other, lambda a, b: a and not b)

    __and__ = intersect
    __or__ = union

    def issubset(self, other: "RealSet") -> bool:
        return self.intersect(other) == self

    def __eq__(self, other):
        if not isinstance(other, RealSet):
            return NotImplemented
        return (len(self.components) == len(other.components)
                and all(a == b for a, b in zip(self.components, other.components)))

    __hash__ = None

    def distance(self, x: float) -> float:
        """Approximate distance from a float to the set (inf when empty)."""
        best = float("inf")
        for c in self.components:
            lo = -float("inf") if c.lo is None else float(c.lo)
            hi = float("inf") if c.hi is None else float(c.hi)
            if lo <= x <= hi:
                return 0.0
            best = min(best, abs(x - lo), abs(x - hi))
        return best

    def __str__(self) -> str:
        if not self.components:
            return "∅"
        if len(self.components) == 1 and self.components[0].lo is None \
                and self.components[0].hi is None:
            return "ℝ"
        points = all(c.is_point for c in self.components)
        if points:
            return "{" + ", ".join(format_number(c.lo) for c in self.components) + "}"
        return " ∪ ".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"RealSet({self})"


def _cmp(v, end: AlgebraicReal) -> Order:
    """Order of ``v`` (rational or algebraic) relative to ``end``."""
    if isinstance(v, Fraction):
        return Order(-compare_rational(end, v))
    return compare(v, end)


def _alg(v) -> AlgebraicReal:
    return v if isinstance(v, AlgebraicReal) else AlgebraicReal.from_rational(v)


def union(a: RealSet, b: RealSet) -> RealSet:
    return a.union(b)


def intersect(a: RealSet, b: RealSet) -> RealSet:
    return a.intersect(b)


def contains(s: RealSet, alpha) -> bool:
    return s.contains(alpha)


# --- cell decomposition -----------------------------------------------------


def _sorted_distinct(points: Sequence[AlgebraicReal]) -> list[AlgebraicReal]:
    out: list[AlgebraicReal] = []
    for p in points:
        lo, hi = 0, len(out)
        placed = False
        while lo < hi:
            mid = (lo + hi) // 2
            c = compare(p, out[mid])
            if c is Order.EQUAL:
                placed = True
                break
            if c is Order.LESS:
                hi = mid
            else:
                lo = mid + 1
        if not placed:
            out.insert(lo, p)
    return out


def _between(a: AlgebraicReal, b: AlgebraicReal) -> Fraction:
    """A rational strictly between a < b."""
    alo, ahi = bounds(a)
    blo, bhi = bounds(b)
    while not ahi < blo:
        if alo != ahi:
            alo, ahi = shrink(a)
        if blo != bhi:
            blo, bhi = shrink(b)
    return (ahi + blo) / 2


def gap_samples(ends: Sequence[AlgebraicReal]) -> list[Fraction]:
    """One rational sample per open gap: before, between and after ``ends``."""
    if not ends:
        return [Fraction(0)]
    samples = [ends[0].iso_lo - 1]
    for a, b in zip(ends, ends[1:]):
        samples.append(_between(a, b))
    samples.append(ends[-1].iso_hi + 1)
    return samples


def _from_pattern(ends: Sequence[AlgebraicReal], at_end: Sequence[bool],
                  in_gap: Sequence[bool]) -> RealSet:
    """Rebuild canonical components from cell memberships.

    Cells are ordered gap0, end0, gap1, end1, ..., end[k-1], gap[k].
    """
    cells: list[tuple[bool, Optional[int], bool]] = []  # (member, end index, is_end)
    for i, e in enumerate(ends):
        cells.append((in_gap[i], i, False))
        cells.append((at_end[i], i, True))
    cells.append((in_gap[len(ends)], len(ends), False))
    comps = []
    i = 0
    while i < len(cells):
        if not cells[i][0]:
            i += 1
            continue
        j = i
        while j + 1 < len(cells) and cells[j + 1][0]:
            j += 1
        _, si, s_is_end = cells[i]
        _, ei, e_is_end = cells[j]
        if s_is_end:
            lo, lo_closed = ends[si], True
        elif si == 0:
            lo, lo_closed = None, False
        else:
            lo, lo_closed = ends[si - 1], False
        if e_is_end:
            hi, hi_closed = ends[ei], True
        elif ei == len(ends):
            hi, hi_closed = None, False
        else:
            hi, hi_closed = ends[ei], False
        comps.append(Component(lo, hi, lo_closed, hi_closed))
        i = j + 1
    return RealSet(comps)


def _combine(a: RealSet, b: RealSet, op: Callable[[bool, bool], bool]) -> RealSet:
    ends = _sorted_distinct(a.endpoints() + b.endpoints())
    at_end = [op(a.contains(e), b.contains(e)) for e in ends]
    in_gap = [op(a.contains(s), b.contains(s)) for s in gap_samples(ends)]
    return _from_pattern(ends, at_end, in_gap)


def _holds(sign: int, rel: str) -> bool:
    if rel == ">=":
        return sign >= 0
    if rel == "<=":
        return sign <= 0
    if rel == ">":
        return sign > 0
    if rel == "<":
        return sign < 0
    if rel == "=":
        return sign == 0
    if rel == "!=":
        return sign != 0
    raise ValueError(f"unknown relation {rel!r}")


def from_sign_condition(p, rel: str) -> RealSet:
    """The set {x : p(x) rel 0} within the domain of ``p`` (poles removed)."""
    if isinstance(p, Polynomial):
        p = RationalFunction(p)
    elif not isinstance(p, RationalFunction):
        p = RationalFunction.constant(p)
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    num_roots = [] if p.num.is_zero() else isolate_real_roots(p.num)
    poles = isolate_real_roots(p.den)
    ends = _sorted_distinct(num_roots + poles)
    at_end = []
    for e in ends:
        if any(compare(e, q) is Order.EQUAL for q in poles):
            at_end.append(False)
        else:
            at_end.append(_holds(0, rel))
    in_gap = [_holds(Sign.of(p.num(s)) * Sign.of(p.den(s)), rel)
              for s in gap_samples(ends)]
    return _from_pattern(ends, at_end, in_gap)


def domain_of(*fs: RationalFunction) -> RealSet:
    """The real line minus every pole of the given rational functions."""
    out = RealSet.real_line()
    for f in fs:
        if f.den.degree > 0:
            out = out.intersect(from_sign_condition(RationalFunction(f.den), "!="))
    return out
