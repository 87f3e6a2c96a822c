"""Restriction-set solving of radical equations.

Each form is squared into a radical-free candidate equation whose solution
set is S0; inequality restriction sets A1..A4 (and B1 for the difference
form) then decide exactly which candidates are strong solutions (every
radicand nonnegative) and which are formal solutions (radicals of negative
numbers allowed, principal branch).  No candidate is ever substituted back
into the original equation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    AlgebraicReal,
    Order,
    Polynomial,
    RationalFunction,
    compare,
)
from .equation import RadicalEquation
from .realset import RealSet, approx_decimal, domain_of, from_sign_condition

STRONG = "strong"
FORMAL_ONLY = "formal_only"
REJECTED = "rejected"

Branch = tuple[str, ...]
Formula = tuple[Branch, ...]


@dataclass(frozen=True)
class Restriction:
    name: str
    condition: str
    set: RealSet


@dataclass(frozen=True)
class RestrictionSystem:
    """S0, the named restriction sets and the strong/formal combination rules.

    Formulas are unions of intersections over "S0" and restriction names.
    ``formal_formula`` is None when the formal theory of the form is not
    available (sums of radicals equal to zero).
    """

    form: str
    s0: RealSet
    s0_equation: str
    candidate_function: Optional[RationalFunction]
    restrictions: tuple[Restriction, ...]
    strong_formula: Formula
    formal_formula: Optional[Formula]
    domain: RealSet
    chain: tuple[str, ...] = ()

    def __post_init__(self):
        names = {"S0"} | {r.name for r in self.restrictions}
        for formula in (self.strong_formula, self.formal_formula or ()):
            for branch in formula:
                missing = set(branch) - names
                if missing:
                    raise ValueError(f"formula references unknown sets {sorted(missing)}")

    def named(self, name: str) -> RealSet:
        if name == "S0":
            return self.s0
        for r in self.restrictions:
            if r.name == name:
                return r.set
        raise KeyError(name)

    def evaluate(self, formula: Formula) -> RealSet:
        out = RealSet.empty()
        for branch in formula:
            part = self.named(branch[0])
            for name in branch[1:]:
                part = part.intersect(self.named(name))
            out = out.union(part)
        return out

    def strong(self) -> RealSet:
        return self.evaluate(self.strong_formula)

    def formal(self) -> RealSet:
        if self.formal_formula is None:
            return self.strong()
        return self.evaluate(self.formal_formula)

    def condition(self, name: str) -> str:
        for r in self.restrictions:
            if r.name == name:
                return r.condition
        return ""


def formula_text(formula: Formula) -> str:
    parts = [" ∩ ".join(b) for b in formula]
    if len(parts) == 1:
        return parts[0]
    return " ∪ ".join(f"({p})" for p in parts)


def branch_label(branch: Branch) -> str:
    names = [n for n in branch if n != "S0"]
    return "∩".join(names) if names else "S0"


# --- per-form systems ------------------------------------------------------------


def _cond(p: RationalFunction, rel: str, domain: RealSet) -> RealSet:
    return from_sign_condition(p, rel).intersect(domain)


def _candidates(E: RationalFunction, domain: RealSet) -> RealSet:
    # an identically zero E leaves the whole common domain
    return from_sign_condition(E, "=").intersect(domain)


def solve_form_b(f: RationalFunction, g: RationalFunction) -> RestrictionSystem:
    """sqrt(f) = g  <=>  f = g^2 and g >= 0."""
    D = domain_of(f, g)
    E = f - g * g
    A1 = Restriction("A1", "g ≥ 0", _cond(g, ">=", D))
    chain = (
        "sqrt(f) = g",
        "⟺ f = g^2 ∧ g ≥ 0    [A1]",
        f"S0: {E} = 0",
    )
    return RestrictionSystem("FormB", _candidates(E, D), f"{E} = 0", E, (A1,),
                             (("S0", "A1"),), (("S0", "A1"),), D, chain)


def solve_form_roots(f: RationalFunction, g: RationalFunction) -> RestrictionSystem:
    """sqrt(f) = sqrt(g): strong needs f = g >= 0, formal only f = g."""
    D = domain_of(f, g)
    E = f - g
    A1 = Restriction("A1", "f ≥ 0", _cond(f, ">=", D))
    chain = (
        "sqrt(f) = sqrt(g)",
        "⟺ f = g ∧ f ≥ 0    [A1] (strong)",
        "⟺ f = g            (formal)",
        f"S0: {E} = 0",
    )
    return RestrictionSystem("FormRoots", _candidates(E, D), f"{E} = 0", E, (A1,),
                             (("S0", "A1"),), (("S0",),), D, chain)


def solve_form_d(f: RationalFunction, g: RationalFunction,
                 h: RationalFunction) -> RestrictionSystem:
    """sqrt(f) + sqrt(g) = h; strong and formal solutions coincide."""
    D = domain_of(f, g, h)
    k = h * h - f - g
    E = 4 * f * g - k * k
    # f, g >= 0 is implied by S0, A2 and h >= 0 except where h = 0 and
    # f = g < 0; keeping it in A1 removes exactly those false solutions
    A1 = Restriction("A1", "h ≥ 0 ∧ f ≥ 0 ∧ g ≥ 0",
                     _cond(h, ">=", D).intersect(_cond(f, ">=", D)).intersect(_cond(g, ">=", D)))
    A2 = Restriction("A2", "h^2 - f - g ≥ 0", _cond(k, ">=", D))
    chain = (
        "sqrt(f) + sqrt(g) = h",
        "⟺ (sqrt(f) + sqrt(g))^2 = h^2                  given h, f, g ≥ 0    [A1]",
        "⟺ 2*sqrt(f*g) = h^2 - f - g",
        "⟺ 4*f*g = (h^2 - f - g)^2                      given h^2 - f - g ≥ 0    [A2]",
        f"S0: {E} = 0",
    )
    formula = (("S0", "A1", "A2"),)
    return RestrictionSystem("FormD", _candidates(E, D), f"{E} = 0", E, (A1, A2),
                             formula, formula, D, chain)


def solve_form_e(f: RationalFunction, g: RationalFunction,
                 h: RationalFunction) -> RestrictionSystem:
    """sqrt(f) + sqrt(g) = sqrt(h)."""
    D = domain_of(f, g, h)
    k = h - f - g
    E = 4 * f * g - k * k
    nonneg = _cond(f, ">=", D).intersect(_cond(g, ">=", D)).intersect(_cond(h, ">=", D))
    nonpos = _cond(f, "<=", D).intersect(_cond(g, "<=", D)).intersect(_cond(h, "<=", D))
    restrictions = (
        Restriction("A1", "f ≥ 0 ∧ g ≥ 0 ∧ h ≥ 0", nonneg),
        Restriction("A2", "h - f - g ≥ 0", _cond(k, ">=", D)),
        Restriction("A3", "f ≤ 0 ∧ g ≤ 0 ∧ h ≤ 0", nonpos),
        Restriction("A4", "h - f - g ≤ 0", _cond(k, "<=", D)),
    )
    chain = (
        "sqrt(f) + sqrt(g) = sqrt(h)",
        "strong branch, f, g, h ≥ 0    [A1]:",
        "  ⟺ f + 2*sqrt(f*g) + g = h",
        "  ⟺ 2*sqrt(f*g) = h - f - g",
        "  ⟺ 4*f*g = (h - f - g)^2               given h - f - g ≥ 0    [A2]",
        "formal branch, f, g, h ≤ 0    [A3]:",
        "  ⟺ sqrt(-f) + sqrt(-g) = sqrt(-h)",
        "  ⟺ 2*sqrt(f*g) = f + g - h",
        "  ⟺ 4*f*g = (h - f - g)^2               given h - f - g ≤ 0    [A4]",
        f"S0: {E} = 0",
    )
    return RestrictionSystem("FormE", _candidates(E, D), f"{E} = 0", E, restrictions,
                             (("S0", "A1", "A2"),),
                             (("S0", "A1", "A2"), ("S0", "A3", "A4")), D, chain)


def solve_form_hf(h: RationalFunction, f: RationalFunction,
                  g: RationalFunction) -> RestrictionSystem:
    """h*sqrt(f) = g."""
    D = domain_of(h, f, g)
    E = h * h * f - g * g
    gh = g * h
    restrictions = (
        Restriction("A1", "g*h ≥ 0 ∧ h ≠ 0",
                    _cond(gh, ">=", D).intersect(_cond(h, "!=", D))),
        Restriction("A2", "h = 0 ∧ f ≥ 0",
                    _cond(h, "=", D).intersect(_cond(f, ">=", D))),
        Restriction("A3", "g*h ≥ 0", _cond(gh, ">=", D)),
    )
    chain = (
        "h*sqrt(f) = g",
        "h ≠ 0: ⟺ sqrt(f) = g/h ⟺ h^2*f = g^2 ∧ g*h ≥ 0    [A1]",
        "h = 0: ⟺ g = 0 ⟺ h^2*f = g^2, strong also needs f ≥ 0    [A2]",
        "formal: h^2*f = g^2 ∧ g*h ≥ 0    [A3]",
        f"S0: {E} = 0",
    )
    return RestrictionSystem("FormHF", _candidates(E, D), f"{E} = 0", E, restrictions,
                             (("S0", "A1"), ("S0", "A2")), (("S0", "A3"),), D, chain)


def solve_form_f(f: RationalFunction, g: RationalFunction,
                 h: RationalFunction) -> RestrictionSystem:
    """sqrt(f) - sqrt(g) = h.

    The restriction sqrt(f) - h >= 0 is not a sign condition on a rational
    function; on {f >= 0} it is equivalent to h <= 0 or (h >= 0 and
    f - h^2 >= 0), which is what A2 holds.
    """
    D = domain_of(f, g, h)
    k = f + h * h - g
    E = 4 * h * h * f - k * k
    a2 = _cond(h, "<=", D).union(_cond(h, ">=", D).intersect(_cond(f - h * h, ">=", D)))
    b1 = (_cond(f - g, "=", D).intersect(_cond(f, "<", D))
          .intersect(_cond(h, "=", D)))
    restrictions = (
        Restriction("A1", "f ≥ 0", _cond(f, ">=", D)),
        Restriction("A2", "sqrt(f) - h ≥ 0", a2),
        Restriction("A3", "h*(f + h^2 - g) ≥ 0", _cond(h * k, ">=", D)),
        Restriction("B1", "f = g < 0 ∧ h = 0", b1),
    )
    chain = (
        "sqrt(f) - sqrt(g) = h",
        "⟺ sqrt(g) = sqrt(f) - h                            given f ≥ 0    [A1]",
        "⟺ g = (sqrt(f) - h)^2                              given sqrt(f) - h ≥ 0    [A2]",
        "⟺ 2*h*sqrt(f) = f - g + h^2",
        "⟺ 4*h^2*f = (f + h^2 - g)^2                        given h*(f + h^2 - g) ≥ 0    [A3]",
        "extra formal solutions: f = g < 0 ∧ h = 0    [B1]",
        f"S0: {E} = 0",
    )
    strong = (("S0", "A1", "A2", "A3"),)
    return RestrictionSystem("FormF", _candidates(E, D), f"{E} = 0", E, restrictions,
                             strong, strong + (("B1",),), D, chain)


def solve_form_sum_zero(fs: Sequence[RationalFunction]) -> RestrictionSystem:
    """sqrt(f1) + ... + sqrt(fn) = 0: strong solutions are the common zeros."""
    if len(fs) < 2:
        raise ValueError("need at least two radicands")
    D = domain_of(*fs)
    s0 = D
    for f in fs:
        s0 = s0.intersect(from_sign_condition(f, "="))
    chain = (
        "sqrt(f1) + ... + sqrt(fn) = 0",
        "strong ⟺ f1 = ... = fn = 0",
    )
    eqs = " ∧ ".join(f"{f} = 0" for f in fs)
    return RestrictionSystem("FormSumZero", s0, eqs, None, (),
                             (("S0",),), None, D, chain)


# --- root location relative to a quadratic -------------------------------------


class Location(str, enum.Enum):
    LEFT_OF_BOTH = "left_of_both"
    BETWEEN = "between"
    RIGHT_OF_BOTH = "right_of_both"
    AT_ROOT = "at_root"


class DegenerateQuadratic(ValueError):
    pass


def locate_vs_quadratic(q: Polynomial, xi) -> Location:
    """Position of a rational ``xi`` relative to the two real zeros of ``q``.

    Only the sign of q(xi) and, when it is positive, the side of the vertex
    abscissa are used; the zeros themselves are never computed.
    """
    if q.degree != 2:
        raise DegenerateQuadratic("not a quadratic")
    c, b, a = q.coeffs
    if b * b - 4 * a * c <= 0:
        raise DegenerateQuadratic("discriminant is not positive")
    if a < 0:
        a, b, c = -a, -b, -c
    xi = Fraction(xi)
    value = a * xi * xi + b * xi + c
    if value == 0:
        return Location.AT_ROOT
    if value < 0:
        return Location.BETWEEN
    # value > 0 rules out xi == vertex, where q is negative
    if xi + b / (2 * a) < 0:
        return Location.LEFT_OF_BOTH
    return Location.RIGHT_OF_BOTH


# --- full solve -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Candidate:
    value: AlgebraicReal
    approx: str
    verdict: str
    failed: tuple[str, ...] = ()


@dataclass(eq=False)
class SolutionReport:
    equation: RadicalEquation
    system: RestrictionSystem
    strong: RealSet
    formal: RealSet
    candidates: list[Candidate]
    notes: list[str] = field(default_factory=list)

    @property
    def form(self) -> str:
        return self.equation.form

    @property
    def formal_supported(self) -> bool:
        return self.system.formal_formula is not None

    def by_verdict(self, verdict: str) -> list[Candidate]:
        return [c for c in self.candidates if c.verdict == verdict]


def build_system(eq: RadicalEquation) -> RestrictionSystem:
    p = eq.payload
    if eq.form == "FormB":
        return solve_form_b(*p)
    if eq.form == "FormRoots":
        return solve_form_roots(*p)
    if eq.form == "FormD":
        return solve_form_d(*p)
    if eq.form == "FormE":
        return solve_form_e(*p)
    if eq.form == "FormF":
        return solve_form_f(*p)
    if eq.form == "FormHF":
        return solve_form_hf(*p)
    if eq.form == "FormSumZero":
        return solve_form_sum_zero(p)
    raise ValueError(f"unknown form {eq.form!r}")


def _distinct_sorted(points: list[AlgebraicReal]) -> list[AlgebraicReal]:
    out: list[AlgebraicReal] = []
    for p in points:
        if not any(compare(p, q) is Order.EQUAL for q in out):
            out.append(p)
    out.sort(key=_SortKey)
    return out


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v: AlgebraicReal):
        self.v = v

    def __lt__(self, other: "_SortKey") -> bool:
        return compare(self.v, other.v) is Order.LESS


def explain(system: RestrictionSystem, formula: Formula, alpha: AlgebraicReal) -> tuple[str, ...]:
    """Names of what ``alpha`` violates in ``formula``.

    A single-branch formula lists each violated restriction; a union lists
    the label of every failed branch.
    """
    if len(formula) == 1:
        return tuple(n for n in formula[0] if not system.named(n).contains(alpha))
    out = []
    for branch in formula:
        if not all(system.named(n).contains(alpha) for n in branch):
            out.append(branch_label(branch))
    return tuple(out)


def solve(eq: RadicalEquation) -> SolutionReport:
    """Strong and formal solution sets plus a verdict for every isolated candidate."""
    system = build_system(eq)
    strong = system.strong()
    formal = system.formal()
    notes = []
    if system.formal_formula is None:
        notes.append("formal solutions are not supported for sums of radicals equal "
                     "to zero; the formal set shown is the strong set")
    if eq.form in ("FormD", "FormF") and eq.functions()["h"].is_zero():
        notes.append("h is identically zero; solved under the literal form")
    points = _distinct_sorted(system.s0.isolated_points() + strong.isolated_points()
                              + formal.isolated_points())
    candidates = []
    for alpha in points:
        if strong.contains(alpha):
            verdict, failed = STRONG, ()
        elif formal.contains(alpha):
            verdict, failed = FORMAL_ONLY, explain(system, system.strong_formula, alpha)
        else:
            verdict = REJECTED
            formula = system.formal_formula or system.strong_formula
            failed = explain(system, formula, alpha)
        candidates.append(Candidate(alpha, approx_decimal(alpha), verdict, failed))
    if strong.intervals() or formal.intervals():
        notes.append("the solution set contains intervals")
    return SolutionReport(eq, system, strong, formal, candidates, notes)
