"""Floating-point referee for the exact solver.

Nothing here feeds back into solver verdicts.  Evaluation uses the principal
square root (sqrt(r) = i*sqrt(-r) for r < 0), so formal solutions can be
checked by plain substitution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

import numpy as np

from .algebra import AlgebraicReal, Polynomial, RationalFunction, refine
from .equation import (
    FORMS,
    Add,
    Const,
    Div,
    Expr,
    Mul,
    Neg,
    Param,
    Pow,
    RadicalEquation,
    Sqrt,
    Sub,
    Var,
)

POLE_EPS = 1e-15
# well below 1e-14: steep residuals (large h times sqrt of a tiny radicand)
# would otherwise show interval width instead of rounding error
REFINE_WIDTH = Fraction(1, 10**24)
BRACKET_WIDTH = 1e-10
HIT_TOL = 1e-8

STRONG = "strong"
FORMAL_ONLY = "formal_only"
NEITHER = "neither"

Number = Union[Fraction, complex]


class PoleEncountered(ArithmeticError):
    pass


class NonFinite(ArithmeticError):
    pass


def principal_sqrt(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0:
        # cmath would pick -i*sqrt(-r) for a negative real carrying -0.0j
        if z.real < 0:
            return complex(0.0, math.sqrt(-z.real))
        return complex(math.sqrt(z.real), 0.0)
    return cmath.sqrt(z)


def _eval(e: Expr, x: Number, bindings: Mapping[str, Fraction], snap: float,
          radicands: Optional[list]) -> Number:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Param):
        if e.name not in bindings:
            raise KeyError(f"unbound parameter {e.name!r}")
        return Fraction(bindings[e.name])
    if isinstance(e, Neg):
        return -_eval(e.operand, x, bindings, snap, radicands)
    if isinstance(e, Pow):
        return _eval(e.base, x, bindings, snap, radicands) ** e.exponent
    if isinstance(e, Sqrt):
        r = _eval(e.radicand, x, bindings, snap, radicands)
        if abs(r) < snap:
            r = Fraction(0)
        if radicands is not None:
            radicands.append(r)
        if isinstance(r, Fraction):
            if r < 0:
                return complex(0.0, math.sqrt(-r))
            return complex(math.sqrt(r), 0.0)
        return principal_sqrt(r)
    a = _eval(e.left, x, bindings, snap, radicands)
    b = _eval(e.right, x, bindings, snap, radicands)
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    if isinstance(e, Div):
        if b == 0 or (not isinstance(b, Fraction) and abs(b) < POLE_EPS):
            raise PoleEncountered("division by a value close to zero")
        return a / b
    raise TypeError(f"not an expression node: {e!r}")


def eval_side(e: Expr, x, bindings: Optional[Mapping[str, Fraction]] = None) -> complex:
    """Value of ``e`` at the real point ``x`` as a complex float.

    A Fraction ``x`` keeps every radical-free subexpression exact.
    """
    if isinstance(x, complex):
        if x.imag != 0:
            raise ValueError("x must be real")
        x = x.real
    if not isinstance(x, Fraction):
        x = complex(float(x))
    v = complex(_eval(e, x, bindings or {}, 0.0, None))
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise NonFinite(f"non-finite value {v}")
    return v


def residual(eq: RadicalEquation, x, snap: float = 0.0) -> tuple[complex, list]:
    """lhs - rhs at ``x`` and the radicand values met on the way."""
    lhs, rhs = eq.sides()
    if not isinstance(x, Fraction):
        x = complex(float(x))
    seen: list = []
    v = complex(_eval(lhs, x, {}, snap, seen) - _eval(rhs, x, {}, snap, seen))
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise NonFinite(f"non-finite residual {v}")
    return v, seen


def verify(eq: RadicalEquation, alpha: AlgebraicReal, tol: float = 1e-9) -> str:
    """Classify ``alpha`` by substitution: strong, formal_only or neither.

    Radicands within ``tol`` of zero are snapped to zero, since a radicand
    vanishing at an irrational point is only tiny at the refined midpoint.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = refine(alpha, REFINE_WIDTH)
    mid = (a.iso_lo + a.iso_hi) / 2
    res, rads = residual(eq, mid, snap=tol)
    if abs(res) >= tol:
        return NEITHER
    if all(_real(r) >= -tol for r in rads):
        return STRONG
    return FORMAL_ONLY


def _real(r: Number) -> float:
    return float(r) if isinstance(r, Fraction) else r.real


# --- vectorized scan --------------------------------------------------------------


def _eval_array(e: Expr, xs: np.ndarray, feasible: np.ndarray) -> np.ndarray:
    if isinstance(e, Const):
        return np.full_like(xs, float(e.value))
    if isinstance(e, Var):
        return xs
    if isinstance(e, Param):
        raise KeyError(f"unbound parameter {e.name!r}")
    if isinstance(e, Neg):
        return -_eval_array(e.operand, xs, feasible)
    if isinstance(e, Pow):
        return _eval_array(e.base, xs, feasible) ** e.exponent
    if isinstance(e, Sqrt):
        r = _eval_array(e.radicand, xs, feasible)
        feasible &= r >= 0
        return np.sqrt(np.where(r >= 0, r, 0.0))
    a = _eval_array(e.left, xs, feasible)
    b = _eval_array(e.right, xs, feasible)
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    if isinstance(e, Div):
        small = np.abs(b) < POLE_EPS
        feasible &= ~small
        return a / np.where(small, 1.0, b)
    raise TypeError(f"not an expression node: {e!r}")


def real_residual(eq: RadicalEquation, xs) -> tuple[np.ndarray, np.ndarray]:
    """Real residual on an array and the mask of points where it is defined."""
    xs = np.asarray(xs, dtype=float)
    lhs, rhs = eq.sides()
    feasible = np.ones(xs.shape, dtype=bool)
    with np.errstate(all="ignore"):
        r = _eval_array(lhs, xs, feasible) - _eval_array(rhs, xs, feasible)
    feasible &= np.isfinite(r)
    return r, feasible


@dataclass(frozen=True)
class ScanHit:
    kind: str  # "point" or "interval"
    lo: float
    hi: float

    @property
    def x(self) -> float:
        return (self.lo + self.hi) / 2


def _scalar(eq: RadicalEquation, x: float) -> Optional[float]:
    r, ok = real_residual(eq, np.array([x]))
    return float(r[0]) if ok[0] else None


def _bisect(eq, a: float, b: float, ra: float) -> Optional[float]:
    while b - a > BRACKET_WIDTH:
        m = (a + b) / 2
        if m <= a or m >= b:
            break
        rm = _scalar(eq, m)
        if rm is None:
            return None
        if rm == 0:
            return m
        if (rm < 0) == (ra < 0):
            a, ra = m, rm
        else:
            b = m
    return (a + b) / 2


def _polish(eq, x: float, step: float) -> float:
    # ternary search on |r| near a grid hit
    a, b = x - step, x + step
    for _ in range(80):
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        r1, r2 = _scalar(eq, m1), _scalar(eq, m2)
        if r1 is None or r2 is None:
            return x
        if abs(r1) <= abs(r2):
            b = m2
        else:
            a = m1
        if b - a < BRACKET_WIDTH:
            break
    m = (a + b) / 2
    rm = _scalar(eq, m)
    rx = _scalar(eq, x)
    if rm is None or rx is None or abs(rm) > abs(rx):
        return x
    return m


def scan(eq: RadicalEquation, lo: float, hi: float, step: float) -> list[ScanHit]:
    """Approximate real (strong) solutions of ``eq`` on a grid over [lo, hi].

    Sign changes of the residual between feasible neighbours are bisected;
    grid points with |residual| < 1e-8 are reported too, and runs of such
    points come back as a single "interval" hit.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if step <= 0:
        raise ValueError("step must be positive")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    xs = lo + step * np.arange(n)
    r, ok = real_residual(eq, xs)
    hits: list[ScanHit] = []

    near = ok & (np.abs(np.where(ok, r, np.inf)) < HIT_TOL)
    idx = np.nonzero(near)[0]
    if idx.size:
        breaks = np.nonzero(np.diff(idx) > 1)[0]
        starts = np.concatenate(([idx[0]], idx[breaks + 1]))
        ends = np.concatenate((idx[breaks], [idx[-1]]))
        for i, j in zip(starts, ends):
            if j > i:
                hits.append(ScanHit("interval", float(xs[i]), float(xs[j])))
            else:
                x = _polish(eq, float(xs[i]), step)
                hits.append(ScanHit("point", x, x))

    both = ok[:-1] & ok[1:] & ~near[:-1] & ~near[1:]
    change = both & (np.sign(r[:-1]) * np.sign(r[1:]) < 0)
    for k in np.nonzero(change)[0]:
        a, b = float(xs[k]), float(xs[k + 1])
        ra, rb = float(r[k]), float(r[k + 1])
        x = _bisect(eq, a, b, ra)
        if x is None:
            continue
        rx = _scalar(eq, x)
        # a sign change across a pole leaves a large residual behind
        if rx is None or abs(rx) > min(abs(ra), abs(rb)) or abs(rx) > 1e-4:
            continue
        hits.append(ScanHit("point", x, x))
    hits.sort(key=lambda h: h.lo)
    return hits


# --- random equations ---------------------------------------------------------------


def _random_poly(rng: np.random.Generator, max_degree: int) -> Polynomial:
    d = int(rng.integers(0, max_degree + 1))
    nums = rng.integers(-9, 10, size=d + 1)
    dens = rng.integers(1, 10, size=d + 1)
    return Polynomial(tuple(Fraction(int(n), int(q)) for n, q in zip(nums, dens)))


def random_equation(seed: int, form: str, max_degree: int = 2) -> RadicalEquation:
    """A random equation of the given form with polynomial payloads.

    Uses numpy's PCG64 generator seeded with ``seed``; coefficients are
    p/q with p in [-9, 9] and q in [1, 9].
    """
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    if not 0 <= max_degree <= 3:
        raise ValueError("max_degree must be in [0, 3]")
    rng = np.random.default_rng(seed)
    if form == "FormSumZero":
        count = int(rng.integers(2, 4))
    elif form in ("FormRoots", "FormB"):
        count = 2
    else:
        count = 3
    payload = tuple(RationalFunction(_random_poly(rng, max_degree)) for _ in range(count))
    return RadicalEquation(form, payload)
