"""Exact univariate arithmetic over the rationals.

Polynomials, reduced rational functions and real algebraic numbers
(square-free defining polynomial plus an isolating interval).  Nothing in
this module touches floating point: every sign, comparison and root count
is decided with integer arithmetic via Sturm sequences.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]


class ZeroPolynomial(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class PoleAt(ValueError):
    """Raised when a rational function is evaluated at a root of its denominator."""


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _strip(coeffs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with rational coefficients, lowest degree first.

    The zero polynomial is the empty tuple; every other polynomial has a
    nonzero last coefficient.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: RationalLike) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(tuple(c * a for a in self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            q = rem[k + dq] / lc
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dq]))

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def __call__(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def primitive(self) -> "Polynomial":
        """Integer coefficients with content 1 and positive leading coefficient."""
        return Polynomial(_primitive_ints(self))

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial.constant(p)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    """Render in the equation grammar, highest degree first."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += sign + body
    return text


@lru_cache(maxsize=4096)
def _primitive_ints(p: Polynomial) -> tuple[int, ...]:
    if p.is_zero():
        return ()
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return tuple(v // g for v in ints)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    if a == b:
        return a.monic()
    return _poly_gcd_cached(a, b) if a.degree >= b.degree else _poly_gcd_cached(b, a)


@lru_cache(maxsize=4096)
def _poly_gcd_cached(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
        # keep coefficient growth in check
        if not b.is_zero():
            b = b.primitive()
    return a.monic()


@lru_cache(maxsize=4096)
def square_free_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), returned primitive with positive leading coefficient."""
    if p.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.degree <= 0:
        return Polynomial.constant(1)
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive()


# --- integer evaluation helpers -------------------------------------------------


def _sign_int_at(ints: Sequence[int], x: Fraction) -> int:
    """Sign of the integer polynomial at a rational point, without fractions."""
    if not ints:
        return 0
    n, d = x.numerator, x.denominator
    deg = len(ints) - 1
    acc = ints[deg]
    dpow = 1
    for i in range(deg - 1, -1, -1):
        dpow *= d
        acc = acc * n + ints[i] * dpow
    return (acc > 0) - (acc < 0)


@lru_cache(maxsize=4096)
def sturm_sequence(p: Polynomial) -> tuple[tuple[int, ...], ...]:
    """Sturm chain of a square-free polynomial, each member scaled to integers."""
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return tuple(_primitive_ints_keep_sign(q) for q in seq[:-1])


def _primitive_ints_keep_sign(p: Polynomial) -> tuple[int, ...]:
    ints = _primitive_ints(p)
    if p.lc < 0:
        ints = tuple(-v for v in ints)
    return ints


def _variations(seq, x: Fraction) -> int:
    count = 0
    last = 0
    for ints in seq:
        s = _sign_int_at(ints, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def count_roots_open(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi)."""
    if p.degree <= 0:
        return 0
    sq = square_free_part(p)
    seq = sturm_sequence(sq)
    if lo >= hi:
        return 0
    n = _variations(seq, lo) - _variations(seq, hi)
    # the Sturm difference counts roots in (lo, hi]
    if _sign_int_at(seq[0], hi) == 0:
        n -= 1
    return n


def count_roots_closed(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    if p.degree <= 0:
        return 0
    if lo == hi:
        return int(p(lo) == 0)
    n = count_roots_open(p, lo, hi)
    n += int(p(lo) == 0) + int(p(hi) == 0)
    return n


def _cauchy_bound(ints: Sequence[int]) -> int:
    lc = abs(ints[-1])
    m = max(abs(c) for c in ints[:-1]) if len(ints) > 1 else 0
    return 1 + -(-m // lc)


# --- algebraic numbers --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlgebraicReal:
    """A real root of ``defining`` located in ``[iso_lo, iso_hi]``.

    ``defining`` is square-free and primitive.  Irrational numbers carry an
    interval whose endpoints are not roots of ``defining``; rational numbers
    carry a point interval.
    """

    defining: Polynomial
    iso_lo: Fraction
    iso_hi: Fraction

    @classmethod
    def from_rational(cls, r: RationalLike) -> "AlgebraicReal":
        r = Fraction(r)
        return cls(Polynomial((-r, 1)).primitive(), r, r)

    @property
    def is_rational(self) -> bool:
        return self.iso_lo == self.iso_hi

    @property
    def width(self) -> Fraction:
        return self.iso_hi - self.iso_lo

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational algebraic number")
        return self.iso_lo

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.iso_lo)
        scale = max(abs(self.iso_lo), abs(self.iso_hi), Fraction(1))
        a = refine(self, scale / 2**60)
        return float((a.iso_lo + a.iso_hi) / 2)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraicReal.from_rational(other)
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        return compare(self, other) is Order.EQUAL

    def __lt__(self, other):
        return compare(self, _as_alg(other)) is Order.LESS

    def __le__(self, other):
        return compare(self, _as_alg(other)) is not Order.GREATER

    def __gt__(self, other):
        return compare(self, _as_alg(other)) is Order.GREATER

    def __ge__(self, other):
        return compare(self, _as_alg(other)) is not Order.LESS

    __hash__ = None  # equal numbers may have different representations

    def __repr__(self):
        if self.is_rational:
            return f"AlgebraicReal({self.iso_lo})"
        return (f"AlgebraicReal(root of {format_polynomial(self.defining)} "
                f"in [{self.iso_lo}, {self.iso_hi}])")


def _as_alg(v) -> AlgebraicReal:
    return v if isinstance(v, AlgebraicReal) else AlgebraicReal.from_rational(v)


def _bisect_step(ints, lo: Fraction, hi: Fraction, s_lo: int):
    """One bisection step for a simple root strictly inside (lo, hi)."""
    mid = (lo + hi) / 2
    s_mid = _sign_int_at(ints, mid)
    if s_mid == 0:
        return mid, mid
    if s_mid == s_lo:
        return mid, hi
    return lo, mid


def _find_rational(ints, lo: Fraction, hi: Fraction):
    """Return the rational root inside (lo, hi) if there is one, else refined bounds.

    A rational root p/q of a primitive integer polynomial has q dividing the
    leading coefficient Q, and fractions with denominator <= Q are at least
    1/Q**2 apart, so once the interval is narrower than that only the best
    approximation of the midpoint can be a root.
    """
    Q = abs(ints[-1])
    limit = Fraction(1, 2 * Q * Q)
    s_lo = _sign_int_at(ints, lo)
    while hi - lo >= limit:
        lo, hi = _bisect_step(ints, lo, hi, s_lo)
        if lo == hi:
            return lo, lo, hi
    cand = ((lo + hi) / 2).limit_denominator(Q)
    if lo < cand < hi and _sign_int_at(ints, cand) == 0:
        return cand, lo, hi
    return None, lo, hi


def isolate_real_roots(p: Polynomial) -> list[AlgebraicReal]:
    """All distinct real roots of ``p`` in ascending order."""
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate the roots of the zero polynomial")
    if p.degree <= 0:
        return []
    return list(_isolate_cached(square_free_part(p)))


@lru_cache(maxsize=2048)
def _isolate_cached(sq: Polynomial) -> tuple[AlgebraicReal, ...]:
    ints = _primitive_ints(sq)
    if len(ints) == 2:
        return (AlgebraicReal.from_rational(Fraction(-ints[0], ints[1])),)
    seq = sturm_sequence(sq)
    bound = Fraction(_cauchy_bound(ints))
    found: list[tuple[Fraction, Fraction]] = []
    # (lo, hi, V(lo), V(hi)); endpoints are never roots
    stack = [(-bound, bound, _variations(seq, -bound), _variations(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _sign_int_at(ints, mid) == 0:
            found.append((mid, mid))
            # step off the root so both halves keep non-root endpoints
            eps = (hi - lo) / 4
            while True:
                left = mid - eps
                right = mid + eps
                if count_roots_closed(sq, left, right) == 1:
                    break
                eps /= 2
            stack.append((lo, left, vlo, _variations(seq, left)))
            stack.append((right, hi, _variations(seq, right), vhi))
            continue
        vmid = _variations(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    roots = []
    for lo, hi in found:
        if lo == hi:
            roots.append(AlgebraicReal.from_rational(lo))
            continue
        r, rlo, rhi = _find_rational(ints, lo, hi)
        if r is not None:
            roots.append(AlgebraicReal.from_rational(r))
        else:
            roots.append(AlgebraicReal(sq, lo, hi))
    roots.sort(key=lambda a: a.iso_lo)
    # neighbouring intervals may share an endpoint; make them disjoint
    for i in range(len(roots) - 1):
        while roots[i].iso_hi >= roots[i + 1].iso_lo:
            a, b = roots[i], roots[i + 1]
            if not a.is_rational:
                roots[i] = refine(a, a.width / 2)
            if not b.is_rational:
                roots[i + 1] = refine(b, b.width / 2)
    return tuple(roots)


def refine(alpha: AlgebraicReal, width: RationalLike) -> AlgebraicReal:
    """Shrink the isolating interval of ``alpha`` to at most ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if alpha.is_rational or alpha.width <= width:
        return alpha
    ints = _primitive_ints(alpha.defining)
    lo, hi = bounds(alpha)
    if lo == hi:
        return AlgebraicReal.from_rational(lo)
    s_lo = _sign_int_at(ints, lo)
    while hi - lo > width:
        lo, hi = _bisect_step(ints, lo, hi, s_lo)
        if lo == hi:
            return AlgebraicReal.from_rational(lo)
    return AlgebraicReal(alpha.defining, lo, hi)


def bounds(alpha: AlgebraicReal) -> tuple[Fraction, Fraction]:
    """Tightest isolating interval found so far for ``alpha``.

    Refinements made while comparing are remembered on the instance; the
    public iso_lo/iso_hi stay as constructed so output does not depend on
    the order of earlier queries.
    """
    return getattr(alpha, "_tight", (alpha.iso_lo, alpha.iso_hi))


def shrink(alpha: AlgebraicReal) -> tuple[Fraction, Fraction]:
    lo, hi = bounds(alpha)
    if lo == hi:
        return lo, hi
    ints = _primitive_ints(alpha.defining)
    lo, hi = _bisect_step(ints, lo, hi, _sign_int_at(ints, lo))
    object.__setattr__(alpha, "_tight", (lo, hi))
    return lo, hi


def compare_rational(alpha: AlgebraicReal, r: Fraction) -> Order:
    lo, hi = bounds(alpha)
    if lo == hi:
        return Order(Sign.of(lo - r))
    if r <= lo:
        return Order.GREATER
    if r >= hi:
        return Order.LESS
    ints = _primitive_ints(alpha.defining)
    s = _sign_int_at(ints, r)
    if s == 0:
        return Order.EQUAL  # the only root inside the interval
    # alpha lies on the side of r where the sign differs from the one at r
    return Order.GREATER if s == _sign_int_at(ints, lo) else Order.LESS


def _sign_poly_at(p: Polynomial, alpha: AlgebraicReal) -> Sign:
    if p.is_zero():
        return Sign.ZERO
    lo, hi = bounds(alpha)
    if lo == hi:
        return Sign.of(p(lo))
    if p.degree == 0:
        return Sign.of(p.lc)
    g = poly_gcd(p, alpha.defining)
    if g.degree >= 1 and count_roots_open(g, lo, hi) > 0:
        return Sign.ZERO
    while count_roots_closed(p, lo, hi) > 0:
        lo, hi = shrink(alpha)
        if lo == hi:
            break
    return Sign.of(p(lo))


def compare(alpha: AlgebraicReal, beta: AlgebraicReal) -> Order:
    """Exact order of two real algebraic numbers (rationals are accepted too)."""
    alpha, beta = _as_alg(alpha), _as_alg(beta)
    alo, ahi = bounds(alpha)
    blo, bhi = bounds(beta)
    if blo == bhi:
        return compare_rational(alpha, blo)
    if alo == ahi:
        return Order(-compare_rational(beta, alo))
    g = None
    while True:
        if ahi < blo:
            return Order.LESS
        if bhi < alo:
            return Order.GREATER
        lo = max(alo, blo)
        hi = min(ahi, bhi)
        if g is None:
            g = poly_gcd(alpha.defining, beta.defining)
        # lo/hi are non-roots of both defining polynomials, hence of g
        if g.degree >= 1 and lo < hi and count_roots_open(g, lo, hi) > 0:
            return Order.EQUAL
        alo, ahi = shrink(alpha)
        blo, bhi = shrink(beta)
        if alo == ahi or blo == bhi:
            return compare(alpha, beta)


# --- rational functions ----------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient num/den with monic denominator."""

    num: Polynomial
    den: Polynomial = Polynomial((Fraction(1),))

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial.constant(1)
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(Polynomial.x())

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike]) -> "RationalFunction":
        return cls(Polynomial(tuple(coeffs)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __add__(self, other):
        other = _as_rf(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction.constant(1) / (self ** -n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __call__(self, x: RationalLike) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise PoleAt(f"pole at x = {x}")
        return self.num(x) / d

    def __str__(self) -> str:
        if self.is_polynomial():
            return format_polynomial(self.num)
        return f"({format_polynomial(self.num)})/({format_polynomial(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _as_rf(v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v)
    return RationalFunction.constant(v)


def sign_at(p: Union[RationalFunction, Polynomial], alpha: AlgebraicReal) -> Sign:
    """Exact sign of ``p`` at ``alpha``; raises PoleAt on a denominator root."""
    p = _as_rf(p)
    sd = _sign_poly_at(p.den, alpha)
    if sd is Sign.ZERO:
        raise PoleAt(f"denominator vanishes at {alpha!r}")
    return Sign(_sign_poly_at(p.num, alpha) * sd)
