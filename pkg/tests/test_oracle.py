import cmath
import math
from fractions import Fraction

import pytest

from radsolve.algebra import Polynomial, isolate_real_roots
from radsolve.equation import FORMS, RadicalEquation, parse_equation, parse_expr
from radsolve.oracle import (
    FORMAL_ONLY,
    NEITHER,
    STRONG,
    NonFinite,
    PoleEncountered,
    eval_side,
    principal_sqrt,
    random_equation,
    scan,
    verify,
)

F = Fraction
NESTED_SUM = parse_equation("sqrt(x+1)+sqrt(x-1)=sqrt(x+2)")
NESTED_SUM_NEG = parse_equation("sqrt(x+1)+sqrt(x-1)=sqrt(x-2)")
DIFFERENCE = parse_equation("sqrt(-x)-sqrt(x-2)=x-1")


def roots_3x2(sign):
    """The roots of 3x^2 + 4*sign*x - 8, ascending."""
    return isolate_real_roots(Polynomial((F(-8), F(4 * sign), F(3))))


# --- eval_side -----------------------------------------------------------------------


def test_eval_negative_radicand_is_imaginary():
    v = eval_side(parse_expr("sqrt(1-3*x)"), 2)
    assert v.real == 0 and v.imag == pytest.approx(math.sqrt(5), abs=1e-15)
    assert eval_side(parse_expr("sqrt(x-7)"), F(2)) == v


def test_eval_nested_sum_formal_point():
    x = -1.0971675
    lhs = eval_side(parse_expr("sqrt(x+1)+sqrt(x-1)"), x)
    rhs = eval_side(parse_expr("sqrt(x-2)"), x)
    assert lhs.real == 0 and rhs.real == 0
    assert abs(lhs.imag - 1.7600) < 2e-4
    assert abs(rhs.imag - 1.7599) < 1e-4
    # both sides agree because x is (almost) the formal solution
    assert abs(lhs - rhs) < 1e-6


def test_eval_polynomial():
    assert eval_side(parse_expr("x-5"), 12) == 7 + 0j
    assert eval_side(parse_expr("x-5"), 12.0) == 7 + 0j


def test_principal_root_convention():
    for c in (-1e-12, -0.5, -2.0, -1e6):
        z = eval_side(parse_expr(f"sqrt({F(c)})"), 0)
        assert z.real == 0 and z.imag > 0
        assert z.imag == pytest.approx(math.sqrt(-c))
    assert principal_sqrt(-4) == 2j
    assert principal_sqrt(complex(-4, 0)) == cmath.sqrt(-4)


def test_eval_errors():
    with pytest.raises(PoleEncountered):
        eval_side(parse_expr("1/(x-1)"), 1)
    with pytest.raises(PoleEncountered):
        eval_side(parse_expr("1/(x-1)"), 1 + 1e-16)
    with pytest.raises(NonFinite):
        eval_side(parse_expr("x^40"), 1e300)
    with pytest.raises(ValueError):
        eval_side(parse_expr("x"), 1 + 1j)


def test_eval_bindings():
    assert eval_side(parse_expr("a*x"), 3, {"a": F(2)}) == 6


# --- verify --------------------------------------------------------------------------


def test_verify_nested_sum():
    lo, hi = roots_3x2(1)
    assert verify(NESTED_SUM, hi, 1e-9) == STRONG
    assert verify(NESTED_SUM, lo, 1e-9) == NEITHER
    x1 = roots_3x2(-1)[0]
    assert abs(float(x1) - (2 - 2 * math.sqrt(7)) / 3) < 1e-12
    assert verify(NESTED_SUM_NEG, x1, 1e-9) == FORMAL_ONLY


def test_verify_needs_positive_tol():
    with pytest.raises(ValueError):
        verify(NESTED_SUM, roots_3x2(1)[1], 0)


# --- scan ----------------------------------------------------------------------------


def test_scan_nested_sum():
    hits = scan(NESTED_SUM, 1.0, 10.0, 1e-3)
    assert len(hits) == 1 and hits[0].kind == "point"
    assert abs(hits[0].x - (-2 + 2 * math.sqrt(7)) / 3) < 1e-8
    assert round(hits[0].x, 7) == 1.0971675


def test_scan_identity_is_an_interval():
    eq = parse_equation("sqrt(x^2)+sqrt(x^2)=2*x")
    hits = scan(eq, 0.0, 5.0, 1e-3)
    assert len(hits) == 1 and hits[0].kind == "interval"
    assert hits[0].lo == 0.0 and hits[0].hi == pytest.approx(5.0)


def test_scan_difference_is_empty():
    assert scan(DIFFERENCE, -50.0, 50.0, 1e-3) == []


def test_scan_skips_sign_change_across_pole():
    # sqrt(x^2) = 1/x changes sign at the pole 0 without a root there
    eq = parse_equation("sqrt(x^2)=1/x")
    hits = scan(eq, -3.0, 3.0, 1e-3)
    assert [round(h.x, 6) for h in hits] == [1.0]


def test_scan_argument_checks():
    with pytest.raises(ValueError):
        scan(NESTED_SUM, 1.0, 1.0, 1e-3)
    with pytest.raises(ValueError):
        scan(NESTED_SUM, 0.0, 1.0, 0)


# --- random_equation ---------------------------------------------------------------------


def test_random_equation_is_deterministic():
    for form in FORMS:
        assert random_equation(42, form) == random_equation(42, form)
    assert random_equation(1, "FormD") != random_equation(2, "FormD")


def test_random_equation_carries_form():
    assert random_equation(0, "FormD").form == "FormD"
    assert len(random_equation(0, "FormHF").payload) == 3


def test_random_equation_bounds():
    for seed in range(1000):
        form = FORMS[seed % len(FORMS)]
        degree = seed % 4
        eq = random_equation(seed, form, degree)
        assert isinstance(eq, RadicalEquation) and eq.form == form
        for f in eq.payload:
            assert f.den == Polynomial((F(1),))
            assert f.num.degree <= degree
            for c in f.num.coeffs:
                assert abs(c.numerator) <= 9 and 1 <= c.denominator <= 9


def test_random_equation_argument_checks():
    with pytest.raises(ValueError):
        random_equation(0, "FormZ")
    with pytest.raises(ValueError):
        random_equation(0, "FormD", 4)
