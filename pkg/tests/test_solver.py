import math
from fractions import Fraction

import pytest

from radsolve.algebra import Polynomial, RationalFunction, Sign, isolate_real_roots, sign_at
from radsolve.equation import RadicalEquation, parse_equation
from radsolve.oracle import NEITHER, random_equation, verify
from radsolve.realset import RealSet
from radsolve.report import to_json
from radsolve.solver import (
    FORMAL_ONLY,
    REJECTED,
    STRONG,
    DegenerateQuadratic,
    Location,
    Restriction,
    RestrictionSystem,
    locate_vs_quadratic,
    solve,
    solve_form_b,
    solve_form_d,
    solve_form_e,
    solve_form_f,
    solve_form_hf,
    solve_form_roots,
    solve_form_sum_zero,
)

F = Fraction
X = Polynomial.x()
NONNEG = RealSet.interval(F(0), None, True, False)
LINE = RealSet.real_line()


def rf(*coeffs):
    return RationalFunction(Polynomial(tuple(F(c) for c in coeffs)))


def const(c):
    return RationalFunction.constant(F(c))


def root_of(p, i):
    return isolate_real_roots(p)[i]


# --- solve_form_b ----------------------------------------------------------------------


def test_form_b_linear_radicand():
    sys = solve_form_b(rf(1, 4), rf(-5, 1))
    assert sys.s0 == RealSet.points([F(2), F(12)])
    assert sys.named("A1") == RealSet.interval(F(5), None, True, False)
    assert sys.strong() == sys.formal() == RealSet.point(12)


def test_form_b_absolute_value():
    sys = solve_form_b(rf(0, 0, 1), rf(0, 1))
    assert sys.s0 == LINE
    assert sys.strong() == NONNEG


def test_form_b_contradiction():
    sys = solve_form_b(const(-1), const(1))
    assert sys.s0.is_empty()
    assert sys.strong().is_empty() and sys.formal().is_empty()


# --- solve_form_d ------------------------------------------------------------------------


def test_form_d_pair_value():
    sys = solve_form_d(rf(-1, 0, 1), rf(1, 0, 1), rf(0, F(3, 2)))
    (alpha,) = sys.strong().isolated_points()
    assert sys.strong() == sys.formal()
    assert abs(float(alpha) - (64 / 63) ** 0.25) < 1e-12
    assert round(float(alpha), 5) == 1.00394


def test_form_d_identity():
    sys = solve_form_d(rf(0, 0, 1), rf(0, 0, 1), rf(0, 2))
    assert sys.s0 == LINE
    assert sys.strong() == sys.formal() == NONNEG


def test_form_d_b_equal_two_is_empty():
    sys = solve_form_d(rf(-1, 0, 1), rf(1, 0, 1), rf(0, 2))
    assert sys.strong().is_empty() and sys.formal().is_empty()


def test_form_d_zero_h_needs_nonnegative_radicands():
    # sqrt(-1) + sqrt(-1) = 0 has no solution, even formally
    sys = solve_form_d(const(-1), const(-1), const(0))
    assert sys.strong().is_empty() and sys.formal().is_empty()
    sys = solve_form_d(rf(0, 1), rf(0, -1), const(0))
    assert sys.strong() == RealSet.point(0)


# --- solve_form_e ------------------------------------------------------------------------


def test_form_e_nested_sum_strong():
    sys = solve_form_e(rf(1, 1), rf(-1, 1), rf(2, 1))
    (alpha,) = sys.strong().isolated_points()
    assert abs(float(alpha) - (-2 + 2 * math.sqrt(7)) / 3) < 1e-12
    assert sys.formal() == sys.strong()
    assert sign_at(Polynomial((F(-8), F(4), F(3))), alpha) is Sign.ZERO


def test_form_e_nested_sum_formal_only():
    sys = solve_form_e(rf(1, 1), rf(-1, 1), rf(-2, 1))
    assert sys.strong().is_empty()
    (alpha,) = sys.formal().isolated_points()
    assert abs(float(alpha) - (2 - 2 * math.sqrt(7)) / 3) < 1e-12


def test_form_e_identity():
    sys = solve_form_e(rf(0, 1), rf(0, 1), rf(0, 4))
    assert sys.strong() == NONNEG
    assert sys.formal() == LINE
    assert sys.named("A3").intersect(sys.named("A4")) == RealSet.interval(None, F(0), False, True)


# --- solve_form_hf -----------------------------------------------------------------------


def test_form_hf_cubic_quartic():
    sys = solve_form_hf(rf(0, 1), rf(0, 1), rf(0, 0, 1))
    assert sys.strong() == sys.formal() == RealSet.points([F(0), F(1)])


def test_form_hf_zero_coefficient():
    sys = solve_form_hf(const(0), const(-1), const(0))
    assert sys.strong().is_empty()
    assert sys.formal() == LINE


def test_form_hf_unit_coefficient():
    sys = solve_form_hf(const(1), rf(0, 1), rf(-2, 1))
    assert sys.s0 == RealSet.points([F(1), F(4)])
    assert sys.strong() == sys.formal() == RealSet.point(4)


# --- solve_form_f ------------------------------------------------------------------------


def test_form_f_difference():
    sys = solve_form_f(rf(0, -1), rf(-2, 1), rf(-1, 1))
    assert sys.strong().is_empty()
    assert sys.formal() == RealSet.point(1)
    assert sys.named("B1") == RealSet.point(1)


def test_form_f_identical_radicals():
    sys = solve_form_f(rf(0, 0, 1), rf(0, 0, 1), const(0))
    assert sys.s0 == LINE
    for name in ("A1", "A2", "A3"):
        assert sys.named(name) == LINE
    assert sys.strong() == LINE
    assert sys.named("B1").is_empty()


def test_form_f_direct_substitution():
    sys = solve_form_f(rf(3, 1), rf(0, 1), const(1))
    assert sys.s0 == RealSet.point(1)
    assert sys.strong() == RealSet.point(1)


def test_form_f_zero_h_b1_is_a_set():
    # f = g < 0 everywhere: every point is a formal solution
    sys = solve_form_f(const(-1), const(-1), const(0))
    assert sys.named("B1") == LINE
    assert sys.strong().is_empty()
    assert sys.formal() == LINE


# --- solve_form_roots and solve_form_sum_zero ----------------------------------------------


def test_form_roots_examples():
    sys = solve_form_roots(rf(1, -3), rf(-7, 1))
    assert sys.formal() == RealSet.point(2) and sys.strong().is_empty()
    sys = solve_form_roots(rf(0, 1), rf(0, 1))
    assert sys.strong() == NONNEG and sys.formal() == LINE
    sys = solve_form_roots(rf(0, 1), rf(1, 1))
    assert sys.strong().is_empty() and sys.formal().is_empty()


def test_form_sum_zero_examples():
    assert solve_form_sum_zero([rf(-1, 1), rf(1, -1)]).strong() == RealSet.point(1)
    sys = solve_form_sum_zero([rf(0, 1), rf(0, 1), rf(0, 4)])
    assert sys.strong() == RealSet.point(0)
    assert sys.formal_formula is None
    assert solve_form_sum_zero([rf(0, 1), rf(1, 1)]).strong().is_empty()


def test_formula_references_must_exist():
    with pytest.raises(ValueError):
        RestrictionSystem("FormB", LINE, "", None, (Restriction("A1", "", LINE),),
                          (("S0", "A2"),), None, LINE)


# --- locate_vs_quadratic -------------------------------------------------------------------


def test_locate_examples():
    q = Polynomial((F(-8), F(4), F(3)))
    assert locate_vs_quadratic(q, F(1)) is Location.BETWEEN
    assert locate_vs_quadratic(q, F(2)) is Location.RIGHT_OF_BOTH
    assert locate_vs_quadratic(q, F(-3)) is Location.LEFT_OF_BOTH
    assert locate_vs_quadratic(Polynomial((F(-1), F(0), F(1))), F(1)) is Location.AT_ROOT
    # a negative leading coefficient is normalized internally
    assert locate_vs_quadratic(-q, F(2)) is Location.RIGHT_OF_BOTH


@pytest.mark.parametrize("coeffs", [(1, 0, 1), (1, 2, 1), (1, 1), (1, 0, 0, 1)])
def test_locate_rejects_degenerate(coeffs):
    with pytest.raises(DegenerateQuadratic):
        locate_vs_quadratic(Polynomial(tuple(F(c) for c in coeffs)), F(0))


# --- solve ---------------------------------------------------------------------------------


def test_solve_nested_sum_candidates():
    report = solve(RadicalEquation("FormE", (rf(1, 1), rf(-1, 1), rf(2, 1))))
    assert [c.verdict for c in report.candidates] == [REJECTED, STRONG]
    assert report.candidates[0].failed == ("A1∩A2", "A3∩A4")
    assert report.candidates[1].failed == ()
    assert report.candidates[1].approx == f"{(-2 + 2 * math.sqrt(7)) / 3:.11f}"


def test_solve_identity_has_no_isolated_candidates():
    report = solve(RadicalEquation("FormD", (rf(0, 0, 1), rf(0, 0, 1), rf(0, 2))))
    assert report.strong == NONNEG
    assert report.candidates == []
    assert "the solution set contains intervals" in report.notes


def test_solve_difference_b1_candidate():
    report = solve(RadicalEquation("FormF", (rf(0, -1), rf(-2, 1), rf(-1, 1))))
    one = [c for c in report.candidates if c.value == 1]
    assert len(one) == 1 and one[0].verdict == FORMAL_ONLY
    assert one[0].failed


def test_solve_rejection_names_restriction():
    report = solve(parse_equation("sqrt(4*x+1)=x-5"))
    (rej,) = report.by_verdict(REJECTED)
    assert rej.value == 2 and rej.failed == ("A1",)


def test_solve_sum_zero_notes_partial_support():
    report = solve(parse_equation("sqrt(x)+sqrt(x)=-sqrt(4*x)"))
    assert not report.formal_supported
    assert any("not supported" in n for n in report.notes)
    assert report.strong == RealSet.point(0)


def test_solve_zero_h_note():
    report = solve(RadicalEquation("FormD", (rf(0, 1), rf(0, -1), const(0))))
    assert any("identically zero" in n for n in report.notes)


# --- invariants over random equations ---------------------------------------------------

FORMS = ("FormB", "FormRoots", "FormD", "FormE", "FormF", "FormHF", "FormSumZero")


def _reports():
    for form in FORMS:
        for seed in range(80):
            eq = random_equation(seed, form, 2)
            yield eq, solve(eq)


REPORTS = list(_reports())


def test_strong_within_formal():
    for eq, report in REPORTS:
        assert report.strong.issubset(report.formal), str(eq)


def test_candidates_consistent_with_sets():
    for eq, report in REPORTS:
        values = [c.value for c in report.candidates]
        for p in report.formal.isolated_points():
            assert any(p == v for v in values)
        for c in report.candidates:
            assert (c.verdict == STRONG) == report.strong.contains(c.value)
            assert (c.verdict != REJECTED) == report.formal.contains(c.value)


def test_strong_points_have_nonnegative_radicands_and_satisfy_s0():
    for eq, report in REPORTS:
        E = report.system.candidate_function
        for alpha in report.strong.isolated_points():
            for f in eq.radicands():
                assert sign_at(f, alpha) is not Sign.NEGATIVE, str(eq)
            if E is not None and not E.is_zero():
                assert sign_at(E, alpha) is Sign.ZERO, str(eq)


def test_no_silent_rejections():
    for eq, report in REPORTS:
        for c in report.by_verdict(REJECTED):
            assert c.failed or verify(eq, c.value, 1e-3) == NEITHER, str(eq)


def test_formal_points_pass_complex_residual():
    for eq, report in REPORTS:
        for alpha in report.formal.isolated_points():
            assert verify(eq, alpha, 1e-9) != NEITHER, (str(eq), float(alpha))


def test_form_d_strong_equals_formal():
    for eq, report in REPORTS:
        if eq.form == "FormD":
            assert report.strong == report.formal


def test_solve_is_deterministic():
    for eq, report in REPORTS[::7]:
        assert to_json(solve(eq), "both") == to_json(report, "both")


def test_root_helper_sanity():
    # the isolated root used above really is (2-2*sqrt(7))/3
    alpha = root_of(Polynomial((F(-8), F(-4), F(3))), 0)
    assert abs(float(alpha) - (2 - 2 * math.sqrt(7)) / 3) < 1e-12
