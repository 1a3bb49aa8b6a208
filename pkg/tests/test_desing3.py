import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from foliations import catalog
from foliations.blowup_transform import recenter_on_branch, strict_transform
from foliations.desing3 import (
    CURVE,
    Case3,
    CurveLocalData,
    Outcome,
    branch_curves3,
    case_classify3,
    detect_ss_obstruction,
    eigen_data,
    eigen_pair_matches,
    elementary_ratio_test,
    extract_curve_data,
    fiber_step,
    follow_charts,
    post_blowup_eigen,
    ratio_in_positive_rationals,
    resolve_curve,
)
from foliations.errors import HypothesisNotMet, PreconditionError, UnsupportedBranch
from foliations.exact_arith import MultiPoly, poly_parse, uni_from_coeffs
from foliations.foliation_local import VectorField
from foliations.tower import blowup_bound

Z = MultiPoly.zero(3)
ONE = MultiPoly.constant(1, 3)
z1, z2, z3 = (MultiPoly.var(i, 3) for i in range(3))


def data(p10=Z, p11=Z, p20=Z, p21=Z, p30=Z, p31=Z):
    return CurveLocalData(p10, p11, p20, p21, p30, p31, (Z, Z, Z))


def field_from(cd, extra=(Z, Z, Z)):
    return VectorField(tuple(a + b for a, b in zip(cd.linear_components(), extra)), 0)


def test_extract_sanz_sancho_data():
    cd = extract_curve_data(catalog.sanz_sancho_field())
    assert (cd.p10, cd.p11, cd.p21) == (Z, Z, Z)
    assert cd.p20 == z3 and cd.p31 == ONE and cd.p30 == -z3 - 2


def test_extract_diagonal_and_high_order():
    cd = extract_curve_data(VectorField((z1 * (z3 + 1), z2 * z3 * z3, Z), 0))
    assert cd.p10 == z3 + 1 and cd.p21 == z3 * z3 and cd.p11 == Z and cd.p20 == Z
    cd2 = extract_curve_data(VectorField((z1 * z1, z2 * z2, z1 * z2), 0))
    assert all(p.is_zero() for p in (cd2.p10, cd2.p11, cd2.p20, cd2.p21, cd2.p30, cd2.p31))


def test_case_classification():
    assert case_classify3(eigen_data(data(p10=z3))).tag is Case3.ONE_ZERO
    assert case_classify3(eigen_data(data(p20=z3))).tag is Case3.BOTH_ZERO
    c = case_classify3(eigen_data(data(p10=z3, p21=z3 * 2)))
    assert c.tag is Case3.DISTINCT and c.trace_sq_over_det == Fraction(9, 2) and c.resonant_n == 2


def test_positive_rational_ratio():
    assert ratio_in_positive_rationals(eigen_data(data(p10=z3, p21=z3 * 3)))
    assert not ratio_in_positive_rationals(eigen_data(data(p10=z3, p21=-z3 * 2)))
    assert not ratio_in_positive_rationals(eigen_data(data(p10=z3, p21=ONE)))
    assert not elementary_ratio_test(eigen_data(data(p10=z3, p21=z3 * 3)))
    assert elementary_ratio_test(eigen_data(data(p10=z3, p21=-z3)))
    assert not elementary_ratio_test(eigen_data(data()))


def test_branch_curves():
    bs = branch_curves3(data(p20=z3, p21=ONE))
    assert bs[0].psi == (-z3,) and bs[1].chart == 2
    with pytest.raises(UnsupportedBranch) as info:
        branch_curves3(data(p11=ONE, p20=z3))
    assert "delta" in info.value.data


def test_resonance_prediction():
    cd = data(p10=z3, p21=z3 * 2)
    assert post_blowup_eigen(cd, 1) == (z3, z3)
    with pytest.raises(HypothesisNotMet):
        post_blowup_eigen(data(p20=z3), 1)


def test_obstruction_detection():
    assert detect_ss_obstruction(extract_curve_data(catalog.sanz_sancho_field()))
    assert not detect_ss_obstruction(data(p20=z3 * z3, p31=ONE))
    assert not detect_ss_obstruction(data(p31=ONE))
    assert not detect_ss_obstruction(data(p20=z3, p31=z3))


def test_fiber_step_keeps_the_pattern():
    F = catalog.sanz_sancho_field()
    G = fiber_step(F)
    assert detect_ss_obstruction(extract_curve_data(G))
    with pytest.raises(HypothesisNotMet):
        fiber_step(VectorField((z1 * z3 * z3, z1 * z3 * z3, z2), 0))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_nilpotent_ladder(k):
    F = catalog.nilpotent_ladder_field()
    G = follow_charts(F, [2] * (k - 1) + [1])[-1]
    e = eigen_data(extract_curve_data(G))
    assert e.trace == z3 and e.det == -(k * (k - 1)) * z3 * z3
    assert e.eigenvalues() == (-(k - 1) * z3, k * z3)


def test_one_zero_branches_match_predictions():
    F = catalog.one_zero_eigenvalue_field()
    cd = extract_curve_data(F)
    strict = strict_transform(F, CURVE, 1).strict
    for i, b in enumerate(branch_curves3(cd), start=1):
        assert eigen_pair_matches(recenter_on_branch(strict, b), post_blowup_eigen(cd, i))


small = st.lists(st.integers(-3, 3), min_size=1, max_size=2).map(lambda c: uni_from_coeffs(c, 3, 2))


@settings(max_examples=40, deadline=None)
@given(small, small, small, st.integers(1, 3))
def test_distinct_case_predictions_match_strict_transforms(lam1, lam2, p10, p11c):
    """Build linear data with prescribed eigenvalues and compare the predicted
    pair on each branch with the actual recentered strict transform."""
    p11 = MultiPoly.constant(p11c, 3)
    p21 = lam1 + lam2 - p10
    p20 = (p10 * p21 - lam1 * lam2) / p11c
    cd = data(p10, p11, p20, p21, ONE * 0, ONE)
    e = eigen_data(cd)
    if e.det.is_zero():
        return
    F = field_from(cd, (z2 * z2 * z2, z1 * z1 * z1, z1 * z1))
    strict = strict_transform(F, CURVE, 1).strict
    for i, b in enumerate(branch_curves3(cd, e), start=1):
        pair = post_blowup_eigen(cd, i)
        assert eigen_pair_matches(recenter_on_branch(strict, b), pair)


def test_resolution_outcomes():
    ss = resolve_curve(catalog.sanz_sancho_field())
    assert ss.outcome is Outcome.ELEMENTARY and ss.outcome_step == 2
    assert ss.steps[1].classification.ell == 1
    assert ss.outcome_step <= blowup_bound(3, 2, 1) + 2
    assert str(resolve_curve(catalog.sanz_sancho_field(), mode="fiber")) == "ObstructionSS(0)"
    assert str(resolve_curve(catalog.one_zero_eigenvalue_field())) == "ElementaryReached(0)"
    assert str(resolve_curve(catalog.nilpotent_ladder_field())) == "ElementaryReached(4)"
    assert resolve_curve(catalog.sanz_sancho_field(), budget=1).outcome is Outcome.BUDGET
    q = resolve_curve(catalog.type_ii_quartic_field())
    assert q.outcome is Outcome.NO_CURVE and q.steps[1].classification.type_tag.value == "TypeI"


def test_resolution_argument_checks():
    with pytest.raises(PreconditionError):
        resolve_curve(catalog.sanz_sancho_field(), mode="diagonal")
    with pytest.raises(PreconditionError):
        resolve_curve(catalog.sanz_sancho_field(), budget=1, min_budget=3)
