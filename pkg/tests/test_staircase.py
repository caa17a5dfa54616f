from fractions import Fraction as F

import pytest

from polycap.exactnum import QuadNum
from polycap.perfclass import STEP_MAIN, blocker_class, inner_family, outer_family
from polycap.report import report_ok
from polycap.staircase import (
    BELOW,
    BLOCKED,
    EQUAL,
    MAIN_BETA,
    AccumulationData,
    RadicandExplosionError,
    _acc_coefficient,
    acc_point,
    accumulation_data,
    corner_points,
    envelope,
    inner_corners,
    is_above_volume,
    is_blocked,
    verify_alternation,
    verify_cf_recursion,
    verify_closed_forms,
    vol_at_acc,
    volume_curve_decimal,
)

ACC = QuadNum(F(54, 14), F(11, 14), 30)


def test_acc_point_examples():
    assert acc_point(MAIN_BETA) == ACC
    assert acc_point(1) == QuadNum(F(3), F(2), 2)
    assert acc_point(2) == QuadNum(F(7, 2), F(3, 2), 5)
    assert acc_point(2).decimal(3, "down") == "6.854"


def test_acc_satisfies_quadratic_and_reciprocal_root():
    for beta in (MAIN_BETA, QuadNum.of(1), QuadNum.of(F(5, 2)), QuadNum.of(3)):
        acc = acc_point(beta)
        c = _acc_coefficient(beta)
        assert (acc * acc - c * acc + 1).is_zero()
        smaller = c - acc
        assert smaller * acc == QuadNum.of(1)
        assert acc > 1


def test_vol_examples():
    assert vol_at_acc(1) == QuadNum(F(1), F(1, 2), 2)
    assert vol_at_acc(MAIN_BETA).inverse() == (MAIN_BETA * 4 - 7) / 5
    assert vol_at_acc(MAIN_BETA) == acc_point(MAIN_BETA) * 5 / (MAIN_BETA * 6 + 17)
    assert vol_at_acc(2).decimal(4, "down") == "1.3090"


def test_accumulation_data_validation():
    ad = accumulation_data(MAIN_BETA)
    assert ad.acc == ACC
    with pytest.raises(ValueError):
        AccumulationData(beta=MAIN_BETA, acc=ACC + 1, vol=ad.vol)


def test_acc_monotone_vol_antitone():
    betas = [QuadNum.of(v) for v in (1, F(3, 2), 2, F(5, 2), 3)]
    accs = [acc_point(b) for b in betas]
    vols = [vol_at_acc(b) for b in betas]
    # different radicands: compare through certified 50-digit bounds
    for a1, a2 in zip(accs, accs[1:]):
        assert F(a1.decimal(50, "up")) < F(a2.decimal(50, "down"))
    for v1, v2 in zip(vols, vols[1:]):
        assert F(v2.decimal(50, "up")) < F(v1.decimal(50, "down"))


def test_radicand_explosion_reported():
    # beta = sqrt(2): the accumulation discriminant leaves Q(sqrt(2))
    with pytest.raises(RadicandExplosionError):
        acc_point(QuadNum(F(0), F(1), 2))


def test_is_above_volume():
    lam = QuadNum.of(7) / (MAIN_BETA + 3)
    assert is_above_volume(lam, 7, MAIN_BETA)
    assert not is_above_volume(F(1, 2), 7, MAIN_BETA)


def test_is_blocked_trichotomy():
    assert is_blocked(blocker_class(2), 2) == BLOCKED
    assert is_blocked(STEP_MAIN, MAIN_BETA) == EQUAL
    assert is_blocked(outer_family(0), MAIN_BETA) == BELOW


def test_corner_points():
    outer, hat = corner_points(0, MAIN_BETA)
    assert outer.z == QuadNum.of(7)
    assert outer.lam == QuadNum.of(7) / (MAIN_BETA + 3)
    assert hat is None
    _, hat1 = corner_points(1, MAIN_BETA)
    assert hat1.z == QuadNum.of(F(579, 71))
    assert hat1.lam == QuadNum.of(579) / (MAIN_BETA * 86 + 239)


def test_inner_corners_formula():
    first, second = inner_corners(0, MAIN_BETA)
    den0 = MAIN_BETA + 3
    denh = MAIN_BETA * 86 + 239
    assert first.z == denh * 7 / (den0 * 71)
    assert first.lam == QuadNum.of(7) / den0
    e1 = outer_family(1)
    den1 = MAIN_BETA * e1.e + e1.d
    assert second.z == den1 * 579 / (denh * e1.q)
    assert second.lam == QuadNum.of(579) / denh


def test_inner_corner_lambda_matches_outer_mu():
    from polycap.perfclass import mu_at_center
    for k in range(11):
        first, _ = inner_corners(k, MAIN_BETA)
        assert first.lam == mu_at_center(outer_family(k), MAIN_BETA)


def test_verify_suites_pass():
    assert report_ok(verify_alternation(10, MAIN_BETA))
    assert report_ok(verify_cf_recursion(10))
    assert report_ok(verify_closed_forms(8))


def test_alternation_hand_values():
    # 7 < 579/71 < 155/19 by cross-multiplication
    assert 579 * 19 < 155 * 71
    assert 7 * 71 < 579
    rep = verify_alternation(1, MAIN_BETA)
    assert all(e["status"] == "pass" for e in rep)


def test_cf_recursion_matrix_step():
    # k = 2: (457*7 + 204*1, 56*7 + 25*1) = (3403, 417)
    assert 457 * 7 + 204 * 1 == 3403
    assert 56 * 7 + 25 * 1 == 417
    assert outer_family(2).p == 3403 and outer_family(2).q == 417


def test_closed_form_base_cases():
    d = QuadNum(F(3, 2), F(31, 120), 30)
    dbar = QuadNum(F(3, 2), F(-31, 120), 30)
    r = QuadNum(F(11), F(2), 30)
    assert d + dbar == QuadNum.of(3)
    assert d * r + dbar * r.inverse() == QuadNum.of(64)


def test_envelope():
    classes = [outer_family(0), outer_family(1), inner_family(1)]
    out = envelope(MAIN_BETA, classes, [F(7), F(155, 19)])
    assert out[0].lam == QuadNum.of(7) / (MAIN_BETA + 3)
    assert out[0].label == str(outer_family(0))
    assert out[1].label == str(outer_family(1))
    only_vol = envelope(MAIN_BETA, [], [F(7)])
    assert only_vol[0].kind == "volume-only" and only_vol[0].lam is None


def test_envelope_meets_at_inner_corner():
    # at z_in the active obstructions from E_0 and the first hat class agree
    first, _ = inner_corners(0, MAIN_BETA)
    from polycap.perfclass import mu
    v0 = mu(outer_family(0), MAIN_BETA, first.z)
    v1 = mu(inner_family(1), MAIN_BETA, first.z)
    assert v0 == first.lam
    assert v1 == first.lam


def test_volume_curve_decimal():
    # squared back: value^2 <= z/(2 beta) < (value + ulp)^2
    val = F(volume_curve_decimal(F(7), MAIN_BETA, 30))
    z_over = QuadNum.of(7) / (MAIN_BETA * 2)
    assert QuadNum.of(val * val) <= z_over
    ulp = F(1, 10 ** 30)
    assert z_over < QuadNum.of((val + ulp) * (val + ulp))
