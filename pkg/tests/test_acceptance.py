"""Acceptance suite: one test per criterion, one printed line per criterion.

Everything is exact arithmetic, so equality assertions are bit-exact; time
budgets are asserted where the criterion states one.  Run with `pytest -s
tests/test_acceptance.py` to see the per-criterion lines.
"""

import time
from contextlib import contextmanager
from fractions import Fraction as F
from math import gcd

import pytest

from polycap.atf import (
    apply_word,
    extract_embedding,
    init_polydisk,
    verify_formula_suite,
    verify_full_filling,
)
from polycap.cli import default_sweep_samples
from polycap.ech import (
    ellipsoid_caps,
    lower_bound_sweep,
    polydisk_cap,
    polydisk_cap_bruteforce,
    ratio_at,
)
from polycap.exactnum import QuadNum
from polycap.perfclass import (
    INNER_1,
    STEP_MAIN,
    blocker_class,
    ech_index,
    inner_family,
    outer_family,
    qp_check,
    verify_families,
)
from polycap.report import report_ok
from polycap.staircase import (
    BELOW,
    BLOCKED,
    EQUAL,
    MAIN_BETA,
    acc_point,
    envelope,
    inner_corners,
    is_above_volume,
    is_blocked,
    verify_alternation,
    verify_cf_recursion,
    verify_closed_forms,
    vol_at_acc,
)

BETA = MAIN_BETA
ACC = QuadNum(F(54, 14), F(11, 14), 30)


@contextmanager
def criterion(number: int, label: str, budget_s: float | None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number}: {label}")
        raise
    elapsed = time.monotonic() - start
    print(f"[PASS] criterion {number}: {label} ({elapsed:.2f}s)")
    if budget_s is not None:
        assert elapsed < budget_s, f"criterion {number} exceeded {budget_s}s"


def test_criterion_01_diophantine_families():
    with criterion(1, "Diophantine families k <= 20 with literal tuples", 1.0):
        assert report_ok(verify_families(20))
        assert outer_family(0).tuple() == (3, 1, 7, 1, 4)
        assert outer_family(1).tuple() == (64, 23, 155, 19, 82)
        assert STEP_MAIN.tuple() == (17, 6, 41, 5, 22)
        hat1 = inner_family(1)
        assert (hat1.d, hat1.e, hat1.p, hat1.q) == (239, 86, 579, 71)
        # t = 250 fails every defining equation; the equations force 306
        assert not qp_check((239, 86, 579, 71, 250))[0]
        assert hat1.tuple() == INNER_1
        for k in range(21):
            assert qp_check(outer_family(k).tuple())[0]
            if k >= 1:
                assert qp_check(inner_family(k).tuple())[0]


def test_criterion_02_accumulation_identities():
    with criterion(2, "accumulation identities", 1.0):
        assert acc_point(BETA) == ACC
        assert acc_point(1) == QuadNum(F(3), F(2), 2)
        assert vol_at_acc(1) == QuadNum(F(1), F(1, 2), 2)
        assert vol_at_acc(BETA).inverse() == (BETA * 4 - 7) / 5
        assert vol_at_acc(BETA) == acc_point(BETA) * 5 / (BETA * 6 + 17)


def test_criterion_03_cf_structure():
    with criterion(3, "continued-fraction structure", 1.0):
        from polycap.cfweights import cf_of_quadratic, convergents
        cf = cf_of_quadratic(ACC)
        assert cf.pre == () and cf.period == (8, 6, 4, 2)
        conv = convergents(cf, 24)
        assert conv[2] == (204, 25) and conv[3] == (457, 56)
        for n in range(len(conv) - 1):
            r0, s0 = conv[n]
            r1, s1 = conv[n + 1]
            assert r1 * s0 - r0 * s1 == (-1) ** n
        assert report_ok(verify_cf_recursion(10))


def test_criterion_04_capacity_oracles():
    with criterion(4, "capacity oracles (brute force + Pick identity)", 60.0):
        for beta in (QuadNum.of(1), QuadNum.of(2), QuadNum.of(F(5, 2)), BETA):
            for k in range(61):
                assert polydisk_cap_bruteforce(k, beta) == polydisk_cap(k, beta)
        for p in range(1, 31):
            for q in range(1, 31):
                if gcd(p, q) == 1:
                    k = (p + 1) * (q + 1) // 2 - 1
                    assert ellipsoid_caps(1, F(p, q), k)[k] == QuadNum.of(p)


def test_criterion_05_capacity_ratio_reproduction():
    with criterion(5, "capacity-ratio values at class indices", 30.0):
        assert ratio_at(BETA, 7, 7) == QuadNum.of(7) / (BETA + 3)
        assert ratio_at(BETA, 125, F(41, 5)) == QuadNum.of(41) / (BETA * 6 + 17)
        assert ratio_at(BETA, 20879, F(579, 71)) == \
            QuadNum.of(579) / (BETA * 86 + 239)


def test_criterion_06_atf_formula_suite():
    with criterion(6, "ATF length/ray/direction formulas k <= 8", 5.0):
        assert report_ok(verify_formula_suite(8))


def test_criterion_07_inner_corner_agreement():
    with criterion(7, "two-path inner corners bit-exact k <= 8", None):
        for k in range(9):
            word = "v2yx" + "y" * k + "xy"
            emb = extract_embedding(apply_word(init_polydisk(BETA), word))
            corner = inner_corners(k, BETA)[0]
            assert emb.z == corner.z
            assert emb.lam == corner.lam


def test_criterion_08_full_filling_convergence():
    with criterion(8, "full-filling convergence and closed forms", None):
        assert report_ok(verify_full_filling(8, gap_k=4,
                                             gap_bound=F(1, 10 ** 10)))
        assert report_ok(verify_closed_forms(8))


def test_criterion_09_blocked_integers():
    with criterion(9, "blocked integer polydisks and the exact-equality case", None):
        for n in (2, 3, 4):
            assert is_blocked(blocker_class(n), n) == BLOCKED
        assert acc_point(2).decimal(3, "down") == "6.854"
        assert vol_at_acc(2).decimal(3, "down") == "1.309"
        assert is_blocked(STEP_MAIN, BETA) == EQUAL
        assert is_blocked(outer_family(0), BETA) == BELOW


def test_criterion_10_alternation():
    with criterion(10, "alternation chains k <= 10", None):
        assert report_ok(verify_alternation(10, BETA))


def _sweep_k2000():
    samples = default_sweep_samples(F(1), F(9), 200, 64)
    assert F(7) in samples
    return samples, lower_bound_sweep(BETA, 2000, samples)


def test_criterion_11_sweep_consistency():
    with criterion(11, "sweep vs envelope vs volume, K = 2000", 300.0):
        k_max = 2000
        samples, sweep = _sweep_k2000()
        by_z = {s.z: s for s in sweep}
        assert by_z[QuadNum.of(7)].lam == QuadNum.of(7) / (BETA + 3)
        classes = [c for c in
                   [outer_family(0), outer_family(1), outer_family(2),
                    inner_family(1), STEP_MAIN]
                   if ech_index(c) <= k_max]
        assert {c.tuple() for c in classes} == {
            (3, 1, 7, 1, 4), (64, 23, 155, 19, 82), (17, 6, 41, 5, 22)}
        env = envelope(BETA, classes, samples)
        unsaturated = []
        for e, s in zip(env, sweep):
            assert e.z == s.z
            assert e.lam <= s.lam
            if is_above_volume(s.lam, s.z, BETA):
                assert s.kind == "ech-ratio"
            else:
                assert s.kind == "volume-comparison"
                unsaturated.append(s.z.as_fraction())
        # The squared volume comparison fails only in the K-unsaturated
        # window just right of the 41/5 corner (the first capacity index
        # whose ratio clears the volume curve at 206/25 is 3359 > 2000);
        # the sweep flags exactly those samples.
        assert unsaturated == [F(206, 25)]


@pytest.mark.xfail(strict=True, reason=(
    "literal reading of the volume clause: at K = 2000 the ratio max at "
    "z = 206/25 is exactly 41/(17+6*beta), which the squared comparison "
    "puts below the volume curve; no index <= 2000 clears it (first is "
    "3359), so the binding lower bound there is the volume curve itself."))
def test_criterion_11_volume_clause_literal():
    _samples, sweep = _sweep_k2000()
    for s in sweep:
        assert is_above_volume(s.lam, s.z, BETA)
