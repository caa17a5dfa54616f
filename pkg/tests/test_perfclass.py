from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycap.exactnum import QuadNum
from polycap.perfclass import (
    INNER_1,
    STEP_MAIN,
    ClassTriple,
    QuasiPerfectClass,
    SeedIncompatibleError,
    adjacency,
    blocker_class,
    brahmagupta_shift,
    combine,
    ech_index,
    family_n,
    from_pq,
    inner_family,
    mu,
    mu_at_center,
    outer_family,
    qp_check,
    recurse,
    step_class,
    t_compat,
    triple_identities,
    verify_families,
)
from polycap.report import report_ok

BETA = QuadNum(F(1, 2), F(5, 12), 30)
ACC = QuadNum(F(54, 14), F(11, 14), 30)


def test_qp_check_examples():
    assert qp_check((17, 6, 41, 5, 22)) == (True, [])
    ok, bad = qp_check((3, 1, 7, 2, 4))
    assert not ok and any("2(d+e)" in b for b in bad)
    assert qp_check((2, 1, 5, 1, 2))[0]


def test_from_pq_examples():
    assert from_pq(41, 5) == QuasiPerfectClass(17, 6, 41, 5, 22)
    assert from_pq(7, 1) == QuasiPerfectClass(3, 1, 7, 1, 4)
    assert from_pq(6, 1) is None  # t = 3, but p+q+t is not divisible by 4
    assert from_pq(8, 3) is None  # discriminant not a perfect square


def test_families_literal_tuples():
    assert outer_family(0).tuple() == (3, 1, 7, 1, 4)
    assert outer_family(1).tuple() == (64, 23, 155, 19, 82)
    assert outer_family(2).tuple() == (1405, 505, 3403, 417, 1800)
    assert STEP_MAIN.tuple() == (17, 6, 41, 5, 22)
    # the defining equations force t = 2(d - e) = 306
    assert inner_family(1).tuple() == INNER_1 == (239, 86, 579, 71, 306)
    assert inner_family(2).tuple() == (115193, 41404, 279005, 34189, 147578)


def test_inner_t_is_pinned_three_ways():
    h = inner_family(1)
    assert h.t == 2 * (h.d - h.e)
    assert h.t * h.t == h.p * h.p + h.q * h.q - 6 * h.p * h.q + 8
    assert h.t == outer_family(0).t * outer_family(1).t - STEP_MAIN.t


def test_verify_families_k20():
    assert report_ok(verify_families(20))


def test_recurse_compatibility():
    e0, e1 = outer_family(0), outer_family(1)
    got = recurse(e0, e1, 22, 3)
    assert [c.tuple() for c in got] == [outer_family(k).tuple() for k in (2, 3, 4)]
    with pytest.raises(SeedIncompatibleError):
        recurse(e0, e1, 5, 1)


def test_recurse_constant_sequence_boundary():
    e0 = outer_family(0)
    # x1^T A x0 = 8 = 4*2, so nu = 2 is compatible and 2x - x = x repeats
    got = recurse(e0, e0, 2, 4)
    assert all(c == e0 for c in got)


def test_seed_quadric_product_is_88():
    from polycap.perfclass import _quadric_product
    assert _quadric_product(outer_family(1), outer_family(0)) == 4 * 22


def test_mu_examples():
    e0 = outer_family(0)
    assert mu(e0, BETA, 7) == QuadNum.of(7) / (BETA + 3)
    assert mu(e0, BETA, 6) == QuadNum.of(6) / (BETA + 3)
    assert mu(STEP_MAIN, BETA, ACC) == ACC * 5 / (BETA * 6 + 17)


def test_mu_at_center_closed_form():
    for c in (outer_family(0), outer_family(1), inner_family(1), STEP_MAIN,
              outer_family(5), inner_family(4)):
        assert mu(c, BETA, c.center) == mu_at_center(c, BETA)
        assert mu_at_center(c, BETA) == QuadNum.of(c.p) / (BETA * c.e + c.d)


def test_mu_linear_form_left_of_center():
    # on [8, 41/5] the step-class obstruction is exactly the line 5z/(d+e*beta)
    c = STEP_MAIN
    den = BETA * c.e + c.d
    for i in range(8):
        z = F(8) + F(i, 35)
        assert mu(c, BETA, z) == QuadNum.of(5 * z) / den
    assert mu(c, BETA, c.center) == QuadNum.of(c.p) / den


def test_adjacency_and_compat():
    e0, e1 = outer_family(0), outer_family(1)
    assert adjacency(e0, e1)
    assert t_compat(e0, e1, 22)
    assert abs(e1.p * e0.q - e0.p * e1.q) == 22  # adjacency + compat criterion
    assert adjacency(e1, e0)  # order-insensitive
    assert not t_compat(e0, e1, 21)


def test_ech_index_examples():
    assert ech_index(STEP_MAIN) == 125
    assert ech_index(outer_family(0)) == 7
    assert ech_index(inner_family(1)) == 20879


def test_combine_examples():
    assert combine(82, outer_family(2), STEP_MAIN) == inner_family(2).tuple()
    assert combine(22, outer_family(1), outer_family(0)) == outer_family(2).tuple()
    zero = combine(1, STEP_MAIN, STEP_MAIN)
    assert zero == (0, 0, 0, 0, 0)
    assert not qp_check(zero)[0]


def test_family_n_examples():
    fd = family_n(2)
    assert fd.beta == BETA
    assert fd.step_class == STEP_MAIN
    assert fd.blocker.tuple() == (3, 1, 7, 1, 4)
    assert fd.seed_centers == [F(7), F(155, 19)]
    fd3 = family_n(3)
    assert fd3.step_class.tuple() == (31, 8, 71, 7, 46)
    assert ech_index(fd3.step_class) == 287
    assert fd3.seed_centers == [F(9), F(415, 41)]
    # radicand 3*(27+18-1) = 132 = 4*33 reduces to a square-free 33
    assert fd3.beta.D == 33
    assert fd3.beta == QuadNum(F(1, 2), F(7, 12), 33)


def test_family_n_step_table():
    # centers and indices of the step classes for the first families
    want = {2: (41, 5, 125), 3: (71, 7, 287), 4: (109, 9, 549),
            5: (155, 11, 935), 6: (209, 13, 1469)}
    for n, (p, q, k) in want.items():
        c = family_n(n).step_class
        assert (c.p, c.q) == (p, q)
        assert ech_index(c) == k
        assert c.p + c.q == step_class(n + 1).t


def test_blocker_classes():
    for n in range(2, 8):
        assert blocker_class(n).tuple() == (n + 1, 1, 2 * n + 3, 1, 2 * n)


def test_brahmagupta_shift():
    assert brahmagupta_shift(F(7)) == F(41, 7)
    assert brahmagupta_shift(F(41, 5)) == F(241, 41)
    fixed = QuadNum(F(3), F(2), 2)
    assert brahmagupta_shift(fixed) == fixed
    with pytest.raises(ValueError):
        brahmagupta_shift(F(1, 2))


def test_triple_identities():
    for k in range(4):
        tr = ClassTriple(outer_family(k), outer_family(k + 1), STEP_MAIN)
        assert report_ok(triple_identities(tr))
        tr = ClassTriple(outer_family(k), inner_family(k + 1), outer_family(k + 1))
        assert report_ok(triple_identities(tr))


def test_class_triple_rejects_bad_hypotheses():
    with pytest.raises(ValueError):
        ClassTriple(outer_family(0), outer_family(2), STEP_MAIN)


def test_class_json_round_trip():
    c = inner_family(2)
    assert QuasiPerfectClass.from_json(c.to_json()) == c
    assert c.to_json()["p"] == "279005"


@settings(max_examples=60)
@given(st.integers(1, 400), st.integers(1, 400))
def test_from_pq_consistent_with_qp_check(p, q):
    from math import gcd
    if p <= q or gcd(p, q) != 1:
        return
    c = from_pq(p, q)
    if c is not None:
        assert qp_check(c.tuple()) == (True, [])
        assert c.center == F(p, q)
