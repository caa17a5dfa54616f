import pytest

from polycap.atf import (
    AtfPolygon,
    LabelError,
    WordParseError,
    apply_word,
    compress_word,
    extract_embedding,
    init_polydisk,
    intersect,
    mutate,
    parse_word,
    to_svg,
    verify_formula_suite,
    verify_full_filling,
    verify_rays,
)
from polycap.exactnum import QuadNum
from polycap.report import report_ok
from polycap.staircase import MAIN_BETA, acc_point, inner_corners, vol_at_acc

BETA = MAIN_BETA


def test_init_polydisk():
    poly = init_polydisk(BETA)
    assert poly.side_lengths() == {"OY": QuadNum.of(1), "YV": BETA,
                                   "XV": QuadNum.of(1), "OX": BETA}
    assert poly.rays() == {"O": None, "Y": (1, -1), "V": (-1, -1), "X": (-1, 1)}
    x_node = poly.nodes[poly.labels()["X"]]
    assert x_node.vertex == (BETA, QuadNum.of(0))
    assert x_node.edge == (-1, 0) and x_node.length == BETA
    assert poly.area() == BETA


def test_intersect_initial_v():
    j, pt = intersect(init_polydisk(BETA), "v")
    assert pt == (BETA - 1, QuadNum.of(0))


def test_first_mutation_matches_paper_step():
    p1 = mutate(init_polydisk(BETA), "v")
    s = p1.side_lengths()
    assert s == {"OY": QuadNum.of(1), "OX": BETA - 1,
                 "YV": BETA + 1, "XV": QuadNum.of(1)}
    assert p1.rays() == {"O": None, "Y": (1, -1), "V": (-3, -1), "X": (1, 1)}
    lab = p1.labels()
    assert p1.nodes[lab["V"]].vertex == (BETA + 1, QuadNum.of(1))
    assert p1.nodes[lab["X"]].edge == (-1, 0)


def test_v2yx_full_state_data():
    p = apply_word(init_polydisk(BETA), "v2yx")
    assert p.side_lengths() == {
        "OY": BETA + 3, "OX": (BETA * 4 - 7) / 5,
        "YV": (BETA * 4 + 7) / 19, "XV": (3 - BETA) / 95}
    assert p.rays() == {"O": None, "Y": (1, -7), "V": (-3, -1), "X": (11, 5)}
    lab = p.labels()
    assert p.nodes[lab["O"]].edge == (0, 1)
    assert p.nodes[lab["Y"]].edge == (1, -6)
    assert p.nodes[lab["V"]].edge == (-56, -25)
    assert p.nodes[lab["X"]].edge == (-1, 0)
    assert p.area() == BETA
    assert p.word_str() == "v2yx"


def test_y_phase_hits_xv_side(recwarn):
    # during the y^k phase the Y-ray always lands on side XV (= edge at V)
    p = apply_word(init_polydisk(BETA), "v2yx")
    for _ in range(13):
        lab = p.labels()
        j, _pt = intersect(p, "y")
        assert j == lab["V"]
        p = mutate(p, "y")


def test_formula_suite_and_filling():
    assert report_ok(verify_formula_suite(8))
    assert report_ok(verify_full_filling(8))


def test_verify_rays_k0():
    p = apply_word(init_polydisk(BETA), "v2yx")
    assert report_ok(verify_rays(p, 0))


def test_embedding_initial_rectangle():
    emb = extract_embedding(init_polydisk(BETA))
    assert emb.z == BETA and emb.lam == QuadNum.of(1)


def test_embedding_inner_corner_word():
    emb = extract_embedding(apply_word(init_polydisk(BETA), "v2yxy0xy"))
    corner = inner_corners(0, BETA)[0]
    assert emb.z == corner.z and emb.lam == corner.lam
    assert emb.label == "v2yx2y"


def test_full_filling_word_lambda():
    p = apply_word(init_polydisk(BETA), "v2yxy4")
    emb = extract_embedding(p)
    assert emb.lam == QuadNum.of(5) / (BETA * 4 - 7)
    assert emb.lam == vol_at_acc(BETA)
    assert emb.z < acc_point(BETA)


def test_every_word_preserves_area_and_closure():
    p = init_polydisk(BETA)
    for letter in parse_word("v2yxy3xy"):
        p = mutate(p, letter)
        assert p.area() == BETA  # closure/convexity are checked by the validator


def test_mutation_matrices_unimodular_spotcheck():
    from polycap.atf import _solve_unimodular
    m = _solve_unimodular((-1, -1), (0, -1), (1, 0))
    assert m == ((2, -1), (1, 0))
    m = _solve_unimodular((11, 5), (-56, -25), (-1, 0))
    assert m == ((-54, 121), (-25, 56))


def test_word_parsing():
    assert parse_word("v2yxy3xy") == list("vvyxyyyxy")
    assert parse_word("v2yxy0xy") == list("vvyxxy")
    assert parse_word("x^2y") == list("xxy")
    assert parse_word("") == []
    with pytest.raises(WordParseError):
        parse_word("v2q")
    with pytest.raises(WordParseError):
        parse_word("2v")
    assert compress_word(list("vvyxyyyxy")) == "v2yxy3xy"


def test_json_round_trip():
    p = apply_word(init_polydisk(BETA), "v2yxy2xy")
    q = AtfPolygon.from_json(p.to_json())
    assert q == p
    assert q.to_json() == p.to_json()


def test_svg_output():
    p = apply_word(init_polydisk(BETA), "v2yx")
    svg = to_svg(p)
    assert svg.startswith("<svg")
    assert svg.count("<line") == 3  # one dashed ray per non-origin vertex
    assert 'points="' in svg
    y_dec = (BETA + 3).decimal(6, "down")
    assert y_dec in svg  # Y vertex at (0, 3 + beta) ~ 5.78217...
    assert y_dec == "5.782177"


def test_label_errors():
    p = init_polydisk(BETA)
    with pytest.raises(LabelError):
        mutate(p, "o")


def test_conjecture_word_runs_and_logs_points():
    # v2yxy^k x y^2: computable but unverified (logged as conjecture evidence)
    p = apply_word(init_polydisk(BETA), "v2yxy2xy2")
    emb = extract_embedding(p)
    second = inner_corners(2, BETA)[1]
    assert emb.z == second.z and emb.lam == second.lam


def test_undo_by_replay_determinism():
    a = apply_word(init_polydisk(BETA), "v2yxy3xy")
    b = apply_word(init_polydisk(BETA), "v2yxy3xy")
    assert a == b and a.to_json() == b.to_json()


def test_y_after_extra_x_hits_bottom_side():
    # after v2yx + x, the Y-ray extends past XV and lands on side OX
    p = apply_word(init_polydisk(BETA), "v2yx2")
    lab = p.labels()
    j, pt = intersect(p, "y")
    assert j == lab["X"]
    assert pt[1].is_zero()
    assert pt[0] == (BETA + 3) / 7
