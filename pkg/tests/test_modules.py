from fractions import Fraction

import pytest

from mgslab import (
    ModuleError,
    band_module,
    band_top_socle,
    enumerate_bricks,
    enumerate_strings,
    hom_dim,
    is_brick,
    occurrences_with_flags,
    parse_walk,
    string_module,
    top_socle,
)


def test_string_module_dims_pinned(gentle5):
    M = string_module(gentle5, parse_walk(gentle5, "g2 b2 a2- g2 b1-"))
    assert M.dims() == {"1": 1, "2": 2, "3": 1, "4": 0, "5": 2}
    assert M.total_dim == 6


def test_string_module_simple(gentle5):
    M = string_module(gentle5, parse_walk(gentle5, "e:3"))
    assert M.dims() == {"1": 0, "2": 0, "3": 1, "4": 0, "5": 0}


def test_string_module_sec4_entry(mgs5):
    M = string_module(mgs5, parse_walk(mgs5, "a1 b2 d b1- a2-"))
    assert M.dims() == {"1": 2, "2": 1, "3": 1, "4": 1, "5": 1}
    assert M.total_dim == 6


def test_string_module_inverse_invariant(gentle5):
    w = parse_walk(gentle5, "g2 b2 a2- g2 b1-")
    assert string_module(gentle5, w) == string_module(gentle5, w.inverse())


def test_string_module_rejects_non_string(two_loops):
    with pytest.raises(ModuleError):
        string_module(two_loops, parse_walk(two_loops, "a a"))


def test_string_module_dim_sum_is_length_plus_one(gentle5):
    for w in enumerate_strings(gentle5, 6):
        assert string_module(gentle5, w).total_dim == w.length + 1


def test_band_module_dims(gentle5):
    B = band_module(gentle5, parse_walk(gentle5, "b2 a2- g2"), Fraction(2), 2)
    assert B.dims() == {"1": 0, "2": 2, "3": 2, "4": 0, "5": 2}


def test_band_module_repeated_vertex_dims(two_loops):
    B = band_module(two_loops, parse_walk(two_loops, "a b g- b-"), Fraction(1), 1)
    assert B.dims() == {"1": 2, "2": 2}


def test_band_module_argument_errors(gentle5):
    w2 = parse_walk(gentle5, "b2 a2- g2")
    with pytest.raises(ModuleError):
        band_module(gentle5, w2, Fraction(0), 1)
    with pytest.raises(ModuleError):
        band_module(gentle5, w2, Fraction(1), 0)
    with pytest.raises(ModuleError):
        band_module(gentle5, parse_walk(gentle5, "b1"), Fraction(1), 1)


def test_occurrences_with_flags_single_arrow(a12tilde):
    w = parse_walk(a12tilde, "b1")
    occs = occurrences_with_flags(w)
    by_pos = {(o.start, o.end): o for o in occs}
    e1 = by_pos[(1, 0)]
    assert e1.word.source == "1"
    assert e1.is_quotient_occurrence and not e1.is_submodule_occurrence
    e3 = by_pos[(2, 1)]
    assert e3.word.source == "3"
    assert e3.is_submodule_occurrence and not e3.is_quotient_occurrence
    full = by_pos[(1, 1)]
    assert full.is_quotient_occurrence and full.is_submodule_occurrence


def test_occurrences_with_flags_trivial(gentle5):
    occs = occurrences_with_flags(parse_walk(gentle5, "e:2"))
    assert len(occs) == 1
    assert occs[0].is_quotient_occurrence and occs[0].is_submodule_occurrence


def test_top_socle_examples(a12tilde, double_arrows, gentle5):
    M = string_module(a12tilde, parse_walk(a12tilde, "b1"))
    assert top_socle(M) == (("1",), ("3",))
    S = string_module(a12tilde, parse_walk(a12tilde, "e:2"))
    assert top_socle(S) == (("2",), ("2",))
    peak = string_module(double_arrows, parse_walk(double_arrows, "a1- a2"))
    assert top_socle(peak) == (("1",), ("2", "2"))
    big = string_module(gentle5, parse_walk(gentle5, "g2 b2 a2- g2 b1-"))
    assert top_socle(big) == (("1", "5", "5"), ("2", "3"))


def test_band_top_socle(a12tilde, kronecker, double_arrows):
    assert band_top_socle(parse_walk(a12tilde, "b1 b2 a-")) == (("1",), ("2",))
    assert band_top_socle(parse_walk(kronecker, "b- a")) == (("1",), ("2",))
    assert band_top_socle(parse_walk(double_arrows, "a1 a2-")) == (("1",), ("2",))
    assert band_top_socle(parse_walk(double_arrows, "b1 b2-")) == (("2",), ("1",))


def test_hom_dim_simples(a12tilde):
    e1, e2 = parse_walk(a12tilde, "e:1"), parse_walk(a12tilde, "e:2")
    assert hom_dim(a12tilde, e1, e1) == 1
    assert hom_dim(a12tilde, e1, e2) == 0


def test_hom_dim_top_socle(a12tilde):
    b1 = parse_walk(a12tilde, "b1")
    assert hom_dim(a12tilde, b1, parse_walk(a12tilde, "e:3")) == 0
    assert hom_dim(a12tilde, b1, parse_walk(a12tilde, "e:1")) == 1
    assert hom_dim(a12tilde, parse_walk(a12tilde, "e:3"), b1) == 1


def test_hom_dim_brick_example(gentle5):
    gamma = parse_walk(gentle5, "g2 b2 a2- g2 b1-")
    assert hom_dim(gentle5, gamma, gamma) == 1
    assert is_brick(gentle5, gamma)


def test_hom_dim_inverse_invariant(gentle5):
    ws = enumerate_strings(gentle5, 4)
    for a in ws[:8]:
        for b in ws[:8]:
            base = hom_dim(gentle5, a, b)
            assert hom_dim(gentle5, a.inverse(), b) == base
            assert hom_dim(gentle5, a, b.inverse()) == base


def test_non_brick_kronecker_regular(kronecker):
    # walk 1-2-1-2 carries a nontrivial endomorphism shifting the strands
    w = parse_walk(kronecker, "a b- a")
    assert hom_dim(kronecker, w, w) == 2
    assert not is_brick(kronecker, w)


def test_non_brick_from_non_minimal_band_shape(gentle5):
    # w2^2 v with v a proper prefix: square of a band is never a brick
    w2 = parse_walk(gentle5, "b2 a2- g2")
    assert not is_brick(gentle5, w2.power(2))


def test_all_simples_are_bricks(mgs5):
    for v in mgs5.vertices:
        assert is_brick(mgs5, parse_walk(mgs5, f"e:{v}"))


def test_sec4_sequence_entry_is_brick(mgs5):
    assert is_brick(mgs5, parse_walk(mgs5, "a1 b2 d b1- a2-"))


def test_enumerate_bricks_a2(a2):
    infos = enumerate_bricks(a2, 5)
    assert [str(i.walk) for i in infos] == ["e:1", "e:2", "a"]
    assert all(i.band_square_supports == () for i in infos)


def test_enumerate_bricks_band_square_annotation(a12tilde):
    infos = enumerate_bricks(a12tilde, 8)
    flagged = {str(i.walk): i.band_square_supports for i in infos}
    w2brick = "a b2- b1- a b2- b1-"  # canonical form of the doubled band
    assert w2brick in flagged
    assert [str(b) for b in flagged[w2brick]] == ["a b2- b1-"]
    assert flagged["e:1"] == ()


def test_enumerate_bricks_two_loops_short(two_loops):
    infos = enumerate_bricks(two_loops, 1)
    names = [str(i.walk) for i in infos]
    assert names[:2] == ["e:1", "e:2"]
    for i in infos:
        assert hom_dim(two_loops, i.walk, i.walk) == 1
