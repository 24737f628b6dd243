import pytest
from hypothesis import given, settings, strategies as st

from braid import (
    BraidWord, ColoredBraid, cabling_zeta, color_projection_psi, colored_generators,
    free_reduce, invert_gens_obar, kappa, rope_block_permutation, strand_permutation,
    varsigma_generator,
)
from combinatorics import Partition, Permutation, partitions_of
from config import CFG
from exceptions import BraidError, ColorError, SizeMismatchError
from logger import Logger


def words(strands: int, max_size: int = 8):
    letters = st.tuples(st.integers(1, strands - 1), st.sampled_from([1, -1]))
    return st.lists(letters, max_size=max_size).map(lambda xs: BraidWord(strands, tuple(xs)))


def test_parse_and_format():
    w = BraidWord.parse("2 -1 3", 4)
    assert w.letters == ((2, 1), (1, -1), (3, 1))
    assert w.format() == "2 -1 3"
    assert str(BraidWord.parse("", 3)) == "e"
    assert len(BraidWord.parse("1,1", 2)) == 2


@pytest.mark.parametrize("text", ["0", "x", "1 4", "-3"])
def test_parse_rejects(text):
    with pytest.raises(BraidError):
        BraidWord.parse(text, 3)


def test_multiply_needs_same_strands():
    with pytest.raises(SizeMismatchError):
        BraidWord.parse("1", 2) * BraidWord.parse("1", 3)


def test_strand_permutation_word_order():
    assert strand_permutation(BraidWord.parse("1 2", 3)) == Permutation((2, 3, 1))
    assert strand_permutation(BraidWord.parse("1 -1", 2)).is_identity()


@given(words(4), words(4))
def test_strand_permutation_is_homomorphism(a, b):
    assert strand_permutation(a * b) == strand_permutation(a) * strand_permutation(b)


@given(words(4))
def test_inverse_and_free_reduce(w):
    assert free_reduce(w * w.inverse()).letters == ()
    assert strand_permutation(free_reduce(w)) == strand_permutation(w)


@given(words(4))
def test_obar_is_involution(w):
    assert invert_gens_obar(invert_gens_obar(w)) == w
    assert strand_permutation(invert_gens_obar(w)) == strand_permutation(w)


def test_obar_flips_signs():
    assert invert_gens_obar(BraidWord.parse("1 -2", 3)).format() == "-1 2"


def test_cabling_single_crossing():
    p = Partition.parse("1,2")
    cabled = cabling_zeta(p, BraidWord.parse("1", 2))
    assert cabled.format() == "1 2"
    assert strand_permutation(cabled) == rope_block_permutation(p, Permutation((2, 1)))


def test_cabling_inverse_letter():
    p = Partition.parse("1,2")
    w = BraidWord.parse("1 -1", 2)
    assert free_reduce(cabling_zeta(p, w)).letters == ()


def test_cabling_equal_parts_is_trivial_on_ones():
    p = Partition.parse("1,1,1")
    w = BraidWord.parse("1 -2 1", 3)
    assert cabling_zeta(p, w) == w


@given(words(3, max_size=6))
def test_cabling_strand_permutation_equal_parts(w):
    p = Partition.parse("2,2,2")
    assert strand_permutation(cabling_zeta(p, w)) == rope_block_permutation(p, strand_permutation(w))


@given(words(3, max_size=6), words(3, max_size=6))
def test_cabling_is_multiplicative(a, b):
    p = Partition.parse("2,2,2")
    assert cabling_zeta(p, a * b) == cabling_zeta(p, a) * cabling_zeta(p, b)


def test_cabling_rejects_wrong_strands():
    with pytest.raises(SizeMismatchError):
        cabling_zeta(Partition.parse("1,2"), BraidWord.parse("1", 3))


def test_colored_braid_check():
    p = Partition.parse("1,2")
    with pytest.raises(ColorError):
        ColoredBraid.parse(p, "1").check()
    assert ColoredBraid.parse(p, "1 1").is_color_preserving()
    with pytest.raises(SizeMismatchError):
        ColoredBraid(p, BraidWord.parse("1", 3))


def test_color_projection():
    p = Partition.parse("1,1")
    assert color_projection_psi(ColoredBraid.parse(p, "1")) == (Permutation((2, 1)),)
    q = Partition.parse("1,1,2")
    assert color_projection_psi(ColoredBraid.parse(q, "1 2 2")) == (Permutation((2, 1)), Permutation((1,)))


def test_kappa_bounds():
    p = Partition.parse("1,1")
    assert kappa(p, 1, -1).format() == "-1"
    with pytest.raises(BraidError):
        kappa(p, 2)


def test_varsigma_generators_are_pure_between_colors():
    p = Partition.parse("1,1,2,2")
    for i in range(1, p.l + 1):
        for j in range(i + 1, p.l + 1):
            c = varsigma_generator(p, i, j)
            assert strand_permutation(c.word).is_identity()
    assert varsigma_generator(Partition.parse("1,2"), 1, 2).word.format() == "1 1"
    with pytest.raises(BraidError):
        varsigma_generator(p, 2, 1)


def test_colored_generators_names():
    names = [name for name, _ in colored_generators(Partition.parse("1,1,2"))]
    assert names == ["kappa_1", "varsigma_1_2"]
    assert colored_generators(Partition.parse("3")) == []
    for _, c in colored_generators(Partition.parse("1,1,2,2")):
        c.check()


MULTI_ROPE = [p for n in range(2, 6) for p in partitions_of(n) if p.k >= 2]


@settings(max_examples=200)
@given(st.sampled_from(MULTI_ROPE), st.data())
def test_cabling_strand_permutation(p, data):
    w = data.draw(words(p.k, max_size=6))
    assert strand_permutation(cabling_zeta(p, w)) == rope_block_permutation(p, strand_permutation(w))


def test_color_rejection_is_logged(capsys):
    Logger.set_debug(True)
    try:
        with pytest.raises(ColorError):
            ColoredBraid.parse(Partition.parse("1,2"), "1").check()
    finally:
        Logger.set_debug(CFG.debug_mode)
    assert "[BRAID]" in capsys.readouterr().err
