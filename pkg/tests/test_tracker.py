import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from braid import BraidWord, ColoredBraid, colored_generators
from combinatorics import Partition, multinomial_dim, partitions_of
from config import CFG
from exceptions import CollisionError, SizeMismatchError
from tracker import (
    TrackerProblem, compose_label_maps, critical_values, default_problem,
    track_family_monodromy, track_microlocal_monodromy,
)


def identity(n):
    return list(range(n))


def family_words(strands: int, max_size: int = 8):
    letters = st.tuples(st.integers(1, strands - 1), st.sampled_from([1, -1]))
    return st.lists(letters, max_size=max_size).map(lambda xs: BraidWord(strands, tuple(xs)))


class TestProblem:
    def test_values_formula(self):
        p = Partition.parse("1,1")
        prob = TrackerProblem(p, [-1.0, 1.0], [2.0, -3.0], tau=0.5)
        values = critical_values(prob)
        assert len(values) == 2
        # beta = (1,2): tau (lambda_1 u_1 + lambda_2 u_2)
        assert list(values.values())[0] == pytest.approx(0.5 * (-2.0 - 3.0))

    def test_size_checks(self):
        p = Partition.parse("1,2")
        with pytest.raises(SizeMismatchError):
            TrackerProblem(p, [0.0, 1.0], [1.0, 2.0])
        with pytest.raises(SizeMismatchError):
            TrackerProblem(p, [-1.0, 0.0, 1.0], [1.0])

    def test_collisions(self):
        p = Partition.parse("1,1")
        with pytest.raises(CollisionError):
            TrackerProblem(p, [1.0, 1.0], [1.0, 2.0])
        with pytest.raises(CollisionError):
            TrackerProblem(p, [-1.0, 1.0], [1.0, 2.0], tau=0)

    def test_coinciding_values_rejected(self):
        # the two values differ by tau (u_2 - u_1)(lambda_2 - lambda_1)
        p = Partition.parse("1,1")
        with pytest.raises(CollisionError):
            TrackerProblem(p, [0.0, 1e-12], [1.0, 2.0])

    @pytest.mark.parametrize("n", range(1, 6))
    def test_default_problem_is_separated(self, n):
        for p in partitions_of(n):
            prob = default_problem(p, seed=3)
            values = prob.values()
            assert len(values) == multinomial_dim(p)
            assert abs(prob.lambdas.sum()) < 1e-12
            assert len(set(np.round(values, 9))) == len(values)

    def test_default_problem_is_reproducible(self):
        p = Partition.parse("1,2")
        a, b = default_problem(p, seed=11), default_problem(p, seed=11)
        assert np.array_equal(a.lambdas, b.lambdas) and np.array_equal(a.us, b.us)


class TestFamily:
    def test_single_crossing_swaps(self):
        prob = default_problem(Partition.parse("1,1"), seed=0)
        result = track_family_monodromy(prob, BraidWord.parse("1", 2))
        assert result.permutation == [1, 0]
        assert result.verdict == "match"
        assert result.passed

    def test_empty_word_is_identity(self):
        prob = default_problem(Partition.parse("1,2"), seed=0)
        result = track_family_monodromy(prob, BraidWord.parse("", 3))
        assert result.permutation == identity(3)
        assert result.verdict == "match"
        assert result.steps_used == 0

    def test_full_twist_is_pure(self):
        prob = default_problem(Partition.parse("1,1,1"), seed=1)
        result = track_family_monodromy(prob, BraidWord.parse("1 2 1 1 2 1", 3))
        assert result.permutation == identity(6)
        assert result.verdict == "match"

    @pytest.mark.parametrize("text", ["1,2", "1,1,1", "2,2", "1,1,2"])
    def test_generators_match(self, text):
        p = Partition.parse(text)
        prob = default_problem(p, seed=5)
        for i in range(1, p.n):
            for sign in (1, -1):
                result = track_family_monodromy(prob, BraidWord(p.n, ((i, sign),)))
                assert result.verdict == "match", (i, sign)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(["1,1,1", "1,2", "1,1,2", "2,2"]), st.data())
    def test_composition(self, text, data):
        p = Partition.parse(text)
        prob = default_problem(p, seed=2)
        a, b = data.draw(family_words(p.n, 4)), data.draw(family_words(p.n, 4))
        ra = track_family_monodromy(prob, a)
        rb = track_family_monodromy(prob, b)
        rab = track_family_monodromy(prob, a * b)
        assert rab.permutation == compose_label_maps(ra.permutation, rb.permutation)

    def test_wrong_strand_count(self):
        prob = default_problem(Partition.parse("1,1"), seed=0)
        with pytest.raises(SizeMismatchError):
            track_family_monodromy(prob, BraidWord.parse("1", 3))


class TestMicrolocal:
    def test_colored_crossing_2_2(self):
        p = Partition.parse("2,2")
        prob = default_problem(p, seed=0)
        result = track_microlocal_monodromy(prob, ColoredBraid.parse(p, "1"))
        assert len(result.permutation) == 6
        assert sorted(result.permutation) == identity(6)
        assert result.verdict == "match"

    @pytest.mark.parametrize("text", ["1,1", "1,2", "1,1,2", "1,1,1"])
    def test_generators_match(self, text):
        p = Partition.parse(text)
        prob = default_problem(p, seed=4)
        for name, c in colored_generators(p):
            assert track_microlocal_monodromy(prob, c).verdict == "match", name

    def test_case_II_not_comparable(self):
        p = Partition.parse("1,1")
        prob = default_problem(p, seed=0)
        result = track_microlocal_monodromy(prob, ColoredBraid.parse(p, "1"), "II")
        assert result.predicted is None
        assert result.verdict == "not_comparable"
        assert result.passed

    def test_pure_case_II_braid_is_compared(self):
        p = Partition.parse("1,2")
        prob = default_problem(p, seed=0)
        c = ColoredBraid.parse(p, "1 1")
        # r(c) sends [T_e] to [T_e] - 2 [T_s1] + 2 [T_s2 T_s1], not a signed permutation
        result = track_microlocal_monodromy(prob, c, "II")
        assert result.predicted is None
        assert result.verdict == "not_comparable"
        assert sorted(result.permutation) == identity(3)

    def test_rejects_other_partition(self):
        prob = default_problem(Partition.parse("1,1"), seed=0)
        with pytest.raises(SizeMismatchError):
            track_microlocal_monodromy(prob, ColoredBraid.parse(Partition.parse("2,2"), "1"))


def test_compose_label_maps():
    assert compose_label_maps([1, 2, 0], [0, 2, 1]) == [1, 0, 2]


@pytest.mark.slow
@pytest.mark.parametrize("p", [p for n in range(2, 6) for p in partitions_of(n)], ids=str)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_random_words_match(p, data):
    w = data.draw(family_words(p.n, 8))
    prob = default_problem(p, seed=data.draw(st.integers(0, 1000)))
    result = track_family_monodromy(prob, w)
    assert result.verdict == "match"
    assert result.min_gap_observed >= prob.min_separation


@pytest.mark.parametrize("text", ["1,2", "1,1,2", "2,2"])
def test_affine_change_of_us_keeps_permutations(text):
    p = Partition.parse(text)
    prob = default_problem(p, seed=6)
    moved = TrackerProblem(p, prob.lambdas, (2 - 1j) * prob.us + 5, prob.tau)
    for w in (BraidWord.parse("1 -2", p.n), BraidWord.parse("-1 2 1", p.n)):
        assert track_family_monodromy(moved, w).permutation == track_family_monodromy(prob, w).permutation
    for _, c in colored_generators(p):
        assert track_microlocal_monodromy(moved, c).permutation == track_microlocal_monodromy(prob, c).permutation


@pytest.mark.parametrize("seed", range(5))
def test_default_problem_for_distinct_ones(seed):
    p = Partition.parse("1,1,1,1,1")
    prob = default_problem(p, seed=seed)
    values = prob.values()
    assert abs(prob.lambdas.sum()) < 1e-12
    assert len(values) == 120
    gaps = np.abs(values[:, None] - values[None, :])
    np.fill_diagonal(gaps, np.inf)
    assert gaps.min() > CFG.start_separation * np.abs(values).max()


def test_track_on_distinct_ones():
    p = Partition.parse("1,1,1,1,1")
    prob = default_problem(p, seed=0)
    result = track_family_monodromy(prob, BraidWord.parse("1 2 -3 4 1", 5))
    assert result.verdict == "match"
