import pytest
from sympy.polys.matrices import DomainMatrix

from braid import BraidWord, ColoredBraid, colored_generators
from combinatorics import Partition, kostka_decomposition, multinomial_dim, partitions_of, decompose_character
from exceptions import ColorError, ConfigError, SizeMismatchError, WellDefinednessError
from hecke import HeckeElement, braid_to_hecke
from linalg import equal, identity, is_signed_permutation, to_rows
from morse_modules import (
    chi_sign, check_descends, cyclic_rank, e0_compatibility, family_monodromy_rep,
    microlocal_hecke_element, microlocal_rep_I, microlocal_rep_II, module_character,
    parse_case, verify_rep, young_fixed,
)


def rows(M: DomainMatrix):
    return [[int(x) for x in row] for row in to_rows(M)]


def test_parse_case():
    assert parse_case("ii") == "II"
    with pytest.raises(ConfigError):
        parse_case("IV")


class TestGoldens:
    p = Partition.parse("1,1")
    kappa = ColoredBraid.parse(Partition.parse("1,1"), "1")

    def test_case_I_family(self):
        rep = family_monodromy_rep("I", self.p)
        assert rows(rep.family_generators[0]) == [[0, 1], [1, 0]]

    def test_case_I_microlocal(self):
        assert rows(microlocal_rep_I(self.p, self.kappa)) == [[0, -1], [-1, 0]]

    def test_case_II_family(self):
        rep = family_monodromy_rep("II", self.p)
        assert rows(rep.family_generators[0]) == [[0, -1], [1, 2]]

    def test_case_II_microlocal(self):
        assert rows(microlocal_rep_II(self.p, self.kappa)) == [[2, 1], [-1, 0]]

    def test_case_III_matches_case_I(self):
        one = family_monodromy_rep("I", self.p)
        three = family_monodromy_rep("III", self.p)
        assert equal(one.family_generators[0], three.family_generators[0])
        assert equal(one.microlocal(self.kappa), three.microlocal(self.kappa))


def test_microlocal_hecke_element_of_kappa():
    p = Partition.parse("1,1")
    r = microlocal_hecke_element(p, ColoredBraid.parse(p, "1"))
    assert r == HeckeElement.one(2).scale(2) - HeckeElement.simple(1, 2)


def test_family_inverse():
    for case in ("I", "II"):
        rep = family_monodromy_rep(case, Partition.parse("1,2"))
        for i in (1, 2):
            assert equal(rep.family_generators[i - 1] * rep.family_inverse(i), identity(rep.dim))


def test_family_matrix_of_word():
    rep = family_monodromy_rep("II", Partition.parse("1,2"))
    w = BraidWord.parse("1 2 -1", 3)
    expected = rep.family_generators[0] * rep.family_generators[1] * rep.family_inverse(1)
    assert equal(rep.family_matrix(w), expected)
    with pytest.raises(SizeMismatchError):
        rep.family_matrix(BraidWord.parse("1", 2))


def test_chi_sign():
    assert chi_sign(Partition.parse("1,1"), ColoredBraid.parse(Partition.parse("1,1"), "1")) == -1
    assert chi_sign(Partition.parse("2,2"), ColoredBraid.parse(Partition.parse("2,2"), "1")) == 1
    assert chi_sign(Partition.parse("1,1"), ColoredBraid.parse(Partition.parse("1,1"), "1 1")) == 1


def test_color_violation_raises():
    p = Partition.parse("1,2")
    c = ColoredBraid.parse(p, "1")
    with pytest.raises(ColorError):
        microlocal_rep_I(p, c)
    with pytest.raises(ColorError):
        microlocal_rep_II(p, c)
    with pytest.raises(SizeMismatchError):
        microlocal_rep_I(Partition.parse("1,1"), ColoredBraid.parse(Partition.parse("2,2"), "1"))


def test_non_descending_element_is_rejected():
    with pytest.raises(WellDefinednessError):
        check_descends(Partition.parse("1,2"), HeckeElement.simple(1, 3), "T_1")


def test_colored_generators_descend():
    for n in range(1, 5):
        for p in partitions_of(n):
            for name, c in colored_generators(p):
                check_descends(p, microlocal_hecke_element(p, c), name)


def test_case_I_microlocal_is_signed_permutation():
    p = Partition.parse("1,1,2")
    for _, c in colored_generators(p):
        assert is_signed_permutation(microlocal_rep_I(p, c))


def test_microlocal_cache_reuses_matrix():
    p = Partition.parse("1,1")
    rep = family_monodromy_rep("II", p)
    c = ColoredBraid.parse(p, "1")
    assert rep.microlocal(c) is rep.microlocal(ColoredBraid.parse(p, "1"))


def test_case_II_microlocal_is_antihomomorphism():
    p = Partition.parse("1,1,2")
    rep = family_monodromy_rep("II", p)
    a, b = ColoredBraid.parse(p, "1"), ColoredBraid.parse(p, "2 2")
    product = rep.microlocal(ColoredBraid(p, a.word * b.word))
    assert equal(product, rep.microlocal(b) * rep.microlocal(a))


def test_whole_word_matches_hecke_element():
    p = Partition.parse("1,2")
    c = ColoredBraid.parse(p, "1 1")
    r = microlocal_hecke_element(p, c)
    assert r == braid_to_hecke(BraidWord.parse("-1 -2 -2 -1", 3))


@pytest.mark.parametrize("case", ["I", "II", "III"])
def test_cyclic_generation_and_young_fixed(case):
    for n in range(1, 5):
        for p in partitions_of(n):
            rep = family_monodromy_rep(case, p)
            assert rep.dim == multinomial_dim(p)
            assert cyclic_rank(rep) == rep.dim
            assert young_fixed(rep) == []


def test_character_decomposition_case_I():
    for n in range(1, 6):
        for p in partitions_of(n):
            rep = family_monodromy_rep("I", p)
            assert decompose_character(module_character(rep), n) == kostka_decomposition(p)


def test_e0_compatibility():
    for text in ("1,1", "1,2", "1,1,2", "2,2", "1,1,1"):
        p = Partition.parse(text)
        rep = family_monodromy_rep("I", p)
        for _, c in colored_generators(p):
            assert e0_compatibility(rep, c)


@pytest.mark.parametrize("case", ["I", "II", "III"])
@pytest.mark.parametrize("p", [p for n in range(1, 5) for p in partitions_of(n)], ids=str)
def test_verify_rep_small(case, p):
    report = verify_rep(family_monodromy_rep(case, p))
    assert report.passed, report.failures()
    names = [check.name for check in report.checks]
    assert "commutation" in names and "factorization" in names
    if case == "II":
        assert "decomposition" not in names


def test_verify_rep_with_explicit_generators():
    p = Partition.parse("1,2")
    report = verify_rep(family_monodromy_rep("I", p), [ColoredBraid.parse(p, "1 1")])
    assert report.passed
    doc = report.to_dict()
    assert doc["partition"] == [1, 2]
    assert all(check["passed"] for check in doc["checks"])


def test_verify_rep_reports_offending_pairs():
    p = Partition.parse("1,1")
    rep = family_monodromy_rep("I", p)
    broken = type(rep)(rep.case_tag, p, rep.basis_labels, [identity(2)])
    report = verify_rep(broken)
    assert not report.passed
    failed = {check.name for check in report.failures()}
    assert "cyclic_generation" in failed
    assert "decomposition" in failed


@pytest.mark.slow
@pytest.mark.parametrize("case", ["I", "II"])
@pytest.mark.parametrize("p", partitions_of(5), ids=str)
def test_verify_rep_n5(case, p):
    assert verify_rep(family_monodromy_rep(case, p)).passed
