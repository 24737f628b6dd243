"""
Morse groups as explicit modules: the family monodromy of B_n and the
microlocal monodromy of the colored braid group, with their verifier
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from braid import (
    BraidWord, ColoredBraid, cabling_zeta, color_projection_psi, colored_generators,
    invert_gens_obar, strand_permutation,
)
from combinatorics import (
    Partition, Permutation, cycle_type_representative, decompose_character,
    enumerate_beta, kostka_decomposition, min_coset_reps, multinomial_dim,
    relabel_blocks, shapes_of, sigma_action_on_beta, young_generators,
)
from exceptions import ConfigError, SizeMismatchError, WellDefinednessError
from hecke import (
    HeckeElement, braid_to_hecke, hecke_multiply, left_multiply_simple,
    parabolic_ideal, reduce_mod_parabolic_sparse, to_regular_vector,
)
from linalg import (
    column_span_rank, equal, from_columns, from_entries, identity, is_invertible,
    is_zero, mat_product, trace, unit_vector,
)
from logger import Logger

CASES = ("I", "II", "III")

Generator = Tuple[str, ColoredBraid]


def parse_case(tag: str) -> str:
    value = (tag or "").strip().upper()
    if value not in CASES:
        raise ConfigError(f"unknown case '{tag}', expected one of {', '.join(CASES)}")
    return value


@dataclass
class ModuleRep:
    """A Morse group with exact generator matrices; columns are images of basis vectors"""

    case_tag: str
    partition: Partition
    basis_labels: List[object]
    family_generators: List[DomainMatrix]
    microlocal_cache: Dict[Tuple, DomainMatrix] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    @property
    def is_hecke(self) -> bool:
        return self.case_tag == "II"

    def family_inverse(self, i: int) -> DomainMatrix:
        M = self.family_generators[i - 1]
        if self.is_hecke:
            # T^-1 = 2 - T
            return identity(self.dim) * QQ(2) - M
        return M

    def family_matrix(self, word: BraidWord) -> DomainMatrix:
        """mu(word) as the ordered product of generator matrices"""
        if word.strands != self.partition.n:
            raise SizeMismatchError(f"braid on {word.strands} strands acting on a module for n = {self.partition.n}")
        return mat_product(
            (self.family_generators[i - 1] if s > 0 else self.family_inverse(i) for i, s in word.letters),
            self.dim,
        )

    def microlocal(self, c: ColoredBraid) -> DomainMatrix:
        """h(c), computed once per word"""
        key = c.word.letters
        if key not in self.microlocal_cache:
            if self.is_hecke:
                self.microlocal_cache[key] = microlocal_rep_II(self.partition, c)
            else:
                self.microlocal_cache[key] = microlocal_rep_I(self.partition, c)
        return self.microlocal_cache[key]


def _permutation_generators(p: Partition, betas: List) -> List[DomainMatrix]:
    index = {b: j for j, b in enumerate(betas)}
    generators = []
    for i in range(1, p.n):
        s = Permutation.simple(i, p.n)
        entries = {(index[sigma_action_on_beta(s, b)], j): 1 for j, b in enumerate(betas)}
        generators.append(from_entries(entries, (len(betas), len(betas))))
    return generators


def _hecke_generators(p: Partition, reps: List[Permutation]) -> List[DomainMatrix]:
    generators = []
    for i in range(1, p.n):
        columns = [reduce_mod_parabolic_sparse(left_multiply_simple(i, HeckeElement.basis(w)), p) for w in reps]
        generators.append(from_columns(columns, len(reps)))
    return generators


@lru_cache(maxsize=None)
def family_monodromy_rep(case_tag: str, p: Partition) -> ModuleRep:
    """
    Cases I/III: permutation module on BetaMaps, sigma_i acting by beta o s_i.
    Case II: induced module of the trivial H_P-module, sigma_i acting by T_{s_i}.
    """
    case_tag = parse_case(case_tag)
    if case_tag == "II":
        labels = min_coset_reps(p)
        generators = _hecke_generators(p, labels)
    else:
        labels = enumerate_beta(p)
        generators = _permutation_generators(p, labels)
    Logger.log(f"case {case_tag} module for ({p}): dim {len(labels)}", "DEBUG", "MORSE")
    return ModuleRep(case_tag, p, labels, generators)


def _check_colored(p: Partition, c: ColoredBraid):
    if c.partition != p:
        raise SizeMismatchError(f"colored braid for ({c.partition}) used with partition ({p})")
    c.check()


def chi_sign(p: Partition, c: ColoredBraid) -> int:
    """chi(psi(c)): a transposition of color j contributes (-1)^(part size of color j)"""
    sign = 1
    for size, w in zip(p.distinct_sizes, color_projection_psi(c)):
        if size % 2 and w.sign() < 0:
            sign = -sign
    return sign


def microlocal_rep_I(p: Partition, c: ColoredBraid) -> DomainMatrix:
    """(phi (x) chi) o psi: beta -> chi(c) * (pi(c) o beta)"""
    _check_colored(p, c)
    g = strand_permutation(c.word)
    sign = chi_sign(p, c)
    betas = enumerate_beta(p)
    index = {b: j for j, b in enumerate(betas)}
    entries = {(index[relabel_blocks(g, b)], j): sign for j, b in enumerate(betas)}
    return from_entries(entries, (len(betas), len(betas)))


def microlocal_hecke_element(p: Partition, c: ColoredBraid) -> HeckeElement:
    """r(c) = image of obar(zeta(c)) in H_{-1}(S_n)"""
    return braid_to_hecke(invert_gens_obar(cabling_zeta(p, c.word)))


def check_descends(p: Partition, r: HeckeElement, label: str = ""):
    """Raise unless (T_t - 1) r lies in the left ideal generated by the Young (T_t - 1)"""
    ideal = parabolic_ideal(p)
    for t in young_generators(p):
        defect = hecke_multiply(HeckeElement.simple(t, p.n), r) - r
        if not ideal.contains(to_regular_vector(defect)):
            Logger.log(f"right multiplication by r({label}) fails to descend at s_{t}", "ERROR", "MORSE")
            raise WellDefinednessError(
                f"right multiplication by r({label}) does not preserve the parabolic ideal (generator s_{t})"
            )


def microlocal_rep_II(p: Partition, c: ColoredBraid) -> DomainMatrix:
    """eta o obar o zeta: [T_w] -> [T_w r(c)], after checking that it descends"""
    _check_colored(p, c)
    r = microlocal_hecke_element(p, c)
    check_descends(p, r, str(c))
    reps = min_coset_reps(p)
    columns = [reduce_mod_parabolic_sparse(hecke_multiply(HeckeElement.basis(w), r), p) for w in reps]
    return from_columns(columns, len(reps))


def e0(rep: ModuleRep) -> DomainMatrix:
    """Basis vector of beta_0, or of [T_e]"""
    return unit_vector(rep.dim, 0)


def cyclic_rank(rep: ModuleRep) -> int:
    """Dimension of the smallest family-stable subspace containing e_0"""
    span = e0(rep)
    rank = 1
    while True:
        new_rank, new_span = column_span_rank([span] + [M * span for M in rep.family_generators])
        if new_rank == rank:
            return rank
        rank, span = new_rank, new_span


def young_fixed(rep: ModuleRep) -> List[int]:
    """Young simple reflections that move e_0 (empty when e_0 is fixed)"""
    v = e0(rep)
    return [t for t in young_generators(rep.partition) if not equal(rep.family_generators[t - 1] * v, v)]


def module_character(rep: ModuleRep) -> Dict[Tuple[int, ...], int]:
    """Trace of the family action on one permutation of each cycle type"""
    character = {}
    for shape in shapes_of(rep.partition.n):
        w = cycle_type_representative(shape)
        word = BraidWord.from_indices(rep.partition.n, w.reduced_word())
        character[shape] = int(trace(rep.family_matrix(word)))
    return character


def e0_compatibility(rep: ModuleRep, c: ColoredBraid) -> bool:
    """h(c) e_0 == chi(c) mu(zeta(c^-1)) e_0 (cases I/III)"""
    v = e0(rep)
    lhs = rep.microlocal(c) * v
    rhs = rep.family_matrix(cabling_zeta(rep.partition, c.word.inverse())) * v
    return equal(lhs, rhs * QQ(chi_sign(rep.partition, c)))


@dataclass
class CheckResult:
    name: str
    passed: bool
    offending: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"name": self.name, "passed": self.passed, "offending": list(self.offending)}


@dataclass
class VerificationReport:
    case_tag: str
    partition: Partition
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, offending: List[str]):
        self.checks.append(CheckResult(name, not offending, offending))

    def to_dict(self) -> Dict:
        return {
            "case": self.case_tag,
            "partition": list(self.partition.parts),
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def _normalize_generators(p: Partition, generators: Optional[Sequence[Union[Generator, ColoredBraid]]]) -> List[Generator]:
    if generators is None:
        return colored_generators(p)
    named = []
    for item in generators:
        if isinstance(item, ColoredBraid):
            named.append((str(item), item))
        else:
            named.append((item[0], item[1]))
    return named


def _family_relations(rep: ModuleRep) -> List[str]:
    gens, bad = rep.family_generators, []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            A, B = gens[i], gens[j]
            if j == i + 1:
                ok = equal(A * B * A, B * A * B)
            else:
                ok = equal(A * B, B * A)
            if not ok:
                bad.append(f"sigma_{i + 1}/sigma_{j + 1}")
    return bad


def _factorization(rep: ModuleRep) -> List[str]:
    one, bad = identity(rep.dim), []
    for i, M in enumerate(rep.family_generators, start=1):
        if rep.is_hecke:
            D = M - one
            ok = is_zero(D * D)
        else:
            ok = equal(M * M, one)
        if not ok:
            bad.append(f"sigma_{i}")
    return bad


def _cabling_relations(rep: ModuleRep) -> List[str]:
    p, bad = rep.partition, []

    def mu(indices: Sequence[int]) -> DomainMatrix:
        return rep.family_matrix(cabling_zeta(p, BraidWord.from_indices(p.k, indices)))

    for i in range(1, p.k):
        for j in range(i + 1, p.k):
            if j == i + 1:
                ok = equal(mu([i, j, i]), mu([j, i, j]))
            else:
                ok = equal(mu([i, j]), mu([j, i]))
            if not ok:
                bad.append(f"zeta(kappa_{i})/zeta(kappa_{j})")
    return bad


def _microlocal_relations(rep: ModuleRep, generators: List[Generator]) -> List[str]:
    p, bad = rep.partition, []
    for name, c in generators:
        if not is_invertible(rep.microlocal(c)):
            bad.append(f"{name} not invertible")
    # homomorphism (I/III) or anti-homomorphism (II) on generator pairs
    for name_a, a in generators:
        for name_b, b in generators:
            product = rep.microlocal(ColoredBraid(p, a.word * b.word))
            ha, hb = rep.microlocal(a), rep.microlocal(b)
            expected = hb * ha if rep.is_hecke else ha * hb
            if not equal(product, expected):
                bad.append(f"h({name_a}*{name_b})")
    # braid relations among same-color kappas
    kappas = {int(name.split("_")[1]): c for name, c in generators if name.startswith("kappa_")}
    for i, a in kappas.items():
        for j, b in kappas.items():
            if j <= i:
                continue
            if j == i + 1:
                lhs, rhs = a.word * b.word * a.word, b.word * a.word * b.word
            else:
                lhs, rhs = a.word * b.word, b.word * a.word
            if not equal(rep.microlocal(ColoredBraid(p, lhs)), rep.microlocal(ColoredBraid(p, rhs))):
                bad.append(f"kappa_{i}/kappa_{j}")
    return bad


def verify_rep(
    rep: ModuleRep, generators: Optional[Sequence[Union[Generator, ColoredBraid]]] = None
) -> VerificationReport:
    """Run every identity the module must satisfy; failures name the offending pair"""
    p = rep.partition
    named = _normalize_generators(p, generators)
    report = VerificationReport(rep.case_tag, p)

    report.add("dimension", [] if rep.dim == multinomial_dim(p) else [f"dim {rep.dim} != {multinomial_dim(p)}"])
    report.add("braid_relations", _family_relations(rep))
    report.add("factorization", _factorization(rep))
    report.add("cabling_relations", _cabling_relations(rep))

    commutation = []
    for name, c in named:
        h = rep.microlocal(c)
        for i, M in enumerate(rep.family_generators, start=1):
            if not equal(h * M, M * h):
                commutation.append(f"{name}/sigma_{i}")
    report.add("commutation", commutation)
    report.add("microlocal_relations", _microlocal_relations(rep, named))

    rank = cyclic_rank(rep)
    report.add("cyclic_generation", [] if rank == rep.dim else [f"rank {rank} < {rep.dim}"])
    report.add("young_fixed", [f"s_{t}" for t in young_fixed(rep)])

    if not rep.is_hecke:
        report.add("e0_compatibility", [name for name, c in named if not e0_compatibility(rep, c)])
        decomposition = decompose_character(module_character(rep), p.n)
        expected = kostka_decomposition(p)
        report.add(
            "decomposition",
            [f"{shape}: {decomposition[shape]} != {expected[shape]}" for shape in expected if decomposition[shape] != expected[shape]],
        )

    level = "INFO" if report.passed else "WARNING"
    Logger.log(f"case {rep.case_tag} ({p}): {len(report.checks) - len(report.failures())}/{len(report.checks)} checks passed", level, "MORSE")
    return report


__all__ = [
    'CASES', 'Generator', 'parse_case', 'ModuleRep', 'family_monodromy_rep',
    'chi_sign', 'microlocal_rep_I', 'microlocal_rep_II', 'microlocal_hecke_element',
    'check_descends', 'e0', 'cyclic_rank', 'young_fixed', 'module_character',
    'e0_compatibility', 'CheckResult', 'VerificationReport', 'verify_rep',
]
