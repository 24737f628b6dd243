"""
The Hecke algebra H_{-1}(S_n) = C[B_n] / (sigma_1 - 1)^2 over exact rationals,
its T-basis, braid images and reduction onto parabolic coset bases
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import QQ

from braid import BraidWord
from combinatorics import (
    Partition, Permutation, all_permutations, coset_factor, min_coset_reps,
    young_generators,
)
from exceptions import SizeMismatchError
from linalg import SparseVector, SpanMembership
from logger import Logger

TWO = QQ(2)


@dataclass(frozen=True)
class HeckeElement:
    """Finite combination sum c_w T_w; zero coefficients are never stored"""

    n: int
    coeffs: Dict[Permutation, object] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for w, c in self.coeffs.items():
            if w.n != self.n:
                raise SizeMismatchError(f"T_{w} does not live in H(S_{self.n})")
            c = QQ(c) if not isinstance(c, QQ.dtype) else c
            if c:
                cleaned[w] = c
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def basis(cls, w: Permutation) -> "HeckeElement":
        return cls(w.n, {w: QQ(1)})

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls.basis(Permutation.identity(n))

    @classmethod
    def simple(cls, i: int, n: int) -> "HeckeElement":
        return cls.basis(Permutation.simple(i, n))

    def _check(self, other: "HeckeElement"):
        if self.n != other.n:
            raise SizeMismatchError(f"cannot combine elements of H(S_{self.n}) and H(S_{other.n})")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        coeffs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            coeffs[w] = coeffs.get(w, QQ(0)) + c
        return HeckeElement(self.n, coeffs)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.n, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, factor) -> "HeckeElement":
        factor = QQ(factor) if not isinstance(factor, QQ.dtype) else factor
        return HeckeElement(self.n, {w: factor * c for w, c in self.coeffs.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return hecke_multiply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, w: Permutation):
        return self.coeffs.get(w, QQ(0))

    def to_pairs(self) -> List[Tuple[List[int], str]]:
        """Serializable [(one-line, 'p/q')] sorted by one-line notation"""
        return [
            (list(w.images), _rational_text(c))
            for w, c in sorted(self.coeffs.items(), key=lambda item: item[0].images)
        ]

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{_rational_text(c)}*T{w}" for w, c in sorted(self.coeffs.items(), key=lambda t: t[0].images))


def _rational_text(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def _left_simple(i: int, x: HeckeElement) -> HeckeElement:
    """T_{s_i} * x"""
    s = Permutation.simple(i, x.n)
    coeffs: Dict[Permutation, object] = {}
    for w, c in x.coeffs.items():
        sw = s * w
        inv = w.inverse()
        if inv(i) < inv(i + 1):
            coeffs[sw] = coeffs.get(sw, QQ(0)) + c
        else:
            coeffs[w] = coeffs.get(w, QQ(0)) + TWO * c
            coeffs[sw] = coeffs.get(sw, QQ(0)) - c
    return HeckeElement(x.n, coeffs)


def _right_simple(x: HeckeElement, i: int) -> HeckeElement:
    """x * T_{s_i}"""
    s = Permutation.simple(i, x.n)
    coeffs: Dict[Permutation, object] = {}
    for w, c in x.coeffs.items():
        ws = w * s
        if w(i) < w(i + 1):
            coeffs[ws] = coeffs.get(ws, QQ(0)) + c
        else:
            coeffs[w] = coeffs.get(w, QQ(0)) + TWO * c
            coeffs[ws] = coeffs.get(ws, QQ(0)) - c
    return HeckeElement(x.n, coeffs)


def left_multiply_simple(i: int, x: HeckeElement) -> HeckeElement:
    return _left_simple(i, x)


def right_multiply_simple(x: HeckeElement, i: int) -> HeckeElement:
    return _right_simple(x, i)


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Bilinear product; T_v * b is built from a reduced word of v"""
    a._check(b)
    result = HeckeElement(a.n)
    for v, c in a.coeffs.items():
        term = b
        for i in reversed(v.reduced_word()):
            term = _left_simple(i, term)
        result = result + term.scale(c)
    return result


def braid_to_hecke(w: BraidWord) -> HeckeElement:
    """sigma_i -> T_{s_i}, sigma_i^-1 -> 2 T_e - T_{s_i}, multiplicatively"""
    x = HeckeElement.one(w.strands)
    for i, sign in w.letters:
        step = _right_simple(x, i)
        x = step if sign > 0 else x.scale(TWO) - step
    return x


@lru_cache(maxsize=None)
def coset_index(p: Partition) -> Dict[Permutation, int]:
    """Position of each minimal coset representative in the module basis"""
    return {w: idx for idx, w in enumerate(min_coset_reps(p))}


def reduce_mod_parabolic_sparse(x: HeckeElement, p: Partition) -> SparseVector:
    """Image of x in H (x)_{H_P} 1 as {basis index: coefficient}"""
    if x.n != p.n:
        raise SizeMismatchError(f"element of H(S_{x.n}) cannot be reduced modulo a partition of {p.n}")
    index = coset_index(p)
    vector: SparseVector = {}
    for v, c in x.coeffs.items():
        w, _ = coset_factor(v, p)
        j = index[w]
        vector[j] = vector.get(j, QQ(0)) + c
    return {j: c for j, c in vector.items() if c}


def reduce_mod_parabolic(x: HeckeElement, p: Partition) -> List[object]:
    """Dense coefficient vector over min_coset_reps(p)"""
    sparse = reduce_mod_parabolic_sparse(x, p)
    return [sparse.get(j, QQ(0)) for j in range(len(coset_index(p)))]


@lru_cache(maxsize=None)
def regular_index(n: int) -> Dict[Permutation, int]:
    return {w: idx for idx, w in enumerate(all_permutations(n))}


def to_regular_vector(x: HeckeElement) -> SparseVector:
    """Coordinates of x in the full T-basis of H(S_n)"""
    index = regular_index(x.n)
    return {index[w]: c for w, c in x.coeffs.items()}


@lru_cache(maxsize=None)
def parabolic_ideal(p: Partition) -> SpanMembership:
    """Left ideal spanned by T_v (T_t - 1), v in S_n, t a simple reflection of the Young subgroup"""
    vectors = []
    for t in young_generators(p):
        for v in all_permutations(p.n):
            tv = HeckeElement.basis(v)
            vectors.append(to_regular_vector(_right_simple(tv, t) - tv))
    ideal = SpanMembership(vectors, len(regular_index(p.n)))
    Logger.log(f"parabolic ideal for ({p}): rank {ideal.base_rank}", "DEBUG", "HECKE")
    return ideal


__all__ = [
    'HeckeElement', 'hecke_multiply', 'braid_to_hecke', 'left_multiply_simple',
    'right_multiply_simple', 'coset_index', 'reduce_mod_parabolic',
    'reduce_mod_parabolic_sparse', 'regular_index', 'to_regular_vector',
    'parabolic_ideal',
]
