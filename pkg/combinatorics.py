"""
Partitions, critical-point labels, symmetric-group actions and the
character-theoretic decomposition oracle
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as all_orderings
from math import factorial, prod
from typing import Dict, Iterator, List, Sequence, Tuple

from sympy import Rational
from sympy.utilities.iterables import multiset_permutations, partitions

from config import CFG
from exceptions import PartitionError, SizeMismatchError
from logger import Logger

Shape = Tuple[int, ...]


@dataclass(frozen=True)
class Partition:
    """
    A partition n = n_1 + ... + n_k with parts stored ascending.
    Parts of equal size form one color; colors are numbered 1..l by size.
    """

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise PartitionError("partition must have at least one part")
        if any((not isinstance(x, int)) or x < 1 for x in parts):
            raise PartitionError(f"parts must be positive integers: {parts}")
        if list(parts) != sorted(parts):
            raise PartitionError(f"parts must be ascending: {parts}")
        if sum(parts) > CFG.max_letters:
            raise PartitionError(f"n = {sum(parts)} exceeds the supported maximum {CFG.max_letters}")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        return cls(tuple(sorted(int(x) for x in parts)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse comma-separated positive integers, e.g. '1,2'"""
        try:
            parts = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
        except ValueError as e:
            raise PartitionError(f"cannot parse partition '{text}'") from e
        return cls.from_parts(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def distinct_sizes(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.parts)))

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(self.parts.count(s) for s in self.distinct_sizes)

    @property
    def l(self) -> int:
        return len(self.distinct_sizes)

    @property
    def coloring(self) -> Tuple[int, ...]:
        """Color (1..l) of each part / strand of B_k"""
        sizes = self.distinct_sizes
        return tuple(sizes.index(x) + 1 for x in self.parts)

    def color_class(self, j: int) -> Tuple[int, ...]:
        """Part indices (1-based) of color j"""
        return tuple(i + 1 for i, c in enumerate(self.coloring) if c == j)

    @property
    def block_starts(self) -> Tuple[int, ...]:
        """First letter of each consecutive Young block (1-based)"""
        starts, total = [], 0
        for x in self.parts:
            starts.append(total + 1)
            total += x
        return tuple(starts)

    def block(self, i: int) -> Tuple[int, ...]:
        """Letters of the i-th Young block (1-based)"""
        start = self.block_starts[i - 1]
        return tuple(range(start, start + self.parts[i - 1]))

    def block_of(self, letter: int) -> int:
        for i in range(1, self.k + 1):
            if letter in self.block(i):
                return i
        raise SizeMismatchError(f"letter {letter} outside 1..{self.n}")

    def __str__(self):
        return ",".join(str(x) for x in self.parts)


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n} in one-line notation; (u*v)(x) = u(v(x))"""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise SizeMismatchError(f"not a permutation in one-line notation: {images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        """Simple transposition s_i = (i, i+1)"""
        if not 1 <= i < n:
            raise SizeMismatchError(f"s_{i} not defined on {n} letters")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise SizeMismatchError(f"cannot compose permutations of {self.n} and {other.n} letters")
        return Permutation(tuple(self(other(x)) for x in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def length(self) -> int:
        """Coxeter length = number of inversions"""
        w = self.images
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if w[a] > w[b])

    def sign(self) -> int:
        return -1 if self.length() % 2 else 1

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def cycle_type(self) -> Shape:
        seen, lengths = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            length, x = 0, start
            while x not in seen:
                seen.add(x)
                x = self(x)
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def reduced_word(self) -> List[int]:
        """Indices i_1..i_r with self = s_{i_1} ... s_{i_r} and r = length"""
        word, current = [], list(self.images)
        # swapping positions j, j+1 is right multiplication by s_j
        changed = True
        while changed:
            changed = False
            for j in range(len(current) - 1):
                if current[j] > current[j + 1]:
                    current[j], current[j + 1] = current[j + 1], current[j]
                    word.append(j + 1)
                    changed = True
        return list(reversed(word))

    def __str__(self):
        return "[" + " ".join(str(x) for x in self.images) + "]"


@dataclass(frozen=True)
class BetaMap:
    """A map {1..n} -> {1..k} with fiber sizes n_1..n_k"""

    partition: Partition
    assignment: Tuple[int, ...]

    def __post_init__(self):
        assignment = tuple(self.assignment)
        object.__setattr__(self, "assignment", assignment)
        p = self.partition
        if len(assignment) != p.n:
            raise SizeMismatchError(f"assignment {assignment} has length {len(assignment)}, expected {p.n}")
        for i in range(1, p.k + 1):
            if assignment.count(i) != p.parts[i - 1]:
                raise PartitionError(f"assignment {assignment} has fiber of size {assignment.count(i)} over {i}")

    def __call__(self, letter: int) -> int:
        return self.assignment[letter - 1]

    def fiber(self, i: int) -> Tuple[int, ...]:
        return tuple(a for a in range(1, self.partition.n + 1) if self(a) == i)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.assignment) + ")"


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n, parts ascending, in lexicographic order of parts"""
    result = []
    for counts in partitions(n):
        parts = []
        for size, mult in sorted(counts.items()):
            parts.extend([size] * mult)
        result.append(Partition(tuple(parts)))
    return sorted(result, key=lambda p: p.parts)


def shapes_of(n: int) -> List[Shape]:
    """Young diagram shapes of n (parts descending), dominance-compatible order"""
    shapes = [tuple(reversed(p.parts)) for p in partitions_of(n)]
    return sorted(shapes, reverse=True)


def multinomial_dim(p: Partition) -> int:
    """n! / (n_1! ... n_k!)"""
    return factorial(p.n) // prod(factorial(x) for x in p.parts)


def enumerate_beta(p: Partition) -> List[BetaMap]:
    """All BetaMaps in lexicographic order; the monotone map beta_0 comes first"""
    base = [i for i in range(1, p.k + 1) for _ in range(p.parts[i - 1])]
    return [BetaMap(p, tuple(a)) for a in multiset_permutations(base)]


def beta_zero(p: Partition) -> BetaMap:
    return BetaMap(p, tuple(i for i in range(1, p.k + 1) for _ in range(p.parts[i - 1])))


def sigma_action_on_beta(w: Permutation, b: BetaMap) -> BetaMap:
    """Left action w . beta = beta o w^{-1}"""
    if w.n != b.partition.n:
        raise SizeMismatchError(f"permutation on {w.n} letters cannot act on BetaMaps of n = {b.partition.n}")
    inv = w.inverse()
    return BetaMap(b.partition, tuple(b(inv(a)) for a in range(1, w.n + 1)))


def relabel_blocks(g: Permutation, b: BetaMap) -> BetaMap:
    """Post-composition g o beta by a permutation of the block indices"""
    if g.n != b.partition.k:
        raise SizeMismatchError(f"block relabeling on {g.n} blocks, partition has {b.partition.k}")
    return BetaMap(b.partition, tuple(g(x) for x in b.assignment))


def young_generators(p: Partition) -> List[int]:
    """Indices i with s_i in the Young subgroup (i, i+1 in one block)"""
    return [i for i in range(1, p.n) if p.block_of(i) == p.block_of(i + 1)]


def young_subgroup(p: Partition) -> List[Permutation]:
    """All elements of S_{n_1} x ... x S_{n_k} on consecutive letter blocks"""
    elements = [()]
    for i in range(1, p.k + 1):
        block = p.block(i)
        elements = [e + tuple(o) for e in elements for o in all_orderings(block)]
    return [Permutation(e) for e in elements]


def coset_representative(b: BetaMap) -> Permutation:
    """Minimal-length w with w . beta_0 = beta: block i goes onto fiber i, order kept"""
    p = b.partition
    images = [0] * p.n
    for i in range(1, p.k + 1):
        for letter, target in zip(p.block(i), b.fiber(i)):
            images[letter - 1] = target
    return Permutation(tuple(images))


def coset_factor(v: Permutation, p: Partition) -> Tuple[Permutation, Permutation]:
    """Split v = w * u with w minimal in v*Young and u in the Young subgroup"""
    images = list(v.images)
    for i in range(1, p.k + 1):
        block = p.block(i)
        values = sorted(images[a - 1] for a in block)
        for a, value in zip(block, values):
            images[a - 1] = value
    w = Permutation(tuple(images))
    return w, w.inverse() * v


def min_coset_reps(p: Partition) -> List[Permutation]:
    """Minimal left coset representatives, ordered like enumerate_beta"""
    return [coset_representative(b) for b in enumerate_beta(p)]


def all_permutations(n: int) -> List[Permutation]:
    return [Permutation(tuple(o)) for o in all_orderings(range(1, n + 1))]


@lru_cache(maxsize=None)
def _kostka(shape: Shape, content: Tuple[int, ...]) -> int:
    """Number of SSYT of the given shape and content, by peeling horizontal strips"""
    if not content:
        return 1 if not shape else 0
    *rest, last = content
    total = 0
    for smaller in _remove_horizontal_strips(shape, last):
        total += _kostka(smaller, tuple(rest))
    return total


def _remove_horizontal_strips(shape: Shape, size: int) -> Iterator[Shape]:
    """Shapes mu inside shape with shape/mu a horizontal strip of the given size"""
    rows = list(shape)

    def rec(i: int, remaining: int, acc: List[int]):
        if i == len(rows):
            if remaining == 0:
                yield tuple(x for x in acc if x > 0)
            return
        # mu_i >= lambda_{i+1}, mu_i <= lambda_i
        lower = rows[i + 1] if i + 1 < len(rows) else 0
        for mu_i in range(rows[i], lower - 1, -1):
            taken = rows[i] - mu_i
            if taken > remaining:
                break
            yield from rec(i + 1, remaining - taken, acc + [mu_i])

    yield from rec(0, size, [])


def kostka_decomposition(p: Partition) -> Dict[Shape, int]:
    """Multiplicities of irreducibles in Ind_{Young}^{S_n} 1 (Kostka numbers K_{shape, content})"""
    return {shape: _kostka(shape, p.parts) for shape in shapes_of(p.n)}


def shape_dimension(shape: Shape) -> int:
    """Number of standard tableaux (Kostka number with content 1^n)"""
    return _kostka(shape, tuple([1] * sum(shape)))


@lru_cache(maxsize=None)
def irreducible_character(shape: Shape, cycle_type: Shape) -> int:
    """Murnaghan-Nakayama rule on beta-sets"""
    if not cycle_type:
        return 1 if sum(shape) == 0 else 0
    r, rest = cycle_type[0], cycle_type[1:]
    length = len(shape)
    betas = [shape[i] + (length - 1 - i) for i in range(length)]
    beta_set = set(betas)
    total = 0
    for b in betas:
        c = b - r
        if c < 0 or c in beta_set:
            continue
        height = sum(1 for x in betas if c < x < b)
        new_betas = sorted((beta_set - {b}) | {c}, reverse=True)
        new_shape = tuple(x - (length - 1 - i) for i, x in enumerate(new_betas))
        new_shape = tuple(x for x in new_shape if x > 0)
        total += (-1) ** height * irreducible_character(new_shape, rest)
    return total


def class_size(cycle_type: Shape) -> int:
    """Number of permutations of the given cycle type"""
    n = sum(cycle_type)
    z = 1
    for part in set(cycle_type):
        mult = cycle_type.count(part)
        z *= part ** mult * factorial(mult)
    return factorial(n) // z


def cycle_type_representative(cycle_type: Shape) -> Permutation:
    """Product of cycles on consecutive letters"""
    images, start = [], 1
    for part in cycle_type:
        images.extend(list(range(start + 1, start + part)) + [start])
        start += part
    return Permutation(tuple(images))


def decompose_character(character: Dict[Shape, object], n: int) -> Dict[Shape, int]:
    """Multiplicities <character, chi^shape> over S_n, exact"""
    result = {}
    order = factorial(n)
    for shape in shapes_of(n):
        total = Rational(0)
        for cycle_type, value in character.items():
            total += class_size(cycle_type) * Rational(value) * irreducible_character(shape, cycle_type)
        mult = total / order
        if not mult.is_integer:
            Logger.log(f"non-integral multiplicity {mult} at {shape}", "WARNING", "COMB")
            raise PartitionError(f"character is not a virtual character: <chi, {shape}> = {mult}")
        result[shape] = int(mult)
    return result


def permutation_character_multiplicities(p: Partition) -> Dict[Shape, int]:
    """Decomposition of the permutation character on BetaMaps (fixed-point counts)"""
    betas = enumerate_beta(p)
    character = {}
    for shape in shapes_of(p.n):
        w = cycle_type_representative(shape)
        character[shape] = sum(1 for b in betas if sigma_action_on_beta(w, b) == b)
    Logger.log(f"permutation character of ({p}): {character}", "DEBUG", "COMB")
    return decompose_character(character, p.n)


__all__ = [
    'Shape', 'Partition', 'Permutation', 'BetaMap',
    'partitions_of', 'shapes_of', 'multinomial_dim', 'enumerate_beta', 'beta_zero',
    'sigma_action_on_beta', 'relabel_blocks', 'young_generators', 'young_subgroup',
    'coset_representative', 'coset_factor', 'min_coset_reps', 'all_permutations',
    'kostka_decomposition', 'shape_dimension', 'irreducible_character',
    'class_size', 'cycle_type_representative', 'decompose_character',
    'permutation_character_multiplicities',
]
