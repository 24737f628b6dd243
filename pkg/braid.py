"""
Braid words, colored braids (the group B_nbar), cabling zeta, the
generator inversion obar, the color projection psi and the generators
kappa_i, varsigma_{i,j}
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from combinatorics import Partition, Permutation
from exceptions import BraidError, ColorError, SizeMismatchError
from logger import Logger

Letter = Tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    """Word in sigma_i^{+-1} on a fixed number of strands; empty word = identity"""

    strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.strands < 1:
            raise BraidError(f"a braid needs at least one strand, got {self.strands}")
        for i, sign in letters:
            if not 1 <= i < self.strands:
                raise BraidError(f"generator index {i} out of range for {self.strands} strands")
            if sign not in (1, -1):
                raise BraidError(f"generator sign must be +1 or -1, got {sign}")

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """Whitespace-separated signed indices: '2 -1 3' = s_2 s_1^-1 s_3"""
        letters = []
        for token in (text or "").replace(",", " ").split():
            try:
                value = int(token)
            except ValueError as e:
                raise BraidError(f"cannot parse braid letter '{token}'") from e
            if value == 0:
                raise BraidError("braid letter 0 is not a generator")
            letters.append((abs(value), 1 if value > 0 else -1))
        return cls(strands, tuple(letters))

    @classmethod
    def from_indices(cls, strands: int, indices: Sequence[int]) -> "BraidWord":
        """Positive word from generator indices"""
        return cls(strands, tuple((i, 1) for i in indices))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise SizeMismatchError(f"cannot multiply braids on {self.strands} and {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def format(self) -> str:
        return " ".join(str(i * s) for i, s in self.letters)

    def __str__(self):
        return self.format() or "e"


@dataclass(frozen=True)
class ColoredBraid:
    """A braid on k strands whose strands carry the colors of the partition's parts"""

    partition: Partition
    word: BraidWord

    def __post_init__(self):
        if self.word.strands != self.partition.k:
            raise SizeMismatchError(
                f"colored braid for {self.partition} needs {self.partition.k} strands, got {self.word.strands}"
            )

    @classmethod
    def parse(cls, partition: Partition, text: str) -> "ColoredBraid":
        return cls(partition, BraidWord.parse(text, partition.k))

    @property
    def coloring(self) -> Tuple[int, ...]:
        return self.partition.coloring

    def is_color_preserving(self) -> bool:
        perm = strand_permutation(self.word)
        return all(self.coloring[perm(i) - 1] == self.coloring[i - 1] for i in range(1, self.partition.k + 1))

    def check(self) -> "ColoredBraid":
        """Raise ColorError unless the word lies in B_nbar"""
        if not self.is_color_preserving():
            Logger.log(f"rejected '{self.word}' for colors {self.coloring}", "DEBUG", "BRAID")
            raise ColorError(f"braid '{self.word}' does not preserve the colors {self.coloring}")
        return self

    def __str__(self):
        return str(self.word)


def strand_permutation(w: BraidWord) -> Permutation:
    """Image under B_n -> S_n, s_i^{+-1} -> s_i, in word order"""
    result = Permutation.identity(w.strands)
    for i, _ in w.letters:
        result = result * Permutation.simple(i, w.strands)
    return result


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent s_i s_i^-1 pairs until none remain"""
    stack: List[Letter] = []
    for i, s in w.letters:
        if stack and stack[-1] == (i, -s):
            stack.pop()
        else:
            stack.append((i, s))
    return BraidWord(w.strands, tuple(stack))


def invert_gens_obar(w: BraidWord) -> BraidWord:
    """obar: s_i -> s_i^-1, letter order preserved"""
    return BraidWord(w.strands, tuple((i, -s) for i, s in w.letters))


def _positive_cable(offset: int, left: int, right: int) -> List[Letter]:
    """
    Cable of kappa exchanging a rope of `left` strands (starting after `offset`)
    with the following rope of `right` strands: `right` descending runs of length `left`.
    """
    letters = []
    for r in range(right):
        top = offset + left + r
        letters.extend((j, 1) for j in range(top, top - left, -1))
    return letters


def cabling_zeta(p: Partition, w: BraidWord) -> BraidWord:
    """
    zeta: B_k -> B_n, replacing strand i by a rope of n_i parallel strands.
    Rope sizes travel with the ropes, so each letter is cabled with the sizes
    currently in its two positions.
    """
    if w.strands != p.k:
        raise SizeMismatchError(f"cabling for {p} needs a word on {p.k} strands, got {w.strands}")
    sizes = list(p.parts)
    letters: List[Letter] = []
    for i, sign in w.letters:
        offset = sum(sizes[: i - 1])
        left, right = sizes[i - 1], sizes[i]
        if sign > 0:
            letters.extend(_positive_cable(offset, left, right))
        else:
            cable = _positive_cable(offset, right, left)
            letters.extend((j, -s) for j, s in reversed(cable))
        sizes[i - 1], sizes[i] = right, left
    return BraidWord(p.n, tuple(letters))


def rope_block_permutation(p: Partition, rope_perm: Permutation) -> Permutation:
    """Permutation of the n strands induced by a permutation of the k ropes (same convention as strand_permutation)"""
    if rope_perm.n != p.k:
        raise SizeMismatchError(f"rope permutation on {rope_perm.n} ropes, partition has {p.k}")
    # rope starting in position i ends in position end[i]
    end = rope_perm.inverse()
    final_sizes = [0] * p.k
    for i in range(1, p.k + 1):
        final_sizes[end(i) - 1] = p.parts[i - 1]
    final_starts, total = [], 0
    for size in final_sizes:
        final_starts.append(total + 1)
        total += size
    strand_end = [0] * p.n
    for i in range(1, p.k + 1):
        for t, letter in enumerate(p.block(i)):
            strand_end[letter - 1] = final_starts[end(i) - 1] + t
    return Permutation(tuple(strand_end)).inverse()


def color_projection_psi(c: ColoredBraid) -> Tuple[Permutation, ...]:
    """psi: B_nbar -> S_{m_1} x ... x S_{m_l}, the permutation restricted to each color class"""
    c.check()
    perm = strand_permutation(c.word)
    result = []
    for j in range(1, c.partition.l + 1):
        members = c.partition.color_class(j)
        result.append(Permutation(tuple(members.index(perm(x)) + 1 for x in members)))
    return tuple(result)


def kappa(p: Partition, i: int, sign: int = 1) -> BraidWord:
    if not 1 <= i < p.k:
        raise BraidError(f"kappa_{i} not defined on {p.k} strands")
    return BraidWord(p.k, ((i, sign),))


def varsigma_generator(p: Partition, i: int, j: int) -> ColoredBraid:
    """The pure braid taking the first strand of color j once around the last strand of color i"""
    if not 1 <= i < j <= p.l:
        raise BraidError(f"varsigma_({i},{j}) needs 1 <= i < j <= {p.l}")
    cumulative = [sum(p.multiplicities[:t]) for t in range(p.l + 1)]
    lo, hi = cumulative[i], cumulative[j - 1]
    letters: List[Letter] = [(t, -1) for t in range(hi, lo, -1)]
    letters += [(lo, 1), (lo, 1)]
    letters += [(t, 1) for t in range(lo + 1, hi + 1)]
    return ColoredBraid(p, BraidWord(p.k, tuple(letters)))


def colored_generators(p: Partition) -> List[Tuple[str, ColoredBraid]]:
    """Generating set of B_nbar: same-color kappa_i and every varsigma_{i,j}"""
    gens = []
    coloring = p.coloring
    for i in range(1, p.k):
        if coloring[i - 1] == coloring[i]:
            gens.append((f"kappa_{i}", ColoredBraid(p, kappa(p, i))))
    for i in range(1, p.l + 1):
        for j in range(i + 1, p.l + 1):
            gens.append((f"varsigma_{i}_{j}", varsigma_generator(p, i, j)))
    return gens


__all__ = [
    'Letter', 'BraidWord', 'ColoredBraid', 'strand_permutation', 'free_reduce',
    'invert_gens_obar', 'cabling_zeta', 'rope_block_permutation',
    'color_projection_psi', 'kappa', 'varsigma_generator', 'colored_generators',
]
