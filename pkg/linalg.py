"""
Exact sparse linear algebra over QQ (sympy DomainMatrix in sparse format)
"""

from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

SparseVector = Dict[int, object]


def qq(value) -> object:
    """Coerce an int, Rational or 'p/q' string to a QQ element"""
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, str):
        return QQ.from_sympy(Rational(value))
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ(value)


def from_entries(entries: Dict[Tuple[int, int], object], shape: Tuple[int, int]) -> DomainMatrix:
    """Sparse matrix from {(row, col): value}; zero values are dropped"""
    rows: Dict[int, Dict[int, object]] = {}
    for (i, j), value in entries.items():
        v = qq(value)
        if v:
            rows.setdefault(i, {})[j] = v
    return DomainMatrix(rows, shape, QQ)


def from_rows(rows: Sequence[Sequence[object]]) -> DomainMatrix:
    """Sparse matrix from a dense list of rows"""
    m = len(rows)
    n = len(rows[0]) if m else 0
    entries = {(i, j): x for i, row in enumerate(rows) for j, x in enumerate(row)}
    return from_entries(entries, (m, n))


def from_columns(columns: Sequence[SparseVector], dim: int) -> DomainMatrix:
    """Sparse dim x len(columns) matrix whose j-th column is columns[j]"""
    entries = {(i, j): v for j, col in enumerate(columns) for i, v in col.items()}
    return from_entries(entries, (dim, len(columns)))


def identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ).to_sparse()


def zeros(m: int, n: int) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), QQ).to_sparse()


def is_zero(M: DomainMatrix) -> bool:
    return M.is_zero_matrix


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    """Exact equality, independent of internal storage"""
    return A.shape == B.shape and is_zero(A - B)


def commutator(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return A * B - B * A


def mat_product(matrices: Iterable[DomainMatrix], n: int) -> DomainMatrix:
    """Ordered product M_1 * M_2 * ... (identity when empty)"""
    result = identity(n)
    for M in matrices:
        result = result * M
    return result


def is_invertible(M: DomainMatrix) -> bool:
    rows, cols = M.shape
    return rows == cols and M.rank() == rows


def trace(M: DomainMatrix):
    return sum(M.diagonal(), QQ(0))


def to_rows(M: DomainMatrix) -> List[List[Rational]]:
    """Dense rows of sympy Rationals (serialization and tests)"""
    return M.to_Matrix().tolist()


def is_signed_permutation(M: DomainMatrix) -> bool:
    """True when every row and column holds exactly one entry, equal to +1 or -1"""
    rows = to_rows(M)
    if not rows:
        return True
    n = len(rows)
    for line in list(rows) + [list(col) for col in zip(*rows)]:
        nonzero = [x for x in line if x != 0]
        if len(nonzero) != 1 or abs(nonzero[0]) != 1:
            return False
    return len(rows[0]) == n


class SpanMembership:
    """
    Exact membership test in the column span of a fixed set of vectors.
    The rank of the spanning set is computed once.
    """

    def __init__(self, vectors: Sequence[SparseVector], dim: int):
        self.dim = dim
        vectors = [v for v in vectors if any(v.values())]
        if vectors:
            _, pivots = from_columns(vectors, dim).rref()
            self.basis = [vectors[j] for j in pivots]
        else:
            self.basis = []
        self.base_rank = len(self.basis)

    def contains(self, target: SparseVector) -> bool:
        if not any(target.values()):
            return True
        augmented = from_columns(self.basis + [target], self.dim)
        return augmented.rank() == self.base_rank


def column_span_rank(columns: Sequence[DomainMatrix]) -> Tuple[int, DomainMatrix]:
    """Rank of the horizontally stacked blocks and a matrix of independent columns"""
    stacked = columns[0].hstack(*columns[1:]) if len(columns) > 1 else columns[0]
    _, pivots = stacked.rref()
    rows = list(range(stacked.shape[0]))
    return len(pivots), stacked.extract(rows, list(pivots))


def unit_vector(n: int, index: int) -> DomainMatrix:
    return from_entries({(index, 0): 1}, (n, 1))


__all__ = [
    'SparseVector', 'qq', 'from_entries', 'from_rows', 'from_columns',
    'identity', 'zeros', 'is_zero', 'equal', 'commutator', 'mat_product',
    'is_invertible', 'trace', 'to_rows', 'is_signed_permutation', 'SpanMembership',
    'column_span_rank', 'unit_vector',
]
