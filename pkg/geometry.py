"""
Matrix-level geometry of the three symmetric spaces: the quotient map f,
nilpotent orbit labels, conormal pairs (A, B) and their normal form, and
for case I the normal slice with its critical points
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import null_space
from sympy import Float, Matrix, Rational, diag, eye, lambdify, symbols, zeros

from combinatorics import BetaMap, Partition, enumerate_beta, multinomial_dim
from config import CFG
from exceptions import ConvergenceError, GeometryCheckError, GeometryError, SizeMismatchError
from logger import Logger

MatrixLike = Union[Matrix, np.ndarray]

# ---------------------------------------------------------------- blocks


def jordan_block(m: int) -> Matrix:
    """Regular nilpotent on m letters: ones on the superdiagonal"""
    return Matrix(m, m, lambda a, b: 1 if b == a + 1 else 0)


def antidiagonal(m: int) -> Matrix:
    return Matrix(m, m, lambda a, b: 1 if a + b == m - 1 else 0)


def standard_symplectic(m: int) -> Matrix:
    """[[0, I], [-I, 0]] on 2m letters"""
    return Matrix(2 * m, 2 * m, lambda a, b: 1 if b == a + m else (-1 if a == b + m else 0))


def polynomial_of(M: Matrix, coeffs: Sequence) -> Matrix:
    """coeffs[0] + coeffs[1] M + coeffs[2] M^2 + ..."""
    result = zeros(M.rows, M.cols)
    power = eye(M.rows)
    for c in coeffs:
        result += Rational(c) * power
        power = power * M
    return result


def _is_exact(M: MatrixLike) -> bool:
    return isinstance(M, Matrix) and not M.has(Float) and all(x.is_Rational for x in M)


def _to_numpy(M: MatrixLike) -> np.ndarray:
    if isinstance(M, np.ndarray):
        return M.astype(complex)
    return np.array(M.evalf().tolist(), dtype=complex)


# ---------------------------------------------------------------- conormal pairs


@dataclass
class ConormalPair:
    """
    Point (A, B) of V x V for one of the cases I/II/III. `form` is the
    symmetric nu (II) or skew omega (III) that A and B are self-adjoint for.
    """

    case_tag: str
    A: Matrix
    B: Matrix
    form: Optional[Matrix] = None
    partition: Optional[Partition] = None
    us: Tuple = ()
    poly_coeffs: Tuple = ()

    def __post_init__(self):
        if self.A.shape != self.B.shape or self.A.rows != self.A.cols:
            raise SizeMismatchError(f"A {self.A.shape} and B {self.B.shape} must be equal square shapes")
        if (self.form is None) != (self.case_tag == "I"):
            raise GeometryError(f"case {self.case_tag} pair has the wrong bilinear form data")
        if self.form is not None and self.form.shape != self.A.shape:
            raise SizeMismatchError(f"form {self.form.shape} does not match A {self.A.shape}")

    @property
    def size(self) -> int:
        return self.A.rows

    @property
    def exact(self) -> bool:
        return _is_exact(self.A) and _is_exact(self.B)


def in_declared_space(case_tag: str, M: MatrixLike, form: Optional[MatrixLike], tol: float = None) -> bool:
    """Trace zero, and self-adjoint for the form in cases II/III"""
    tol = CFG.exact_tol if tol is None else tol
    if isinstance(M, Matrix) and _is_exact(M) and (form is None or _is_exact(form)):
        if M.trace() != 0:
            return False
        return form is None or (M.T * form - form * M).is_zero_matrix
    X = _to_numpy(M)
    scale = max(1.0, np.abs(X).max(initial=0.0))
    if abs(np.trace(X)) > tol * scale:
        return False
    if form is None:
        return True
    F = _to_numpy(form)
    return np.abs(X.T @ F - F @ X).max(initial=0.0) <= tol * scale


def _checked_us(p: Partition, us: Sequence) -> Tuple[Rational, ...]:
    values = tuple(Rational(u) for u in us)
    if len(values) != p.k:
        raise GeometryError(f"need {p.k} eigenvalues u for partition ({p}), got {len(values)}")
    if len(set(values)) != len(values):
        raise GeometryError(f"eigenvalues u must be pairwise distinct: {values}")
    if sum(n * u for n, u in zip(p.parts, values)) != 0:
        raise GeometryError(f"trace condition sum n_i u_i = 0 fails for u = {values}")
    return values


def realize_conormal(case_tag: str, p: Partition, us: Sequence, poly_coeffs: Optional[Sequence[Sequence]] = None) -> ConormalPair:
    """
    Normal form: A regular nilpotent on each U_i, B|U_i = u_i + P_i(A|U_i).
    poly_coeffs[i] lists the coefficients of A, A^2, ... in P_i.
    """
    values = _checked_us(p, us)
    if poly_coeffs is None:
        poly_coeffs = [[] for _ in p.parts]
    if len(poly_coeffs) != p.k:
        raise GeometryError(f"need {p.k} coefficient lists, got {len(poly_coeffs)}")
    poly_coeffs = tuple(tuple(Rational(c) for c in coeffs) for coeffs in poly_coeffs)

    a_blocks, b_blocks, forms = [], [], []
    for m, u, coeffs in zip(p.parts, values, poly_coeffs):
        J = jordan_block(m)
        P = polynomial_of(J, (u,) + coeffs)
        if case_tag == "III":
            a_blocks.append(diag(J, J.T))
            b_blocks.append(diag(P, P.T))
            forms.append(standard_symplectic(m))
        else:
            a_blocks.append(J)
            b_blocks.append(P)
            forms.append(antidiagonal(m))
    form = None if case_tag == "I" else diag(*forms)
    pair = ConormalPair(case_tag, diag(*a_blocks), diag(*b_blocks), form, p, values, poly_coeffs)
    Logger.log(f"realized case {case_tag} pair for ({p}) with u = {[str(u) for u in values]}", "DEBUG", "GEOM")
    return pair


def _random_group_element(case_tag: str, form: Optional[Matrix], size: int, rng: np.random.Generator) -> Matrix:
    """Random exact element of K: SL_n (I), Cayley transforms for O(nu) (II) and Sp(omega) (III)"""
    for _ in range(CFG.sample_attempts):
        if case_tag == "I":
            L = Matrix(size, size, lambda a, b: 1 if a == b else (int(rng.integers(-2, 3)) if a > b else 0))
            U = Matrix(size, size, lambda a, b: 1 if a == b else (int(rng.integers(-2, 3)) if a < b else 0))
            return L * U
        R = Matrix(size, size, lambda a, b: int(rng.integers(-2, 3)))
        S = R - R.T if case_tag == "II" else R + R.T
        X = form.inv() * S
        I = eye(size)
        if (I - X).det() != 0:
            return (I - X).inv() * (I + X)
    raise GeometryCheckError(f"could not sample an invertible group element in {CFG.sample_attempts} attempts")


def sample_conormal(case_tag: str, p: Partition, rng: Optional[np.random.Generator] = None) -> ConormalPair:
    """Random exact conormal pair: random normal form conjugated by a random element of K"""
    rng = rng if rng is not None else np.random.default_rng(CFG.seed)
    for _ in range(CFG.sample_attempts):
        head = [int(rng.integers(-6, 7)) for _ in range(p.k - 1)]
        last = -Rational(sum(n * u for n, u in zip(p.parts, head)), p.parts[-1])
        us = head + [last]
        if len(set(Rational(u) for u in us)) == p.k:
            break
    else:
        raise GeometryCheckError(f"no distinct eigenvalues for ({p}) after {CFG.sample_attempts} attempts")
    coeffs = [[int(rng.integers(-3, 4)) for _ in range(m - 1)] for m in p.parts]
    base = realize_conormal(case_tag, p, us, coeffs)
    g = _random_group_element(case_tag, base.form, base.size, rng)
    g_inv = g.inv()
    return ConormalPair(case_tag, g * base.A * g_inv, g * base.B * g_inv, base.form, p, base.us, base.poly_coeffs)


def is_conormal(pair: ConormalPair, tol: float = None) -> bool:
    """A nilpotent, A and B in the declared space, and AB = BA"""
    tol = CFG.exact_tol if tol is None else tol
    for M in (pair.A, pair.B):
        if not in_declared_space(pair.case_tag, M, pair.form, tol):
            return False
    if pair.exact:
        return (pair.A ** pair.size).is_zero_matrix and (pair.A * pair.B - pair.B * pair.A).is_zero_matrix
    A, B = _to_numpy(pair.A), _to_numpy(pair.B)
    scale = max(1.0, np.abs(A).max(initial=0.0), np.abs(B).max(initial=0.0))
    nilpotent = np.abs(np.linalg.matrix_power(A, pair.size)).max(initial=0.0) <= tol * scale ** pair.size
    return bool(nilpotent and np.abs(A @ B - B @ A).max(initial=0.0) <= tol * scale ** 2)


# ---------------------------------------------------------------- quotient map and orbits


def faddeev_leverrier(M: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients [1, c_1, ..., c_N] of a floating matrix"""
    N = M.shape[0]
    coeffs = [1.0 + 0j]
    K = np.zeros_like(M, dtype=complex)
    I = np.eye(N, dtype=complex)
    for k in range(1, N + 1):
        K = M @ K + coeffs[-1] * I
        coeffs.append(-np.trace(M @ K) / k)
    return np.array(coeffs)


def charpoly_coefficients(M: MatrixLike) -> List:
    """[1, c_1, ..., c_N] of det(x - M), exact when M is"""
    if _is_exact(M):
        x = symbols("x")
        return [Rational(c) for c in M.charpoly(x).all_coeffs()]
    return list(faddeev_leverrier(_to_numpy(M)))


def _halve_polynomial(coeffs: List, exact: bool, tol: float) -> List:
    """Monic q with q^2 = the given monic polynomial of even degree"""
    degree = len(coeffs) - 1
    half = degree // 2
    q = [coeffs[0]]
    for j in range(1, half + 1):
        cross = sum(q[a] * q[j - a] for a in range(1, j))
        q.append((coeffs[j] - cross) / 2)
    square = [sum(q[a] * q[j - a] for a in range(max(0, j - half), min(j, half) + 1)) for j in range(degree + 1)]
    if exact:
        ok = all(s == c for s, c in zip(square, coeffs))
    else:
        scale = max(1.0, max(abs(c) for c in coeffs))
        ok = all(abs(s - c) <= tol * scale for s, c in zip(square, coeffs))
    if not ok:
        raise GeometryError("spectrum does not have even multiplicities")
    return q


def quotient_map_f(case_tag: str, M: MatrixLike, tol: float = None) -> Tuple:
    """(e_2, ..., e_n) of the eigenvalues; case III uses the halved spectrum"""
    tol = CFG.exact_tol if tol is None else tol
    exact = _is_exact(M)
    coeffs = charpoly_coefficients(M)
    if case_tag == "III":
        if (len(coeffs) - 1) % 2:
            raise GeometryError("case III matrices have even size")
        coeffs = _halve_polynomial(coeffs, exact, tol)
    # e_j = (-1)^j c_j
    return tuple(c if j % 2 == 0 else -c for j, c in enumerate(coeffs) if j >= 2)


def _rank(M: MatrixLike, tol: float) -> int:
    if _is_exact(M):
        return M.rank()
    X = _to_numpy(M)
    return int(np.linalg.matrix_rank(X, tol=tol * max(1.0, np.abs(X).max(initial=0.0))))


def jordan_partition(A: MatrixLike, case_tag: str = "I", tol: float = None) -> Partition:
    """Jordan block sizes from the ranks of the powers of A; halved multiplicities in case III"""
    tol = CFG.exact_tol if tol is None else tol
    N = A.shape[0]
    powers = [eye(N) if isinstance(A, Matrix) else np.eye(N)]
    for _ in range(N):
        powers.append(powers[-1] * A if isinstance(A, Matrix) else powers[-1] @ A)
    ranks = [_rank(P, tol) for P in powers]
    if ranks[N] != 0:
        raise GeometryError("matrix is not nilpotent")
    # at_least[j] = number of blocks of size >= j
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, N + 1)] + [0]
    sizes = []
    for j in range(1, N + 1):
        sizes.extend([j] * (at_least[j - 1] - at_least[j]))
    if case_tag == "III":
        counts = {s: sizes.count(s) for s in set(sizes)}
        if any(c % 2 for c in counts.values()):
            raise GeometryError(f"case III nilpotent needs an even number of blocks of each size, got {sorted(sizes)}")
        sizes = [s for s, c in counts.items() for _ in range(c // 2)]
    return Partition.from_parts(sizes)


def differential_rank(A: Matrix) -> int:
    """Rank of d_A f on sl_n (case I); n - 1 exactly when A is regular"""
    n = A.rows
    coeffs = charpoly_coefficients(A)
    # gradient of c_j is -(sum_{i<j} c_i A^{j-1-i})^T
    gradients = []
    for j in range(2, n + 1):
        Q = zeros(n, n)
        for i in range(j):
            Q += coeffs[i] * A ** (j - 1 - i)
        Q = Q - (Q.trace() / n) * eye(n)
        gradients.append(list(Q))
    if not gradients:
        return 0
    return Matrix(gradients).rank()


# ---------------------------------------------------------------- normal form


@dataclass
class EigenspaceCheck:
    eigenvalue: Rational
    dim: int
    expected_dim: int
    invariant: bool
    regular: bool
    poly_coeffs: List[Rational] = field(default_factory=list)
    degree: int = -1
    residual: float = 0.0

    @property
    def passed(self) -> bool:
        return self.dim == self.expected_dim and self.invariant and self.regular and self.degree >= 0


@dataclass
class NormalFormReport:
    case_tag: str
    partition: Partition
    eigenspaces: List[EigenspaceCheck]
    orthogonal: bool
    conormal: bool

    @property
    def passed(self) -> bool:
        return self.conormal and self.orthogonal and all(e.passed for e in self.eigenspaces)


def _solve_polynomial(A_U: Matrix, B_U: Matrix, degree_bound: int) -> Tuple[List[Rational], int, float]:
    d = A_U.rows
    powers, P = [], eye(d)
    for _ in range(degree_bound + 1):
        powers.append(P)
        P = P * A_U
    system = Matrix.hstack(*[M.reshape(d * d, 1) for M in powers])
    try:
        solution, params = system.gauss_jordan_solve(B_U.reshape(d * d, 1))
    except ValueError:
        return [], -1, float("inf")
    solution = solution.subs({t: 0 for t in params})
    coeffs = [Rational(c) for c in solution]
    degree = max((i for i, c in enumerate(coeffs) if c != 0), default=0)
    residual = B_U - polynomial_of(A_U, coeffs)
    scale = max(1, max((abs(x) for x in B_U), default=1))
    return coeffs, degree, float(max((abs(x) for x in residual), default=0) / scale)


def _expected_dims(pair: ConormalPair, eigenvalues: List, doubled: int) -> List[int]:
    """Dimension each generalized eigenspace must have; 0 marks an eigenvalue the pair does not carry"""
    p = pair.partition
    if pair.us:
        lookup = {Rational(u): m for u, m in zip(pair.us, p.parts)}
        return [doubled * lookup.get(u, 0) if u.is_Rational else 0 for u in eigenvalues]
    # without recorded u, any matching of parts to eigenspaces is accepted
    return [None] * len(eigenvalues)


def verify_normal_form(pair: ConormalPair) -> NormalFormReport:
    """Generalized eigenspaces of B, A-invariance, regularity, orthogonality and B|U = P(A|U)"""
    if pair.partition is None:
        raise GeometryError("normal-form verification needs the pair's partition")
    if not pair.exact:
        raise GeometryError("normal-form verification works on exact pairs")
    p = pair.partition
    doubled = 2 if pair.case_tag == "III" else 1
    eigenvalues = sorted(pair.B.eigenvals().keys(), key=lambda z: (complex(z).real, complex(z).imag))
    if len(eigenvalues) != p.k:
        raise GeometryError(f"B has {len(eigenvalues)} distinct eigenvalues, the pair needs {p.k}")

    N = pair.size
    expected_dims = _expected_dims(pair, eigenvalues, doubled)
    bases, checks = [], []
    for u, expected in zip(eigenvalues, expected_dims):
        Q = Matrix.hstack(*((pair.B - u * eye(N)) ** N).nullspace())
        dim = Q.cols
        AQ = pair.A * Q
        invariant = Matrix.hstack(Q, AQ).rank() == dim
        gram = (Q.T * Q).inv()
        A_U = gram * Q.T * AQ
        B_U = gram * Q.T * pair.B * Q
        regular = invariant and A_U.rank() == dim - doubled
        if invariant:
            coeffs, degree, residual = _solve_polynomial(A_U, B_U, dim // doubled)
        else:
            coeffs, degree, residual = [], -1, float("inf")
        checks.append(EigenspaceCheck(u, dim, dim if expected is None else expected, invariant, regular, coeffs, degree, residual))
        bases.append(Q)
    if expected_dims and expected_dims[0] is None and sorted(c.dim for c in checks) != sorted(doubled * m for m in p.parts):
        for check in checks:
            check.expected_dim = -1

    orthogonal = True
    if pair.form is not None:
        for i in range(len(bases)):
            for j in range(i + 1, len(bases)):
                if not (bases[i].T * pair.form * bases[j]).is_zero_matrix:
                    orthogonal = False
    report = NormalFormReport(pair.case_tag, p, checks, orthogonal, is_conormal(pair))
    Logger.log(f"normal form case {pair.case_tag} ({p}): {'pass' if report.passed else 'FAIL'}", "DEBUG", "GEOM")
    return report


# ---------------------------------------------------------------- case I slice


@dataclass
class SliceData:
    """Transversal slice A + Nbar at a realized case I nilpotent"""

    partition: Partition
    A: Matrix
    directions: List[Matrix]
    blocks: List[Tuple[int, int]]
    tangent_dim: int
    transversal: bool

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def bd_indices(self) -> List[int]:
        return [a for a, (i, j) in enumerate(self.blocks) if i == j]

    @property
    def fiber_dimension(self) -> int:
        return self.dim - (self.partition.n - 1)

    def centralizer_identity(self) -> bool:
        """dim Nbar + 1 = sum over block pairs of min(n_i, n_j)"""
        parts = self.partition.parts
        return self.dim + 1 == sum(min(a, b) for a in parts for b in parts)

    def dimension_check(self) -> bool:
        n = self.partition.n
        return self.dim + self.tangent_dim == n * n - 1

    def direction_matrix(self) -> np.ndarray:
        """n^2 x dim numeric matrix of flattened directions"""
        return np.array([[complex(x) for x in E] for E in self.directions], dtype=complex).T


def _embed(n: int, rows: Sequence[int], cols: Sequence[int], Y: Matrix) -> Matrix:
    M = zeros(n, n)
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            M[r - 1, c - 1] = Y[a, b]
    return M


def _off_diagonal_centralizer(Ji: Matrix, Jj: Matrix) -> List[Matrix]:
    """Y with Ji^T Y = Y Jj^T"""
    m, q = Ji.rows, Jj.rows
    columns = []
    for a in range(m):
        for b in range(q):
            E = zeros(m, q)
            E[a, b] = 1
            columns.append(list(Ji.T * E - E * Jj.T))
    operator = Matrix(columns).T
    return [v.reshape(m, q) for v in operator.nullspace()]


def build_slice(pair: ConormalPair) -> SliceData:
    """Nbar = traceless centralizer of A^T, the Frobenius complement of [sl_n, A]"""
    if pair.case_tag != "I" or pair.partition is None:
        raise GeometryError("slices are built for realized case I pairs only")
    p, n = pair.partition, pair.size
    if pair.A != diag(*[jordan_block(m) for m in p.parts]):
        raise GeometryError("slice construction needs A in block normal form")

    directions, blocks = [], []
    for i in range(1, p.k + 1):
        Ji = jordan_block(p.parts[i - 1])
        for d in range(1, p.parts[i - 1]):
            directions.append(_embed(n, p.block(i), p.block(i), Ji.T ** d))
            blocks.append((i, i))
    for i in range(1, p.k):
        # traceless combinations of the block identities
        first, second = p.block(i), p.block(i + 1)
        E = _embed(n, first, first, eye(len(first)) / len(first)) - _embed(n, second, second, eye(len(second)) / len(second))
        directions.append(E)
        blocks.append((i, i))
    for i in range(1, p.k + 1):
        for j in range(1, p.k + 1):
            if i == j:
                continue
            for Y in _off_diagonal_centralizer(jordan_block(p.parts[i - 1]), jordan_block(p.parts[j - 1])):
                directions.append(_embed(n, p.block(i), p.block(j), Y))
                blocks.append((i, j))

    commutators = []
    for a in range(n):
        for b in range(n):
            E = zeros(n, n)
            E[a, b] = 1
            commutators.append(list(E * pair.A - pair.A * E))
    tangent_dim = Matrix(commutators).rank()
    combined = Matrix(commutators + [list(E) for E in directions]).rank() if directions else tangent_dim
    data = SliceData(p, pair.A, directions, blocks, tangent_dim, combined == n * n - 1)
    Logger.log(f"slice for ({p}): dim Nbar {data.dim}, dim T {tangent_dim}, fiber dim {data.fiber_dimension}", "DEBUG", "GEOM")
    return data


@lru_cache(maxsize=None)
def _block_system(m: int) -> Tuple[Callable, Callable]:
    """Char-poly coefficients of J_m + sum_d y_d (J_m^T)^d and their Jacobian, compiled"""
    ys = symbols(f"y0:{m}")
    J = jordan_block(m)
    M = J + sum((ys[d] * J.T ** d for d in range(m)), zeros(m, m))
    x = symbols("x")
    coeffs = Matrix(M.charpoly(x).all_coeffs()[1:])
    return lambdify([ys], list(coeffs), "numpy"), lambdify([ys], coeffs.jacobian(ys).tolist(), "numpy")


def _newton(residual: Callable, jacobian: Callable, start: np.ndarray, scale: float) -> Tuple[np.ndarray, float]:
    y = start.astype(complex)
    r = np.asarray(residual(y), dtype=complex)
    norm = np.linalg.norm(r)
    for _ in range(CFG.newton_max_iter):
        if norm <= CFG.newton_tol * scale:
            return y, norm
        try:
            step = np.linalg.solve(np.asarray(jacobian(y), dtype=complex), -r)
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(f"singular Newton Jacobian at residual {norm:.3e}") from e
        alpha = 1.0
        while True:
            candidate = y + alpha * step
            r_new = np.asarray(residual(candidate), dtype=complex)
            if np.linalg.norm(r_new) < norm:
                break
            alpha /= 2
            if alpha < 1e-8:
                raise ConvergenceError(f"Newton line search stalled at residual {norm:.3e}")
        y, r, norm = candidate, r_new, np.linalg.norm(r_new)
    if norm <= CFG.newton_tol * scale:
        return y, norm
    raise ConvergenceError(f"Newton did not converge: residual {norm:.3e} after {CFG.newton_max_iter} iterations")


def _solve_block(m: int, eigenvalues: np.ndarray) -> Tuple[np.ndarray, float]:
    """Unique J_m + sum_d y_d (J_m^T)^d with the given spectrum"""
    coeffs, jac = _block_system(m)
    target = np.poly(eigenvalues)[1:]
    start = np.zeros(m, dtype=complex)
    start[0] = np.mean(eigenvalues)
    scale = max(1.0, np.abs(target).max(initial=0.0))
    y, residual = _newton(lambda y: np.asarray(coeffs(y), dtype=complex) - target, jac, start, scale)
    J = np.array(jordan_block(m).tolist(), dtype=complex)
    block = J + sum(y[d] * np.linalg.matrix_power(J.T, d) for d in range(m))
    return block, residual


@dataclass
class SliceFunctions:
    """Compiled char-poly coefficients c_2..c_n on A + sum t_a E_a, with derivatives"""

    values: Callable
    jacobian: Callable
    hessians: Callable


def _slice_functions(data: SliceData) -> SliceFunctions:
    ts = symbols(f"t0:{data.dim}")
    X = data.A + sum((ts[a] * E for a, E in enumerate(data.directions)), zeros(data.A.rows, data.A.cols))
    x = symbols("x")
    coeffs = Matrix(X.charpoly(x).all_coeffs()[2:])
    jac = coeffs.jacobian(ts)
    hessians = [[[c.diff(ta).diff(tb) for tb in ts] for ta in ts] for c in coeffs]
    return SliceFunctions(
        lambdify([ts], list(coeffs), "numpy"),
        lambdify([ts], jac.tolist(), "numpy"),
        lambdify([ts], hessians, "numpy"),
    )


@dataclass
class CriticalPoint:
    beta: BetaMap
    matrix: np.ndarray
    value: complex
    predicted: Optional[complex]
    newton_residual: float
    lagrange_residual: float
    hessian_min_sv: float
    hessian_max_sv: float

    @property
    def morse(self) -> bool:
        if self.hessian_max_sv == 0.0 and self.hessian_min_sv == 0.0:
            return True
        return self.hessian_min_sv > CFG.hessian_rel_tol * self.hessian_max_sv


def _hessian_singular_values(fns: Optional[SliceFunctions], t: np.ndarray, gradient_xi: np.ndarray) -> Tuple[float, float, float]:
    if fns is None:
        return 0.0, 0.0, 0.0
    jac = np.asarray(fns.jacobian(t), dtype=complex).reshape(-1, len(t))
    multipliers, *_ = np.linalg.lstsq(jac.T, gradient_xi, rcond=None)
    lagrange = float(np.linalg.norm(jac.T @ multipliers - gradient_xi) / max(1.0, np.linalg.norm(gradient_xi)))
    tangent = null_space(jac)
    if tangent.shape[1] == 0:
        return lagrange, 0.0, 0.0
    hessians = np.asarray(fns.hessians(t), dtype=complex).reshape(jac.shape[0], len(t), len(t))
    # xi is linear, so the Lagrangian Hessian is -sum mu_j Hess c_j
    H = -np.tensordot(multipliers, hessians, axes=1)
    restricted = tangent.T @ H @ tangent
    sv = np.linalg.svd(restricted, compute_uv=False)
    return lagrange, float(sv.min()), float(sv.max())


def slice_and_critical_points_I(pair: ConormalPair, lambdas: Sequence, tau: float = None) -> List[CriticalPoint]:
    """
    Critical points C_beta of xi = tr(B .) on the Milnor fiber of the slice:
    block i of C_beta is the unique J + sum y_d (J^T)^d with spectrum tau * beta^-1(i).
    """
    tau = CFG.slice_tau if tau is None else tau
    p = pair.partition
    lam = np.asarray([complex(x) for x in lambdas])
    if p is None or len(lam) != p.n:
        raise GeometryError(f"need {pair.size} eigenvalues lambda")
    if abs(lam.sum()) > CFG.exact_tol * max(1.0, np.abs(lam).max()):
        raise GeometryError("lambdas must sum to zero")
    if len({complex(x) for x in lam}) != p.n:
        raise GeometryError("lambdas must be pairwise distinct")

    data = build_slice(pair)
    if not (data.dimension_check() and data.transversal):
        raise GeometryCheckError(f"slice for ({p}) is not transversal to the orbit")
    fns = _slice_functions(data) if data.dim else None
    E = data.direction_matrix() if data.dim else None
    A = np.array(pair.A.tolist(), dtype=complex)
    B = np.array(pair.B.tolist(), dtype=complex)
    semisimple = all(c == 0 for coeffs in pair.poly_coeffs for c in coeffs)
    gradient_xi = np.array([np.trace(B @ np.array(D.tolist(), dtype=complex)) for D in data.directions])

    points = []
    for beta in enumerate_beta(p):
        C = np.zeros((p.n, p.n), dtype=complex)
        residual = 0.0
        for i in range(1, p.k + 1):
            letters = p.block(i)
            block, res = _solve_block(len(letters), tau * lam[[a - 1 for a in beta.fiber(i)]])
            lo = letters[0] - 1
            C[lo:lo + len(letters), lo:lo + len(letters)] = block
            residual = max(residual, res)
        t = np.linalg.lstsq(E, (C - A).reshape(-1), rcond=None)[0] if data.dim else np.zeros(0)
        lagrange, smin, smax = _hessian_singular_values(fns, t, gradient_xi)
        value = complex(np.trace(B @ C))
        predicted = None
        if semisimple:
            predicted = tau * sum(lam[a - 1] * complex(pair.us[beta(a) - 1]) for a in range(1, p.n + 1))
        points.append(CriticalPoint(beta, C, value, predicted, float(residual), lagrange, smin, smax))

    separation = 1e-6 * abs(tau)
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            if np.abs(points[a].matrix - points[b].matrix).max() <= separation:
                raise GeometryCheckError(f"critical points {points[a].beta} and {points[b].beta} coincide")
    if len(points) != multinomial_dim(p):
        raise GeometryCheckError(f"found {len(points)} critical points, expected {multinomial_dim(p)}")
    Logger.log(f"{len(points)} critical points for ({p}), tau = {tau}", "DEBUG", "GEOM")
    return points


__all__ = [
    'MatrixLike', 'jordan_block', 'antidiagonal', 'standard_symplectic', 'polynomial_of',
    'ConormalPair', 'in_declared_space', 'realize_conormal', 'sample_conormal', 'is_conormal',
    'faddeev_leverrier', 'charpoly_coefficients', 'quotient_map_f', 'jordan_partition',
    'differential_rank', 'EigenspaceCheck', 'NormalFormReport', 'verify_normal_form',
    'SliceData', 'build_slice', 'SliceFunctions', 'CriticalPoint', 'slice_and_critical_points_I',
]
