"""
Numerical monodromy: follow the critical values W_beta along braid paths
of the lambdas (family) or of the u's (microlocal) and read off the label
permutation they induce
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from braid import BraidWord, ColoredBraid, strand_permutation
from combinatorics import BetaMap, Partition, enumerate_beta, relabel_blocks, sigma_action_on_beta
from config import CFG
from exceptions import CollisionError, SizeMismatchError
from linalg import is_signed_permutation, to_rows
from logger import Logger
from morse_modules import family_monodromy_rep


@dataclass
class TrackerProblem:
    """Generic configuration of lambdas and u's with separated critical values"""

    partition: Partition
    lambdas: np.ndarray
    us: np.ndarray
    tau: complex = field(default_factory=lambda: CFG.tracker_tau)
    steps: int = field(default_factory=lambda: CFG.tracker_steps)
    min_separation: float = field(default_factory=lambda: CFG.min_separation)

    def __post_init__(self):
        self.lambdas = np.asarray(self.lambdas, dtype=complex)
        self.us = np.asarray(self.us, dtype=complex)
        p = self.partition
        if self.lambdas.shape != (p.n,):
            raise SizeMismatchError(f"need {p.n} lambdas, got {self.lambdas.size}")
        if self.us.shape != (p.k,):
            raise SizeMismatchError(f"need {p.k} u's, got {self.us.size}")
        if self.tau == 0:
            raise CollisionError("tau must be nonzero")
        if _min_gap(self.lambdas) <= 0 or _min_gap(self.us) <= 0:
            raise CollisionError("lambdas and u's must be pairwise distinct")
        gap = _min_gap(self.values())
        if gap < self.min_separation:
            raise CollisionError(f"critical values only {gap:.3e} apart, need {self.min_separation:.1e}")

    @property
    def betas(self) -> List[BetaMap]:
        return enumerate_beta(self.partition)

    def values(self, lambdas: Optional[np.ndarray] = None, us: Optional[np.ndarray] = None) -> np.ndarray:
        """W_beta = tau * sum_a lambda_a u_{beta(a)}, in enumerate_beta order"""
        lam = self.lambdas if lambdas is None else lambdas
        u = self.us if us is None else us
        index = np.array([[x - 1 for x in b.assignment] for b in self.betas])
        return self.tau * (u[index] * lam[None, :]).sum(axis=1)


def _min_gap(values: np.ndarray) -> float:
    if len(values) < 2:
        return float("inf")
    diff = np.abs(values[:, None] - values[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def critical_values(prob: TrackerProblem) -> Dict[BetaMap, complex]:
    return {b: complex(w) for b, w in zip(prob.betas, prob.values())}


def _separated(p: Partition, lambdas: np.ndarray, us: np.ndarray, tau: complex) -> Optional[TrackerProblem]:
    try:
        prob = TrackerProblem(p, lambdas, us, tau)
    except CollisionError:
        return None
    values = prob.values()
    if _min_gap(values) > CFG.start_separation * max(1.0, np.abs(values).max()):
        return prob
    return None


def default_problem(p: Partition, seed: Optional[int] = None, tau: Optional[complex] = None) -> TrackerProblem:
    """
    Real sorted lambdas (summing to 0) and u's, resampled until the start
    values are well separated. When the real draw crowds the values on the
    line, lambdas and u's are perturbed off the real axis.
    """
    rng = np.random.default_rng(CFG.seed if seed is None else seed)
    tau = CFG.tracker_tau if tau is None else tau
    for _ in range(CFG.sample_attempts):
        lambdas = np.sort(rng.normal(size=p.n))
        lambdas -= lambdas.mean()
        us = np.sort(rng.normal(size=p.k) * 2.0)
        if _min_gap(lambdas) < 0.1 or _min_gap(us) < 0.1:
            continue
        prob = _separated(p, lambdas, us, tau)
        if prob is not None:
            return prob
        lambdas = lambdas + 0.5j * rng.normal(size=p.n)
        lambdas -= lambdas.mean()
        us = us + 1.0j * rng.normal(size=p.k)
        prob = _separated(p, lambdas, us, tau)
        if prob is not None:
            Logger.log(f"perturbed configuration off the real axis for ({p})", "DEBUG", "TRACK")
            return prob
    Logger.log(f"no separated configuration for ({p})", "WARNING", "TRACK")
    raise CollisionError(f"no well separated configuration for ({p}) after {CFG.sample_attempts} attempts")


@dataclass
class TrackResult:
    permutation: List[int]
    predicted: Optional[List[int]]
    verdict: str
    min_gap_observed: float
    steps_used: int
    refinements: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict in ("match", "not_comparable")


@dataclass
class _PathState:
    tracked: np.ndarray
    min_gap: float = float("inf")
    steps_used: int = 0
    refinements: int = 0


def _match(current: np.ndarray, snapshot: np.ndarray, safety: float) -> Optional[np.ndarray]:
    """Nearest-value assignment, or None when it is ambiguous"""
    if len(current) == 1:
        return np.array([0])
    dist = np.abs(current[:, None] - snapshot[None, :])
    order = np.argsort(dist, axis=1)
    nearest = order[:, 0]
    rows = np.arange(len(current))
    if np.any(dist[rows, order[:, 1]] <= safety * dist[rows, nearest]):
        return None
    if len(set(nearest.tolist())) != len(nearest):
        return None
    return nearest


def _follow(state: _PathState, snapshot_at: Callable[[float], np.ndarray], steps: int, min_separation: float):
    """Carry the tracked values from s = 0 to s = 1 through unlabeled snapshots"""
    s, h = 0.0, 1.0 / steps
    refined = 0
    while s < 1.0:
        target = min(1.0, s + h)
        snapshot = np.sort_complex(snapshot_at(target))
        gap = _min_gap(snapshot)
        state.min_gap = min(state.min_gap, gap)
        if gap < min_separation:
            raise CollisionError(f"critical values came within {gap:.3e} of each other")
        matches = _match(state.tracked, snapshot, CFG.tracker_safety)
        if matches is None:
            refined += 1
            state.refinements += 1
            if refined > CFG.tracker_max_refine:
                raise CollisionError(f"could not resolve critical values after {CFG.tracker_max_refine} refinements")
            h /= 2
            Logger.log(f"refining step to {h:.3e} at s = {s:.3f}", "DEBUG", "TRACK")
            continue
        state.tracked = snapshot[matches]
        state.steps_used += 1
        s = target
        refined = 0
        h = min(1.0 / steps, 2 * h)


def _run_exchanges(
    points: np.ndarray, letters: Sequence[Tuple[int, int]], evaluate: Callable[[np.ndarray], np.ndarray],
    steps: int, min_separation: float,
) -> _PathState:
    """
    Letters are traversed right to left; sigma_i^{+-1} moves the points in
    slots i, i+1 by a counterclockwise (clockwise) half-turn about their midpoint.
    """
    points = points.copy()
    slots = list(range(len(points)))
    state = _PathState(evaluate(points))
    for i, sign in reversed(list(letters)):
        a, b = slots[i - 1], slots[i]
        center = (points[a] + points[b]) / 2
        da, db = points[a] - center, points[b] - center

        def moved(s: float, a=a, b=b, center=center, da=da, db=db) -> np.ndarray:
            turn = np.exp(1j * np.pi * s * sign)
            current = points.copy()
            current[a] = center + da * turn
            current[b] = center + db * turn
            return current

        _follow(state, lambda s: evaluate(moved(s)), steps, min_separation)
        points[a], points[b] = points[b], points[a]
        slots[i - 1], slots[i] = b, a
    return state


def _identify(start: np.ndarray, end: np.ndarray) -> List[int]:
    """Index of the start value each tracked end value landed on"""
    dist = np.abs(end[:, None] - start[None, :])
    labels = dist.argmin(axis=1).tolist()
    if len(set(labels)) != len(labels):
        raise CollisionError("tracked values did not return to distinct start values")
    return labels


def _verdict(permutation: List[int], predicted: Optional[List[int]]) -> str:
    if predicted is None:
        return "not_comparable"
    return "match" if permutation == predicted else "mismatch"


def track_family_monodromy(prob: TrackerProblem, w: BraidWord) -> TrackResult:
    """Move the lambdas along w; compare with beta -> beta o pi(w)^-1"""
    p = prob.partition
    if w.strands != p.n:
        raise SizeMismatchError(f"family braid needs {p.n} strands, got {w.strands}")
    start = prob.values()
    state = _run_exchanges(prob.lambdas, w.letters, lambda lam: prob.values(lambdas=lam), prob.steps, prob.min_separation)
    permutation = _identify(start, state.tracked)
    betas = prob.betas
    index = {b: j for j, b in enumerate(betas)}
    pi = strand_permutation(w)
    predicted = [index[sigma_action_on_beta(pi, b)] for b in betas]
    result = TrackResult(permutation, predicted, _verdict(permutation, predicted), state.min_gap, state.steps_used, state.refinements)
    Logger.log(f"family word '{w}' on ({p}): {result.verdict}, {state.steps_used} steps", "DEBUG", "TRACK")
    return result


def _signed_permutation_columns(matrix) -> List[int]:
    rows = to_rows(matrix)
    return [next(i for i, row in enumerate(rows) if row[j] != 0) for j in range(len(rows))]


def track_microlocal_monodromy(prob: TrackerProblem, c: ColoredBraid, case_tag: str = "I") -> TrackResult:
    """
    Move the u's along c; compare with the relabeling beta -> pi(c) o beta
    (cases I/III) or with the permutation part of the case II matrix when it is
    a signed permutation.
    """
    p = prob.partition
    if c.partition != p:
        raise SizeMismatchError(f"colored braid for ({c.partition}) used with ({p})")
    c.check()
    start = prob.values()
    state = _run_exchanges(prob.us, c.word.letters, lambda u: prob.values(us=u), prob.steps, prob.min_separation)
    permutation = _identify(start, state.tracked)
    betas = prob.betas
    if case_tag == "II":
        matrix = family_monodromy_rep("II", p).microlocal(c)
        predicted = _signed_permutation_columns(matrix) if is_signed_permutation(matrix) else None
    else:
        index = {b: j for j, b in enumerate(betas)}
        g = strand_permutation(c.word)
        predicted = [index[relabel_blocks(g, b)] for b in betas]
    result = TrackResult(permutation, predicted, _verdict(permutation, predicted), state.min_gap, state.steps_used, state.refinements)
    Logger.log(f"microlocal word '{c}' on ({p}), case {case_tag}: {result.verdict}", "DEBUG", "TRACK")
    return result


def compose_label_maps(outer: Sequence[int], inner: Sequence[int]) -> List[int]:
    """Label map of the word outer * inner from the maps of its two factors"""
    return [outer[j] for j in inner]


__all__ = [
    'TrackerProblem', 'critical_values', 'default_problem', 'TrackResult',
    'track_family_monodromy', 'track_microlocal_monodromy', 'compose_label_maps',
]
