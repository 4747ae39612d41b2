"""K-means over effective symbols on the complex plane.

Centroids are seeded with the farthest-point rule (first pick random, each
next pick maximizes the distance to all centroids chosen so far), refined
with Lloyd iterations, and each final cluster contributes the member whose
summed distance to the other centroids is largest. All distances are
Euclidean (complex modulus); all argmin/argmax ties resolve to the lowest
index so results are reproducible.
"""

import json
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .constellation import EffectiveSymbol, points_of


@dataclass(frozen=True)
class ClusterState:
    """Centroids, point-to-cluster assignment and iteration counter."""

    centroids: np.ndarray
    assignment: np.ndarray
    min_dists: np.ndarray
    iteration: int = 0


@dataclass(frozen=True)
class SelectedConstellation:
    """One representative symbol per cluster, in cluster order."""

    members: List[EffectiveSymbol]
    source_clusters: np.ndarray


def _distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """|points - centroids| as an (n_points, n_centroids) matrix."""
    return np.abs(points[:, None] - centroids[None, :])


def init_centroids(
    points: Sequence[complex],
    n_clusters: int,
    rng: np.random.Generator,
    first_index: Optional[int] = None,
) -> ClusterState:
    """Farthest-point seeding of ``n_clusters`` centroids.

    ``first_index`` overrides the random choice of the first centroid
    (used by tests and restarts that want a deterministic start).
    """
    points = np.asarray(points, dtype=complex)
    if n_clusters > np.unique(points).size:
        raise ValueError(
            f"cannot place {n_clusters} distinct centroids on "
            f"{np.unique(points).size} distinct points"
        )
    first = int(rng.integers(len(points))) if first_index is None else int(first_index)
    centroids = [points[first]]
    min_dists = np.abs(points - points[first])
    for _ in range(n_clusters - 1):
        nxt = int(np.argmax(min_dists))
        centroids.append(points[nxt])
        min_dists = np.minimum(min_dists, np.abs(points - points[nxt]))
    centroids = np.array(centroids, dtype=complex)
    assignment = np.argmin(_distances(points, centroids), axis=1)
    return ClusterState(
        centroids=centroids, assignment=assignment, min_dists=min_dists, iteration=0
    )


def _repair_empty(
    assignment: np.ndarray, centroids: np.ndarray, points: np.ndarray
) -> np.ndarray:
    """Reseat empty clusters on the points farthest from their assigned centroid.

    Singleton clusters are never robbed, so each repair strictly reduces
    the number of empty clusters.
    """
    n = len(centroids)
    counts = np.bincount(assignment, minlength=n)
    while True:
        empties = np.flatnonzero(counts == 0)
        if empties.size == 0:
            return assignment
        dists = np.abs(points - centroids[assignment])
        dists[counts[assignment] <= 1] = -np.inf
        farthest = int(np.argmax(dists))
        counts[assignment[farthest]] -= 1
        assignment[farthest] = int(empties[0])
        counts[empties[0]] += 1


def lloyd_iterate(
    state: ClusterState,
    points: Sequence[complex],
    max_iters: int,
    trace: Optional[list] = None,
) -> ClusterState:
    """Alternate nearest-centroid assignment and mean updates.

    Stops at a joint fixed point of assignment and centroids, or after
    ``max_iters`` additional iterations. If a cluster empties it is
    reseeded with the point farthest from its assigned centroid before the
    mean update, so every cluster stays populated. ``trace`` (if given)
    collects the centroid vector after each iteration.
    """
    points = np.asarray(points, dtype=complex)
    centroids = state.centroids.copy()
    prev_assignment = state.assignment.copy()
    iteration = state.iteration
    for _ in range(max_iters):
        assignment = np.argmin(_distances(points, centroids), axis=1)
        assignment = _repair_empty(assignment, centroids, points)
        sums = np.bincount(assignment, weights=points.real, minlength=len(centroids))
        sums = sums + 1j * np.bincount(
            assignment, weights=points.imag, minlength=len(centroids)
        )
        counts = np.bincount(assignment, minlength=len(centroids))
        new_centroids = sums / counts
        iteration += 1
        if trace is not None:
            trace.append(new_centroids.copy())
        converged = np.array_equal(assignment, prev_assignment) and np.array_equal(
            new_centroids, centroids
        )
        centroids, prev_assignment = new_centroids, assignment
        if converged:
            break
    return ClusterState(
        centroids=centroids,
        assignment=prev_assignment,
        min_dists=np.min(_distances(points, centroids), axis=1),
        iteration=iteration,
    )


def write_trace_json(path, trace: Sequence[np.ndarray]) -> None:
    """Dump per-iteration centroids (as [re, im] pairs) for debugging/plots."""
    data = {
        "iterations": [
            [[float(c.real), float(c.imag)] for c in centroids] for centroids in trace
        ]
    }
    with open(path, "w") as fh:
        json.dump(data, fh)


def within_cluster_ss(state: ClusterState, points: Sequence[complex]) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    points = np.asarray(points, dtype=complex)
    return float(np.sum(np.abs(points - state.centroids[state.assignment]) ** 2))


def select_constellation(
    state: ClusterState, symbols: Sequence[EffectiveSymbol]
) -> SelectedConstellation:
    """Pick, per cluster, the member with maximal summed distance to the
    other centroids; ties resolve to the lowest pattern id."""
    points = points_of(symbols)
    n_clusters = len(state.centroids)
    ids = np.array([s.pattern_id for s in symbols])
    members: List[EffectiveSymbol] = []
    for l in range(n_clusters):
        in_cluster = np.flatnonzero(state.assignment == l)
        if in_cluster.size == 0:
            raise ValueError(f"cluster {l} is empty")
        others = np.delete(np.arange(n_clusters), l)
        sum_dists = np.abs(
            points[in_cluster][:, None] - state.centroids[others][None, :]
        ).sum(axis=1)
        best = np.flatnonzero(sum_dists == sum_dists.max())
        pick = in_cluster[best[np.argmin(ids[in_cluster][best])]]
        members.append(symbols[int(pick)])
    return SelectedConstellation(
        members=members, source_clusters=np.arange(n_clusters)
    )


def cluster_points(
    points: Sequence[complex],
    n_clusters: int,
    rng: np.random.Generator,
    max_iters: int,
    restarts: int = 1,
) -> ClusterState:
    """Seed and run K-means, keeping the restart with the lowest
    within-cluster sum of squares."""
    points = np.asarray(points, dtype=complex)
    best: Optional[ClusterState] = None
    best_obj = np.inf
    for _ in range(max(1, restarts)):
        state = lloyd_iterate(init_centroids(points, n_clusters, rng), points, max_iters)
        obj = within_cluster_ss(state, points)
        if obj < best_obj:
            best, best_obj = state, obj
    assert best is not None
    return best
