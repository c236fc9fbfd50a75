"""Brute-force reference implementations and seeded graph generators.

Nothing here touches the CSR or the compiled kernels: supports come from
plain Python set intersections over full symmetric adjacency, so agreement
with the truss engine is independent evidence. Intended for small graphs.
"""

import logging
from collections.abc import Iterable

import numpy as np

from ..models.graph import EdgeList
from .graph_io import EmptyGraphError, canonicalize
from .truss_engine import InvalidParameterError

logger = logging.getLogger(__name__)

Edge = tuple[int, int]

RESAMPLE_ATTEMPTS = 8


class AdjacencySets:
    """Full undirected neighbour sets keyed by vertex id."""

    def __init__(self, edges: Iterable[Edge]):
        self.neighbours: dict[int, set[int]] = {}
        for u, v in edges:
            if u == v:
                continue
            self.neighbours.setdefault(u, set()).add(v)
            self.neighbours.setdefault(v, set()).add(u)

    @classmethod
    def from_edge_list(cls, edge_list: EdgeList) -> "AdjacencySets":
        return cls(edge_list.edge_tuples())

    def __getitem__(self, vertex: int) -> set[int]:
        return self.neighbours.get(vertex, set())

    def sorted_neighbours(self, vertex: int) -> list[int]:
        return sorted(self[vertex])

    def common(self, u: int, v: int) -> set[int]:
        return self[u] & self[v]


def _edge_supports(edges: set[Edge]) -> dict[Edge, int]:
    adjacency = AdjacencySets(edges)
    return {(u, v): len(adjacency.common(u, v)) for u, v in edges}


def oracle_edge_supports(edge_list: EdgeList) -> dict[Edge, int]:
    """Triangle count of every edge, by intersecting full neighbour sets."""
    return _edge_supports(set(edge_list.edge_tuples()))


def oracle_ktruss(edge_list: EdgeList, k: int) -> set[Edge]:
    """Maximal k-truss edge set by batch peeling.

    Each round recomputes every support on the current subgraph and drops all
    edges below ``k - 2`` at once, until a round drops nothing.

    Raises:
        InvalidParameterError: If ``k < 2``
    """
    if k < 2:
        raise InvalidParameterError(f"k must be at least 2, got {k}")

    threshold = k - 2
    current = set(edge_list.edge_tuples())
    while current:
        supports = _edge_supports(current)
        doomed = {edge for edge, support in supports.items() if support < threshold}
        if not doomed:
            break
        current -= doomed
    return current


def oracle_kmax(edge_list: EdgeList) -> int:
    """Largest k with a non-empty k-truss, by scanning k upward from 2."""
    k = 2
    while oracle_ktruss(edge_list, k + 1):
        k += 1
    return k


def oracle_triangle_count(edge_list: EdgeList) -> int:
    """Total triangles; each one is seen once per edge, hence the division."""
    return sum(oracle_edge_supports(edge_list).values()) // 3


def random_graph(n: int, edge_probability: float, seed: int) -> EdgeList:
    """Seeded Erdos-Renyi G(n, p) sample, canonicalized.

    Each of the ``n * (n - 1) / 2`` vertex pairs is kept independently with
    ``edge_probability``. Vertices are labelled ``0..n-1`` before
    canonicalization, so isolated vertices disappear from the result. A draw
    with no edges is retried from the same generator a few times.

    Raises:
        InvalidParameterError: If ``n < 2`` or the probability is outside [0, 1]
        EmptyGraphError: If every attempt drew zero edges
    """
    if n < 2:
        raise InvalidParameterError(f"random graph needs n >= 2, got {n}")
    if not 0.0 <= edge_probability <= 1.0:
        raise InvalidParameterError(
            f"edge probability must lie in [0, 1], got {edge_probability}"
        )

    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    for attempt in range(RESAMPLE_ATTEMPTS):
        keep = rng.random(rows.shape[0]) < edge_probability
        if keep.any():
            if attempt:
                logger.debug(
                    "G(%d, %g) resampled %d times", n, edge_probability, attempt
                )
            return canonicalize(np.column_stack((rows[keep], cols[keep])))
    raise EmptyGraphError(
        f"G({n}, {edge_probability}) drew no edges in {RESAMPLE_ATTEMPTS} attempts"
    )


def skewed_graph(
    hub_degree: int,
    background_vertices: int,
    background_edges: int,
    seed: int,
) -> EdgeList:
    """One hub joined to ``hub_degree`` vertices over a uniform sparse background.

    The hub is label 0 and its neighbours are ``1..hub_degree``; background
    edges are uniform pairs among ``1..background_vertices``, so the hub row
    dominates the work of a per-row task split.

    Raises:
        InvalidParameterError: If the sizes are inconsistent
    """
    if hub_degree < 1 or background_edges < 0:
        raise InvalidParameterError("hub_degree must be >= 1 and background_edges >= 0")
    if background_vertices < max(hub_degree, 2):
        raise InvalidParameterError(
            f"background_vertices ({background_vertices}) must be >= hub_degree "
            f"({hub_degree}) and >= 2"
        )

    rng = np.random.default_rng(seed)
    leaves = np.arange(1, hub_degree + 1, dtype=np.int64)
    hub = np.column_stack((np.zeros_like(leaves), leaves))
    background = rng.integers(1, background_vertices + 1, size=(background_edges, 2))
    return canonicalize(np.concatenate((hub, background.astype(np.int64))))
