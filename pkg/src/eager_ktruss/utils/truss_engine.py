"""K-truss fixpoint driver: support computation, pruning and Kmax search.

Each round zeroes the supports, recomputes them on the current graph with the
selected strategy, then prunes every edge whose support is below ``k - 2``.
The loop stops after the first round that removes nothing, so the supports
of that last pass describe the returned subgraph exactly.
"""

import logging
from collections.abc import Callable

import numpy as np

from ..models.graph import ZeroTerminatedCsr
from ..models.truss import Strategy, SupportArray, SupportWidth, TrussResult
from . import kernels
from .graph_io import count_live_edges, extract_edges

logger = logging.getLogger(__name__)

RoundObserver = Callable[[ZeroTerminatedCsr, int], None]


class InvalidParameterError(ValueError):
    """Exception raised for out-of-range truss parameters."""

    pass


def resolve_workers(workers: int | None) -> int:
    """Return the worker count to use, capped at the hardware parallelism.

    Requests above the thread pool size are clamped with a warning; each
    worker owns a full row of private counters.

    Raises:
        InvalidParameterError: If ``workers`` is below 1
    """
    pool = kernels.hardware_workers()
    if workers is None:
        return pool
    if workers < 1:
        raise InvalidParameterError(f"worker count must be at least 1, got {workers}")
    if workers > pool:
        logger.warning(
            "worker count %d exceeds the thread pool size %d; using %d",
            workers,
            pool,
            pool,
        )
        return pool
    return int(workers)


def _check_k(k: int) -> None:
    if k < 2:
        raise InvalidParameterError(f"k must be at least 2, got {k}")


def _check_supports(csr: ZeroTerminatedCsr, supports: SupportArray) -> None:
    if len(supports) != csr.total_slots:
        raise InvalidParameterError(
            f"support array has {len(supports)} slots, CSR has {csr.total_slots}"
        )


def intersect_tails(
    csr: ZeroTerminatedCsr,
    pivot_slot: int,
    predecessor_vertex: int,
    supports: SupportArray,
) -> int:
    """Intersect the row tail after ``pivot_slot`` with ``predecessor_vertex``'s row.

    The tail and row slots of every common neighbour are incremented in
    ``supports``. The returned count belongs to the pivot slot and is left
    for the caller to add.

    Raises:
        InvalidParameterError: If ``pivot_slot`` does not hold ``predecessor_vertex``
    """
    _check_supports(csr, supports)
    if not 0 <= pivot_slot < csr.total_slots:
        raise InvalidParameterError(f"pivot slot {pivot_slot} is out of range")
    if predecessor_vertex == 0 or int(csr.col_idx[pivot_slot]) != predecessor_vertex:
        raise InvalidParameterError(
            f"slot {pivot_slot} does not hold vertex {predecessor_vertex}"
        )

    scratch = np.zeros((1, csr.total_slots), dtype=np.uint32)
    hits = kernels.intersect_tails_kernel(
        csr.row_ptr, csr.col_idx, pivot_slot, csr.col_idx[pivot_slot], scratch[0]
    )
    supports.accumulate(scratch)
    return int(hits)


def worker_scratch(csr: ZeroTerminatedCsr, workers: int) -> np.ndarray:
    """Allocate the ``(workers, total_slots)`` private counter rows."""
    return np.zeros((workers, csr.total_slots), dtype=np.uint32)


def compute_supports(
    csr: ZeroTerminatedCsr,
    supports: SupportArray,
    strategy: Strategy = Strategy.FINE,
    workers: int | None = None,
    scratch: np.ndarray | None = None,
) -> int:
    """Fill ``supports`` with per-edge triangle counts of the current graph.

    Args:
        csr: Zero-terminated CSR (read-only here)
        supports: Zeroed counters sized to the CSR
        strategy: Serial, coarse (per row) or fine (per slot) tasks
        workers: Parallel worker count; ignored by the serial strategy
        scratch: Reusable private rows from :func:`worker_scratch`; zeroed here

    Returns:
        Total number of triangles in the graph

    Raises:
        InvalidParameterError: If ``scratch`` does not match the worker count
        SupportOverflowError: If a count exceeds the support width
    """
    _check_supports(csr, supports)
    strategy = Strategy(strategy)
    count = 1 if strategy is Strategy.SERIAL else resolve_workers(workers)

    if scratch is None:
        partial = worker_scratch(csr, count)
    elif scratch.shape != (count, csr.total_slots):
        raise InvalidParameterError(
            f"scratch has shape {scratch.shape}, expected {(count, csr.total_slots)}"
        )
    else:
        partial = scratch
        partial.fill(0)

    if strategy is Strategy.SERIAL:
        triangles = kernels.serial_supports_kernel(
            csr.row_ptr, csr.col_idx, csr.num_vertices, partial
        )
    else:
        kernels.apply_worker_count(count)
        if strategy is Strategy.COARSE:
            triangles = kernels.coarse_supports_kernel(
                csr.row_ptr, csr.col_idx, csr.num_vertices, partial
            )
        else:
            triangles = kernels.fine_supports_kernel(csr.row_ptr, csr.col_idx, partial)

    supports.accumulate(partial)
    return int(triangles)


def prune_edges(
    csr: ZeroTerminatedCsr,
    supports: SupportArray,
    k: int,
    workers: int | None = None,
) -> int:
    """Drop every edge with support below ``k - 2`` and compact the rows.

    Supports are not reset; the next round must call :func:`reset_supports`.

    Returns:
        Number of edges removed

    Raises:
        InvalidParameterError: If ``k < 2``
    """
    _check_k(k)
    _check_supports(csr, supports)
    kernels.apply_worker_count(resolve_workers(workers))
    removed = kernels.prune_rows_kernel(
        csr.row_ptr, csr.col_idx, supports.counts, csr.num_vertices, k - 2
    )
    return int(removed)


def reset_supports(supports: SupportArray) -> None:
    """Zero every counter."""
    supports.reset()


def run_fixpoint(
    csr: ZeroTerminatedCsr,
    supports: SupportArray,
    k: int,
    strategy: Strategy = Strategy.FINE,
    workers: int | None = None,
    observer: RoundObserver | None = None,
) -> tuple[list[int], int]:
    """Run support/prune rounds on ``csr`` in place until nothing is removed.

    Returns:
        Tuple of (removed count per round, triangles in the final pass)
    """
    _check_k(k)
    strategy = Strategy(strategy)
    count = 1 if strategy is Strategy.SERIAL else resolve_workers(workers)
    scratch = worker_scratch(csr, count)

    history: list[int] = []
    triangles = 0
    removed = -1
    while removed != 0:
        reset_supports(supports)
        triangles = compute_supports(csr, supports, strategy, count, scratch)
        removed = prune_edges(csr, supports, k, count)
        history.append(removed)
        logger.debug(
            "k=%d round %d: triangles=%d removed=%d",
            k,
            len(history),
            triangles,
            removed,
        )
        if observer is not None:
            observer(csr, len(history))
    return history, triangles


def ktruss(
    csr: ZeroTerminatedCsr,
    k: int,
    strategy: Strategy = Strategy.FINE,
    workers: int | None = None,
    support_width: SupportWidth = SupportWidth.U32,
    observer: RoundObserver | None = None,
) -> TrussResult:
    """Compute the maximal k-truss of ``csr`` without mutating it.

    Args:
        csr: Pristine zero-terminated CSR
        k: Truss parameter, at least 2
        strategy: Support computation strategy
        workers: Parallel worker count (None selects the hardware parallelism)
        support_width: Counter width; 16-bit raises on overflow
        observer: Optional callback invoked with the pruned CSR after every round

    Returns:
        TrussResult with surviving edges and the removal history
    """
    _check_k(k)
    work = csr.clone()
    supports = SupportArray(work.total_slots, support_width)
    history, triangles = run_fixpoint(work, supports, k, strategy, workers, observer)
    return TrussResult(
        k=k,
        edges=extract_edges(work, supports),
        iterations=len(history),
        removed_per_iteration=history,
        triangles=triangles,
    )


def kmax_search(
    csr: ZeroTerminatedCsr,
    strategy: Strategy = Strategy.FINE,
    workers: int | None = None,
    support_width: SupportWidth = SupportWidth.U32,
) -> tuple[int, TrussResult]:
    """Find the largest k whose k-truss is non-empty.

    One support pass on the full graph bounds the answer by max support + 2;
    the range ``[3, bound]`` is then binary searched, each probe running an
    independent :func:`ktruss` from the pristine graph.

    Raises:
        InvalidParameterError: If the graph has no edges
    """
    if count_live_edges(csr) == 0:
        raise InvalidParameterError("kmax search needs a non-empty graph")

    probe = SupportArray(csr.total_slots, support_width)
    compute_supports(csr, probe, strategy, workers)
    bound = int(probe.counts.max()) + 2

    if bound < 3:
        return 2, ktruss(csr, 2, strategy, workers, support_width)

    # Any triangle is itself a 3-truss, so the lower end is always non-empty.
    low, high = 3, bound
    best = ktruss(csr, low, strategy, workers, support_width)
    while low < high:
        mid = (low + high + 1) // 2
        result = ktruss(csr, mid, strategy, workers, support_width)
        if result.is_empty:
            high = mid - 1
        else:
            low, best = mid, result
    logger.debug("kmax=%d (bound %d)", low, bound)
    return low, best
