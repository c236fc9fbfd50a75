"""Timed benchmark harness for the truss fixpoint.

Each configuration gets one untimed warm-up run (which also triggers numba
compilation) followed by ``trials`` timed runs. Every run starts from a fresh
copy of the pristine CSR; the clock covers the support/prune loop only.
"""

import logging
import time
from collections.abc import Iterable, Sequence
from typing import Literal

import numpy as np

from ..models.bench import BenchRecord, SpeedupRow
from ..models.graph import ZeroTerminatedCsr
from ..models.truss import Strategy, SupportArray, SupportWidth, TrussResult
from .graph_io import count_live_edges
from .truss_engine import InvalidParameterError, kmax_search, ktruss, run_fixpoint

logger = logging.getLogger(__name__)

KMAX = "kmax"
KSpec = int | Literal["kmax"]

DEFAULT_TRIALS = 10
# Sub-tick runs can time at 0; records need mean_ms > 0 and print three
# decimals, so means are floored at the printed resolution.
MIN_MEAN_MS = 1e-3


class StrategyMismatchError(Exception):
    """Exception raised when strategies disagree on a truss."""

    def __init__(self, k: int, strategies: Sequence[Strategy], detail: str = ""):
        """Initialize StrategyMismatchError.

        Args:
            k: Truss parameter that was compared
            strategies: The two strategies whose outputs differ
            detail: First divergent edge, if known
        """
        names = " vs ".join(Strategy(s).value for s in strategies)
        message = f"strategies disagree at k={k}: {names}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.k = k
        self.strategies = list(strategies)


def resolve_k(
    csr: ZeroTerminatedCsr,
    k_spec: KSpec,
    strategy: Strategy = Strategy.FINE,
    workers: int | None = None,
    support_width: SupportWidth = SupportWidth.U32,
) -> int:
    """Turn a k argument into a literal k, searching for Kmax if asked."""
    if k_spec == KMAX:
        k, _ = kmax_search(csr, strategy, workers, support_width)
        return k
    if isinstance(k_spec, bool) or not isinstance(k_spec, int | np.integer):
        raise InvalidParameterError(f"k must be an integer or '{KMAX}', got {k_spec!r}")
    if k_spec < 2:
        raise InvalidParameterError(f"k must be at least 2, got {k_spec}")
    return int(k_spec)


def _time_fixpoint(
    csr: ZeroTerminatedCsr,
    k: int,
    strategy: Strategy,
    threads: int,
    support_width: SupportWidth,
) -> float:
    work = csr.clone()
    supports = SupportArray(work.total_slots, support_width)
    start = time.perf_counter()
    run_fixpoint(work, supports, k, strategy, threads)
    return (time.perf_counter() - start) * 1000.0


def run_bench(
    csr: ZeroTerminatedCsr,
    k_spec: KSpec,
    strategy: Strategy = Strategy.FINE,
    threads: int = 1,
    trials: int = DEFAULT_TRIALS,
    *,
    graph_name: str = "graph",
    num_edges: int | None = None,
    support_width: SupportWidth = SupportWidth.U32,
    warmup: bool = True,
) -> BenchRecord:
    """Time the truss fixpoint for one (k, strategy, threads) configuration.

    Args:
        csr: Pristine zero-terminated CSR (never mutated)
        k_spec: Literal k or :data:`KMAX`; Kmax is resolved untimed
        strategy: Support computation strategy
        threads: Worker count
        trials: Number of timed runs to average
        graph_name: Identifier written to the record
        num_edges: Original edge count for ME/s; defaults to the live count
        support_width: Support counter width
        warmup: Run one untimed fixpoint first

    Returns:
        BenchRecord with the mean wall time and ME/s

    Raises:
        InvalidParameterError: If ``threads`` or ``trials`` is below 1
    """
    if threads < 1:
        raise InvalidParameterError(f"thread count must be at least 1, got {threads}")
    if trials < 1:
        raise InvalidParameterError(f"trial count must be at least 1, got {trials}")

    strategy = Strategy(strategy)
    k = resolve_k(csr, k_spec, strategy, threads, support_width)
    edges = count_live_edges(csr) if num_edges is None else num_edges

    if warmup:
        _time_fixpoint(csr, k, strategy, threads, support_width)
    timings = [
        _time_fixpoint(csr, k, strategy, threads, support_width) for _ in range(trials)
    ]
    mean_ms = max(float(np.mean(timings)), MIN_MEAN_MS)

    record = BenchRecord.from_timing(
        graph_name=graph_name,
        num_vertices=csr.num_vertices,
        num_edges=edges,
        k=k,
        strategy=strategy,
        threads=threads,
        trials=trials,
        mean_ms=mean_ms,
    )
    logger.info(
        "%s k=%d %s threads=%d: %.3f ms, %.3f ME/s",
        graph_name,
        k,
        strategy.value,
        threads,
        record.mean_ms,
        record.me_per_s,
    )
    return record


def thread_sweep(
    csr: ZeroTerminatedCsr,
    k_spec: KSpec,
    strategy: Strategy,
    thread_counts: Iterable[int],
    trials: int = DEFAULT_TRIALS,
    **kwargs,
) -> list[BenchRecord]:
    """Run :func:`run_bench` for each thread count, ordered by thread count.

    Kmax is resolved once up front so every record carries the same k.
    """
    counts = sorted(thread_counts)
    if not counts:
        return []
    k = resolve_k(
        csr,
        k_spec,
        strategy,
        counts[-1],
        kwargs.get("support_width", SupportWidth.U32),
    )
    return [run_bench(csr, k, strategy, threads, trials, **kwargs) for threads in counts]


def check_strategy_agreement(
    csr: ZeroTerminatedCsr,
    k: int,
    strategies: Sequence[Strategy],
    workers: int | None = None,
    support_width: SupportWidth = SupportWidth.U32,
) -> TrussResult | None:
    """Run every strategy once and require identical edges and supports.

    Returns:
        The shared TrussResult, or None if ``strategies`` is empty

    Raises:
        StrategyMismatchError: On the first strategy that differs from the first
    """
    reference: TrussResult | None = None
    first: Strategy | None = None
    for strategy in strategies:
        strategy = Strategy(strategy)
        result = ktruss(csr, k, strategy, workers, support_width)
        if reference is None:
            reference, first = result, strategy
            continue
        if result.edges != reference.edges:
            ours, theirs = set(reference.edges), set(result.edges)
            divergent = sorted(ours ^ theirs)
            detail = f"first divergent edge {divergent[0]}" if divergent else ""
            raise StrategyMismatchError(k, [first, strategy], detail)
    return reference


def speedup_rows(records: Iterable[BenchRecord]) -> list[SpeedupRow]:
    """Pair coarse and fine records per (graph, k, threads) into speedup rows."""
    timings: dict[tuple[str, int, int], dict[Strategy, float]] = {}
    for record in records:
        key = (record.graph_name, record.k, record.threads)
        timings.setdefault(key, {})[record.strategy] = record.mean_ms

    rows = []
    for (graph_name, k, threads), by_strategy in sorted(timings.items()):
        if Strategy.COARSE in by_strategy and Strategy.FINE in by_strategy:
            rows.append(
                SpeedupRow(
                    graph_name=graph_name,
                    k=k,
                    threads=threads,
                    coarse_ms=by_strategy[Strategy.COARSE],
                    fine_ms=by_strategy[Strategy.FINE],
                )
            )
    return rows


def geometric_mean_speedup(rows: Sequence[SpeedupRow]) -> float:
    """Geometric mean of fine-over-coarse speedups.

    Raises:
        InvalidParameterError: If ``rows`` is empty
    """
    if not rows:
        raise InvalidParameterError("no coarse/fine pairs to summarise")
    return float(np.exp(np.mean(np.log([row.speedup for row in rows]))))
