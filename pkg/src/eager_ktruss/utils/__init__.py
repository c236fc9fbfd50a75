"""Utilities package for eager-ktruss: graph I/O, truss engine, oracle and bench."""

from .bench_harness import (
    KMAX,
    StrategyMismatchError,
    check_strategy_agreement,
    geometric_mean_speedup,
    run_bench,
    speedup_rows,
    thread_sweep,
)
from .graph_io import (
    CorruptCacheError,
    EdgeListParseError,
    EmptyGraphError,
    EmptyInputError,
    GraphInputError,
    InvalidGraphError,
    build_csr,
    canonicalize,
    count_live_edges,
    extract_edges,
    load_graph,
    parse_edge_list,
    read_csr_cache,
    validate_csr,
    write_csr_cache,
    write_edge_list,
)
from .oracle import (
    AdjacencySets,
    oracle_edge_supports,
    oracle_kmax,
    oracle_ktruss,
    oracle_triangle_count,
    random_graph,
    skewed_graph,
)
from .record_format import emit_records, parse_csv_records
from .truss_engine import (
    InvalidParameterError,
    compute_supports,
    intersect_tails,
    kmax_search,
    ktruss,
    prune_edges,
    reset_supports,
)

__all__ = [
    "KMAX",
    "AdjacencySets",
    "CorruptCacheError",
    "EdgeListParseError",
    "EmptyGraphError",
    "EmptyInputError",
    "GraphInputError",
    "InvalidGraphError",
    "InvalidParameterError",
    "StrategyMismatchError",
    "build_csr",
    "canonicalize",
    "check_strategy_agreement",
    "compute_supports",
    "count_live_edges",
    "emit_records",
    "extract_edges",
    "geometric_mean_speedup",
    "intersect_tails",
    "kmax_search",
    "ktruss",
    "load_graph",
    "oracle_edge_supports",
    "oracle_kmax",
    "oracle_ktruss",
    "oracle_triangle_count",
    "parse_csv_records",
    "parse_edge_list",
    "prune_edges",
    "random_graph",
    "read_csr_cache",
    "reset_supports",
    "run_bench",
    "skewed_graph",
    "speedup_rows",
    "thread_sweep",
    "validate_csr",
    "write_csr_cache",
    "write_edge_list",
]
