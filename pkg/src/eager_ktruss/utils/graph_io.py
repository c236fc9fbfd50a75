"""Edge-list ingestion, canonicalization and the zero-terminated CSR builder.

Text input is SNAP style: one ``u v`` pair of non-negative integer labels per
line, with ``#`` or ``%`` comment lines. Labels are relabeled densely to
``1..n`` in ascending order so that 0 stays free for the row sentinel.
"""

import logging
import struct
from collections.abc import Iterable
from pathlib import Path
from typing import BinaryIO, TextIO

import numpy as np

from ..models.graph import (
    INDEX_DTYPE,
    MAX_INDEX,
    EdgeList,
    LoadedGraph,
    ZeroTerminatedCsr,
)
from ..models.truss import SupportArray

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"ZTCSR1\x00\x00"
_CACHE_HEADER = struct.Struct("<8sIQ")
_CACHE_WORD = np.dtype("<u4")
COMMENT_PREFIXES = ("#", "%")


class GraphInputError(Exception):
    """Base exception for unusable graph input."""

    pass


class EdgeListParseError(GraphInputError):
    """Exception raised when an edge-list line cannot be parsed."""

    def __init__(self, message: str, line_number: int):
        """Initialize EdgeListParseError.

        Args:
            message: Error message
            line_number: 1-based line number of the offending line
        """
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyInputError(GraphInputError):
    """Exception raised when an edge-list stream has no data lines."""

    pass


class EmptyGraphError(GraphInputError):
    """Exception raised when no edge survives canonicalization."""

    pass


class InvalidGraphError(GraphInputError):
    """Exception raised when an edge list or CSR violates its invariants."""

    pass


class CorruptCacheError(GraphInputError):
    """Exception raised when a binary CSR cache cannot be trusted."""

    pass


def parse_edge_list(stream: Iterable[str]) -> np.ndarray:
    """Tokenize an edge-list stream into raw directed label pairs.

    Args:
        stream: Iterable of text lines (an open file or ``io.StringIO``)

    Returns:
        ``(r, 2)`` int64 array of pairs in file order, not deduplicated

    Raises:
        EdgeListParseError: On a non-integer token or wrong field count
        EmptyInputError: If the stream holds no data lines
    """
    pairs: list[tuple[int, int]] = []
    for line_number, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected 2 fields, found {len(tokens)}", line_number
            )
        for token in tokens:
            if not (token.isascii() and token.isdigit()):
                raise EdgeListParseError(
                    f"'{token}' is not a non-negative integer", line_number
                )
        u, v = int(tokens[0]), int(tokens[1])
        if u > np.iinfo(np.int64).max or v > np.iinfo(np.int64).max:
            raise EdgeListParseError("vertex label out of range", line_number)
        pairs.append((u, v))

    if not pairs:
        raise EmptyInputError("edge list contains no data lines")
    return np.asarray(pairs, dtype=np.int64)


def canonicalize(raw: np.ndarray | Iterable[tuple[int, int]]) -> EdgeList:
    """Turn raw label pairs into a simple undirected upper-triangular edge list.

    Self-loops are dropped, ``(u, v)`` and ``(v, u)`` collapse into one edge,
    and the remaining labels are relabeled to ``1..n`` in ascending order.

    Raises:
        EmptyGraphError: If no edge survives
    """
    pairs = np.asarray(raw, dtype=np.int64).reshape(-1, 2)
    kept = pairs[pairs[:, 0] != pairs[:, 1]]
    if kept.shape[0] == 0:
        raise EmptyGraphError("graph has no edges after removing self-loops")

    labels = np.unique(kept)
    relabeled = np.searchsorted(labels, kept) + 1
    oriented = np.column_stack((relabeled.min(axis=1), relabeled.max(axis=1)))
    edges = np.unique(oriented, axis=0)

    logger.debug(
        "canonicalized %d raw pairs into %d edges over %d vertices",
        pairs.shape[0],
        edges.shape[0],
        labels.shape[0],
    )
    return EdgeList(num_vertices=int(labels.shape[0]), edges=edges, original_ids=labels)


def _check_edge_list(edge_list: EdgeList) -> None:
    n = edge_list.num_vertices
    edges = edge_list.edges
    if edge_list.original_ids.shape[0] != n:
        raise InvalidGraphError("original_ids length does not match num_vertices")
    if edges.shape[0] == 0:
        return
    u, v = edges[:, 0], edges[:, 1]
    if u.min() < 1 or v.max() > n:
        raise InvalidGraphError(f"vertex ids must lie in 1..{n}")
    if np.any(u >= v):
        raise InvalidGraphError("every edge must satisfy u < v")
    du, dv = np.diff(u), np.diff(v)
    if np.any((du < 0) | ((du == 0) & (dv <= 0))):
        raise InvalidGraphError("edges must be sorted and free of duplicates")


def build_csr(edge_list: EdgeList) -> ZeroTerminatedCsr:
    """Lay out an edge list as a zero-terminated upper-triangular CSR.

    Each real row holds its ascending out-neighbours followed by one 0, so the
    slot count is ``|edges| + n``.

    Raises:
        InvalidGraphError: If the edge list violates its invariants or needs
            more than 2^32 - 1 slots
    """
    _check_edge_list(edge_list)
    n = edge_list.num_vertices
    m = edge_list.num_edges
    if n + m > MAX_INDEX:
        raise InvalidGraphError(f"graph needs {n + m} slots, limit is {MAX_INDEX}")

    u = edge_list.edges[:, 0]
    v = edge_list.edges[:, 1]
    degree = np.bincount(u, minlength=n + 1)

    row_ptr = np.zeros(n + 2, dtype=np.int64)
    row_ptr[2:] = np.cumsum(degree[1 : n + 1] + 1)

    # Edge i sits after the sentinels of the u - 1 rows before it.
    col_idx = np.zeros(m + n, dtype=INDEX_DTYPE)
    col_idx[np.arange(m) + u - 1] = v

    return ZeroTerminatedCsr(num_vertices=n, row_ptr=row_ptr, col_idx=col_idx)


def validate_csr(csr: ZeroTerminatedCsr) -> None:
    """Check every zero-terminated CSR invariant.

    Raises:
        InvalidGraphError: Naming the first violated invariant
    """
    n = csr.num_vertices
    row_ptr = csr.row_ptr.astype(np.int64)
    col_idx = csr.col_idx

    if row_ptr.shape[0] != n + 2:
        raise InvalidGraphError(f"row_ptr has {row_ptr.shape[0]} entries, expected {n + 2}")
    if row_ptr[0] != 0 or row_ptr[1] != 0:
        raise InvalidGraphError("phantom vertex 0 must own no slots")
    if row_ptr[-1] != col_idx.shape[0]:
        raise InvalidGraphError("row_ptr[n + 1] must equal total_slots")

    lengths = np.diff(row_ptr)
    if np.any(lengths[1:] < 1):
        raise InvalidGraphError("every real row needs at least its sentinel slot")
    if n == 0:
        return
    if np.any(col_idx[row_ptr[2:] - 1] != 0):
        raise InvalidGraphError("every real row must end in a zero slot")
    if int(col_idx.max()) > n:
        raise InvalidGraphError(f"column ids must lie in 0..{n}")

    rows = np.repeat(np.arange(n + 1, dtype=np.int64), lengths)
    live = col_idx != 0
    if np.any(col_idx[live] <= rows[live]):
        raise InvalidGraphError("nonzero entries must lie strictly above the diagonal")

    same_row = rows[:-1] == rows[1:]
    if np.any(same_row & ~live[:-1] & live[1:]):
        raise InvalidGraphError("a zero slot precedes a live entry within a row")
    ascending = col_idx[:-1].astype(np.int64) < col_idx[1:].astype(np.int64)
    if np.any(same_row & live[:-1] & live[1:] & ~ascending):
        raise InvalidGraphError("live entries within a row must be strictly ascending")


def _live_edge_array(
    csr: ZeroTerminatedCsr, supports: SupportArray | None = None
) -> np.ndarray:
    lengths = np.diff(csr.row_ptr.astype(np.int64))
    rows = np.repeat(np.arange(csr.num_vertices + 1, dtype=np.int64), lengths)
    live = csr.col_idx != 0
    columns = [rows[live], csr.col_idx[live].astype(np.int64)]
    if supports is not None:
        columns.append(supports.counts[live].astype(np.int64))
    return np.column_stack(columns)


def extract_edges(
    csr: ZeroTerminatedCsr, supports: SupportArray | None = None
) -> list[tuple[int, ...]]:
    """Walk the live prefix of every row and emit its edges.

    Args:
        csr: Zero-terminated CSR, possibly pruned
        supports: Optional supports sized to the CSR; adds a third column

    Returns:
        ``(u, v)`` or ``(u, v, support)`` tuples in lexicographic order
    """
    if supports is not None and len(supports) != csr.total_slots:
        raise InvalidGraphError("support array does not match the CSR slot count")
    # Rows are visited in order and live prefixes are ascending, so the
    # output is already sorted.
    return [tuple(row) for row in _live_edge_array(csr, supports).tolist()]


def count_live_edges(csr: ZeroTerminatedCsr) -> int:
    """Number of nonzero slots, i.e. edges still present."""
    return int(np.count_nonzero(csr.col_idx))


def edge_list_from_csr(csr: ZeroTerminatedCsr) -> EdgeList:
    """Rebuild an edge list from a CSR, using identity labels."""
    pairs = _live_edge_array(csr)
    return EdgeList(
        num_vertices=csr.num_vertices,
        edges=pairs,
        original_ids=np.arange(1, csr.num_vertices + 1, dtype=np.int64),
    )


def write_csr_cache(csr: ZeroTerminatedCsr, sink: BinaryIO) -> None:
    """Serialize a CSR in the little-endian ``ZTCSR1`` cache layout."""
    sink.write(_CACHE_HEADER.pack(CACHE_MAGIC, csr.num_vertices, csr.total_slots))
    sink.write(csr.row_ptr.astype(_CACHE_WORD).tobytes())
    sink.write(csr.col_idx.astype(_CACHE_WORD).tobytes())


def read_csr_cache(source: BinaryIO) -> ZeroTerminatedCsr:
    """Deserialize and validate a ``ZTCSR1`` cache.

    Raises:
        CorruptCacheError: On bad magic, wrong payload length or any CSR
            invariant violation
    """
    data = source.read()
    if len(data) < _CACHE_HEADER.size:
        raise CorruptCacheError(f"cache is {len(data)} bytes, too short for a header")

    magic, num_vertices, total_slots = _CACHE_HEADER.unpack_from(data)
    if magic != CACHE_MAGIC:
        raise CorruptCacheError("bad cache magic")

    row_words = num_vertices + 2
    expected = _CACHE_HEADER.size + _CACHE_WORD.itemsize * (row_words + total_slots)
    if len(data) != expected:
        raise CorruptCacheError(
            f"cache payload is {len(data)} bytes, header implies {expected}"
        )

    offset = _CACHE_HEADER.size
    row_ptr = np.frombuffer(
        data, dtype=_CACHE_WORD, count=row_words, offset=offset
    ).astype(INDEX_DTYPE)
    offset += _CACHE_WORD.itemsize * row_words
    col_idx = np.frombuffer(
        data, dtype=_CACHE_WORD, count=total_slots, offset=offset
    ).astype(INDEX_DTYPE)

    csr = ZeroTerminatedCsr(num_vertices=num_vertices, row_ptr=row_ptr, col_idx=col_idx)
    try:
        validate_csr(csr)
    except InvalidGraphError as e:
        raise CorruptCacheError(f"cache violates CSR invariants: {e}") from e
    return csr


def write_edge_list(edge_list: EdgeList, sink: TextIO) -> None:
    """Write canonical ``u v`` lines (relabeled ids) with a comment header."""
    sink.write(f"# vertices={edge_list.num_vertices} edges={edge_list.num_edges}\n")
    for u, v in edge_list.edges.tolist():
        sink.write(f"{u} {v}\n")


def load_graph(path: Path) -> LoadedGraph:
    """Load a graph from a binary cache or an edge-list text file.

    The format is detected from the cache magic; anything else is parsed as
    text. Cache inputs carry no label table, so their labels are the ids.

    Raises:
        GraphInputError: On any parse, canonicalization or cache failure
        OSError: If the file cannot be read
    """
    path = Path(path)
    with open(path, "rb") as f:
        head = f.read(len(CACHE_MAGIC))
        f.seek(0)
        if head == CACHE_MAGIC:
            csr = read_csr_cache(f)
            edge_list = edge_list_from_csr(csr)
            if edge_list.num_edges == 0:
                raise EmptyGraphError("cached graph has no live edges")
            logger.debug("loaded cache %s: n=%d", path, csr.num_vertices)
            return LoadedGraph(
                name=path.stem, edge_list=edge_list, csr=csr, from_cache=True
            )

    try:
        with open(path, encoding="utf-8") as f:
            raw = parse_edge_list(f)
    except UnicodeDecodeError as e:
        raise GraphInputError(f"{path} is neither a CSR cache nor UTF-8 text") from e

    edge_list = canonicalize(raw)
    csr = build_csr(edge_list)
    logger.debug(
        "loaded edge list %s: n=%d m=%d slots=%d",
        path,
        edge_list.num_vertices,
        edge_list.num_edges,
        csr.total_slots,
    )
    return LoadedGraph(name=path.stem, edge_list=edge_list, csr=csr)
