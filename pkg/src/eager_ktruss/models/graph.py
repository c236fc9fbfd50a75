"""Graph models: canonical edge lists and the zero-terminated CSR layout."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

# Vertex ids and slot offsets are 32-bit; 0 is reserved for the row sentinel.
INDEX_DTYPE = np.uint32
MAX_INDEX = int(np.iinfo(INDEX_DTYPE).max)


class EdgeList(BaseModel):
    """Canonicalized undirected simple graph with dense 1-based vertex ids.

    Edges are stored as an ``(m, 2)`` int64 array with ``u < v`` in every row,
    sorted lexicographically and free of duplicates. ``original_ids[v - 1]``
    is the source-file label of relabeled vertex ``v``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    num_vertices: int = Field(..., ge=0, description="Distinct vertices after relabeling")
    edges: np.ndarray = Field(..., description="(m, 2) array of (u, v) pairs, u < v")
    original_ids: np.ndarray = Field(
        ..., description="Source label of relabeled vertex v at index v - 1"
    )

    @field_validator("edges", mode="before")
    @classmethod
    def coerce_edges(cls, v: Any) -> np.ndarray:
        """Accept any pair sequence and store it as an (m, 2) int64 array."""
        return np.asarray(v, dtype=np.int64).reshape(-1, 2)

    @field_validator("original_ids", mode="before")
    @classmethod
    def coerce_original_ids(cls, v: Any) -> np.ndarray:
        """Store original labels as a flat int64 array."""
        return np.asarray(v, dtype=np.int64).reshape(-1)

    @property
    def num_edges(self) -> int:
        """Number of undirected edges."""
        return int(self.edges.shape[0])

    def edge_tuples(self) -> list[tuple[int, int]]:
        """Edges as a list of ``(u, v)`` tuples."""
        return [(int(u), int(v)) for u, v in self.edges]

    def original_label(self, vertex: int) -> int:
        """Map a relabeled vertex id back to its source label."""
        return int(self.original_ids[vertex - 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeList):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.edges, other.edges)
            and np.array_equal(self.original_ids, other.original_ids)
        )


class ZeroTerminatedCsr(BaseModel):
    """Upper-triangular adjacency in CSR form with a zero sentinel per row.

    Real vertices are ``1..n``; vertex 0 is a phantom whose row is empty so that
    ``row_ptr[w]`` is addressable by any column value ``w``. Every real row
    holds its ascending out-neighbours followed by at least one zero slot.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    num_vertices: int = Field(..., ge=0, description="Real vertex count n")
    row_ptr: np.ndarray = Field(..., description="n + 2 slot offsets (uint32)")
    col_idx: np.ndarray = Field(..., description="Column ids per slot, 0 = empty")

    @field_validator("row_ptr", "col_idx", mode="before")
    @classmethod
    def coerce_index_array(cls, v: Any) -> np.ndarray:
        """Store index arrays as contiguous uint32."""
        return np.ascontiguousarray(v, dtype=INDEX_DTYPE).reshape(-1)

    @property
    def total_slots(self) -> int:
        """Length of ``col_idx`` including sentinel and pruned slots."""
        return int(self.col_idx.shape[0])

    def row(self, vertex: int) -> np.ndarray:
        """View of the slot range owned by ``vertex``."""
        return self.col_idx[self.row_ptr[vertex] : self.row_ptr[vertex + 1]]

    def clone(self) -> "ZeroTerminatedCsr":
        """Deep copy; pruning mutates ``col_idx`` in place."""
        return ZeroTerminatedCsr(
            num_vertices=self.num_vertices,
            row_ptr=self.row_ptr.copy(),
            col_idx=self.col_idx.copy(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZeroTerminatedCsr):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and np.array_equal(self.row_ptr, other.row_ptr)
            and np.array_equal(self.col_idx, other.col_idx)
        )


class LoadedGraph(BaseModel):
    """A graph ready for the kernels, with the labels needed to report results."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = Field(..., description="Identifier used in reports (file stem)")
    edge_list: EdgeList = Field(..., description="Canonical edge list")
    csr: ZeroTerminatedCsr = Field(..., description="Pristine zero-terminated CSR")
    from_cache: bool = Field(default=False, description="Loaded from a binary cache")

    @property
    def num_vertices(self) -> int:
        return self.edge_list.num_vertices

    @property
    def num_edges(self) -> int:
        return self.edge_list.num_edges
