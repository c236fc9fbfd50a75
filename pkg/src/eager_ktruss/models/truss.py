"""Truss models: strategies, support counters and fixpoint results."""

from enum import Enum, IntEnum
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from pydantic import BaseModel, Field, model_validator


class Strategy(str, Enum):
    """Support computation strategies."""

    SERIAL = "serial"
    COARSE = "coarse"
    FINE = "fine"


class SupportWidth(IntEnum):
    """Bit width of the per-slot support counters."""

    U16 = 16
    U32 = 32

    @property
    def dtype(self) -> type[np.unsignedinteger]:
        return np.uint16 if self is SupportWidth.U16 else np.uint32

    @property
    def limit(self) -> int:
        return int(np.iinfo(self.dtype).max)


class SupportOverflowError(ArithmeticError):
    """Raised when a support count does not fit the configured counter width."""

    def __init__(self, slot: int, value: int, limit: int):
        """Initialize SupportOverflowError.

        Args:
            slot: CSR slot whose support overflowed
            value: Exact support value that was computed
            limit: Largest value the counter width can hold
        """
        super().__init__(
            f"Support counter overflow at slot {slot}: {value} exceeds {limit}"
        )
        self.slot = slot
        self.value = value
        self.limit = limit


class SupportArray:
    """Per-slot triangle support counters for one CSR.

    Workers never write ``counts`` directly. Each worker owns a private row of
    increments and :meth:`accumulate` folds them in after the support phase,
    which yields the same totals an atomic add would.
    """

    def __init__(self, total_slots: int, width: SupportWidth = SupportWidth.U32):
        self.width = SupportWidth(width)
        self.counts = np.zeros(total_slots, dtype=self.width.dtype)

    def __len__(self) -> int:
        return int(self.counts.shape[0])

    def total(self) -> int:
        """Sum of all counters."""
        return int(self.counts.sum(dtype=np.int64))

    def reset(self) -> None:
        self.counts.fill(0)

    def accumulate(self, partials: np.ndarray) -> None:
        """Add per-worker increment rows into the counters.

        Args:
            partials: ``(workers, total_slots)`` array of increments

        Raises:
            SupportOverflowError: If any slot would exceed the counter width
        """
        sums = partials.sum(axis=0, dtype=np.int64)
        sums += self.counts
        over = np.flatnonzero(sums > self.width.limit)
        if over.size:
            slot = int(over[0])
            raise SupportOverflowError(slot, int(sums[slot]), self.width.limit)
        self.counts[:] = sums


class TrussResult(BaseModel):
    """Converged K-truss: surviving edges with supports and the removal history."""

    k: int = Field(..., ge=2, description="Truss parameter")
    edges: list[tuple[int, int, int]] = Field(
        default_factory=list, description="Surviving (u, v, support) triples"
    )
    iterations: int = Field(..., ge=1, description="computeSupports + prune rounds")
    removed_per_iteration: list[int] = Field(
        ..., description="Edges removed per round; the last entry is 0"
    )
    triangles: int = Field(default=0, ge=0, description="Triangles in the final pass")

    @model_validator(mode="after")
    def validate_history(self) -> Self:
        """Check the removal history and support threshold."""
        history = self.removed_per_iteration
        if len(history) != self.iterations:
            raise ValueError("removed_per_iteration must have one entry per round")
        if history[-1] != 0 or any(count == 0 for count in history[:-1]):
            raise ValueError("only the final round may remove zero edges")
        threshold = self.k - 2
        for u, v, support in self.edges:
            if support < threshold:
                raise ValueError(
                    f"edge ({u}, {v}) has support {support} below {threshold}"
                )
        return self

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def edge_pairs(self) -> set[tuple[int, int]]:
        """Surviving edges without supports."""
        return {(u, v) for u, v, _ in self.edges}
