"""Benchmark result models."""

from pydantic import BaseModel, Field

from .truss import Strategy


class BenchRecord(BaseModel):
    """One timed configuration: graph stats, parameters and throughput."""

    graph_name: str = Field(..., description="Graph identifier")
    num_vertices: int = Field(..., ge=0, description="Canonical vertex count")
    num_edges: int = Field(..., ge=0, description="Canonical edge count (no sentinels)")
    k: int = Field(..., ge=2, description="Truss parameter (resolved when kmax)")
    strategy: Strategy = Field(..., description="Support computation strategy")
    threads: int = Field(..., ge=1, description="Worker count")
    trials: int = Field(..., ge=1, description="Timed repetitions")
    mean_ms: float = Field(..., gt=0, description="Mean fixpoint wall time (ms)")
    me_per_s: float = Field(..., ge=0, description="Millions of edges per second")

    @staticmethod
    def edges_per_second(num_edges: int, mean_ms: float) -> float:
        """Millions of edges processed per second for a mean time in ms."""
        return num_edges / (mean_ms * 1000.0)

    @classmethod
    def from_timing(
        cls,
        *,
        graph_name: str,
        num_vertices: int,
        num_edges: int,
        k: int,
        strategy: Strategy,
        threads: int,
        trials: int,
        mean_ms: float,
    ) -> "BenchRecord":
        """Build a record, deriving ME/s from the original edge count."""
        return cls(
            graph_name=graph_name,
            num_vertices=num_vertices,
            num_edges=num_edges,
            k=k,
            strategy=strategy,
            threads=threads,
            trials=trials,
            mean_ms=mean_ms,
            me_per_s=cls.edges_per_second(num_edges, mean_ms),
        )


class SpeedupRow(BaseModel):
    """Fine- over coarse-grained speedup for one graph, k and thread count."""

    graph_name: str
    k: int
    threads: int
    coarse_ms: float = Field(..., gt=0)
    fine_ms: float = Field(..., gt=0)

    @property
    def speedup(self) -> float:
        return self.coarse_ms / self.fine_ms
