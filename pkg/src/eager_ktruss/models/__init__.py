"""Models package for eager-ktruss."""

from .bench import BenchRecord, SpeedupRow
from .graph import EdgeList, LoadedGraph, ZeroTerminatedCsr
from .truss import (
    Strategy,
    SupportArray,
    SupportOverflowError,
    SupportWidth,
    TrussResult,
)

__all__ = [
    "BenchRecord",
    "EdgeList",
    "LoadedGraph",
    "SpeedupRow",
    "Strategy",
    "SupportArray",
    "SupportOverflowError",
    "SupportWidth",
    "TrussResult",
    "ZeroTerminatedCsr",
]
