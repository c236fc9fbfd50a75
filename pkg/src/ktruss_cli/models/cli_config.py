"""Pydantic model for validated command-line settings."""

from enum import Enum
from pathlib import Path
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, Field, field_validator, model_validator

from eager_ktruss.models.truss import Strategy, SupportWidth
from eager_ktruss.utils.bench_harness import KMAX, KSpec


class Command(str, Enum):
    """CLI subcommands."""

    CONVERT = "convert"
    TRUSS = "truss"
    VERIFY = "verify"
    BENCH = "bench"
    GENERATE = "generate"


# Commands that need exactly one of --k / --kmax.
K_COMMANDS = (Command.TRUSS, Command.BENCH)


class CliConfig(BaseModel):
    """Settings for one CLI invocation after flag parsing."""

    command: Command = Field(..., description="Subcommand being run")
    input_path: Path | None = Field(default=None, description="Graph input file")
    k: int | None = Field(default=None, description="Literal truss parameter")
    kmax: bool = Field(default=False, description="Search for the largest k")
    max_k: int | None = Field(default=None, description="Upper k for verify")
    strategies: list[Strategy] = Field(
        default_factory=lambda: [Strategy.FINE], description="Strategies to run"
    )
    threads: list[int] = Field(
        default_factory=list, description="Worker counts; empty means default"
    )
    trials: int = Field(default=10, description="Timed repetitions per record")
    output_format: str = Field(default="csv", description="csv or md")
    output: Path | None = Field(default=None, description="Output file or stdout")
    seed: int = Field(default=0, description="Generator seed")
    support_width: SupportWidth = Field(
        default=SupportWidth.U32, description="Support counter width"
    )

    @field_validator("output_format")
    @classmethod
    def validate_format(cls, v: str) -> str:
        v_lower = v.lower()
        if v_lower == "markdown":
            v_lower = "md"
        if v_lower not in ("csv", "md"):
            raise ValueError(f"format must be 'csv' or 'md', got '{v}'")
        return v_lower

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: list[int]) -> list[int]:
        for count in v:
            if count < 1:
                raise ValueError(f"thread counts must be at least 1, got {count}")
        return v

    @model_validator(mode="after")
    def validate_k_flags(self) -> Self:
        """Check k/kmax exclusivity and numeric ranges."""
        if self.k is not None and self.kmax:
            raise ValueError("--k and --kmax are mutually exclusive")
        if self.command in K_COMMANDS and self.k is None and not self.kmax:
            raise ValueError(f"{self.command.value} needs --k or --kmax")
        if self.k is not None and self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.max_k is not None and self.max_k < 2:
            raise ValueError(f"max-k must be at least 2, got {self.max_k}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        return self

    @property
    def k_spec(self) -> KSpec:
        """Literal k, or the Kmax request."""
        if self.kmax:
            return KMAX
        if self.k is None:
            raise ValueError("no k configured")
        return self.k

    @property
    def worker_count(self) -> int | None:
        """Single worker count for commands that take one ``--threads``."""
        return self.threads[0] if self.threads else None
