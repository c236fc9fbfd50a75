"""Configuration service for centralized configuration management."""

import logging
import os

from pydantic import BaseModel, Field, field_validator

from ..models.truss import Strategy, SupportWidth

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
OUTPUT_FORMATS = ("csv", "md")


class ConfigurationError(Exception):
    """Base exception for configuration-related errors."""

    pass


class ConfigurationValidationError(ConfigurationError):
    """Exception raised when configuration validation fails."""

    pass


def _env_threads() -> int | str | None:
    raw = os.getenv("KTRUSS_THREADS")
    if raw is None or not raw.strip():
        return None
    try:
        return int(raw)
    except ValueError:
        # Kept verbatim so validate_configuration can name it.
        return raw.strip()


# Configuration Models
class TrussConfiguration(BaseModel):
    """Kernel settings shared by the truss, verify and bench commands."""

    strategy: Strategy = Field(
        default=Strategy.FINE, description="Support computation strategy"
    )
    threads: int | None = Field(
        default=None,
        description="Worker count; None selects the hardware parallelism",
    )
    support_width: SupportWidth = Field(
        default=SupportWidth.U32, description="Support counter bit width"
    )


class BenchConfiguration(BaseModel):
    """Benchmark harness settings."""

    trials: int = Field(default=10, description="Timed repetitions per configuration")
    warmup: bool = Field(
        default=True, description="Run one untimed fixpoint before the trials"
    )
    output_format: str = Field(default="csv", description="Record format (csv or md)")

    @field_validator("output_format")
    @classmethod
    def validate_format(cls, v: str) -> str:
        """Validate format is csv or md."""
        v_lower = v.lower()
        if v_lower == "markdown":
            v_lower = "md"
        if v_lower not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be 'csv' or 'md', got '{v}'")
        return v_lower


class EnvironmentConfiguration(BaseModel):
    """Environment-specific configuration."""

    threads: int | str | None = Field(
        default_factory=_env_threads,
        description="Default worker count (from KTRUSS_THREADS env var); "
        "unparsable text is kept for validation",
    )
    log_level: str = Field(
        default_factory=lambda: os.getenv("KTRUSS_LOG_LEVEL", "WARNING").upper(),
        description="Logging level (from KTRUSS_LOG_LEVEL env var)",
    )


class ConfigurationService:
    """Centralized configuration service implementation."""

    def __init__(
        self,
        truss_config: TrussConfiguration | None = None,
        bench_config: BenchConfiguration | None = None,
        environment_config: EnvironmentConfiguration | None = None,
    ):
        """Initialize configuration service.

        Args:
            truss_config: Truss kernel configuration instance
            bench_config: Benchmark configuration instance
            environment_config: Environment configuration instance
        """
        self._truss_config = truss_config or TrussConfiguration()
        self._bench_config = bench_config or BenchConfiguration()
        self._environment_config = environment_config or EnvironmentConfiguration()

        # Validate configuration on initialization
        is_valid, errors = self.validate_configuration()
        if not is_valid:
            raise ConfigurationValidationError(
                f"Configuration validation failed: {errors}"
            )

    def get_truss_config(self) -> TrussConfiguration:
        """Get truss kernel configuration."""
        return self._truss_config

    def get_bench_config(self) -> BenchConfiguration:
        """Get benchmark harness configuration."""
        return self._bench_config

    def get_environment_config(self) -> EnvironmentConfiguration:
        """Get environment-specific configuration."""
        return self._environment_config

    def effective_threads(self) -> int | None:
        """Worker count: explicit setting, then KTRUSS_THREADS, then None."""
        if self._truss_config.threads is not None:
            return self._truss_config.threads
        threads = self._environment_config.threads
        return threads if isinstance(threads, int) else None

    def log_level(self) -> int:
        """Numeric logging level for ``logging.basicConfig``."""
        return logging.getLevelName(self._environment_config.log_level)

    def validate_configuration(self) -> tuple[bool, list[str]]:
        """Validate all configuration components.

        Returns:
            Tuple of (is_valid, list_of_issues)
        """
        issues = []

        env_threads = self._environment_config.threads
        if isinstance(env_threads, str):
            issues.append(f"KTRUSS_THREADS must be an integer, got '{env_threads}'")

        threads = self.effective_threads()
        if threads is not None and threads < 1:
            issues.append(f"Worker count must be at least 1, got {threads}")

        if self._bench_config.trials < 1:
            issues.append(
                f"Trial count must be at least 1, got {self._bench_config.trials}"
            )

        if self._environment_config.log_level not in LOG_LEVELS:
            issues.append(f"Invalid log level: {self._environment_config.log_level}")

        return len(issues) == 0, issues


# Global configuration service instance
_config_service: ConfigurationService | None = None


def get_configuration_service() -> ConfigurationService:
    """Get the global configuration service instance.

    Returns:
        ConfigurationService instance

    Raises:
        ConfigurationError: If configuration service is not initialized
    """
    global _config_service
    if _config_service is None:
        raise ConfigurationError(
            "Configuration service not initialized. Call initialize_configuration_service() first."
        )
    return _config_service


def initialize_configuration_service(
    truss_config: TrussConfiguration | None = None,
    bench_config: BenchConfiguration | None = None,
    environment_config: EnvironmentConfiguration | None = None,
) -> ConfigurationService:
    """Initialize the global configuration service.

    Args:
        truss_config: Truss kernel configuration instance
        bench_config: Benchmark configuration instance
        environment_config: Environment configuration instance

    Returns:
        ConfigurationService instance
    """
    global _config_service
    _config_service = ConfigurationService(
        truss_config=truss_config,
        bench_config=bench_config,
        environment_config=environment_config,
    )
    return _config_service


def reset_configuration_service() -> None:
    """Reset the global configuration service (primarily for testing)."""
    global _config_service
    _config_service = None
