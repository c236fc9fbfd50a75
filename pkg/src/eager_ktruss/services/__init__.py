"""Services package for eager-ktruss."""

from .config_service import (
    BenchConfiguration,
    ConfigurationError,
    ConfigurationService,
    ConfigurationValidationError,
    EnvironmentConfiguration,
    TrussConfiguration,
    get_configuration_service,
    initialize_configuration_service,
    reset_configuration_service,
)

__all__ = [
    "BenchConfiguration",
    "ConfigurationError",
    "ConfigurationService",
    "ConfigurationValidationError",
    "EnvironmentConfiguration",
    "TrussConfiguration",
    "get_configuration_service",
    "initialize_configuration_service",
    "reset_configuration_service",
]
