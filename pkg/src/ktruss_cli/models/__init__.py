"""Pydantic models for the ktruss CLI."""

from .cli_config import CliConfig, Command

__all__ = ["CliConfig", "Command"]
