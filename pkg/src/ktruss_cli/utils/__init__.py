"""Utility functions for the ktruss CLI."""

from .display import (
    display_check,
    display_error_message,
    display_summary,
    write_output,
)

__all__ = [
    "display_check",
    "display_error_message",
    "display_summary",
    "write_output",
]
