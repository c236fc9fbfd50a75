"""Eager K-truss - parallel K-truss decomposition over zero-terminated CSR graphs."""

__version__ = "0.1.0"
