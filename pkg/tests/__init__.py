"""Test package for eager-ktruss."""
