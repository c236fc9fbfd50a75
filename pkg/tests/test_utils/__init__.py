"""Tests for utils package."""
