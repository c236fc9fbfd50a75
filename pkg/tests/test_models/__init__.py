"""Tests for models package."""
