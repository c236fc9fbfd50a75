"""Pytest configuration and fixtures."""

import tempfile
from collections.abc import Generator
from pathlib import Path

import pytest

from eager_ktruss.models.graph import ZeroTerminatedCsr
from eager_ktruss.services.config_service import reset_configuration_service

from .sample_graphs import (
    BOWTIE,
    K4,
    K4_PENDANT,
    K5_PENDANT,
    PATH,
    TRIANGLE,
    TWO_TRIANGLES,
    csr_of,
)


@pytest.fixture(autouse=True)
def clean_configuration_service() -> Generator[None, None, None]:
    """Reset the global configuration service around every test."""
    reset_configuration_service()
    yield
    reset_configuration_service()


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing file operations."""
    with tempfile.TemporaryDirectory() as temp_dir:
        yield Path(temp_dir)


@pytest.fixture
def triangle_csr() -> ZeroTerminatedCsr:
    """Triangle on vertices 1, 2, 3: row_ptr [0,0,3,5,6], col_idx [2,3,0,3,0,0]."""
    return csr_of(TRIANGLE)


@pytest.fixture
def path_csr() -> ZeroTerminatedCsr:
    """Path 1-2-3."""
    return csr_of(PATH)


@pytest.fixture
def k4_csr() -> ZeroTerminatedCsr:
    return csr_of(K4)


@pytest.fixture
def k4_pendant_csr() -> ZeroTerminatedCsr:
    """K4 plus the pendant edge (4, 5)."""
    return csr_of(K4_PENDANT)


@pytest.fixture
def bowtie_csr() -> ZeroTerminatedCsr:
    """Triangles {1, 2, 3} and {1, 4, 5} sharing vertex 1."""
    return csr_of(BOWTIE)


@pytest.fixture
def k5_pendant_csr() -> ZeroTerminatedCsr:
    return csr_of(K5_PENDANT)


@pytest.fixture
def two_triangles_csr() -> ZeroTerminatedCsr:
    return csr_of(TWO_TRIANGLES)
