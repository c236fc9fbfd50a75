"""Tests for support computation, pruning, the truss fixpoint and Kmax search."""

import logging

import numpy as np
import pytest

from eager_ktruss.models.truss import (
    Strategy,
    SupportArray,
    SupportOverflowError,
    SupportWidth,
)
from eager_ktruss.utils import truss_engine
from eager_ktruss.utils.graph_io import build_csr, validate_csr
from eager_ktruss.utils.oracle import random_graph
from eager_ktruss.utils.truss_engine import (
    InvalidParameterError,
    compute_supports,
    intersect_tails,
    kmax_search,
    ktruss,
    prune_edges,
    reset_supports,
    resolve_workers,
    run_fixpoint,
    worker_scratch,
)
from tests.sample_graphs import K4, K5, csr_of

ALL_STRATEGIES = list(Strategy)


def _supports_of(csr, strategy=Strategy.SERIAL, workers=None):
    supports = SupportArray(csr.total_slots)
    triangles = compute_supports(csr, supports, strategy, workers)
    return supports, triangles


class TestResolveWorkers:
    """Test resolve_workers."""

    @pytest.fixture
    def pool_of_four(self, mocker):
        return mocker.patch(
            "eager_ktruss.utils.truss_engine.kernels.hardware_workers", return_value=4
        )

    def test_explicit_count(self, pool_of_four):
        assert resolve_workers(3) == 3

    def test_default_is_hardware(self, mocker):
        mocker.patch(
            "eager_ktruss.utils.truss_engine.kernels.hardware_workers", return_value=12
        )
        assert resolve_workers(None) == 12

    def test_zero_rejected(self):
        with pytest.raises(InvalidParameterError):
            resolve_workers(0)

    def test_count_above_pool_is_clamped(self, pool_of_four, caplog):
        with caplog.at_level(logging.WARNING, logger="eager_ktruss.utils.truss_engine"):
            assert resolve_workers(2000) == 4

        assert "exceeds the thread pool size 4" in caplog.text

    def test_scratch_rows_bounded_by_pool(self, k4_csr, mocker, pool_of_four):
        """Test an oversized request allocates one counter row per pooled worker."""
        mocker.patch("eager_ktruss.utils.truss_engine.kernels.apply_worker_count")
        scratch_spy = mocker.spy(truss_engine, "worker_scratch")
        supports = SupportArray(k4_csr.total_slots)

        triangles = compute_supports(k4_csr, supports, Strategy.FINE, workers=2000)

        assert triangles == 4
        assert scratch_spy.spy_return.shape == (4, k4_csr.total_slots)


class TestWorkerScratch:
    """Test the reusable private counter rows."""

    def test_reused_scratch_is_zeroed(self, k4_csr):
        scratch = worker_scratch(k4_csr, 2)
        scratch.fill(7)
        supports = SupportArray(k4_csr.total_slots)

        triangles = compute_supports(k4_csr, supports, Strategy.FINE, 2, scratch)

        assert triangles == 4
        assert supports.total() == 12

    def test_mismatched_scratch_rejected(self, k4_csr):
        supports = SupportArray(k4_csr.total_slots)
        with pytest.raises(InvalidParameterError, match="scratch has shape"):
            compute_supports(
                k4_csr, supports, Strategy.SERIAL, scratch=worker_scratch(k4_csr, 2)
            )

    def test_fixpoint_allocates_scratch_once(self, k5_pendant_csr, mocker):
        scratch_spy = mocker.spy(truss_engine, "worker_scratch")
        work = k5_pendant_csr.clone()
        supports = SupportArray(work.total_slots)

        history, _ = run_fixpoint(work, supports, 5, Strategy.COARSE, workers=1)

        assert len(history) >= 2
        assert scratch_spy.call_count == 1


class TestIntersectTails:
    """Test intersect_tails on hand-traced cases."""

    def test_triangle_pivot(self, triangle_csr):
        """Test the single triangle is found from slot 0."""
        supports = SupportArray(triangle_csr.total_slots)

        hits = intersect_tails(triangle_csr, 0, 2, supports)
        supports.counts[0] += hits

        assert hits == 1
        assert supports.counts.tolist() == [1, 1, 0, 1, 0, 0]

    def test_empty_predecessor_row(self, triangle_csr):
        supports = SupportArray(triangle_csr.total_slots)
        assert intersect_tails(triangle_csr, 1, 3, supports) == 0
        assert supports.total() == 0

    def test_path_has_no_common_neighbour(self, path_csr):
        supports = SupportArray(path_csr.total_slots)
        assert intersect_tails(path_csr, 0, 2, supports) == 0
        assert supports.total() == 0

    def test_pivot_must_hold_predecessor(self, triangle_csr):
        supports = SupportArray(triangle_csr.total_slots)
        with pytest.raises(InvalidParameterError):
            intersect_tails(triangle_csr, 0, 3, supports)
        with pytest.raises(InvalidParameterError):
            intersect_tails(triangle_csr, 2, 0, supports)


class TestComputeSupports:
    """Test compute_supports for every strategy."""

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_triangle(self, triangle_csr, strategy):
        supports, triangles = _supports_of(triangle_csr, strategy, workers=2)
        assert triangles == 1
        assert supports.counts.tolist() == [1, 1, 0, 1, 0, 0]

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_k4(self, k4_csr, strategy):
        """Test every K4 edge lies in two triangles."""
        supports, triangles = _supports_of(k4_csr, strategy, workers=3)
        live = k4_csr.col_idx != 0

        assert triangles == 4
        assert np.all(supports.counts[live] == 2)
        assert np.all(supports.counts[~live] == 0)

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_path(self, path_csr, strategy):
        supports, triangles = _supports_of(path_csr, strategy)
        assert triangles == 0
        assert supports.total() == 0

    @pytest.mark.parametrize("workers", [1, 2, 4, 8, 64])
    def test_worker_count_does_not_change_result(self, workers):
        """Test more workers than rows or slots still covers everything."""
        csr = build_csr(random_graph(30, 0.4, seed=11))
        expected, expected_triangles = _supports_of(csr)

        for strategy in (Strategy.COARSE, Strategy.FINE):
            supports, triangles = _supports_of(csr, strategy, workers)
            assert triangles == expected_triangles
            assert np.array_equal(supports.counts, expected.counts)

    def test_triple_count_identity(self, k5_pendant_csr):
        supports, triangles = _supports_of(k5_pendant_csr, Strategy.FINE, 4)
        assert supports.total() == 3 * triangles == 30

    def test_size_mismatch(self, triangle_csr):
        with pytest.raises(InvalidParameterError):
            compute_supports(triangle_csr, SupportArray(5))

    def test_sixteen_bit_overflow(self, triangle_csr):
        """Test a count past 65535 raises rather than wrapping."""
        supports = SupportArray(triangle_csr.total_slots, SupportWidth.U16)
        supports.counts[0] = 65535
        with pytest.raises(SupportOverflowError) as exc_info:
            compute_supports(triangle_csr, supports, Strategy.SERIAL)
        assert exc_info.value.slot == 0


class TestPruneEdges:
    """Test prune_edges compaction."""

    def test_all_meet_threshold(self, triangle_csr):
        supports, _ = _supports_of(triangle_csr)
        assert prune_edges(triangle_csr, supports, 3) == 0
        assert triangle_csr.col_idx.tolist() == [2, 3, 0, 3, 0, 0]

    def test_nothing_survives(self, triangle_csr):
        supports, _ = _supports_of(triangle_csr)
        assert prune_edges(triangle_csr, supports, 4) == 3
        assert triangle_csr.col_idx.tolist() == [0, 0, 0, 0, 0, 0]

    def test_bowtie_k4_removes_all(self, bowtie_csr):
        supports, _ = _supports_of(bowtie_csr)
        assert prune_edges(bowtie_csr, supports, 4) == 6
        assert not bowtie_csr.col_idx.any()

    def test_compaction_keeps_order(self, k4_pendant_csr):
        """Test survivors move to the row front and the tail is zeroed."""
        supports, _ = _supports_of(k4_pendant_csr)
        removed = prune_edges(k4_pendant_csr, supports, 3)

        assert removed == 1
        assert k4_pendant_csr.row(4).tolist() == [0, 0]
        assert k4_pendant_csr.row(1).tolist() == [2, 3, 4, 0]
        validate_csr(k4_pendant_csr)

    def test_supports_left_alone(self, triangle_csr):
        supports, _ = _supports_of(triangle_csr)
        prune_edges(triangle_csr, supports, 4)
        assert supports.total() == 3

    def test_k_below_two(self, triangle_csr):
        supports, _ = _supports_of(triangle_csr)
        with pytest.raises(InvalidParameterError):
            prune_edges(triangle_csr, supports, 1)


class TestResetSupports:
    """Test reset_supports."""

    def test_zeroes_counts(self, triangle_csr):
        supports, _ = _supports_of(triangle_csr)
        reset_supports(supports)
        assert supports.counts.tolist() == [0, 0, 0, 0, 0, 0]


class TestKtruss:
    """Test the ktruss fixpoint."""

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_triangle_k3(self, triangle_csr, strategy):
        result = ktruss(triangle_csr, 3, strategy, workers=2)

        assert result.edges == [(1, 2, 1), (1, 3, 1), (2, 3, 1)]
        assert result.iterations == 1
        assert result.removed_per_iteration == [0]
        assert result.triangles == 1

    def test_bowtie_k3_keeps_everything(self, bowtie_csr):
        result = ktruss(bowtie_csr, 3)
        assert len(result.edges) == 6
        assert all(support == 1 for _, _, support in result.edges)

    @pytest.mark.parametrize("strategy", ALL_STRATEGIES)
    def test_k4_pendant_k3(self, k4_pendant_csr, strategy):
        """Test the pendant goes in round 1 and K4 survives."""
        result = ktruss(k4_pendant_csr, 3, strategy, workers=4)

        assert result.edge_pairs() == set(K4)
        assert all(support == 2 for _, _, support in result.edges)
        assert result.iterations == 2
        assert result.removed_per_iteration == [1, 0]

    def test_k2_keeps_whole_graph(self, path_csr):
        result = ktruss(path_csr, 2)
        assert result.edges == [(1, 2, 0), (2, 3, 0)]
        assert result.removed_per_iteration == [0]

    def test_empty_truss(self, triangle_csr):
        result = ktruss(triangle_csr, 5)
        assert result.is_empty
        assert result.removed_per_iteration == [3, 0]

    def test_input_not_mutated(self, k4_pendant_csr):
        before = k4_pendant_csr.clone()
        ktruss(k4_pendant_csr, 4)
        assert k4_pendant_csr == before

    def test_observer_sees_every_round(self, k4_pendant_csr):
        """Test the observer is called once per round with a valid CSR."""
        rounds = []

        def observe(csr, index):
            validate_csr(csr)
            rounds.append((index, int(np.count_nonzero(csr.col_idx))))

        ktruss(k4_pendant_csr, 3, observer=observe)
        assert rounds == [(1, 6), (2, 6)]

    def test_k_below_two(self, triangle_csr):
        with pytest.raises(InvalidParameterError):
            ktruss(triangle_csr, 1)

    def test_monotone_and_idempotent(self):
        """Test (k+1)-truss is inside the k-truss and rerunning removes nothing."""
        edge_list = random_graph(40, 0.3, seed=5)
        csr = build_csr(edge_list)
        previous = None
        for k in range(2, 9):
            result = ktruss(csr, k)
            edges = result.edge_pairs()
            if previous is not None:
                assert edges <= previous
            previous = edges
            if edges:
                again = ktruss(csr_of(sorted(edges)), k)
                assert again.removed_per_iteration[0] == 0


class TestKmaxSearch:
    """Test kmax_search."""

    def test_k4(self, k4_csr):
        k, result = kmax_search(k4_csr)
        assert k == 4
        assert result.edge_pairs() == set(K4)
        assert all(support == 2 for _, _, support in result.edges)

    def test_path_is_triangle_free(self, path_csr):
        k, result = kmax_search(path_csr)
        assert k == 2
        assert result.edges == [(1, 2, 0), (2, 3, 0)]

    def test_k5_pendant(self, k5_pendant_csr):
        k, result = kmax_search(k5_pendant_csr, Strategy.COARSE, workers=2)
        assert k == 5
        assert result.edge_pairs() == set(K5)

    def test_two_triangles(self, two_triangles_csr):
        k, _ = kmax_search(two_triangles_csr)
        assert k == 3

    def test_boundary(self):
        """Test kmax is non-empty and kmax + 1 is empty."""
        csr = build_csr(random_graph(30, 0.5, seed=3))
        k, result = kmax_search(csr)
        assert not result.is_empty
        assert ktruss(csr, k + 1).is_empty

    def test_empty_graph_rejected(self, triangle_csr):
        triangle_csr.col_idx[:] = 0
        with pytest.raises(InvalidParameterError):
            kmax_search(triangle_csr)
