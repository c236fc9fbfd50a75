"""Property suite: the compiled truss engine against the brute-force oracle."""

import numpy as np
import pytest

from eager_ktruss.models.graph import EdgeList
from eager_ktruss.models.truss import Strategy, SupportArray
from eager_ktruss.utils.graph_io import build_csr, validate_csr
from eager_ktruss.utils.oracle import (
    oracle_edge_supports,
    oracle_kmax,
    oracle_ktruss,
    oracle_triangle_count,
    random_graph,
)
from eager_ktruss.utils.truss_engine import compute_supports, kmax_search, ktruss
from tests.sample_graphs import K4, K5, PATH, TWO_TRIANGLES, csr_of

PROBABILITIES = (0.05, 0.1, 0.3, 0.6, 1.0)
ORACLE_SEEDS = range(200)
KMAX_SEEDS = range(60)


def _sample(seed: int) -> EdgeList:
    """Graph ``seed`` of the suite: n in 16..64, probability cycling."""
    n = 16 + (seed * 7) % 49
    return random_graph(n, PROBABILITIES[seed % len(PROBABILITIES)], seed)


def _expected(edge_list: EdgeList, k: int) -> dict[tuple[int, int], int]:
    survivors = EdgeList(
        num_vertices=edge_list.num_vertices,
        edges=sorted(oracle_ktruss(edge_list, k)),
        original_ids=edge_list.original_ids,
    )
    return oracle_edge_supports(survivors)


class TestOracleEquivalence:
    """Every strategy matches the oracle's edges and supports for every k."""

    @pytest.mark.parametrize("seed", ORACLE_SEEDS)
    def test_random_graph(self, seed):
        edge_list = _sample(seed)
        csr = build_csr(edge_list)
        upper = oracle_kmax(edge_list) + 1

        for k in range(2, upper + 1):
            expected = _expected(edge_list, k)
            for strategy in Strategy:
                result = ktruss(csr, k, strategy, workers=4)
                actual = {(u, v): support for u, v, support in result.edges}
                assert actual == expected, f"k={k} strategy={strategy.value}"


class TestTripleCountIdentity:
    """Support sum is three times the triangle count, which matches the oracle."""

    @pytest.mark.parametrize("seed", range(0, 200, 4))
    def test_random_graph(self, seed):
        edge_list = _sample(seed)
        csr = build_csr(edge_list)
        supports = SupportArray(csr.total_slots)

        triangles = compute_supports(csr, supports, Strategy.FINE, workers=4)

        assert supports.total() == 3 * triangles
        assert triangles == oracle_triangle_count(edge_list)


class TestKmaxAgainstOracle:
    """kmax_search matches the oracle's linear scan."""

    @pytest.mark.parametrize("seed", KMAX_SEEDS)
    def test_random_graph(self, seed):
        edge_list = _sample(seed)
        k, result = kmax_search(build_csr(edge_list), Strategy.FINE, workers=2)

        assert k == oracle_kmax(edge_list)
        assert result.edge_pairs() == oracle_ktruss(edge_list, k)

    @pytest.mark.parametrize(
        ("pairs", "expected"), [(K4, 4), (K5, 5), (PATH, 2), (TWO_TRIANGLES, 3)]
    )
    def test_fixed_cases(self, pairs, expected):
        k, _ = kmax_search(csr_of(pairs))
        assert k == expected


class TestCsrInvariantsPerRound:
    """The CSR stays valid after every prune round."""

    @pytest.mark.parametrize("seed", range(0, 200, 10))
    def test_random_graph(self, seed):
        edge_list = _sample(seed)
        csr = build_csr(edge_list)
        slots = edge_list.num_edges + edge_list.num_vertices

        def check(work, _index):
            validate_csr(work)
            assert work.total_slots == slots

        for k in (3, 4, 5):
            for strategy in Strategy:
                ktruss(csr, k, strategy, workers=3, observer=check)

        assert np.count_nonzero(csr.col_idx) == edge_list.num_edges
