"""Both kernel backends against the reference implementation and each other."""

import math

import numpy as np
import pytest

from helpers_oracle import oracle_diameter, oracle_rainbow_k_connected
from rainbowbip import kernels
from rainbowbip.graphs import BipartiteGraph, EdgeColoring
from rainbowbip.kernels import numpy_impl


@pytest.fixture
def numba_impl():
    mod = pytest.importorskip("rainbowbip.kernels.numba_impl")
    return mod


def random_instance(rng, max_side=7, max_colors=6):
    m = int(rng.integers(1, max_side + 1))
    n = int(rng.integers(1, max_side + 1))
    adj = rng.random((m, n)) < rng.random()
    ncol = int(rng.integers(1, max_colors + 1))
    colors = rng.integers(1, ncol + 1, size=(m, n), dtype=np.uint8)
    return adj, colors, ncol


def as_objects(adj, colors, ncol):
    g = BipartiteGraph.from_edge_matrix(adj)
    mapping = {
        (int(u), int(v)): int(colors[u, v]) for u, v in zip(*np.nonzero(adj))
    }
    return g, EdgeColoring(ncol, mapping)


class TestBackendSelection:
    def test_env_forced_numpy(self, monkeypatch):
        monkeypatch.setenv("RAINBOW_BACKEND", "numpy")
        kernels.reset_backend()
        try:
            assert kernels.backend_name() == "numpy"
        finally:
            kernels.reset_backend()

    def test_bad_env_rejected(self, monkeypatch):
        monkeypatch.setenv("RAINBOW_BACKEND", "gpu")
        kernels.reset_backend()
        try:
            with pytest.raises(ValueError):
                kernels.backend_name()
        finally:
            kernels.reset_backend()

    def test_auto_picks_something(self, monkeypatch):
        monkeypatch.delenv("RAINBOW_BACKEND", raising=False)
        kernels.reset_backend()
        try:
            assert kernels.backend_name() in ("numba", "numpy")
        finally:
            kernels.reset_backend()


class TestFastGate:
    def test_supported_region(self):
        assert kernels.fast_rainbow_supported(1, 3, 3)
        assert kernels.fast_rainbow_supported(1, 4, 8)
        assert kernels.fast_rainbow_supported(1, 1, 1)

    def test_unsupported(self):
        assert not kernels.fast_rainbow_supported(2, 3, 3)  # k > 1
        assert not kernels.fast_rainbow_supported(1, 5, 3)  # too long
        assert not kernels.fast_rainbow_supported(1, 3, 9)  # palette too large
        assert not kernels.fast_rainbow_supported(1, 0, 3)


class TestDiamLe:
    def test_validation(self):
        adj = np.ones((2, 2), dtype=bool)
        with pytest.raises(ValueError):
            kernels.diam_le(adj, 0)

    def test_small_cases(self):
        one = np.ones((1, 1), dtype=bool)
        assert kernels.diam_le(one, 1)
        assert not kernels.diam_le(np.zeros((1, 1), dtype=bool), 4)
        # complete graphs have diameter 2 once both sides have >= 2 vertices
        full = np.ones((3, 4), dtype=bool)
        assert not kernels.diam_le(full, 1)
        assert kernels.diam_le(full, 2)

    def test_matches_oracle_both_backends(self, numba_impl):
        rng = np.random.default_rng(17)
        for _ in range(150):
            adj, _, _ = random_instance(rng)
            g = BipartiteGraph.from_edge_matrix(adj)
            want = oracle_diameter(g)
            for limit in (1, 2, 3, 4, 5):
                expect = want <= limit
                assert numpy_impl.diam_le(adj, limit) == expect
                assert numba_impl.diam_le(adj, limit) == expect

    def test_large_random_agreement(self, numba_impl):
        rng = np.random.default_rng(23)
        for p in (0.005, 0.02, 0.08, 0.3):
            adj = rng.random((150, 130)) < p
            for limit in (2, 3, 4):
                assert numpy_impl.diam_le(adj, limit) == numba_impl.diam_le(adj, limit)


class TestRainbowK1:
    def test_validation(self):
        adj = np.ones((2, 2), dtype=bool)
        colors = np.ones((2, 2), dtype=np.uint8)
        with pytest.raises(ValueError):
            kernels.rainbow_k1(adj, colors, 9, 3)
        with pytest.raises(ValueError):
            kernels.rainbow_k1(adj, np.ones((2, 3), dtype=np.uint8), 2, 3)

    def test_matches_reference_both_backends(self, numba_impl):
        from rainbowbip.rainbow import is_rainbow_k_connected

        rng = np.random.default_rng(5)
        checked = 0
        for _ in range(250):
            adj, colors, ncol = random_instance(rng, max_side=6, max_colors=5)
            g, col = as_objects(adj, colors, ncol)
            for max_len in (2, 3, 4):
                want, _ = is_rainbow_k_connected(g, col, 1, max_len)
                assert numpy_impl.rainbow_k1(adj, colors, ncol, max_len) == want
                assert numba_impl.rainbow_k1(adj, colors, ncol, max_len) == want
                checked += 1
        assert checked == 750

    def test_matches_oracle_spot(self, numba_impl):
        rng = np.random.default_rng(8)
        for _ in range(40):
            adj, colors, ncol = random_instance(rng, max_side=4, max_colors=4)
            g, col = as_objects(adj, colors, ncol)
            want, _ = oracle_rainbow_k_connected(g, col, 1, max_edges=4)
            assert numpy_impl.rainbow_k1(adj, colors, ncol, 4) == want

    def test_degenerate_sides(self, numba_impl):
        rng = np.random.default_rng(3)
        for shape in [(1, 1), (1, 6), (6, 1), (1, 2), (2, 1)]:
            for _ in range(20):
                adj = rng.random(shape) < 0.5
                ncol = 3
                colors = rng.integers(1, 4, size=shape, dtype=np.uint8)
                for max_len in (2, 3, 4):
                    a = numpy_impl.rainbow_k1(adj, colors, ncol, max_len)
                    b = numba_impl.rainbow_k1(adj, colors, ncol, max_len)
                    assert a == b
                    g, col = as_objects(adj, colors, ncol)
                    from rainbowbip.rainbow import is_rainbow_k_connected

                    want, _ = is_rainbow_k_connected(g, col, 1, max_len)
                    assert a == want

    def test_monochromatic_needs_direct_edges(self, numba_impl):
        # all edges share one color: only adjacent pairs can be joined
        adj = np.ones((2, 2), dtype=bool)
        colors = np.ones((2, 2), dtype=np.uint8)
        assert not numpy_impl.rainbow_k1(adj, colors, 1, 4)
        assert not numba_impl.rainbow_k1(adj, colors, 1, 4)

    def test_distinct_colors_complete(self, numba_impl):
        adj = np.ones((3, 3), dtype=bool)
        colors = np.arange(9, dtype=np.uint8).reshape(3, 3) % 8 + 1
        assert numpy_impl.rainbow_k1(adj, colors, 8, 4)
        assert numba_impl.rainbow_k1(adj, colors, 8, 4)

    def test_larger_random_agreement(self, numba_impl):
        rng = np.random.default_rng(11)
        for p in (0.05, 0.12, 0.3):
            adj = rng.random((80, 90)) < p
            colors = rng.integers(1, 4, size=(80, 90), dtype=np.uint8)
            for max_len in (3, 4):
                assert numpy_impl.rainbow_k1(adj, colors, 3, max_len) == numba_impl.rainbow_k1(
                    adj, colors, 3, max_len
                )


class TestShortWalkExactness:
    """The kernels accept color-distinct walks of <= 4 edges; those are
    automatically simple in a bipartite graph, so no overcounting occurs.
    This is exercised indirectly above; here a direct stress on dense
    small graphs where revisits would be most likely."""

    def test_dense_tiny(self, numba_impl):
        from rainbowbip.rainbow import is_rainbow_k_connected

        rng = np.random.default_rng(29)
        for _ in range(60):
            m, n = int(rng.integers(2, 4)), int(rng.integers(2, 4))
            adj = np.ones((m, n), dtype=bool)
            ncol = int(rng.integers(2, 4))
            colors = rng.integers(1, ncol + 1, size=(m, n), dtype=np.uint8)
            g, col = as_objects(adj, colors, ncol)
            for max_len in (2, 3, 4):
                want, _ = is_rainbow_k_connected(g, col, 1, max_len)
                assert numpy_impl.rainbow_k1(adj, colors, ncol, max_len) == want
                assert numba_impl.rainbow_k1(adj, colors, ncol, max_len) == want
