import numpy as np
import pytest

from flagmotive import _kernels
from flagmotive import build_root_system, weyl_group

pytestmark = pytest.mark.skipif(_kernels.numba_kernels is None, reason="numba not installed")


@pytest.fixture(scope="module")
def table():
    return weyl_group(build_root_system("B3"))


def test_compose_left_agrees(table):
    gens = np.ascontiguousarray(table.sys.reflection_perms)
    a = _kernels.numpy_kernels.compose_left(gens, table.perms)
    b = _kernels.numba_kernels.compose_left(gens, table.perms)
    assert np.array_equal(a, b)


def test_count_kernels_agree(table):
    rng = np.random.default_rng(7)
    npos = table.sys.npos
    weights = rng.integers(-3, 4, size=table.perms.shape[1])
    for size in (0, 1, 5, 9):
        cols = np.sort(rng.choice(table.perms.shape[1], size=size, replace=False)).astype(np.int64)
        for name in ("count_negative", "all_positive"):
            a = getattr(_kernels.numpy_kernels, name)(table.perms, cols, npos)
            b = getattr(_kernels.numba_kernels, name)(table.perms, cols, npos)
            assert np.array_equal(a, b), name
        a = _kernels.numpy_kernels.count_positive_weight(table.perms, cols, weights)
        b = _kernels.numba_kernels.count_positive_weight(table.perms, cols, weights)
        assert np.array_equal(a, b)


def test_scaled_counts_agree():
    rng = np.random.default_rng(3)
    exps = rng.integers(0, 5, size=(200, 7))
    w = rng.integers(-2, 3, size=7)
    a = _kernels.numpy_kernels.scaled_positive_counts(exps, w)
    b = _kernels.numba_kernels.scaled_positive_counts(exps, w)
    assert np.array_equal(a, b)
    assert np.all(a == (w > 0).sum())


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("MOTIVE_NUMBA", "0")
    assert _kernels._select() is _kernels.numpy_kernels
    monkeypatch.setenv("MOTIVE_NUMBA", "1")
    assert _kernels._select() is _kernels.numba_kernels
