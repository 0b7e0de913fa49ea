"""
Hot inner loops over Weyl-group tables.

Every kernel exists twice: a numba ``@njit`` version and a vectorised numpy
version with identical semantics. ``MOTIVE_NUMBA=0`` (or numba missing)
selects the numpy path at import time. Both are importable explicitly as
``numba_kernels`` / ``numpy_kernels`` for testing and benchmarking.

Conventions: a Weyl element is a row of ``perms`` (``int32``), giving the
image of every root index. Roots ``0 .. npos-1`` are positive, the rest
negative.
"""

import os
import types

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


# --------------------------------------------------------------------------
# numpy reference path
# --------------------------------------------------------------------------


def _np_compose_left(gens, perms):
    """All products ``g * w``; result row ``k * n_gens + i`` is ``gens[i] * perms[k]``."""
    out = gens[:, perms]  # (n_gens, N, R)
    return np.ascontiguousarray(out.transpose(1, 0, 2).reshape(-1, perms.shape[1]))


def _np_count_negative(perms, cols, npos):
    if len(cols) == 0:
        return np.zeros(perms.shape[0], dtype=np.int64)
    return (perms[:, cols] >= npos).sum(axis=1).astype(np.int64)


def _np_count_positive_weight(perms, cols, weights):
    if len(cols) == 0:
        return np.zeros(perms.shape[0], dtype=np.int64)
    return (weights[perms[:, cols]] > 0).sum(axis=1).astype(np.int64)


def _np_all_positive(perms, cols, npos):
    if len(cols) == 0:
        return np.ones(perms.shape[0], dtype=np.bool_)
    return (perms[:, cols] < npos).all(axis=1)


def _np_scaled_positive_counts(exponents, weights):
    # p > 0 symbolically, so sign(p**n * w) == sign(w); the exponent only has
    # to be a finite nonnegative integer.
    if exponents.shape[1] == 0:
        return np.zeros(exponents.shape[0], dtype=np.int64)
    finite = exponents >= 0
    return (finite & (weights[None, :] > 0)).sum(axis=1).astype(np.int64)


numpy_kernels = types.SimpleNamespace(
    name="numpy",
    compose_left=_np_compose_left,
    count_negative=_np_count_negative,
    count_positive_weight=_np_count_positive_weight,
    all_positive=_np_all_positive,
    scaled_positive_counts=_np_scaled_positive_counts,
)


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_compose_left(gens, perms):
        n_gens, n_roots = gens.shape
        n = perms.shape[0]
        out = np.empty((n * n_gens, n_roots), dtype=perms.dtype)
        for k in range(n):
            for i in range(n_gens):
                row = k * n_gens + i
                for r in range(n_roots):
                    out[row, r] = gens[i, perms[k, r]]
        return out

    @njit(cache=True)
    def _nb_count_negative(perms, cols, npos):
        n = perms.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for k in range(n):
            c = 0
            for j in cols:
                if perms[k, j] >= npos:
                    c += 1
            out[k] = c
        return out

    @njit(cache=True)
    def _nb_count_positive_weight(perms, cols, weights):
        n = perms.shape[0]
        out = np.zeros(n, dtype=np.int64)
        for k in range(n):
            c = 0
            for j in cols:
                if weights[perms[k, j]] > 0:
                    c += 1
            out[k] = c
        return out

    @njit(cache=True)
    def _nb_all_positive(perms, cols, npos):
        n = perms.shape[0]
        out = np.ones(n, dtype=np.bool_)
        for k in range(n):
            for j in cols:
                if perms[k, j] >= npos:
                    out[k] = False
                    break
        return out

    @njit(cache=True)
    def _nb_scaled_positive_counts(exponents, weights):
        n, m = exponents.shape
        out = np.zeros(n, dtype=np.int64)
        for k in range(n):
            c = 0
            for j in range(m):
                # finite exponent and p**e > 0: sign comes from the weight alone
                if exponents[k, j] >= 0 and weights[j] > 0:
                    c += 1
            out[k] = c
        return out

    numba_kernels = types.SimpleNamespace(
        name="numba",
        compose_left=_nb_compose_left,
        count_negative=_nb_count_negative,
        count_positive_weight=_nb_count_positive_weight,
        all_positive=_nb_all_positive,
        scaled_positive_counts=_nb_scaled_positive_counts,
    )
else:  # pragma: no cover
    numba_kernels = None


def _select():
    flag = os.environ.get("MOTIVE_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "no", "off") or numba_kernels is None:
        return numpy_kernels
    return numba_kernels


kernels = _select()
