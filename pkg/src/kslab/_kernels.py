"""Integer kernels with a numba path and a pure-numpy fallback.

Set ``KSLAB_DISABLE_NUMBA=1`` (or run without numba installed) to force the
numpy implementations.  Both paths return identical int64 arrays.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["USE_NUMBA", "word_histogram", "series_mul", "backend_name"]


def _numba_wanted() -> bool:
    return os.environ.get("KSLAB_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes")


try:
    if not _numba_wanted():
        raise ImportError
    from numba import njit

    USE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    njit = None
    USE_NUMBA = False


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# products of transpositions
# ---------------------------------------------------------------------------


def _word_histogram_py(comp, gens, length, identity):
    """hist[p] = number of words g_length ... g_1 over gens with product p (DFS)."""
    nperm = comp.shape[0]
    hist = np.zeros(nperm, np.int64)
    if length == 0:
        hist[identity] += 1
        return hist
    ngen = gens.shape[0]
    choice = np.zeros(length, np.int64)
    prods = np.empty(length + 1, np.int64)
    prods[0] = identity
    level = 0
    while level >= 0:
        if choice[level] < ngen:
            p = comp[gens[choice[level]], prods[level]]
            choice[level] += 1
            if level == length - 1:
                hist[p] += 1
            else:
                prods[level + 1] = p
                level += 1
                choice[level] = 0
        else:
            level -= 1
    return hist


def _word_histogram_np(comp, gens, length, identity):
    """Same counts, one layer of words at a time."""
    nperm = comp.shape[0]
    hist = np.zeros(nperm, np.int64)
    hist[identity] = 1
    for _ in range(length):
        nxt = np.zeros(nperm, np.int64)
        for g in gens:
            np.add.at(nxt, comp[g], hist)
        hist = nxt
    return hist


# ---------------------------------------------------------------------------
# truncated multivariate power series with int64 coefficients
# ---------------------------------------------------------------------------


def _series_mul_py(a, b):
    """Dense truncated product of two 3-D coefficient arrays (same shape)."""
    X, Y, Z = a.shape
    out = np.zeros_like(a)
    for i1 in range(X):
        for j1 in range(Y):
            for k1 in range(Z):
                c = a[i1, j1, k1]
                if c == 0:
                    continue
                for i2 in range(X - i1):
                    for j2 in range(Y - j1):
                        for k2 in range(Z - k1):
                            d = b[i2, j2, k2]
                            if d != 0:
                                out[i1 + i2, j1 + j2, k1 + k2] += c * d
    return out


def _series_mul_np(a, b):
    X, Y, Z = a.shape
    out = np.zeros_like(a)
    for i1, j1, k1 in zip(*np.nonzero(a)):
        out[i1:, j1:, k1:] += a[i1, j1, k1] * b[: X - i1, : Y - j1, : Z - k1]
    return out


if USE_NUMBA:
    _word_histogram = njit(cache=True, nogil=True)(_word_histogram_py)
    _series_mul = njit(cache=True, nogil=True)(_series_mul_py)
else:
    _word_histogram = _word_histogram_np
    _series_mul = _series_mul_np

_INT64_GUARD = 2**62


def word_histogram(comp: np.ndarray, gens: np.ndarray, length: int, identity: int) -> np.ndarray:
    comp = np.ascontiguousarray(comp, dtype=np.int64)
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    return _word_histogram(comp, gens, int(length), int(identity))


def series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product; raises OverflowError if int64 could overflow."""
    if a.shape != b.shape:
        raise ValueError("operands must share a truncation shape")
    bound = int(np.abs(a).sum(dtype=object)) * int(np.abs(b).max(initial=0))
    if bound >= _INT64_GUARD:
        raise OverflowError("coefficients too large for the int64 kernels")
    return _series_mul(np.ascontiguousarray(a, np.int64), np.ascontiguousarray(b, np.int64))
