"""Vectorised numpy versions of the hot loops (fallback for the compiled core)."""
from __future__ import annotations

import numpy as np


def grid_points(n: int, d: int) -> np.ndarray:
    """All points of (Z/d)^n in lexicographic order, shape (d**n, n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = np.indices((d,) * n, dtype=np.int64).reshape(n, -1)
    return np.ascontiguousarray(axes.T)


def _index(points: np.ndarray, d: int) -> np.ndarray:
    n = points.shape[1]
    weights = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return points @ weights


def orbit_labels(gens: np.ndarray, d: int) -> np.ndarray:
    """For each grid point of (Z/d)^n, the smallest index in its orbit.

    ``gens`` has shape (g, n, n); the generated group must be finite and the
    generators involutions (true for simple reflections), so the orbit graph
    is undirected and min-label propagation converges to the orbit minimum.
    """
    gens = np.asarray(gens, dtype=np.int64)
    n = gens.shape[1] if gens.ndim == 3 else 0
    pts = grid_points(n, d)
    size = pts.shape[0]
    labels = np.arange(size, dtype=np.int64)
    if n == 0 or len(gens) == 0:
        return labels
    perms = [_index(np.mod(pts @ g.T, d), d) for g in gens]
    while True:
        new = labels
        for perm in perms:
            new = np.minimum(new, new[perm])
        # pointer jumping speeds up long chains
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def stabilizer_mask(mats: np.ndarray, k: np.ndarray, d: int) -> np.ndarray:
    """``(M k - k) == 0 mod d`` for every matrix M of the stack."""
    mats = np.asarray(mats, dtype=np.int64)
    k = np.asarray(k, dtype=np.int64)
    if mats.shape[1] == 0:
        return np.ones(mats.shape[0], dtype=bool)
    diff = mats @ k - k
    return np.all(np.mod(diff, d) == 0, axis=1)


def positive_mask(mats: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """True where the element sends every column of ``roots`` to a positive root."""
    mats = np.asarray(mats, dtype=np.int64)
    roots = np.asarray(roots, dtype=np.int64)
    if roots.size == 0:
        return np.ones(mats.shape[0], dtype=bool)
    images = mats @ roots
    return np.all(images.sum(axis=1) > 0, axis=1)
