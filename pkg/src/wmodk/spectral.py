"""Spectral clustering for weighted and signed adjacency matrices (nDFA).

nDFA takes the eigenpairs of ``A`` with the ``k`` largest |eigenvalue|,
scales each row of the eigenvector matrix to unit length and runs k-means
on those rows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import StructuralError

SYMMETRY_ATOL = 1e-9
ZERO_ROW_TOL = 1e-12
DENSE_MAX_N = 512


@dataclass(frozen=True)
class SpectralEmbedding:
    U: np.ndarray
    eigenvalues: np.ndarray

    @property
    def k(self) -> int:
        return self.eigenvalues.size

    def truncate(self, k: int) -> "SpectralEmbedding":
        if not 1 <= k <= self.k:
            raise ValueError(f"cannot truncate a {self.k}-dimensional embedding to {k}")
        return SpectralEmbedding(self.U[:, :k], self.eigenvalues[:k])


@dataclass(frozen=True)
class NormalizedEmbedding:
    U: np.ndarray
    zero_rows: tuple[int, ...]


def check_adjacency(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise StructuralError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise StructuralError("adjacency matrix has non-finite entries")
    if A.size and np.max(np.abs(A - A.T)) > SYMMETRY_ATOL:
        raise StructuralError("adjacency matrix is not symmetric")
    return A


def _order_and_fix_signs(vals: np.ndarray, vecs: np.ndarray, k: int) -> SpectralEmbedding:
    # lexsort: last key is primary -> |lambda| desc, then lambda desc, then index asc
    idx = np.arange(vals.size)
    order = np.lexsort((idx, -vals, -np.abs(vals)))[:k]
    vals = vals[order]
    vecs = vecs[:, order].copy()
    pivots = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivots, np.arange(k)])
    signs[signs == 0] = 1.0
    vecs *= signs
    return SpectralEmbedding(vecs, vals)


def top_k_eigen(A, k: int, method: str = "auto") -> SpectralEmbedding:
    """Eigenpairs of the symmetric matrix ``A`` with the ``k`` largest |eigenvalue|.

    Eigenvalues are ordered by descending magnitude; ties go to the larger
    signed value, then to the lower position in the ascending spectrum.
    Each eigenvector is oriented so its largest-magnitude entry is positive.

    ``method`` is ``"dense"``, ``"lanczos"`` or ``"auto"`` (dense up to
    n = 512, or whenever k is large relative to n).
    """
    A = check_adjacency(A)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if method == "auto":
        method = "dense" if n <= DENSE_MAX_N or 4 * k >= n else "lanczos"
    if method == "dense":
        vals, vecs = scipy.linalg.eigh(A)
    elif method == "lanczos":
        if k >= n - 1:
            raise ValueError("lanczos needs k < n - 1; use the dense solver")
        # extra eigenpairs so ties at the cut are resolved by the ordering rule
        extra = min(n - 2, k + 2)
        v0 = np.full(n, 1.0 / np.sqrt(n))
        vals, vecs = scipy.sparse.linalg.eigsh(A, k=extra, which="LM", v0=v0, tol=1e-12)
        asc = np.argsort(vals, kind="stable")
        vals, vecs = vals[asc], vecs[:, asc]
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return _order_and_fix_signs(vals, vecs, k)


def row_normalize(emb: SpectralEmbedding | np.ndarray) -> NormalizedEmbedding:
    """Scale every row to unit Euclidean norm; rows with norm <= 1e-12 are left alone."""
    U = emb.U if isinstance(emb, SpectralEmbedding) else np.asarray(emb, dtype=float)
    norms = np.linalg.norm(U, axis=1)
    zero = norms <= ZERO_ROW_TOL
    out = U.copy()
    out[~zero] /= norms[~zero, None]
    return NormalizedEmbedding(out, tuple(np.flatnonzero(zero).tolist()))


def canonical_labels(assign) -> np.ndarray:
    """Relabel to 1, 2, ... in order of first appearance."""
    assign = np.asarray(assign)
    _, first, inverse = np.unique(assign, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(1, first.size + 1)
    return rank[inverse.reshape(-1)]


@numba.njit(cache=True)
def _seed_centers(X, k, first, draws):
    # k-means++: each new center is drawn with probability ~ squared distance
    # to the nearest existing center; draws are pre-sampled uniforms in [0, 1)
    n, dim = X.shape
    centers = np.empty((k, dim))
    centers[0] = X[first]
    closest = np.empty(n)
    for i in range(n):
        closest[i] = np.sum((X[i] - centers[0]) ** 2)
    for c in range(1, k):
        total = closest.sum()
        if total > 0.0:
            target = draws[c - 1] * total
            pick = n - 1
            acc = 0.0
            for i in range(n):
                acc += closest[i]
                if acc > target:
                    pick = i
                    break
        else:
            pick = min(int(draws[c - 1] * n), n - 1)
        centers[c] = X[pick]
        for i in range(n):
            d = np.sum((X[i] - centers[c]) ** 2)
            if d < closest[i]:
                closest[i] = d
    return centers


@numba.njit(cache=True)
def _lloyd(X, centers, max_iter, tol):
    n, dim = X.shape
    k = centers.shape[0]
    assign = np.full(n, -1, dtype=np.int64)
    new_assign = np.empty(n, dtype=np.int64)
    point_d = np.empty(n)
    counts = np.zeros(k, dtype=np.int64)
    for _ in range(max_iter):
        counts[:] = 0
        for i in range(n):
            best, best_d = 0, np.inf
            for c in range(k):
                d = 0.0
                for j in range(dim):
                    diff = X[i, j] - centers[c, j]
                    d += diff * diff
                if d < best_d:
                    best, best_d = c, d
            new_assign[i] = best
            point_d[i] = best_d
            counts[best] += 1
        # empty clusters: hand each the point farthest from its centroid
        for c in range(k):
            if counts[c] > 0:
                continue
            far, far_d = -1, -1.0
            for i in range(n):
                if counts[new_assign[i]] > 1 and point_d[i] > far_d:
                    far, far_d = i, point_d[i]
            if far < 0:
                break
            counts[new_assign[far]] -= 1
            new_assign[far] = c
            counts[c] = 1
            point_d[far] = 0.0
        new_centers = np.zeros((k, dim))
        for i in range(n):
            new_centers[new_assign[i]] += X[i]
        shift = 0.0
        for c in range(k):
            if counts[c] > 0:
                new_centers[c] /= counts[c]
            else:
                new_centers[c] = centers[c]
            for j in range(dim):
                shift = max(shift, abs(new_centers[c, j] - centers[c, j]))
        converged = True
        for i in range(n):
            if assign[i] != new_assign[i]:
                converged = False
            assign[i] = new_assign[i]
        centers = new_centers
        if converged or shift < tol:
            break
    wcss = 0.0
    for i in range(n):
        wcss += np.sum((X[i] - centers[assign[i]]) ** 2)
    return assign, wcss


def kmeans(points, k: int, seed=None, restarts: int = 10, max_iter: int = 300, tol: float = 1e-9) -> np.ndarray:
    """Lloyd's k-means with seeded k-means++ initialisation.

    Returns 1-based labels, canonicalised by order of first appearance,
    from the restart with the lowest within-cluster sum of squares
    (earliest restart wins ties).
    """
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n = X.shape[0]
    if k < 1 or n < k:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == 1:
        return np.ones(n, dtype=np.int64)
    X = np.ascontiguousarray(X)
    best, best_wcss = None, np.inf
    for child in np.random.SeedSequence(seed).spawn(max(1, restarts)):
        rng = np.random.default_rng(child)
        first = int(rng.integers(n))
        centers = _seed_centers(X, k, first, rng.random(k - 1))
        assign, wcss = _lloyd(X, centers, max_iter, tol)
        if wcss < best_wcss:
            best, best_wcss = assign, wcss
    return canonical_labels(best)


def wcss(points, labels) -> float:
    """Within-cluster sum of squared distances to cluster means."""
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    labels = np.asarray(labels)
    total = 0.0
    for c in np.unique(labels):
        block = X[labels == c]
        total += float(np.sum((block - block.mean(axis=0)) ** 2))
    return total


def ndfa_from_embedding(emb: SpectralEmbedding, k: int, seed=None, restarts: int = 10) -> np.ndarray:
    """Cluster the first ``k`` columns of a precomputed embedding."""
    n = emb.U.shape[0]
    if k == 1:
        return np.ones(n, dtype=np.int64)
    normed = row_normalize(emb.truncate(k))
    return kmeans(normed.U, k, seed=seed, restarts=restarts)


def ndfa(A, k: int, seed=None, restarts: int = 10) -> np.ndarray:
    """Estimate ``k`` community labels for ``A`` by normalised spectral clustering."""
    A = check_adjacency(A)
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == 1:
        return np.ones(n, dtype=np.int64)
    return ndfa_from_embedding(top_k_eigen(A, k), k, seed=seed, restarts=restarts)
