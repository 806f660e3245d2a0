"""Estimate the number of communities by maximising weighted modularity.

For each candidate ``k`` the network is clustered with nDFA and the
partition scored with :func:`wmodk.modularity.weighted_modularity`.  The
estimate is the smallest ``k`` with the largest score.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modularity import weighted_modularity
from .spectral import check_adjacency, ndfa_from_embedding, top_k_eigen

MODES = ("argmax", "early-stop")


def derive_seed(base, *keys) -> int:
    """Mix integer ``keys`` into ``base``; distinct keys give independent streams."""
    ss = np.random.SeedSequence(int(base), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ModularityCurve:
    k_values: tuple[int, ...]
    Q_values: tuple[float, ...]
    labels_per_k: tuple[np.ndarray, ...]

    def __len__(self):
        return len(self.k_values)

    def Q(self, k: int) -> float:
        return self.Q_values[self.k_values.index(k)]


@dataclass(frozen=True)
class EstimateResult:
    k_hat: int
    curve: ModularityCurve
    labels_at_k_hat: np.ndarray
    mode: str = "argmax"

    @property
    def Q_at_k_hat(self) -> float:
        return self.curve.Q(self.k_hat)


def estimate_k(A, K0: int, seed=0, mode: str = "argmax", restarts: int = 10) -> EstimateResult:
    """Estimate the community count of ``A`` among ``k = 1 .. K0``.

    ``mode="argmax"`` scores every ``k`` and returns the smallest maximiser.
    ``mode="early-stop"`` increases ``k`` until the score stops increasing,
    i.e. returns the first ``k`` with ``Q(k+1) <= Q(k)`` (or ``K0``).

    The eigendecomposition is computed once for ``K0`` eigenpairs and
    truncated per ``k``.  The k-means seed for each ``k`` is derived from
    ``(seed, k)``, so extending ``K0`` does not change earlier points.
    """
    A = check_adjacency(A)
    n = A.shape[0]
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not 1 <= K0 <= n:
        raise ValueError(f"need 1 <= K0 <= n, got K0={K0}, n={n}")
    if seed is None:
        seed = 0

    emb = top_k_eigen(A, K0) if K0 > 1 else None
    ks, qs, labs = [], [], []
    for k in range(1, K0 + 1):
        if k == 1:
            labels = np.ones(n, dtype=np.int64)
        else:
            labels = ndfa_from_embedding(emb, k, seed=derive_seed(seed, k), restarts=restarts)
        ks.append(k)
        qs.append(weighted_modularity(A, labels).Q)
        labs.append(labels)
        if mode == "early-stop" and k > 1 and qs[-1] <= qs[-2]:
            break

    curve = ModularityCurve(tuple(ks), tuple(qs), tuple(labs))
    if mode == "argmax":
        best = int(np.argmax(qs))  # first occurrence -> smallest k
    else:
        best = len(qs) - 2 if len(qs) > 1 and qs[-1] <= qs[-2] else len(qs) - 1
    return EstimateResult(ks[best], curve, labs[best], mode)
