"""Weighted modularity for adjacency matrices with arbitrary real entries.

The matrix is split into positive and negative parts ``A = A+ - A-``.
Newman-Girvan modularity is computed on each part (``Q+`` and ``Q-``, each
zero when its part is empty) and combined as::

    Q = (2m+ Q+ - 2m- Q-) / (2m+ + 2m-)

where ``m+`` / ``m-`` are half the total positive / negative weight.  For
nonnegative matrices this is ordinary Newman-Girvan modularity.  Diagonal
entries take part in all sums.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StructuralError


@dataclass(frozen=True)
class SignSplit:
    plus: np.ndarray
    minus: np.ndarray


@dataclass(frozen=True)
class DegreeSummary:
    dplus: np.ndarray
    dminus: np.ndarray
    mplus: float
    mminus: float


@dataclass(frozen=True)
class PartitionScore:
    labels: np.ndarray
    Q: float
    Qplus: float
    Qminus: float
    summary: DegreeSummary


def sign_split(A) -> SignSplit:
    A = np.asarray(A, dtype=float)
    return SignSplit(np.maximum(A, 0.0), np.maximum(-A, 0.0))


def degree_summary(split: SignSplit) -> DegreeSummary:
    dplus = split.plus.sum(axis=1)
    dminus = split.minus.sum(axis=1)
    return DegreeSummary(dplus, dminus, float(dplus.sum()) / 2.0, float(dminus.sum()) / 2.0)


def _part_modularity(part: np.ndarray, degrees: np.ndarray, m: float, groups: np.ndarray, n_groups: int) -> float:
    if not m > 0:
        return 0.0
    two_m = 2.0 * m
    within = float(part[groups[:, None] == groups[None, :]].sum())
    group_degree = np.bincount(groups, weights=degrees, minlength=n_groups)
    return (within - float(group_degree @ group_degree) / two_m) / two_m


def weighted_modularity(A, labels) -> PartitionScore:
    """Score the partition ``labels`` of the weighted, possibly signed matrix ``A``."""
    A = np.asarray(A, dtype=float)
    labels = np.asarray(labels)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise StructuralError(f"adjacency matrix must be square, got shape {A.shape}")
    if labels.shape != (A.shape[0],):
        raise StructuralError(f"labels have shape {labels.shape}, expected ({A.shape[0]},)")
    _, groups = np.unique(labels, return_inverse=True)
    groups = groups.reshape(-1)
    n_groups = int(groups.max()) + 1 if groups.size else 0

    split = sign_split(A)
    summary = degree_summary(split)
    qplus = _part_modularity(split.plus, summary.dplus, summary.mplus, groups, n_groups)
    qminus = _part_modularity(split.minus, summary.dminus, summary.mminus, groups, n_groups)
    total = 2.0 * summary.mplus + 2.0 * summary.mminus
    if total > 0:
        Q = (2.0 * summary.mplus * qplus - 2.0 * summary.mminus * qminus) / total
    else:
        Q = 0.0
    return PartitionScore(labels, float(Q), qplus, qminus, summary)


def modularity(A, labels) -> float:
    return weighted_modularity(A, labels).Q
