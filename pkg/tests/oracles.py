"""Slow, literal reference implementations used as test oracles.

Nothing here imports the code under test.
"""
import itertools

import networkx as nx
import numpy as np


def literal_modularity(A, labels):
    """Weighted signed modularity evaluated as the plain O(n^2) double sum."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    Ap = [[max(0.0, A[i][j]) for j in range(n)] for i in range(n)]
    Am = [[max(0.0, -A[i][j]) for j in range(n)] for i in range(n)]
    dp = [sum(row) for row in Ap]
    dm = [sum(row) for row in Am]
    mp, mm = sum(dp) / 2, sum(dm) / 2

    def part(M, d, m):
        if m <= 0:
            return 0.0
        total = 0.0
        for i in range(n):
            for j in range(n):
                if labels[i] == labels[j]:
                    total += M[i][j] - d[i] * d[j] / (2 * m)
        return total / (2 * m)

    qp, qm = part(Ap, dp, mp), part(Am, dm, mm)
    if mp + mm == 0:
        return 0.0
    return (2 * mp * qp - 2 * mm * qm) / (2 * mp + 2 * mm)


def networkx_modularity(A, labels):
    """Newman-Girvan modularity from networkx; ``A`` nonnegative with zero diagonal."""
    A = np.asarray(A, dtype=float)
    G = nx.from_numpy_array(A)
    groups = {}
    for node, lab in enumerate(labels):
        groups.setdefault(lab, set()).add(node)
    return nx.community.modularity(G, list(groups.values()), weight="weight")


def triple_loop_omega(labels, P, theta):
    """Omega[i][j] = theta_i theta_j P[l_i][l_j] with 1-based labels."""
    n = len(labels)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = theta[i] * theta[j] * P[labels[i] - 1][labels[j] - 1]
    return out


def exhaustive_min_wcss(X, k):
    """Smallest within-cluster sum of squares over every assignment to k clusters."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    best = np.inf
    for assign in itertools.product(range(k), repeat=n):
        if assign[0] != 0:  # label symmetry
            continue
        total = 0.0
        for c in range(k):
            members = [i for i in range(n) if assign[i] == c]
            if not members:
                continue
            block = X[members]
            total += float(((block - block.mean(axis=0)) ** 2).sum())
        best = min(best, total)
    return best


def permutation_accuracy(true, pred, K):
    """Best fraction of matching labels over all relabelings of ``pred``."""
    true = np.asarray(true)
    pred = np.asarray(pred)
    best = 0.0
    for perm in itertools.permutations(range(1, K + 1)):
        mapped = np.array([perm[p - 1] if p <= K else 0 for p in pred])
        best = max(best, float(np.mean(mapped == true)))
    return best
