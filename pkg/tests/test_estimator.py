import itertools

import numpy as np
import pytest

from oracles import literal_modularity
from wmodk.estimator import derive_seed, estimate_k
from wmodk.model import expectation_matrix, membership_from_labels
from wmodk.sampler import DistributionSpec, sample_adjacency, sample_labels

TWO_BLOCKS = np.kron(np.eye(2), np.ones((4, 4))) - np.eye(8)


def test_two_blocks():
    result = estimate_k(TWO_BLOCKS, 5, seed=0)
    assert result.k_hat == 2
    np.testing.assert_array_equal(result.labels_at_k_hat, [1, 1, 1, 1, 2, 2, 2, 2])
    assert result.Q_at_k_hat == pytest.approx(0.5)


def test_two_blocks_best_over_all_partitions():
    # no partition of the 8 nodes into at most 4 groups beats the block split
    best = max(literal_modularity(TWO_BLOCKS, (0,) + rest) for rest in itertools.product(range(4), repeat=7))
    assert best == pytest.approx(0.5, abs=1e-12)


def test_single_node():
    result = estimate_k(np.zeros((1, 1)), 1)
    assert result.k_hat == 1
    assert result.curve.Q_values == (0.0,)


def test_bad_caps():
    with pytest.raises(ValueError):
        estimate_k(np.eye(3), 4)
    with pytest.raises(ValueError):
        estimate_k(np.eye(3), 0)
    with pytest.raises(ValueError):
        estimate_k(np.eye(3), 2, mode="greedy")


def _planted(seed, K=3, n=150):
    labels = sample_labels(n, K, seed)
    P = np.full((K, K), 0.1) + 0.9 * np.eye(K)
    omega = expectation_matrix(membership_from_labels(labels, K), P, np.full(n, 0.8))
    return sample_adjacency(omega, DistributionSpec("bernoulli"), seed + 1)


def test_argmax_contract_and_determinism():
    A = _planted(4)
    r1, r2 = estimate_k(A, 8, seed=3), estimate_k(A, 8, seed=3)
    assert r1.k_hat == r2.k_hat == 3
    assert r1.curve.Q_values == r2.curve.Q_values
    qs = r1.curve.Q_values
    assert r1.curve.k_values == tuple(range(1, 9))
    assert qs[0] == 0.0
    assert max(qs) == r1.Q_at_k_hat
    assert all(q < r1.Q_at_k_hat for q in qs[: r1.k_hat - 1])


def test_curve_prefix_stable_when_cap_grows():
    A = _planted(6)
    short, long = estimate_k(A, 4, seed=1), estimate_k(A, 7, seed=1)
    assert long.curve.Q_values[:4] == pytest.approx(short.curve.Q_values, abs=1e-12)


def test_early_stop_contract():
    A = _planted(9)
    result = estimate_k(A, 10, seed=2, mode="early-stop")
    qs = result.curve.Q_values
    assert all(qs[i + 1] > qs[i] for i in range(result.k_hat - 1))
    if len(qs) > result.k_hat:
        assert qs[result.k_hat] <= qs[result.k_hat - 1]
    assert result.k_hat == 3


def test_curve_values_match_modularity_oracle():
    A = _planted(12, n=60)
    result = estimate_k(A, 5, seed=0)
    for q, labels in zip(result.curve.Q_values, result.curve.labels_per_k):
        assert q == pytest.approx(literal_modularity(A, labels), abs=1e-12)


def test_derive_seed():
    assert derive_seed(5, 1) == derive_seed(5, 1)
    assert len({derive_seed(5, k) for k in range(50)}) == 50
    assert derive_seed(5, 1, 2) != derive_seed(5, 2, 1)
