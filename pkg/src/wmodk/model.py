"""Degree-corrected distribution-free model (DCDFM) parameters.

A DCDFM instance is the tuple (labels, P, theta).  The expected adjacency
matrix is ``Omega = Theta Z P Z' Theta``, i.e. ``Omega[i, j] =
theta[i] * theta[j] * P[labels[i], labels[j]]``.  Labels are 1-based.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidLabelError, StructuralError

RANK_RTOL = 1e-10
MAXABS_ATOL = 1e-12


class Family(str, enum.Enum):
    BERNOULLI = "bernoulli"
    BINOMIAL = "binomial"
    POISSON = "poisson"
    GEOMETRIC = "geometric"
    EXPONENTIAL = "exponential"
    NORMAL = "normal"
    LAPLACE = "laplace"
    UNIFORM = "uniform"
    SIGNED = "signed"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            valid = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown distribution family {value!r}; expected one of {valid}") from None


NONNEGATIVE_P = {Family.BERNOULLI, Family.BINOMIAL, Family.POISSON, Family.UNIFORM}
POSITIVE_P = {Family.GEOMETRIC, Family.EXPONENTIAL}


@dataclass
class ValidationReport:
    """Outcome of a feasibility check.

    ``violations`` make the input unusable; ``warnings`` flag off-model
    inputs that can still be used.  ``offending`` lists matrix positions
    (0-based) that triggered an entrywise violation.
    """

    subject: str
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    offending: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def check_labels(labels, K: int | None = None) -> np.ndarray:
    """Return ``labels`` as an int array after checking every entry is in [1, K]."""
    raw = np.asarray(labels)
    if raw.ndim != 1 or raw.size == 0:
        raise StructuralError("labels must be a non-empty 1-D sequence")
    if K is None:
        K = int(np.max(raw)) if np.issubdtype(raw.dtype, np.number) else 0
    if K < 1 or K > raw.size:
        raise StructuralError(f"need 1 <= K <= n, got K={K}, n={raw.size}")
    out = np.empty(raw.size, dtype=np.int64)
    for i, v in enumerate(raw.tolist()):
        if isinstance(v, bool) or not float(v).is_integer() or not 1 <= v <= K:
            raise InvalidLabelError(i, v, K)
        out[i] = int(v)
    return out


def membership_from_labels(labels, K: int | None = None) -> np.ndarray:
    """Build the n x K 0/1 membership matrix with ``Z[i, labels[i]-1] = 1``."""
    lab = check_labels(labels, K)
    K = int(lab.max()) if K is None else K
    Z = np.zeros((lab.size, K), dtype=np.int64)
    Z[np.arange(lab.size), lab - 1] = 1
    return Z


def labels_from_membership(Z) -> np.ndarray:
    Z = np.asarray(Z)
    return np.argmax(Z, axis=1) + 1


def _square_symmetric(M, name: str, atol: float = 0.0) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise StructuralError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise StructuralError(f"{name} has non-finite entries")
    if np.max(np.abs(M - M.T), initial=0.0) > atol:
        raise StructuralError(f"{name} is not symmetric")
    return M


def validate_connectivity(P, family=None, strict: bool = False) -> ValidationReport:
    """Check the connectivity matrix against the model and family constraints.

    The max-abs-equals-one normalisation is reported as a warning unless
    ``strict`` is set, in which case it counts as a violation.
    """
    P = _square_symmetric(P, "P")
    K = P.shape[0]
    fam = Family.parse(family) if family is not None else None
    report = ValidationReport(subject=f"P ({K}x{K}" + (f", {fam.value})" if fam else ")"))

    if np.any(np.abs(P) > 1.0):
        report.violations.append("entries must lie in [-1, 1]")
    maxabs = float(np.max(np.abs(P)))
    if abs(maxabs - 1.0) > MAXABS_ATOL:
        msg = f"max |P_kl| is {maxabs:g}, expected 1"
        (report.violations if strict else report.warnings).append(msg)
    sv = np.linalg.svd(P, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= RANK_RTOL * sv[0]:
        rank = int(np.sum(sv > RANK_RTOL * sv[0])) if sv[0] > 0 else 0
        report.violations.append(f"rank is {rank}, expected {K}")

    if fam in NONNEGATIVE_P and np.any(P < 0):
        report.violations.append(f"{fam.value} requires nonnegative entries")
        report.offending.extend(map(tuple, np.argwhere(P < 0).tolist()))
    elif fam in POSITIVE_P and np.any(P <= 0):
        report.violations.append(f"{fam.value} requires strictly positive entries")
        report.offending.extend(map(tuple, np.argwhere(P <= 0).tolist()))
    return report


def expectation_matrix(Z, P, theta) -> np.ndarray:
    """Compute ``Omega = Theta Z P Z' Theta``."""
    Z = np.asarray(Z, dtype=float)
    P = np.asarray(P, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if P.ndim == 0:
        P = P.reshape(1, 1)
    if Z.ndim != 2 or P.ndim != 2 or theta.ndim != 1:
        raise StructuralError("expected Z (n x K), P (K x K) and theta (n,)")
    n, K = Z.shape
    if P.shape != (K, K) or theta.shape[0] != n:
        raise StructuralError(f"dimension mismatch: Z {Z.shape}, P {P.shape}, theta {theta.shape}")
    B = Z @ P @ Z.T
    omega = theta[:, None] * B * theta[None, :]
    # floating-point products are commutative, but make symmetry exact regardless
    return np.triu(omega) + np.triu(omega, 1).T


def block_connectivity(K: int, beta: float) -> np.ndarray:
    """K x K matrix with unit diagonal and ``beta`` off the diagonal."""
    P = np.full((K, K), float(beta))
    np.fill_diagonal(P, 1.0)
    return P


@dataclass(frozen=True)
class ModelParams:
    """A complete DCDFM instance."""

    labels: np.ndarray
    P: np.ndarray
    theta: np.ndarray

    def __post_init__(self):
        P = _square_symmetric(self.P, "P")
        labels = check_labels(self.labels, P.shape[0])
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape != labels.shape:
            raise StructuralError(f"theta has length {theta.size}, expected {labels.size}")
        if not np.all(theta > 0):
            raise StructuralError("theta entries must be positive")
        for name, value in (("labels", labels), ("P", P), ("theta", theta)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n(self) -> int:
        return self.labels.size

    @property
    def K(self) -> int:
        return self.P.shape[0]

    def membership(self) -> np.ndarray:
        return membership_from_labels(self.labels, self.K)

    def omega(self) -> np.ndarray:
        return expectation_matrix(self.membership(), self.P, self.theta)
