"""Random generation of DCDFM labels, heterogeneity and adjacency matrices.

All randomness goes through :class:`numpy.random.Generator` backed by PCG64
(``numpy.random.default_rng``).  Every public function takes an explicit
integer seed, so outputs are reproducible bit for bit on a given numpy
version.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InfeasibleOmegaError, StructuralError
from .model import Family, ValidationReport

# cap on listed offending positions in a report
MAX_OFFENDING = 50


class ThetaMode(str, enum.Enum):
    UNIFORM = "uniform-random"
    CONSTANT = "constant"


@dataclass(frozen=True)
class DistributionSpec:
    """Sampling family plus its auxiliary parameters.

    ``m`` is the number of trials (Binomial only), ``sigma2`` the variance
    (Normal and Laplace).  ``uniform_literal`` switches the Uniform family
    from the expectation-calibrated ``U(0, 2*Omega)`` to ``U(0, Omega)``.
    """

    family: Family
    m: int | None = None
    sigma2: float | None = None
    uniform_literal: bool = False

    def __post_init__(self):
        fam = Family.parse(self.family)
        object.__setattr__(self, "family", fam)
        if fam is Family.BINOMIAL:
            if self.m is None or int(self.m) != self.m or self.m < 1:
                raise ConfigError(f"binomial needs an integer number of trials m >= 1, got {self.m!r}")
            object.__setattr__(self, "m", int(self.m))
        if fam in (Family.NORMAL, Family.LAPLACE):
            if self.sigma2 is None or not self.sigma2 > 0:
                raise ConfigError(f"{fam.value} needs a variance sigma2 > 0, got {self.sigma2!r}")
            object.__setattr__(self, "sigma2", float(self.sigma2))

    def to_dict(self) -> dict:
        d = {"family": self.family.value}
        if self.m is not None:
            d["m"] = self.m
        if self.sigma2 is not None:
            d["sigma2"] = self.sigma2
        if self.uniform_literal:
            d["uniform_literal"] = True
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "DistributionSpec":
        return cls(d["family"], d.get("m"), d.get("sigma2"), bool(d.get("uniform_literal", False)))


def sample_labels(n: int, K: int, seed) -> np.ndarray:
    """Draw each of ``n`` labels uniformly from {1, ..., K}."""
    if not 1 <= K <= n:
        raise ConfigError(f"need 1 <= K <= n, got K={K}, n={n}")
    rng = np.random.default_rng(seed)
    return rng.integers(1, K + 1, size=n)


def sample_theta(n: int, rho: float, mode=ThetaMode.UNIFORM, seed=None) -> np.ndarray:
    """Heterogeneity vector: ``u_i * sqrt(rho)`` with ``u_i ~ U(0, 1)``, or constant ``sqrt(rho)``."""
    if not rho > 0:
        raise ConfigError(f"sparsity rho must be positive, got {rho!r}")
    mode = ThetaMode(mode)
    scale = np.sqrt(rho)
    if mode is ThetaMode.CONSTANT:
        return np.full(n, scale)
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    # Generator.random draws from [0, 1); redraw exact zeros
    while np.any(u == 0.0):
        zero = u == 0.0
        u[zero] = rng.random(int(zero.sum()))
    return u * scale


def validate_omega(omega, dist: DistributionSpec) -> ValidationReport:
    """Check that every entry of ``omega`` is a valid mean for the family."""
    omega = np.asarray(omega, dtype=float)
    fam = dist.family
    report = ValidationReport(subject=f"Omega under {fam.value}")
    finite = np.isfinite(omega)
    if fam is Family.BERNOULLI:
        bad, rule = (omega < 0) | (omega > 1), "entries must lie in [0, 1]"
    elif fam is Family.BINOMIAL:
        q = omega / dist.m
        bad, rule = (q < 0) | (q > 1), f"entries divided by m={dist.m} must lie in [0, 1]"
    elif fam in (Family.POISSON, Family.UNIFORM):
        bad, rule = omega < 0, "entries must be nonnegative"
    elif fam is Family.GEOMETRIC:
        bad, rule = omega < 1, "entries must be >= 1"
    elif fam is Family.EXPONENTIAL:
        bad, rule = omega <= 0, "entries must be positive"
    elif fam is Family.SIGNED:
        bad, rule = np.abs(omega) > 1, "entries must lie in [-1, 1]"
    else:
        bad, rule = np.zeros(omega.shape, dtype=bool), ""
    bad = bad | ~finite
    if not finite.all():
        report.violations.append("entries must be finite")
    if bad.any() and rule:
        report.violations.append(f"{rule} ({int(bad.sum())} offending entries)")
    report.offending.extend(tuple(ij) for ij in np.argwhere(bad)[:MAX_OFFENDING].tolist())
    return report


def _draw(rng: np.random.Generator, mean: np.ndarray, dist: DistributionSpec) -> np.ndarray:
    fam = dist.family
    if fam is Family.BERNOULLI:
        return (rng.random(mean.size) < mean).astype(float)
    if fam is Family.BINOMIAL:
        return rng.binomial(dist.m, mean / dist.m).astype(float)
    if fam is Family.POISSON:
        return rng.poisson(mean).astype(float)
    if fam is Family.GEOMETRIC:
        # numpy's geometric counts trials to first success: support {1, 2, ...}, mean 1/p
        return rng.geometric(1.0 / mean).astype(float)
    if fam is Family.EXPONENTIAL:
        return rng.exponential(mean)
    if fam is Family.NORMAL:
        return rng.normal(mean, np.sqrt(dist.sigma2))
    if fam is Family.LAPLACE:
        # scale b with 2 b^2 = sigma2, so the variance is sigma2
        return rng.laplace(mean, np.sqrt(dist.sigma2 / 2.0))
    if fam is Family.UNIFORM:
        upper = mean if dist.uniform_literal else 2.0 * mean
        return rng.random(mean.size) * upper
    if fam is Family.SIGNED:
        return np.where(rng.random(mean.size) < (1.0 + mean) / 2.0, 1.0, -1.0)
    raise AssertionError(fam)


def sample_adjacency(omega, dist: DistributionSpec, seed, zero_diagonal: bool = False) -> np.ndarray:
    """Draw a symmetric adjacency matrix whose entries have expectation ``omega``.

    Entries with ``i <= j`` are drawn in row-major order from a single
    generator and mirrored below the diagonal.  The diagonal is sampled
    like any other entry unless ``zero_diagonal`` is set.
    """
    omega = np.asarray(omega, dtype=float)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise StructuralError(f"Omega must be square, got shape {omega.shape}")
    report = validate_omega(omega, dist)
    if not report.ok:
        raise InfeasibleOmegaError(report)
    n = omega.shape[0]
    rows, cols = np.triu_indices(n)
    rng = np.random.default_rng(seed)
    values = _draw(rng, omega[rows, cols], dist)
    A = np.zeros((n, n))
    A[rows, cols] = values
    A[cols, rows] = values
    if zero_diagonal:
        np.fill_diagonal(A, 0.0)
    return A
