"""Monte-Carlo accuracy experiments on simulated DCDFM networks.

An :class:`ExperimentConfig` describes one sweep (e.g. over the sparsity
``rho``).  Each grid point is run for ``reps`` repetitions; a repetition
draws labels, heterogeneity and an adjacency matrix, estimates the number
of communities and records whether it equals the true ``K``.

Seeds are derived from ``(base_seed, point_index, rep)`` so any slice of a
sweep can be rerun on its own and reproduce the same numbers.
"""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InfeasibleOmegaError
from .estimator import derive_seed, estimate_k
from .model import block_connectivity, expectation_matrix, membership_from_labels, validate_connectivity
from .sampler import DistributionSpec, ThetaMode, sample_adjacency, sample_labels, sample_theta, validate_omega

SWEEP_PARAMS = ("rho", "K", "beta")
CSV_COLUMNS = ("experiment_id", "param_name", "param_value", "rep", "k_true", "k_hat", "q_at_k_hat", "seed")

# seed stream tags inside one repetition
_LABELS, _THETA, _ADJ, _EST = 1, 2, 3, 4


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation setting, optionally with a sweep over one parameter.

    ``P`` is either given explicitly or built as unit diagonal with ``beta``
    off the diagonal.  The number of nodes is ``nodes_per_community * K``.
    """

    experiment_id: str
    K: int
    rho: float
    dist: DistributionSpec
    P: tuple[tuple[float, ...], ...] | None = None
    beta: float | None = None
    theta_mode: ThetaMode = ThetaMode.UNIFORM
    nodes_per_community: int = 50
    reps: int = 100
    K0: int = 20
    base_seed: int = 0
    sweep_param: str | None = None
    sweep_values: tuple[float, ...] = ()
    point_index: int = 0
    point_param: str | None = None
    mode: str = "argmax"
    restarts: int = 10
    zero_diagonal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "theta_mode", ThetaMode(self.theta_mode))
        if self.P is not None:
            object.__setattr__(self, "P", tuple(tuple(float(x) for x in row) for row in np.atleast_2d(self.P)))
        object.__setattr__(self, "sweep_values", tuple(self.sweep_values))
        if self.reps < 1:
            raise ConfigError(f"reps must be >= 1, got {self.reps}")
        if self.sweep_param is not None and self.sweep_param not in SWEEP_PARAMS:
            raise ConfigError(f"cannot sweep {self.sweep_param!r}; expected one of {SWEEP_PARAMS}")
        if self.P is None and self.beta is None and self.K > 1 and self.sweep_param != "beta":
            raise ConfigError("need either P or beta")

    @property
    def n(self) -> int:
        return self.nodes_per_community * self.K

    def connectivity(self) -> np.ndarray:
        if self.P is not None:
            return np.array(self.P, dtype=float)
        return block_connectivity(self.K, self.beta if self.beta is not None else 0.0)

    def grid(self) -> list[tuple[int, "ExperimentConfig"]]:
        """Return ``(point_index, config)`` for every sweep point."""
        if self.sweep_param is None:
            return [(self.point_index, self)]
        return [(i, self.at(i)) for i in range(len(self.sweep_values))]

    def at(self, point_index: int) -> "ExperimentConfig":
        """Fix the sweep parameter to its ``point_index``-th value."""
        value = self.sweep_values[point_index]
        value = int(value) if self.sweep_param == "K" else float(value)
        return dataclasses.replace(self, sweep_param=None, sweep_values=(), point_index=point_index,
                                   point_param=self.sweep_param, **{self.sweep_param: value})

    def param(self) -> tuple[str, float]:
        """Name and value of the swept parameter (``rho`` for a fixed setting)."""
        if self.sweep_param is not None:
            return self.sweep_param, self.sweep_values[self.point_index]
        name = self.point_param or "rho"
        return name, getattr(self, name)

    def validate(self) -> None:
        """Raise :class:`ConfigError` if this point cannot be simulated."""
        if self.sweep_param is not None:
            for _, point in self.grid():
                point.validate()
            return
        P = self.connectivity()
        if P.shape != (self.K, self.K):
            raise ConfigError(f"P is {P.shape[0]}x{P.shape[1]} but K={self.K}")
        report = validate_connectivity(P, self.dist.family)
        if not report.ok:
            raise ConfigError(f"{self.experiment_id}: " + "; ".join(report.violations))
        if not self.rho > 0:
            raise ConfigError(f"rho must be positive, got {self.rho}")
        if not 1 <= self.K0 <= self.n:
            raise ConfigError(f"K0={self.K0} outside [1, n={self.n}]")
        # Omega entries range between tiny * P (uniform theta near 0) and rho * P
        extremes = [self.rho * P]
        if self.theta_mode is ThetaMode.UNIFORM:
            extremes.append(1e-12 * P)
        report = validate_omega(np.concatenate(extremes), self.dist)
        if not report.ok:
            raise InfeasibleOmegaError(report)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["dist"] = self.dist.to_dict()
        d["theta_mode"] = self.theta_mode.value
        d["P"] = [list(r) for r in self.P] if self.P is not None else None
        d["sweep_values"] = list(self.sweep_values)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        d["dist"] = DistributionSpec.from_dict(d["dist"])
        if d.get("P") is not None:
            d["P"] = tuple(tuple(r) for r in d["P"])
        d["sweep_values"] = tuple(d.get("sweep_values", ()))
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class TrialResult:
    rep: int
    seed: int
    k_hat: int
    q_at_k_hat: float


@dataclass
class AccuracyReport:
    experiment_id: str
    param_name: str
    param_value: float
    k_true: int
    config_digest: str
    trials: list[TrialResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def k_hats(self) -> list[int]:
        return [t.k_hat for t in self.trials]

    @property
    def accuracy(self) -> float:
        if not self.trials:
            return float("nan")
        return sum(k == self.k_true for k in self.k_hats) / len(self.trials)


def trial_seed(config: ExperimentConfig, rep_index: int) -> int:
    return derive_seed(config.base_seed, config.point_index, rep_index)


def simulate_network(config: ExperimentConfig, seed: int):
    """Draw ``(A, labels)`` for one repetition of a single-point config."""
    labels = sample_labels(config.n, config.K, derive_seed(seed, _LABELS))
    theta = sample_theta(config.n, config.rho, config.theta_mode, derive_seed(seed, _THETA))
    omega = expectation_matrix(membership_from_labels(labels, config.K), config.connectivity(), theta)
    A = sample_adjacency(omega, config.dist, derive_seed(seed, _ADJ), zero_diagonal=config.zero_diagonal)
    return A, labels


def _run(config: ExperimentConfig, rep_index: int) -> TrialResult:
    seed = trial_seed(config, rep_index)
    A, _ = simulate_network(config, seed)
    result = estimate_k(A, config.K0, seed=derive_seed(seed, _EST), mode=config.mode, restarts=config.restarts)
    return TrialResult(rep_index, seed, result.k_hat, result.Q_at_k_hat)


def run_trial(config: ExperimentConfig, rep_index: int) -> int:
    """Generate one network for a single-point config and return its estimated k."""
    if config.sweep_param is not None:
        raise ConfigError("run_trial needs a single grid point; use config.at(i)")
    config.validate()
    return _run(config, rep_index).k_hat


def _run_point(config: ExperimentConfig) -> AccuracyReport:
    name, value = config.param()
    report = AccuracyReport(config.experiment_id, name, value, config.K, config.digest())
    start = time.perf_counter()
    report.trials = [_run(config, r) for r in range(config.reps)]
    report.wall_time = time.perf_counter() - start
    return report


def accuracy_sweep(config: ExperimentConfig, points=None, workers: int = 1) -> list[AccuracyReport]:
    """Run every grid point (or the listed ``points`` indices) of ``config``.

    With ``workers > 1`` grid points run in separate processes; results are
    identical to a serial run.
    """
    grid = config.grid()
    if points is not None:
        wanted = set(points)
        grid = [(i, c) for i, c in grid if i in wanted]
    if not grid:
        raise ConfigError("empty sweep grid")
    for _, point in grid:
        point.validate()
    configs = [c for _, c in grid]
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_point, configs))
    return [_run_point(c) for c in configs]


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


def write_reports_csv(reports, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        for t in rep.trials:
            writer.writerow([rep.experiment_id, rep.param_name, _fmt(rep.param_value), t.rep, rep.k_true,
                             t.k_hat, repr(float(t.q_at_k_hat)), t.seed])


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    write_reports_csv(reports, buf)
    return buf.getvalue()
