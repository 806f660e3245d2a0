"""Catalog of the 36 simulation settings (experiments 1a-9d).

Experiments 1-9 use, in order, the Bernoulli, Binomial (m = 5), Poisson,
Geometric, Exponential, Normal (sigma2 = 1), Laplace (sigma2 = 1), Uniform
and signed families.  Within each experiment:

* (a) sweeps ``rho`` with K = 3 and a fixed 3x3 connectivity matrix,
* (b) sweeps ``K`` in 2..6 with 1 on the diagonal and 0.2 elsewhere,
* (c) sweeps ``rho`` with a single community,
* (d) sweeps the off-diagonal level ``beta`` with K = 2.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .harness import ExperimentConfig
from .model import Family
from .sampler import DistributionSpec, ThetaMode

P_ASSORTATIVE = ((1.0, 0.2, 0.3), (0.2, 0.8, 0.2), (0.3, 0.2, 0.9))
P_SIGNED = ((1.0, -0.2, -0.3), (-0.2, 0.8, 0.2), (-0.3, 0.2, 0.9))
K_GRID = (2, 3, 4, 5, 6)


def _grid(start, stop, step):
    count = int(round((stop - start) / step)) + 1
    return tuple(float(np.round(start + i * step, 10)) for i in range(count))


BETA_POS = _grid(0.1, 0.8, 0.1)
BETA_SIGNED = _grid(-0.5, 0.9, 0.1)

# experiment number -> (distribution, theta mode, nodes per community,
#                       (a) rho grid, (b) rho, (c) rho grid, (d) rho, (a) P, (d) beta grid)
_FAMILIES = {
    1: (DistributionSpec(Family.BERNOULLI), ThetaMode.UNIFORM, 50,
        _grid(0.2, 1.0, 0.1), 0.9, _grid(0.1, 1.0, 0.1), 1.0, P_ASSORTATIVE, BETA_POS),
    2: (DistributionSpec(Family.BINOMIAL, m=5), ThetaMode.UNIFORM, 50,
        _grid(0.5, 5.0, 0.5), 2.0, _grid(0.5, 5.0, 0.5), 1.0, P_ASSORTATIVE, BETA_POS),
    3: (DistributionSpec(Family.POISSON), ThetaMode.UNIFORM, 50,
        _grid(0.5, 5.0, 0.5), 2.0, _grid(0.5, 5.0, 0.5), 2.0, P_ASSORTATIVE, BETA_POS),
    4: (DistributionSpec(Family.GEOMETRIC), ThetaMode.CONSTANT, 50,
        _grid(5, 15, 1), 10.0, _grid(2, 20, 2), 10.0, P_ASSORTATIVE, BETA_POS),
    5: (DistributionSpec(Family.EXPONENTIAL), ThetaMode.UNIFORM, 50,
        _grid(1, 10, 1), 5.0, _grid(1, 10, 1), 5.0, P_ASSORTATIVE, BETA_POS),
    6: (DistributionSpec(Family.NORMAL, sigma2=1.0), ThetaMode.UNIFORM, 50,
        _grid(1, 10, 1), 3.0, _grid(0.5, 10, 0.5), 2.0, P_SIGNED, BETA_SIGNED),
    7: (DistributionSpec(Family.LAPLACE, sigma2=1.0), ThetaMode.UNIFORM, 50,
        _grid(1, 10, 1), 3.0, _grid(0.5, 10, 0.5), 2.0, P_SIGNED, BETA_SIGNED),
    8: (DistributionSpec(Family.UNIFORM), ThetaMode.UNIFORM, 50,
        _grid(2, 20, 2), 0.3, _grid(2, 20, 2), 1.0, P_ASSORTATIVE, BETA_POS),
    9: (DistributionSpec(Family.SIGNED), ThetaMode.CONSTANT, 100,
        _grid(0.1, 1.0, 0.1), 0.5, _grid(0.1, 1.0, 0.1), 0.5, P_SIGNED, BETA_SIGNED),
}


def _build(number: int, variant: str) -> ExperimentConfig:
    dist, theta_mode, per_comm, rho_a, rho_b, rho_c, rho_d, P_a, beta_d = _FAMILIES[number]
    common = dict(experiment_id=f"{number}{variant}", dist=dist, theta_mode=theta_mode,
                  nodes_per_community=per_comm)
    if variant == "a":
        return ExperimentConfig(K=3, rho=rho_a[0], P=P_a, sweep_param="rho", sweep_values=rho_a, **common)
    if variant == "b":
        return ExperimentConfig(K=K_GRID[0], rho=rho_b, beta=0.2, sweep_param="K", sweep_values=K_GRID, **common)
    if variant == "c":
        return ExperimentConfig(K=1, rho=rho_c[0], P=((1.0,),), sweep_param="rho", sweep_values=rho_c, **common)
    if variant == "d":
        return ExperimentConfig(K=2, rho=rho_d, beta=beta_d[0], sweep_param="beta", sweep_values=beta_d, **common)
    raise AssertionError(variant)


PRESET_IDS = tuple(f"{i}{v}" for i in range(1, 10) for v in "abcd")


def preset(experiment_id: str, **overrides) -> ExperimentConfig:
    """Return the configuration of one experiment, e.g. ``preset("1a")``.

    Keyword arguments replace fields of the returned config (``reps``,
    ``base_seed``, ``K0``, ...).
    """
    key = str(experiment_id).strip().lower()
    if key not in PRESET_IDS:
        raise KeyError(f"unknown experiment {experiment_id!r}; valid ids: {', '.join(PRESET_IDS)}")
    config = _build(int(key[0]), key[1])
    return dataclasses.replace(config, **overrides) if overrides else config
