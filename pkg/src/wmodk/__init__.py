"""Estimate the number of communities in weighted and signed networks.

Networks are simulated from the degree-corrected distribution-free model,
clustered spectrally for each candidate k, and k is chosen to maximise a
sign-aware weighted modularity.
"""
from .estimator import EstimateResult, ModularityCurve, estimate_k
from .model import Family, ModelParams, expectation_matrix, membership_from_labels, validate_connectivity
from .modularity import weighted_modularity
from .sampler import DistributionSpec, ThetaMode, sample_adjacency, sample_labels, sample_theta, validate_omega
from .spectral import kmeans, ndfa, row_normalize, top_k_eigen

__version__ = "0.1.0"

__all__ = [
    "DistributionSpec",
    "EstimateResult",
    "Family",
    "ModelParams",
    "ModularityCurve",
    "ThetaMode",
    "estimate_k",
    "expectation_matrix",
    "kmeans",
    "membership_from_labels",
    "ndfa",
    "row_normalize",
    "sample_adjacency",
    "sample_labels",
    "sample_theta",
    "top_k_eigen",
    "validate_connectivity",
    "validate_omega",
    "weighted_modularity",
]
