"""Minimum cut-sets of the power graph of a finite cyclic group."""

from .arith import DivisorClass, Factorization, divisor_classes, factorize, totient
from .candidates import BoundaryLayers, CutCandidate, x_candidate, z_candidate
from .graph import (
    ConnectivityResult,
    DivisorGraph,
    SeparationWitness,
    build_divisor_graph,
    check_separation,
    exhaustive_min_cut,
    induced_components,
    weighted_vertex_connectivity,
)
from .theorem import MinCutReport, Regime, VerificationRecord, candidate_family, minimum_cutset, verify

__version__ = "0.1.0"
