"""Exact string-topology products on path and loop space homology models."""

from __future__ import annotations

from .graded import BasisSymbol, GradedElement, GradedSpace, TruncationError
from .liegroup import (SubgroupScenario, build_sun_scenario, distinguish_module_structures,
                       verify_counterexample)
from .loops import FreeLoopModel, LoopSpaceModel, ring_center
from .manifold import ManifoldModel, build_manifold, diagonal_class, intersection_product
from .presentations import RingPresentation, expand_presentation
from .scalars import GF, QQ
from .stringtop import PathSpaceModel, mu_beta, mu_n_omega, nu_n_omega

__version__ = "0.1.0"

__all__ = [
    "BasisSymbol", "GradedElement", "GradedSpace", "TruncationError", "SubgroupScenario",
    "build_sun_scenario", "distinguish_module_structures", "verify_counterexample",
    "FreeLoopModel", "LoopSpaceModel", "ring_center", "ManifoldModel", "build_manifold",
    "diagonal_class", "intersection_product", "RingPresentation", "expand_presentation",
    "GF", "QQ", "PathSpaceModel", "mu_beta", "mu_n_omega", "nu_n_omega",
]
