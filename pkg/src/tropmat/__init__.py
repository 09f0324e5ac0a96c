"""Bergman fans, independence complexes of tropical fans, and algebraic matroids."""

from .bergman import bergman_fan, realizability_witness_check, verify_lemma_bergman
from .fan import (
    Cone,
    WeightedFan,
    balancing_weight_space,
    cone_dim,
    fan_independence_complex,
    is_balanced,
    project_cone,
    ridge_incidences,
)
from .groebner import Ideal, Polynomial, algebraic_matroid, buchberger, linear_ideal_from_matrix
from .matroid import IndependenceFamily, Matroid, from_matrix, graphic_from_edges, is_matroid, uniform, vamos

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "Ideal",
    "IndependenceFamily",
    "Matroid",
    "Polynomial",
    "WeightedFan",
    "algebraic_matroid",
    "balancing_weight_space",
    "bergman_fan",
    "buchberger",
    "cone_dim",
    "fan_independence_complex",
    "from_matrix",
    "graphic_from_edges",
    "is_balanced",
    "is_matroid",
    "linear_ideal_from_matrix",
    "project_cone",
    "realizability_witness_check",
    "ridge_incidences",
    "uniform",
    "vamos",
    "verify_lemma_bergman",
]
