"""Branched 2-complexes: folding, reducibility and certified curvature bounds."""
from .core import (
    BranchedTwoComplex,
    Morphism,
    SerreGraph,
    average_curvature,
    deficiency,
    euler_characteristic,
    group_pair,
    is_concise,
    presentation_complex,
    subdivide,
    total_curvature,
    validate,
)
from .curvature import AngleStructure, optimize_angles
from .enumeration import Budget, curvature_report, enumerate_witnesses, primitivity_rank
from .fold import fold, is_branched_covering, is_branched_immersion, is_essential
from .io import load_complex, parse_presentation, save_complex
from .reduce import classify, decompose, is_irreducible, is_surface

__all__ = [
    "AngleStructure",
    "BranchedTwoComplex",
    "Budget",
    "Morphism",
    "SerreGraph",
    "average_curvature",
    "classify",
    "curvature_report",
    "decompose",
    "deficiency",
    "enumerate_witnesses",
    "euler_characteristic",
    "fold",
    "group_pair",
    "is_branched_covering",
    "is_branched_immersion",
    "is_concise",
    "is_essential",
    "is_irreducible",
    "is_surface",
    "load_complex",
    "optimize_angles",
    "parse_presentation",
    "presentation_complex",
    "primitivity_rank",
    "save_complex",
    "subdivide",
    "total_curvature",
    "validate",
]
