"""Decompositions of 1-dimensional integral varifolds carried by segment networks."""

from .decompose import (
    Decomposition,
    SplitMultiset,
    check_split,
    decompose,
    enumerate_decompositions,
    find_split,
    is_component,
    is_indecomposable,
    is_maximal,
    split_identity,
    verify_decomposition,
)
from .errors import (
    ArrangementError,
    ClassError,
    InvalidSubMultiplicity,
    NonGenericRegionError,
    NotAnAtomError,
    SearchCapExceeded,
    VarifoldError,
    WindowError,
)
from .geometry import Arrangement, Ball, Box, Exit, HalfSpace, Region, Window, build_arrangement, \
    clip_length, common_refinement
from .variation import (
    ScalarAtomMeasure,
    VectorAtomMeasure,
    ac_singular_split,
    apriori_check,
    eta,
    first_variation,
    mean_curvature,
    restrict_measure,
    total_variation_measure,
    v_boundary,
)
from .varifold import (
    INTEGERS,
    AppropriateClass,
    PolyhedralVarifold,
    SubMultiplicity,
    add,
    density,
    restrict,
    same_varifold,
    scalar_multiple,
    split_by_region,
    strong_distance,
    sub_varifold,
    validate,
    weight_ball_mass,
)

__all__ = [
    "ac_singular_split",
    "add",
    "AppropriateClass",
    "apriori_check",
    "Arrangement",
    "ArrangementError",
    "Ball",
    "Box",
    "build_arrangement",
    "check_split",
    "ClassError",
    "clip_length",
    "common_refinement",
    "decompose",
    "Decomposition",
    "density",
    "enumerate_decompositions",
    "eta",
    "Exit",
    "find_split",
    "first_variation",
    "HalfSpace",
    "INTEGERS",
    "InvalidSubMultiplicity",
    "is_component",
    "is_indecomposable",
    "is_maximal",
    "mean_curvature",
    "NonGenericRegionError",
    "NotAnAtomError",
    "PolyhedralVarifold",
    "Region",
    "restrict",
    "restrict_measure",
    "same_varifold",
    "scalar_multiple",
    "ScalarAtomMeasure",
    "SearchCapExceeded",
    "split_by_region",
    "split_identity",
    "SplitMultiset",
    "strong_distance",
    "sub_varifold",
    "SubMultiplicity",
    "total_variation_measure",
    "v_boundary",
    "validate",
    "VarifoldError",
    "VectorAtomMeasure",
    "verify_decomposition",
    "weight_ball_mass",
    "Window",
    "WindowError",
]

__version__ = "0.1.0"
