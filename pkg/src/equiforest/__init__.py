"""Equitable k-colorings of forests: exact decision procedures, a
constructive colorer that follows the underlying proof, brute-force
oracles, instance generators, and an exhaustive checking harness."""

from .constructor import (
    ConstructionTrace,
    EquitableColoring,
    InternalInconsistencyError,
    NotColorableError,
    ProofStepError,
    VerificationReport,
    construct,
    realize2,
    verify,
)
from .equitable import (
    ClassSizes,
    DecisionReport,
    class_sizes,
    decide,
    decide1,
    decide2,
    decide_any,
    equitable_chromatic_number,
)
from .forest import (
    Bipartition,
    CycleError,
    Forest,
    ForestError,
    ParseError,
    component_sides,
    leaves_in,
    parse_forest,
    select_bipartition,
    serialize_forest,
)
from .generators import FamilySpec, SplitMix64, gen_family, parse_family
from .oracle import (
    OracleLimitError,
    enumerate_labeled_trees,
    labeled_trees_in_range,
    num_labeled_trees,
    oracle_alpha,
    oracle_alpha_x,
    oracle_coloring,
    oracle_exists,
)
from .stability import (
    LowerBoundReport,
    MajorVertexReport,
    alpha,
    alpha_x,
    lower_bound,
    major_vertex_check,
    max_stable_set,
    max_stable_set_containing,
    stable_set_of_size_min_b,
)

__all__ = [
    "Bipartition",
    "ClassSizes",
    "ConstructionTrace",
    "CycleError",
    "DecisionReport",
    "EquitableColoring",
    "FamilySpec",
    "Forest",
    "ForestError",
    "InternalInconsistencyError",
    "LowerBoundReport",
    "MajorVertexReport",
    "NotColorableError",
    "OracleLimitError",
    "ParseError",
    "ProofStepError",
    "SplitMix64",
    "VerificationReport",
    "alpha",
    "alpha_x",
    "class_sizes",
    "component_sides",
    "construct",
    "decide",
    "decide1",
    "decide2",
    "decide_any",
    "enumerate_labeled_trees",
    "equitable_chromatic_number",
    "gen_family",
    "labeled_trees_in_range",
    "leaves_in",
    "lower_bound",
    "major_vertex_check",
    "max_stable_set",
    "max_stable_set_containing",
    "num_labeled_trees",
    "oracle_alpha",
    "oracle_alpha_x",
    "oracle_coloring",
    "oracle_exists",
    "parse_family",
    "parse_forest",
    "realize2",
    "select_bipartition",
    "serialize_forest",
    "stable_set_of_size_min_b",
    "verify",
]
