"""MC-4: a reasoning engine for the constraint algebra of spatial congruence.

The algebra has four base cases for a pair of regions — congruent (CG), one
congruently embeddable in the other as a proper part (CGPP / CGPPi), or
neither embeddable in the other (CNO) — and sixteen relations built as their
unions.  The package provides:

- mc4.algebra: the relations and their composition/converse/intersection;
- mc4.subalgebra: closure, enumeration and tractability classification of
  the 102 expressive subalgebras;
- mc4.network: constraint networks, path consistency, the text format;
- mc4.solvers: the consistency deciders, from the exhaustive oracle down to
  the polynomial procedures for the maximal tractable subalgebras;
- mc4.rcc5: the bridge to RCC-5 parthood relations;
- mc4.cli: the ``mc4`` command.
"""

from .algebra import (
    BASIC_RELATIONS,
    EMPTY,
    UNIVERSAL,
    ParseError,
    Relation,
    RelationSet,
    basics,
    cardinality,
    compose,
    converse,
    format_relation,
    intersect,
    is_basic,
    parse_relation,
)
from .network import (
    ConstraintNetwork,
    is_algebraically_closed,
    parse_network,
    path_consistency,
    random_network,
    serialize_network,
)
from .rcc5 import (
    RCC5_ALL,
    RCC5_BASIC_RELATIONS,
    RCC5_EMPTY,
    Rcc5,
    Rcc5Scenario,
    convert_scenario,
    envelope,
    format_rcc5,
    lift,
    to_rcc5,
)
from .solvers import (
    GadgetGraph,
    PcGapReport,
    ProfileError,
    Scenario,
    SolveOutcome,
    detect_m81,
    detect_m99,
    is_valid_scenario,
    search_pc_incompleteness,
    solve,
    solve_backtracking,
    solve_m81,
    solve_m99,
    solve_oracle,
    solve_trivial_core,
    to_gadget_m81,
    to_gadget_m99,
)
from .subalgebra import (
    BSY,
    EQX,
    G81,
    G99,
    LEQ,
    M31,
    M72,
    M78,
    M81,
    M99,
    NLE,
    Kind,
    PartitionReport,
    TractabilityClass,
    classify,
    closure,
    enumerate_expressive,
    enumerate_expressive_by_closure,
    evaluate_identity_suites,
    has_np_hard_pattern,
    is_closed,
    maximality_check,
    partition_report,
    render_partition_json,
    render_partition_text,
)

__version__ = "0.1.0"

__all__ = [
    "BASIC_RELATIONS",
    "BSY",
    "ConstraintNetwork",
    "EMPTY",
    "EQX",
    "G81",
    "G99",
    "GadgetGraph",
    "Kind",
    "LEQ",
    "M31",
    "M72",
    "M78",
    "M81",
    "M99",
    "NLE",
    "ParseError",
    "PartitionReport",
    "PcGapReport",
    "ProfileError",
    "RCC5_ALL",
    "RCC5_BASIC_RELATIONS",
    "RCC5_EMPTY",
    "Rcc5",
    "Rcc5Scenario",
    "Relation",
    "RelationSet",
    "Scenario",
    "SolveOutcome",
    "TractabilityClass",
    "UNIVERSAL",
    "basics",
    "cardinality",
    "classify",
    "closure",
    "compose",
    "converse",
    "convert_scenario",
    "detect_m81",
    "detect_m99",
    "enumerate_expressive",
    "enumerate_expressive_by_closure",
    "envelope",
    "evaluate_identity_suites",
    "format_rcc5",
    "format_relation",
    "has_np_hard_pattern",
    "intersect",
    "is_algebraically_closed",
    "is_basic",
    "is_closed",
    "is_valid_scenario",
    "lift",
    "maximality_check",
    "parse_network",
    "parse_relation",
    "partition_report",
    "path_consistency",
    "random_network",
    "render_partition_json",
    "render_partition_text",
    "search_pc_incompleteness",
    "serialize_network",
    "solve",
    "solve_backtracking",
    "solve_m81",
    "solve_m99",
    "solve_oracle",
    "solve_trivial_core",
    "to_gadget_m81",
    "to_gadget_m99",
    "to_rcc5",
]
