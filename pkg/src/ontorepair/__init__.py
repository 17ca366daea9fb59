"""ontorepair: completing and debugging description-logic TBoxes.

The package models ontology repair as a complete-debug problem: a TBox with
detected missing and wrong axioms, an oracle supplying domain verdicts, and
repairs (axiom additions and deletions) that are verified, compared through
entailment-profile preferences, and constructed by oracle-guided debugging
and completion. Networks of TBoxes connected by mappings, a JSON/HTTP
session service, and a command-line interface sit on top.
"""

from .core import (
    And,
    Atomic,
    Axiom,
    Bottom,
    BOTTOM,
    Concept,
    DuplicateDeclaration,
    Exists,
    Forall,
    GCI,
    Not,
    Or,
    ParseError,
    RoleInclusion,
    TBox,
    Top,
    TOP,
    axiom_str,
    concept_str,
    parse_axiom,
    parse_concept,
    parse_tbox,
    serialize_tbox,
)
from .diagnosis import (
    EmptyConflict,
    NotEntailed,
    NotUnsatisfiable,
    all_justifications,
    minimal_hitting_sets,
    mips,
    mups,
    rank_by_mips_arity,
    single_justification,
)
from .oracle import (
    ErroneousOracle,
    InteractiveOracle,
    LimitedOracle,
    Oracle,
    QueryLog,
    SkepticalOracle,
    TruthTBoxOracle,
    Verdict,
    VotingOracle,
    oracle_from_config,
)
from .preferences import (
    Comparison,
    LESS_INCORRECT,
    MORE_COMPLETE,
    PREFERENCES,
    PreferenceContext,
    Profile,
    Relation,
    SUBSET,
    comparison_universe,
    dominates,
    entailment_profile,
    optimal_within,
    relate,
    skyline_within,
    universe_for,
)
from .reasoner import (
    ResourceExceeded,
    TBoxReasoner,
    classify,
    entails,
    is_coherent,
    is_consistent,
    is_satisfiable,
    unsatisfiable_concepts,
)
from .repair import (
    CDP,
    CandidateSet,
    HITTING_SETS,
    NoRepairWithoutCorrectRemoval,
    Policy,
    PRUDENT,
    REMOVE_ALL_FALSE,
    Repair,
    RepairFailed,
    VerificationReport,
    apply_repair,
    combined_repair,
    complete_repair,
    completion_candidate_pool,
    completion_candidates,
    debug_repairs,
    load_repairs,
    make_cdp,
    remove_redundancy,
    verify_repair,
)
from .network import (
    EQUIVALENCE,
    INVERSE_IS_A,
    IS_A,
    DanglingEndpoint,
    Mapping,
    MappingRepairResult,
    OntologyNetwork,
    conservativity_violations,
    detect_candidate_missing_isa,
    load_network,
    mapping_repair,
    network_to_tbox,
    parse_alignment,
    qualified_name,
)
from .cli import main as cli_main

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
