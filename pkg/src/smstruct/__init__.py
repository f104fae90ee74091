"""smstruct: effective presentations of strongly minimal structures.

Core pieces: oracle-backed computable structures with fuel-bounded pp
evaluation, derived-edge machinery for disintegrated theories, coset
normal forms on finite abelian groups, the quasiendomorphism word algebra
with its row-reduction pipeline, and model builders for every dimension.
"""

from .coset_reduction import FinAbGroup, Subgroup, group_strip
from .disintegrated import (
    ComponentGraph,
    build_model,
    derive_edges,
    enumerate_acl0,
    generic_template,
    neighborhood,
    rank_reduce,
)
from .errors import (
    ConfigurationError,
    ContractViolation,
    CoverImpossible,
    FuelExhausted,
    InsufficientGenericity,
    NotQuasiendomorphism,
    NotQuasiendomorphismAtBudget,
    SmstructError,
    TableExhausted,
)
from .fixtures import FIXTURE_FAMILIES, make_fixture, selfcheck
from .models import (
    ModelPresentation,
    RingTable,
    acl0_enum,
    acl_of,
    binary_projections,
    build_ring_table,
    build_vector_model,
    connected_reduce,
    direct_sum,
    rank_one_decompose,
)
from .ppeval import DEFAULT_FUEL, eval_pp, solutions, solve_assignments
from .pptools import enumerate_axioms, pp_equal, pp_rank, pp_rank_at_least
from .qring import (
    Gen,
    Inv,
    Neg,
    Prod,
    Sum,
    Word,
    WordCache,
    WordCensus,
    WordClass,
    canonical_rep,
    classify,
    parse_word,
    render_word,
    ring_eq,
    word_census,
    word_pp,
    words_up_to,
)
from .rowreduce import reduce_to_word
from .structures import (
    Block,
    GroupOps,
    MorleyMeta,
    PPBuilder,
    PPFormula,
    Row,
    Signature,
    StructureOracle,
    SymbolDecl,
    TriBool,
    atomic_pp,
    canonical_tuples,
    conj_pp,
    pin_pp,
    project_pp,
    tri_and,
    tri_or,
)

__version__ = "0.1.0"

__all__ = [
    "SmstructError",
    "ContractViolation",
    "ConfigurationError",
    "NotQuasiendomorphism",
    "NotQuasiendomorphismAtBudget",
    "InsufficientGenericity",
    "CoverImpossible",
    "FuelExhausted",
    "TriBool",
    "tri_and",
    "tri_or",
    "SymbolDecl",
    "MorleyMeta",
    "Signature",
    "GroupOps",
    "Row",
    "Block",
    "PPFormula",
    "PPBuilder",
    "StructureOracle",
    "atomic_pp",
    "pin_pp",
    "conj_pp",
    "project_pp",
    "canonical_tuples",
    "DEFAULT_FUEL",
    "eval_pp",
    "solutions",
    "solve_assignments",
    "pp_rank_at_least",
    "pp_rank",
    "pp_equal",
    "enumerate_axioms",
    "TableExhausted",
    "FinAbGroup",
    "Subgroup",
    "group_strip",
    "ComponentGraph",
    "derive_edges",
    "neighborhood",
    "enumerate_acl0",
    "generic_template",
    "build_model",
    "rank_reduce",
    "Word",
    "Gen",
    "Neg",
    "Inv",
    "Sum",
    "Prod",
    "parse_word",
    "render_word",
    "word_pp",
    "words_up_to",
    "WordCache",
    "WordCensus",
    "WordClass",
    "classify",
    "ring_eq",
    "canonical_rep",
    "word_census",
    "reduce_to_word",
    "ModelPresentation",
    "RingTable",
    "acl0_enum",
    "acl_of",
    "binary_projections",
    "build_ring_table",
    "build_vector_model",
    "connected_reduce",
    "direct_sum",
    "rank_one_decompose",
    "FIXTURE_FAMILIES",
    "make_fixture",
    "selfcheck",
    "__version__",
]
