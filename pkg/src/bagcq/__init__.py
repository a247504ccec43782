"""Exact bag-semantics toolkit for conjunctive queries.

A query evaluated on a database denotes the number of homomorphisms
from its canonical structure into the database.  On top of that single
primitive the package builds multiplication gadgets, a polynomial
encoder that turns root-finding into count comparison, and a harness
that re-checks every identity the construction relies on.
"""

from .counts import Count, ComparisonUndecidedError, compare_counts
from .encoder import (
    DbClassification,
    EncoderOutput,
    NotArenaModelError,
    assemble,
    build_correct_database,
    classify_database,
    extract_valuation,
    instance_schema,
)
from .gadgets import (
    CycliqueClass,
    GadgetPair,
    alpha_witness,
    beta_witness,
    build_alpha,
    build_beta,
    build_cycliq,
    build_gamma,
    classify_cycliques,
    gamma_witness,
)
from .homcount import (
    InequalityUnsupportedError,
    count_homomorphisms,
    enumerate_homomorphisms,
    exists_onto_homomorphism,
)
from .polyreduce import (
    HilbertInstance,
    Polynomial,
    eval_poly,
    find_root_bruteforce,
    normalize_hilbert,
    validate_instance,
)
from .qalgebra import (
    CapExceededError,
    DisjointAnd,
    Leaf,
    Power,
    QueryExpr,
    blowup,
    conjoin_disjoint,
    conjoin_shared,
    eval_expr,
    expr_schema,
    flatten,
    inequality_elimination_witness,
    power,
    power_product,
    product,
    strip_inequalities,
)
from .relcore import (
    MARS,
    VENUS,
    Atom,
    Const,
    Database,
    Fact,
    MalformedDatabaseError,
    Query,
    Schema,
    SchemaMismatchError,
    UninterpretedConstantError,
    ValidationError,
    canonical_structure,
    is_nontrivial,
    map_elements,
    union_databases,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "CapExceededError",
    "ComparisonUndecidedError",
    "Const",
    "Count",
    "CycliqueClass",
    "Database",
    "DbClassification",
    "DisjointAnd",
    "EncoderOutput",
    "Fact",
    "GadgetPair",
    "HilbertInstance",
    "InequalityUnsupportedError",
    "Leaf",
    "MARS",
    "MalformedDatabaseError",
    "NotArenaModelError",
    "Polynomial",
    "Power",
    "Query",
    "QueryExpr",
    "Schema",
    "SchemaMismatchError",
    "UninterpretedConstantError",
    "VENUS",
    "ValidationError",
    "alpha_witness",
    "assemble",
    "beta_witness",
    "blowup",
    "build_alpha",
    "build_beta",
    "build_correct_database",
    "build_cycliq",
    "build_gamma",
    "canonical_structure",
    "classify_cycliques",
    "classify_database",
    "compare_counts",
    "conjoin_disjoint",
    "conjoin_shared",
    "count_homomorphisms",
    "enumerate_homomorphisms",
    "eval_expr",
    "eval_poly",
    "exists_onto_homomorphism",
    "expr_schema",
    "extract_valuation",
    "find_root_bruteforce",
    "flatten",
    "inequality_elimination_witness",
    "instance_schema",
    "is_nontrivial",
    "map_elements",
    "normalize_hilbert",
    "power",
    "power_product",
    "product",
    "strip_inequalities",
    "union_databases",
    "validate_instance",
    "__version__",
]
