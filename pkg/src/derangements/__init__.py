"""Toolkit for subgroups generated by derangements in transitive permutation
groups, and the companion eigenvalue-one subgroups of finite linear groups."""

from .derange import (
    AnalysisReport,
    BoundCheck,
    GroupFingerprint,
    IndexConsequences,
    SubgroupChecks,
    analyze,
    bound_check,
    derangement_count,
    derangement_set,
    derangement_subgroup,
    fingerprint,
    identify_fingerprint,
    identify_quotient,
    index_consequences,
    is_frobenius,
    splits_over,
    subgroup_checks,
    two_derangement_coverage,
)
from .errors import (
    CapExceeded,
    ConstraintViolated,
    DegreeMismatch,
    DegreeTooLarge,
    FieldMismatch,
    IndexTooLarge,
    NotNormal,
    NotPrime,
    NotSubgroup,
    NotTransitive,
    ParseError,
    ToolkitError,
    TooLarge,
    ZeroElement,
)
from .families import (
    FAMILY_ARITY,
    FamilyParams,
    affine_group,
    build_family,
    central_product_examples,
    cyclic_multiplier_group,
    dihedral_quotient_family,
    direct_product_action,
    frobenius_complement_example,
    pgammal_28,
    semilinear_example,
    wreath_product_action,
)
from .fileio import (
    dump_group,
    dump_matrix_group,
    dump_perm_group,
    load_group,
    load_matrix_group,
    load_perm_group,
)
from .gf import FFElement, FieldSpec, field, prime_power_decompose
from .matgrp import (
    FFMatrix,
    MatrixGroup,
    QuadraticExtension,
    central_product,
    dihedral_gl2,
    eigenvalue_one_index,
    eigenvalue_one_subgroup,
    general_linear_gl2,
    index_bound_check,
    is_irreducible,
    quaternion_gl2,
    quotient_perm_group,
    regular_perm_group,
    scalar_matrix_group,
    special_linear_gl2,
)
from .permgrp import (
    PermGroup,
    Permutation,
    alternating_group,
    coset_average_fixed_points,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)
from .suite import (
    PAPER_SCENARIOS,
    RunReport,
    Scenario,
    corpus_names,
    matrix_record,
    run_corpus_suite,
    run_paper_suite,
)

__all__ = [
    "AnalysisReport",
    "BoundCheck",
    "CapExceeded",
    "ConstraintViolated",
    "DegreeMismatch",
    "DegreeTooLarge",
    "FAMILY_ARITY",
    "FFElement",
    "FFMatrix",
    "FamilyParams",
    "FieldMismatch",
    "FieldSpec",
    "GroupFingerprint",
    "IndexConsequences",
    "IndexTooLarge",
    "MatrixGroup",
    "NotNormal",
    "NotPrime",
    "NotSubgroup",
    "NotTransitive",
    "PAPER_SCENARIOS",
    "ParseError",
    "PermGroup",
    "Permutation",
    "QuadraticExtension",
    "RunReport",
    "Scenario",
    "SubgroupChecks",
    "ToolkitError",
    "TooLarge",
    "ZeroElement",
    "affine_group",
    "alternating_group",
    "analyze",
    "bound_check",
    "build_family",
    "central_product",
    "central_product_examples",
    "corpus_names",
    "coset_average_fixed_points",
    "cyclic_group",
    "cyclic_multiplier_group",
    "derangement_count",
    "derangement_set",
    "derangement_subgroup",
    "dihedral_gl2",
    "dihedral_group",
    "dihedral_quotient_family",
    "direct_product_action",
    "dump_group",
    "dump_matrix_group",
    "dump_perm_group",
    "eigenvalue_one_index",
    "eigenvalue_one_subgroup",
    "field",
    "fingerprint",
    "frobenius_complement_example",
    "general_linear_gl2",
    "identify_fingerprint",
    "identify_quotient",
    "index_bound_check",
    "index_consequences",
    "is_frobenius",
    "is_irreducible",
    "load_group",
    "load_matrix_group",
    "load_perm_group",
    "matrix_record",
    "pgammal_28",
    "prime_power_decompose",
    "quaternion_gl2",
    "quotient_perm_group",
    "regular_perm_group",
    "run_corpus_suite",
    "run_paper_suite",
    "scalar_matrix_group",
    "semilinear_example",
    "special_linear_gl2",
    "splits_over",
    "subgroup_checks",
    "symmetric_group",
    "two_derangement_coverage",
    "wreath_product_action",
]
