"""Frobenius splitting and singularity certificates over small finite fields.

The package decides F-splitting of square-free supported polynomials,
builds and verifies localization certificates for strong F-regularity of
the associated complete intersections, computes multiplicity and the
defect of the F-pure threshold, and crosschecks every exact invariant
against direct Frobenius-power computations.
"""

from .errors import (
    BadFieldSpecError,
    BudgetExceededError,
    CertificateSearchExhausted,
    ContextMismatchError,
    DegreeRangeError,
    ExponentOverflowError,
    FieldMismatchError,
    FsingError,
    HypothesisViolatedError,
    MatroidFormatError,
    MinimalPrimeError,
    NameCollisionError,
    NotPrimeError,
    NotSquareFreeSupportedError,
    ParseError,
    PointNotOnVarietyError,
    TheoremContradictionError,
    UnknownVariableError,
    ZeroDivisorError,
    ZeroInputError,
    ZeroLeadingError,
    ZeroOrConstantError,
)
from .field import Field, build_field, is_prime
from .poly import (
    Poly,
    VarCtx,
    canon_key,
    exact_divide,
    frobenius_power_mod_bracket,
    grlex_key,
    multiply_monomial_truncated,
)
from .structure import (
    CIdeal,
    degree_one_irreducibility,
    disjoint_factorization,
    extension_stability_check,
    gcd_sqfree,
    is_irreducible_sqfree,
    is_squarefree_supported,
    squarefree_offender,
)
from .frobenius import (
    FptSample,
    RegCertificate,
    RegStage,
    SplitWitness,
    assert_split_or_dump,
    build_regularity_certificate,
    fedder_fsplit,
    fpt_oracle,
    fpt_sample_poly,
    fsplit_witness,
    glassbrenner_condition,
    verify_regularity_certificate,
    verify_split_witness,
)
from .invariants import (
    InvariantReport,
    dfpt_at,
    fpt_crosscheck,
    global_invariants,
    multiplicity_hypersurface,
)
from .io import (
    MatroidInput,
    ParsedFile,
    matroid_basis_polynomial,
    parse_matroid_file,
    parse_matroid_source,
    parse_point,
    parse_poly_file,
    parse_poly_source,
    verify_exchange,
)
from .pipeline import (
    ModificationResult,
    SuiteConfig,
    check_sqfree_sample,
    minimize_failure,
    modification_build,
    random_sqfree,
    theorem_suite,
)
from .report import build_report, text_summary, to_json

__version__ = "0.1.0"

__all__ = [
    "BadFieldSpecError",
    "BudgetExceededError",
    "CertificateSearchExhausted",
    "CIdeal",
    "ContextMismatchError",
    "DegreeRangeError",
    "ExponentOverflowError",
    "Field",
    "FieldMismatchError",
    "FptSample",
    "FsingError",
    "HypothesisViolatedError",
    "InvariantReport",
    "MatroidFormatError",
    "MatroidInput",
    "MinimalPrimeError",
    "ModificationResult",
    "NameCollisionError",
    "NotPrimeError",
    "NotSquareFreeSupportedError",
    "ParseError",
    "ParsedFile",
    "PointNotOnVarietyError",
    "Poly",
    "RegCertificate",
    "RegStage",
    "SplitWitness",
    "SuiteConfig",
    "TheoremContradictionError",
    "UnknownVariableError",
    "VarCtx",
    "ZeroDivisorError",
    "ZeroInputError",
    "ZeroLeadingError",
    "ZeroOrConstantError",
    "assert_split_or_dump",
    "build_field",
    "build_regularity_certificate",
    "build_report",
    "canon_key",
    "check_sqfree_sample",
    "degree_one_irreducibility",
    "dfpt_at",
    "disjoint_factorization",
    "exact_divide",
    "extension_stability_check",
    "fedder_fsplit",
    "fpt_crosscheck",
    "fpt_oracle",
    "fpt_sample_poly",
    "frobenius_power_mod_bracket",
    "fsplit_witness",
    "gcd_sqfree",
    "glassbrenner_condition",
    "global_invariants",
    "grlex_key",
    "is_irreducible_sqfree",
    "is_prime",
    "is_squarefree_supported",
    "matroid_basis_polynomial",
    "minimize_failure",
    "modification_build",
    "multiplicity_hypersurface",
    "multiply_monomial_truncated",
    "parse_matroid_file",
    "parse_matroid_source",
    "parse_point",
    "parse_poly_file",
    "parse_poly_source",
    "random_sqfree",
    "squarefree_offender",
    "text_summary",
    "theorem_suite",
    "to_json",
    "verify_exchange",
    "verify_regularity_certificate",
    "verify_split_witness",
    "__version__",
]
