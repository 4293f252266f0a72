"""Exact arithmetic for twisted function-field modules: base rings, twisted
polynomials, module constructions, motive characteristic polynomials, Goss
L-series, and special-value checks at desk scale."""

from . import errors
from .base import (
    APoly,
    ECElem,
    ExtConstField,
    FieldSpec,
    KDomain,
    KElem,
    PrimeIdeal,
    RFElem,
    ResidueField,
    enumerate_monic_irreducibles,
    frobenius_twist_const,
    is_irreducible,
    necklace_count,
    power_residue_symbol,
    residue_norm,
)
from .laurent import (
    LaurentNumber,
    agreement_valuation,
    embed_rational,
    norm_down,
)
from .ore import OrePolynomial
from .drinfeld import (
    AndersonModule,
    DrinfeldModule,
    EntireSeries,
    carlitz,
    carlitz_factorials,
    eval_entire,
    exp_coefficients,
    image_of,
    log_coefficients,
)
from .tower import (
    GaloisActionTable,
    RepresentationTable,
    Tower,
    TowerElement,
    carlitz_cyclotomic_tower,
    descend_to_base,
    frobenius_twist,
    galois_apply,
    rebase_constants,
    torsion_tower,
)
from .twist import (
    FVector,
    FlatSolution,
    SolutionMatrix,
    average_solution,
    clear_denominators,
    companion_matrices,
    f_vector,
    moore_matrix,
    trivial_solution,
    twist_model,
    verify_sep_isomorphism,
    verify_solution,
)
from .examples import (
    expected_f_vectors,
    s3_configuration,
    torsion_character_configuration,
)
from .lseries import (
    BadPrimeSet,
    CharpolyRecord,
    CyclotomicCharacter,
    PowerResidueCharacter,
    character_L,
    character_values,
    constant_eigenvalue_data,
    detect_bad_primes,
    dual_eigenvalue,
    frobenius_charpoly,
    goss_L,
    local_factor,
    module_structure_oracle,
    norm_factored_L,
    prime_factors,
    reduce_module,
)
from .specialvalues import (
    PowerTwist,
    SpecialValueReport,
    convergence_radius,
    log_at_one,
    power_twist_module,
    taelman_check,
)

__all__ = [
    "errors",
    "APoly",
    "ECElem",
    "ExtConstField",
    "FieldSpec",
    "KDomain",
    "KElem",
    "PrimeIdeal",
    "RFElem",
    "ResidueField",
    "enumerate_monic_irreducibles",
    "frobenius_twist_const",
    "is_irreducible",
    "necklace_count",
    "power_residue_symbol",
    "residue_norm",
    "LaurentNumber",
    "agreement_valuation",
    "embed_rational",
    "norm_down",
    "OrePolynomial",
    "AndersonModule",
    "DrinfeldModule",
    "EntireSeries",
    "carlitz",
    "carlitz_factorials",
    "eval_entire",
    "exp_coefficients",
    "image_of",
    "log_coefficients",
    "GaloisActionTable",
    "RepresentationTable",
    "Tower",
    "TowerElement",
    "carlitz_cyclotomic_tower",
    "descend_to_base",
    "frobenius_twist",
    "galois_apply",
    "rebase_constants",
    "torsion_tower",
    "FVector",
    "FlatSolution",
    "SolutionMatrix",
    "average_solution",
    "clear_denominators",
    "companion_matrices",
    "f_vector",
    "moore_matrix",
    "trivial_solution",
    "twist_model",
    "verify_sep_isomorphism",
    "verify_solution",
    "expected_f_vectors",
    "s3_configuration",
    "torsion_character_configuration",
    "BadPrimeSet",
    "CharpolyRecord",
    "CyclotomicCharacter",
    "PowerResidueCharacter",
    "character_L",
    "character_values",
    "constant_eigenvalue_data",
    "detect_bad_primes",
    "dual_eigenvalue",
    "frobenius_charpoly",
    "goss_L",
    "local_factor",
    "module_structure_oracle",
    "norm_factored_L",
    "prime_factors",
    "reduce_module",
    "PowerTwist",
    "SpecialValueReport",
    "convergence_radius",
    "log_at_one",
    "power_twist_module",
    "taelman_check",
]

__version__ = "0.1.0"
