"""Binary Weil-type character sums in closed form, their brute-force oracle,
and the three-weight linear codes their defining sets generate."""

from .gf2 import (
    ALT_MODULI,
    CostRefusal,
    DEFAULT_MODULI,
    Field,
    make_field,
    validate_modulus,
)
from .expsum import (
    BRUTE_FORCE_MAX_E,
    CASE_TAGS,
    EXACT,
    SIGN_AMBIGUOUS,
    LinearizedSolution,
    SumParams,
    SumValue,
    brute_force_sum,
    closed_form_sum,
    legacy_incorrect_sum,
    solve_linearized,
)
from .codes import (
    DEFSET_MAX_E,
    ORACLE_MAX_E,
    CodeSpec,
    DefiningSet,
    SecretSharingReport,
    WeightDistribution,
    build_defining_set,
    codeword_weight,
    distributions_match,
    dual_distance_at_least_2,
    length_formula,
    pless_check,
    secret_sharing_check,
    weight_distribution_oracle,
    weight_distribution_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "ALT_MODULI",
    "BRUTE_FORCE_MAX_E",
    "CASE_TAGS",
    "CostRefusal",
    "DEFAULT_MODULI",
    "DEFSET_MAX_E",
    "EXACT",
    "ORACLE_MAX_E",
    "SIGN_AMBIGUOUS",
    "CodeSpec",
    "DefiningSet",
    "Field",
    "LinearizedSolution",
    "SecretSharingReport",
    "SumParams",
    "SumValue",
    "WeightDistribution",
    "__version__",
    "brute_force_sum",
    "build_defining_set",
    "closed_form_sum",
    "codeword_weight",
    "distributions_match",
    "dual_distance_at_least_2",
    "legacy_incorrect_sum",
    "length_formula",
    "make_field",
    "pless_check",
    "secret_sharing_check",
    "solve_linearized",
    "validate_modulus",
    "weight_distribution_oracle",
    "weight_distribution_theorem",
]
