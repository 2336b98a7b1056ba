"""Exact natural-density probability over infinite binary sequences."""

from .actual import (
    ActualEvent,
    CauchyGrid,
    Modulus,
    STANDARD_GRID,
    bottom_actual,
    complement,
    disjoint_union,
    modularity_check,
    monotonicity_check,
    null_subevent,
    probability,
    relax_modulus,
    validate_cauchy,
)
from .dsl import elaborate, parse, to_text
from .events import (
    PotentialEvent,
    bool_and,
    bool_not,
    bool_or,
    bottom,
    frequency,
    heyting_imp,
    shift,
    top,
)
from .exact import BishopReal, Rational, add, eq_refute_upto, from_rational, one_minus, separate_from_zero
from .omniscience import lpo_regular, oscillation_report, oscillator, p_lpo_regular, pp_lpo_regular
from .regular import (
    RegularEvent,
    canonicalize,
    closed_form_density,
    equal_regular,
    reg,
    reg_and,
    reg_not,
    reg_or,
    regular_to_actual,
)
from .structure import (
    audit_structure,
    density_instance,
    fault_seeded_instance,
    finite_fuzzy_instance,
    finite_kolmogorov_instance,
)
from .verdicts import ConsistentOver, ConsistentUpTo, RefutedAt

__all__ = [
    "ActualEvent",
    "BishopReal",
    "CauchyGrid",
    "ConsistentOver",
    "ConsistentUpTo",
    "Modulus",
    "PotentialEvent",
    "Rational",
    "RefutedAt",
    "RegularEvent",
    "STANDARD_GRID",
    "add",
    "audit_structure",
    "bool_and",
    "bool_not",
    "bool_or",
    "bottom",
    "bottom_actual",
    "canonicalize",
    "closed_form_density",
    "complement",
    "density_instance",
    "disjoint_union",
    "elaborate",
    "eq_refute_upto",
    "equal_regular",
    "fault_seeded_instance",
    "finite_fuzzy_instance",
    "finite_kolmogorov_instance",
    "frequency",
    "from_rational",
    "heyting_imp",
    "lpo_regular",
    "modularity_check",
    "monotonicity_check",
    "null_subevent",
    "one_minus",
    "oscillation_report",
    "oscillator",
    "p_lpo_regular",
    "parse",
    "pp_lpo_regular",
    "probability",
    "reg",
    "reg_and",
    "reg_not",
    "reg_or",
    "regular_to_actual",
    "relax_modulus",
    "separate_from_zero",
    "shift",
    "to_text",
    "top",
    "validate_cauchy",
]
