"""Critical terms, postulate checks and synthesis from update oracles."""

from .critical import critical_terms, is_subterm_closed, sorted_terms, subterm_closure
from .checks import (
    Counterexample, PropertyReport, check_bounded_exploration, check_determinism,
    check_isomorphism_respect, compare_proposals,
)
from .synthesis import (
    GuardProfile, InconsistentSamples, SynthesisError, UnexpressibleUpdate, express_update,
    guard_profile, program_oracle, synthesize_asm,
)
from .samplers import perturbation_pairs, value_bijections

__all__ = [
    "critical_terms", "is_subterm_closed", "sorted_terms", "subterm_closure",
    "Counterexample", "PropertyReport", "check_bounded_exploration", "check_determinism",
    "check_isomorphism_respect", "compare_proposals",
    "GuardProfile", "InconsistentSamples", "SynthesisError", "UnexpressibleUpdate",
    "express_update", "guard_profile", "program_oracle", "synthesize_asm",
    "perturbation_pairs", "value_bijections",
]
