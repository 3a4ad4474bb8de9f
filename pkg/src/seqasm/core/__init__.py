"""Vocabularies, terms, values, states and update sets."""

from .values import FALSE, TRUE, UNDEF, Atom, Con, Special, format_value, value_key
from .terms import (
    DYNAMIC, STATIC, STRICTLY_PARTIAL, TOTAL, UNDEF_RETURNING, Symbol, Term, Vocabulary,
    app, const, format_term, term_key,
)
from .state import (
    OUTSIDE, Builtin, Delta, Domain, DomainError, InternalClashError, Location, OutsideDomain,
    Proposed, State, Table, Terminal, Transported, Update, apply_updates, derive_delta,
    dynamic_diff, eval_term, format_updates, sorted_updates, states_agree_on, try_eval,
)
from .iso import Bijection, apply_isomorphism, random_bijection, transport_updates
from .serialize import format_state

__all__ = [
    "TRUE", "FALSE", "UNDEF", "Atom", "Con", "Special", "format_value", "value_key",
    "STATIC", "DYNAMIC", "TOTAL", "UNDEF_RETURNING", "STRICTLY_PARTIAL",
    "Symbol", "Term", "Vocabulary", "app", "const", "format_term", "term_key",
    "OUTSIDE", "Builtin", "Delta", "Domain", "DomainError", "InternalClashError", "Location",
    "OutsideDomain", "Proposed", "State", "Table", "Terminal", "Transported", "Update",
    "apply_updates", "derive_delta", "dynamic_diff", "eval_term", "format_updates",
    "sorted_updates", "states_agree_on", "try_eval",
    "Bijection", "apply_isomorphism", "random_bijection", "transport_updates", "format_state",
]
