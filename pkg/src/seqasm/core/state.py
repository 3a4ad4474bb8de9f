"""First-order states, term evaluation and update application."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import builtins
from .terms import (
    AND, CONNECTIVES, EQ, NE, NOT, STRICTLY_PARTIAL, Symbol, Term, Vocabulary, literal_value,
)
from .values import FALSE, TRUE, UNDEF, Atom, Con, Special, args_key, boolean, format_value, is_number

INTEGERS = "integers"
RATIONALS = "rationals"
ATOMS = "atoms"
FINITE = "finite"
CONSTRUCTED = "constructed"


@dataclass(frozen=True)
class Domain:
    """Which elements a state ranges over; booleans and ``undef`` are always included.

    ``constructed`` domains hold the :class:`Con` terms over ``constructors``,
    a tuple of ``(name, arity)`` pairs.
    """

    kind: str = INTEGERS
    elements: tuple = ()
    constructors: tuple = ()

    def __post_init__(self):
        if self.kind not in (INTEGERS, RATIONALS, ATOMS, FINITE, CONSTRUCTED):
            raise ValueError(f"unknown domain kind {self.kind!r}")

    def contains(self, v) -> bool:
        if isinstance(v, Special):
            return True
        if self.kind == INTEGERS:
            return isinstance(v, int) and not isinstance(v, bool)
        if self.kind == RATIONALS:
            return is_number(v)
        if self.kind == ATOMS:
            return isinstance(v, Atom)
        if self.kind == FINITE:
            return v in self.elements
        if isinstance(v, Con):
            return (v.name, len(v.args)) in self.constructors and all(
                self.contains(a) and not isinstance(a, Special) for a in v.args)
        return False

    @property
    def finite(self) -> bool:
        return self.kind == FINITE


class OutsideDomain(Exception):
    """Evaluation touched a strictly-partial operation outside its domain of definition."""

    def __init__(self, term: Term):
        super().__init__(f"{term} is outside the domain of definition")
        self.term = term


class _Outside:
    def __repr__(self):
        return "OUTSIDE"


# stands in for a hanging evaluation where a comparable result is needed
OUTSIDE = _Outside()
_MISSING = object()


class DomainError(ValueError):
    pass


class InternalClashError(RuntimeError):
    """apply_updates was handed a clashing set; clashes must be caught before this point."""


@dataclass(frozen=True)
class Table:
    """A finite table over a default value."""

    entries: Mapping = field(default_factory=dict)
    default: object = UNDEF

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           {tuple(k): v for k, v in dict(self.entries).items() if v != self.default})

    def lookup(self, args, symbol):
        return self.entries.get(args, _MISSING)

    def __hash__(self):
        return hash((frozenset(self.entries.items()), self.default))


@dataclass(frozen=True)
class Builtin:
    """A designated built-in operation, see :mod:`seqasm.core.builtins`."""

    op: str
    params: tuple = ()

    def lookup(self, args, symbol):
        return builtins.resolve(self.op, self.params, symbol)(*args)


@dataclass(frozen=True)
class Transported:
    """``base`` carried along a bijection: f'(z(a)) = z(f(a))."""

    base: object
    bijection: object

    def lookup(self, args, symbol):
        z = self.bijection
        v = self.base.lookup(tuple(z.inverse(a) for a in args), symbol)
        return v if v is _MISSING else z(v)


@dataclass(frozen=True)
class Location:
    symbol: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        return self.symbol + "(" + ", ".join(format_value(a) for a in self.args) + ")"

    def sort_key(self):
        return (self.symbol, len(self.args), args_key(self.args))


@dataclass(frozen=True)
class Update:
    location: Location
    value: object

    def __str__(self):
        return f"{self.location} -> {format_value(self.value)}"

    def sort_key(self):
        from .values import value_key
        return (self.location.sort_key(), value_key(self.value))


def sorted_updates(updates: Iterable[Update]) -> list[Update]:
    return sorted(updates, key=Update.sort_key)


def format_updates(updates: Iterable[Update]) -> str:
    return "{" + ", ".join(str(u) for u in sorted_updates(updates)) + "}"


@dataclass(frozen=True)
class Proposed:
    updates: frozenset


@dataclass(frozen=True)
class Delta:
    updates: frozenset


@dataclass(frozen=True)
class Terminal:
    """No next state: the update set is bottom."""


@dataclass(frozen=True, eq=False)
class State:
    vocabulary: Vocabulary
    domain: Domain
    interp: Mapping
    literal_map: object = None

    @classmethod
    def build(cls, vocabulary: Vocabulary, domain: Domain | None = None, interp: Mapping | None = None):
        """Make a state, giving every uninterpreted user symbol an all-``undef`` table."""
        domain = domain or Domain()
        interp = dict(interp or {})
        for name in interp:
            if name not in vocabulary or vocabulary[name].name != name:
                raise KeyError(f"interpretation for undeclared symbol {name!r}")
        for sym in vocabulary.user_symbols():
            interp.setdefault(sym.name, Table())
            it = interp[sym.name]
            if isinstance(it, Table):
                for args, v in it.entries.items():
                    if len(args) != sym.arity:
                        raise ValueError(f"{sym.name} has arity {sym.arity}, table entry has {len(args)}")
                    for x in (*args, v):
                        if not domain.contains(x):
                            raise DomainError(f"{format_value(x)} is not in the {domain.kind} domain")
                if not domain.contains(it.default):
                    raise DomainError(f"default {format_value(it.default)} of {sym.name} is outside the domain")
            elif sym.dynamic:
                raise ValueError(f"dynamic symbol {sym.name} must be interpreted by a table")
        return cls(vocabulary, domain, interp)

    def symbol(self, name) -> Symbol:
        return self.vocabulary[name]

    def literal(self, name: str):
        v = literal_value(name)
        return v if self.literal_map is None else self.literal_map(v)

    def value_at(self, loc: Location):
        """Current content of a location (``OUTSIDE`` where a partial symbol is undefined)."""
        sym = self.vocabulary[loc.symbol]
        partial = sym.totality == STRICTLY_PARTIAL
        v = self.interp[loc.symbol].lookup(tuple(loc.args), loc.symbol)
        if v is _MISSING:
            return OUTSIDE if partial else self.interp[loc.symbol].default
        if v is UNDEF and partial:
            return OUTSIDE
        return v

    def apply(self, name: str, args: tuple, term: Term | None = None):
        """The symbol's operation on argument values, strict in ``undef``."""
        if UNDEF in args:
            return UNDEF
        try:
            interp = self.interp[name]
        except KeyError:
            raise KeyError(f"symbol {name!r} is not interpreted by this state") from None
        partial = self.vocabulary[name].totality == STRICTLY_PARTIAL
        v = interp.lookup(args, name)
        if v is _MISSING:
            if partial:
                raise OutsideDomain(term or Term(name, tuple(Term(format_value(a)) for a in args)))
            return interp.default
        if v is UNDEF and partial:
            raise OutsideDomain(term or Term(name, tuple(Term(format_value(a)) for a in args)))
        return v

    def table(self, name) -> Table:
        return self.interp[name]

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return (self.vocabulary == other.vocabulary and self.domain == other.domain
                and dict(self.interp) == dict(other.interp) and self.literal_map == other.literal_map)

    def __hash__(self):
        return hash((self.domain, frozenset(self.interp.items())))

    def __repr__(self):
        from .serialize import format_state
        try:
            return "State<\n" + format_state(self) + ">"
        except ValueError:
            return f"State({self.vocabulary!r}, {self.domain!r})"


def _logic(head, args):
    if head == NOT:
        (a,) = args
        return {TRUE: FALSE, FALSE: TRUE}.get(a, UNDEF)
    a, b = args
    if a not in (TRUE, FALSE) or b not in (TRUE, FALSE):
        return UNDEF
    if head == AND:
        return boolean(a is TRUE and b is TRUE)
    return boolean(a is TRUE or b is TRUE)


def eval_term(state: State, term: Term):
    """Value of a ground term, evaluating inside out.

    Everything except ``=``/``!=`` is strict in ``undef``.  Raises
    :class:`OutsideDomain` when a strictly-partial symbol is applied outside
    its domain of definition; that propagates to the whole term.
    """
    head = term.head
    if not term.args:
        if head == "true":
            return TRUE
        if head == "false":
            return FALSE
        if head == "undef":
            return UNDEF
        if term.is_literal:
            return state.literal(head)
    args = tuple(eval_term(state, a) for a in term.args)
    if head in (EQ, NE):
        return boolean((args[0] == args[1]) == (head == EQ))
    if head in CONNECTIVES:
        return _logic(head, args)
    return state.apply(head, args, term)


def try_eval(state: State, term: Term):
    """Like :func:`eval_term` but yields ``OUTSIDE`` instead of raising."""
    try:
        return eval_term(state, term)
    except OutsideDomain:
        return OUTSIDE


def location_of(state: State, lhs: Term) -> Location:
    return Location(lhs.head, tuple(eval_term(state, a) for a in lhs.args))


def find_clashes(updates: Iterable[Update]) -> dict:
    seen: dict = {}
    for u in updates:
        seen.setdefault(u.location, set()).add(u.value)
    return {loc: vals for loc, vals in seen.items() if len(vals) > 1}


def apply_updates(state: State, delta: Iterable[Update]) -> State:
    """A new state with the given locations overwritten; the input is untouched."""
    delta = list(delta)
    clashes = find_clashes(delta)
    if clashes:
        loc = sorted(clashes, key=Location.sort_key)[0]
        raise InternalClashError(f"clashing updates reached apply_updates at {loc}")
    if not delta:
        return state
    changed: dict = {}
    for u in delta:
        loc = u.location
        table = state.interp.get(loc.symbol)
        if not isinstance(table, Table):
            raise ValueError(f"{loc.symbol} is not a table and cannot be updated")
        if len(loc.args) != state.vocabulary[loc.symbol].arity:
            raise ValueError(f"arity mismatch in update {u}")
        if not state.domain.contains(u.value):
            raise DomainError(f"update {u} leaves the {state.domain.kind} domain")
        changed.setdefault(loc.symbol, dict(table.entries))[tuple(loc.args)] = u.value
    interp = dict(state.interp)
    for name, entries in changed.items():
        interp[name] = Table(entries, state.interp[name].default)
    return State(state.vocabulary, state.domain, interp, state.literal_map)


def derive_delta(state: State, proposed: Iterable[Update]):
    """Terminal on an empty proposal, else the non-trivial part as a Delta."""
    proposed = frozenset(proposed)
    if not proposed:
        return Terminal()
    return Delta(frozenset(u for u in proposed if state.value_at(u.location) != u.value))


def states_agree_on(x: State, y: State, terms: Iterable[Term]) -> bool:
    return all(try_eval(x, t) == try_eval(y, t) for t in terms)


def dynamic_diff(x: State, y: State) -> set[Location]:
    """Locations whose table contents differ between two states over one vocabulary."""
    out = set()
    for name, tx in x.interp.items():
        ty = y.interp[name]
        if not (isinstance(tx, Table) and isinstance(ty, Table)):
            continue
        for args in set(tx.entries) | set(ty.entries):
            if tx.entries.get(args, tx.default) != ty.entries.get(args, ty.default):
                out.add(Location(name, args))
    return out


__all__ = [
    "Domain", "State", "Table", "Builtin", "Transported", "Location", "Update",
    "Proposed", "Delta", "Terminal", "OutsideDomain", "OUTSIDE", "DomainError",
    "InternalClashError", "eval_term", "try_eval", "apply_updates", "derive_delta",
    "states_agree_on", "location_of", "find_clashes", "sorted_updates", "format_updates",
    "dynamic_diff", "Con",
]
