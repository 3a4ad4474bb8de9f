"""Rebuild an ASM from a black-box update oracle and a set of critical terms.

Every observed update ``f(a...) -> b`` is rewritten through critical terms
denoting ``a...`` and ``b``; guards are conjunctions of equalities and
disequalities between critical terms.

Samples are first split by a decision tree over those (dis)equalities,
aiming at groups whose updates share one symbolic rule.  A group for which
no split helps is broken up by its full guard profile (the complete
equality pattern of the terms), which is exact on the samples but only
reaches states with an already observed profile.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

from ..core.state import Delta, Location, Proposed, State, Terminal, Update, try_eval
from ..core.terms import EQ, NE, Term, conjoin, format_term, term_key
from ..parser import Assign, If, Par, Program
from ..semantics import proposed_updates

CONSTANT_TERMS = (Term("true"), Term("false"), Term("undef"))


class SynthesisError(Exception):
    pass


class UnexpressibleUpdate(SynthesisError):
    def __init__(self, update: Update, state: State):
        super().__init__(f"no critical term denotes a component of {update}")
        self.update = update
        self.state = state


class InconsistentSamples(SynthesisError):
    def __init__(self, message, states=()):
        super().__init__(message)
        self.states = list(states)


def plain_terms(terms: Iterable[Term]) -> list[Term]:
    """Terms usable on either side of a guard literal, plus the three constants."""
    out = {t for t in terms if t.is_plain} | set(CONSTANT_TERMS)
    return sorted(out, key=term_key)


@dataclass(frozen=True)
class GuardProfile:
    """Which critical terms share a value in a state, constants included.

    ``blocks`` partitions the plain critical terms (and ``true``, ``false``,
    ``undef``) by value; each block and the block order are sorted by
    :func:`term_key`.
    """

    blocks: tuple

    def literals(self) -> list[Term]:
        lits = []
        for b in self.blocks:
            lits.extend(Term(EQ, (b[0], t)) for t in b[1:])
        for b1, b2 in itertools.combinations(self.blocks, 2):
            lits.append(Term(NE, (b1[0], b2[0])))
        return lits

    def __str__(self):
        return " | ".join("{" + ", ".join(format_term(t) for t in b) + "}" for b in self.blocks)


def _profile_from_values(terms: list[Term], values: dict) -> GuardProfile:
    groups: dict = {}
    for t in terms:
        groups.setdefault(values[t], []).append(t)
    blocks = sorted((tuple(sorted(g, key=term_key)) for g in groups.values()), key=lambda b: term_key(b[0]))
    return GuardProfile(tuple(blocks))


def guard_profile(state: State, terms: Iterable[Term]) -> GuardProfile:
    terms = plain_terms(terms)
    return _profile_from_values(terms, {t: try_eval(state, t) for t in terms})


def program_oracle(program: Program) -> Callable:
    """Oracle answering with the program's proposed updates."""
    def oracle(state):
        p = proposed_updates(program, state)
        return Proposed(p) if p else Terminal()
    return oracle


def _updates_of(result) -> frozenset:
    if isinstance(result, Terminal):
        return frozenset()
    if isinstance(result, (Proposed, Delta)):
        return frozenset(result.updates)
    return frozenset(result)


@dataclass(frozen=True)
class _Rule:
    """``symbol(args) := rhs`` with every part a plain critical term."""

    symbol: str
    args: tuple
    rhs: Term

    def key(self):
        return (sum(a.size() for a in self.args) + self.rhs.size(),
                self.symbol, tuple(format_term(a) for a in self.args), format_term(self.rhs))

    def assign(self) -> Assign:
        return Assign(self.symbol, self.args, self.rhs)


class _Sample:
    def __init__(self, state: State, updates: frozenset, terms: list[Term]):
        self.state = state
        self.updates = updates
        self.values = {t: try_eval(state, t) for t in terms}
        self.by_value: dict = {}
        for t in terms:
            self.by_value.setdefault(self.values[t], []).append(t)
        self.label = tuple(sorted(Counter(u.location.symbol for u in updates).items()))
        self._profile = None

    def profile(self, terms) -> GuardProfile:
        if self._profile is None:
            self._profile = _profile_from_values(terms, self.values)
        return self._profile

    def denote(self, value) -> list[Term]:
        return self.by_value.get(value, [])

    def produce(self, rule: _Rule) -> Update:
        loc = Location(rule.symbol, tuple(self.values[a] for a in rule.args))
        return Update(loc, self.values[rule.rhs])


def express_update(update: Update, state: State, terms: Iterable[Term]) -> Assign:
    """The assignment that yields ``update`` in ``state`` using the smallest denoting terms."""
    sample = _Sample(state, frozenset({update}), plain_terms(terms))
    parts = []
    for v in (*update.location.args, update.value):
        cands = sample.denote(v)
        if not cands:
            raise UnexpressibleUpdate(update, state)
        parts.append(min(cands, key=term_key))
    return Assign(update.location.symbol, tuple(parts[:-1]), parts[-1])


def _common_rules(group: list[_Sample]) -> tuple | None:
    """A smallest-first set of symbolic rules reproducing every sample's updates, if one exists."""
    first = group[0]
    if any(s.label != first.label for s in group):
        return None
    if not first.updates:
        return ()
    candidates = set()
    for u in first.updates:
        pools = [first.denote(a) for a in u.location.args] + [first.denote(u.value)]
        for combo in itertools.product(*pools):
            candidates.add(_Rule(u.location.symbol, tuple(combo[:-1]), combo[-1]))
    consistent = [r for r in candidates if all(s.produce(r) in s.updates for s in group)]
    consistent.sort(key=_Rule.key)
    needed = {(k, u) for k, s in enumerate(group) for u in s.updates}
    chosen = []
    for r in consistent:
        gain = {(k, s.produce(r)) for k, s in enumerate(group)} & needed
        if gain:
            chosen.append(r)
            needed -= gain
            if not needed:
                break
    if needed:
        return None
    return tuple(sorted(chosen, key=_Rule.key))


def _entropy(labels) -> float:
    n = len(labels)
    return -sum(c / n * math.log2(c / n) for c in Counter(labels).values())


def _best_split(group: list[_Sample], features: list):
    base = _entropy([s.label for s in group])
    best, best_gain = None, 1e-12
    n = len(group)
    for f in features:
        t, u = f
        yes = [s.label for s in group if s.values[t] == s.values[u]]
        if not yes or len(yes) == n:
            continue
        no = [s.label for s in group if s.values[t] != s.values[u]]
        gain = base - (len(yes) / n) * _entropy(yes) - (len(no) / n) * _entropy(no)
        if gain > best_gain + 1e-12:
            best, best_gain = f, gain
    return best


def _build(group, path, features, terms, leaves):
    rules = _common_rules(group)
    if rules is not None:
        leaves.append((path, rules))
        return
    if len({s.label for s in group}) > 1:
        f = _best_split(group, features)
        if f is not None:
            t, u = f
            yes = [s for s in group if s.values[t] == s.values[u]]
            no = [s for s in group if s.values[t] != s.values[u]]
            _build(yes, path + [Term(EQ, (t, u))], features, terms, leaves)
            _build(no, path + [Term(NE, (t, u))], features, terms, leaves)
            return
    by_profile: dict = {}
    for s in group:
        by_profile.setdefault(s.profile(terms), []).append(s)
    for prof in sorted(by_profile, key=str):
        members = by_profile[prof]
        rules = _common_rules(members)
        if rules is None:
            raise InconsistentSamples(
                f"samples with guard profile {prof} need different update rules",
                [s.state for s in members[:2]])
        lits = path + [lit for lit in prof.literals() if lit not in path]
        leaves.append((lits, rules))


def _body(rules) -> Program:
    assigns = [r.assign() for r in rules]
    return assigns[0] if len(assigns) == 1 else Par(tuple(assigns))


def synthesize_asm(oracle: Callable, terms: Iterable[Term], samples: Iterable[State]) -> Program:
    """An ASM whose proposed updates equal the oracle's on every sample.

    ``oracle(state)`` returns ``Proposed``/``Delta`` (or a plain set of
    updates) or ``Terminal``.  Raises :class:`UnexpressibleUpdate` when some
    observed location or value is named by no critical term, and
    :class:`InconsistentSamples` when states with one guard profile demand
    different rules.
    """
    terms = plain_terms(terms)
    recs = []
    for s in samples:
        updates = _updates_of(oracle(s))
        rec = _Sample(s, updates, terms)
        for u in sorted(updates, key=Update.sort_key):
            if any(not rec.denote(v) for v in (*u.location.args, u.value)):
                raise UnexpressibleUpdate(u, s)
        recs.append(rec)
    if not recs:
        return Par(())
    features = list(itertools.combinations(terms, 2))
    leaves: list = []
    _build(recs, [], features, terms, leaves)
    stmts = []
    for path, rules in leaves:
        if not rules:
            continue
        body = _body(rules)
        stmts.append(If(conjoin(path), body) if path else body)
    program = stmts[0] if len(stmts) == 1 else Par(tuple(stmts))
    for rec in recs:
        if proposed_updates(program, rec.state) != rec.updates:
            raise SynthesisError("synthesised program disagrees with the oracle on a sample")
    return program


def format_rule_set(assigns) -> str:
    return "{" + ", ".join(f"{format_term(a.lhs)} -> {format_term(a.rhs)}" for a in assigns) + "}"


__all__ = [
    "GuardProfile", "guard_profile", "program_oracle", "synthesize_asm", "express_update",
    "SynthesisError", "UnexpressibleUpdate", "InconsistentSamples", "plain_terms", "format_rule_set",
]
