"""Generic random state generators for the postulate checks."""

from __future__ import annotations

import random
from fractions import Fraction

from ..core.iso import active_values, random_bijection
from ..core.state import State, Table, Update, Location, apply_updates
from ..core.terms import literal_value
from ..core.values import UNDEF, Atom
from ..parser import Program, iter_statements, Assign, If


def program_literals(program: Program | None) -> set:
    """Numeric literal values written in a program."""
    out = set()
    if program is None:
        return out
    for node in iter_statements(program):
        terms = []
        if isinstance(node, Assign):
            terms = [*node.args, node.rhs]
        elif isinstance(node, If):
            terms = [node.cond]
        for t in terms:
            out.update(literal_value(s.head) for s in t.subterms() if s.is_literal)
    return out


def value_pool(state: State, program: Program | None = None) -> list:
    from ..core.values import value_key
    pool = active_values(state) | program_literals(program)
    pool = {v for v in pool if state.domain.contains(v)}
    return sorted(pool, key=value_key) + [UNDEF]


def _fresh(rng, domain):
    if domain.kind == "integers":
        return rng.randint(-20, 20)
    if domain.kind == "rationals":
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 8))
        return int(v) if v.denominator == 1 else v
    if domain.kind == "atoms":
        return Atom(rng.choice("abcdef"))
    return None


def perturb(state: State, rng: random.Random, pool: list, changes: int) -> State:
    """Overwrite ``changes`` random locations of dynamic symbols with random values."""
    dyn = [s for s in state.vocabulary.user_symbols() if s.dynamic]
    if not dyn:
        return state
    updates = {}
    for _ in range(changes):
        sym = rng.choice(dyn)
        table: Table = state.interp[sym.name]
        known = list(table.entries)
        if known and rng.random() < 0.5:
            args = rng.choice(known)
        else:
            args = tuple(rng.choice(pool[:-1] or pool) for _ in range(sym.arity))
        value = _fresh(rng, state.domain) if rng.random() < 0.3 else rng.choice(pool)
        if value is None:
            value = rng.choice(pool)
        updates[Location(sym.name, args)] = value
    return apply_updates(state, [Update(loc, v) for loc, v in updates.items()])


def perturbation_pairs(state: State, program: Program | None = None):
    """Sampler of state pairs near ``state``: X perturbs the base, Y perturbs X a little more."""
    pool = value_pool(state, program)

    def sample(rng):
        x = perturb(state, rng, pool, rng.randint(0, 3))
        y = perturb(x, rng, pool, rng.randint(1, 2))
        return x, y
    return sample


def value_bijections(state: State, program: Program | None = None):
    """Sampler of bijections moving every element the state or program mentions."""
    values = set(value_pool(state, program)) - {UNDEF}

    def sample(rng):
        return random_bijection(rng, values, state.domain)
    return sample
