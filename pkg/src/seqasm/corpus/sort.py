"""Helpers around the sorting entry: state builders, random samplers and the four-row case table."""

from __future__ import annotations

import random
from functools import lru_cache

from ..analysis.critical import critical_terms
from ..analysis.synthesis import express_update, format_rule_set
from ..core.serialize import format_assignments
from ..core.state import State, Table, derive_delta, format_updates
from ..parser import Program
from ..semantics import proposed_updates


@lru_cache(maxsize=None)
def _entry():
    from . import get_entry
    return get_entry("sort")


def sort_program() -> Program:
    return _entry().load_program()


@lru_cache(maxsize=None)
def _template() -> State:
    return _entry().load_state("states/n2.st")


def sort_state(values, i: int = 0, j: int = 1, n: int | None = None) -> State:
    """A sorting state with F(k) = values[k]; ``n`` defaults to ``len(values)``."""
    t = _template()
    n = len(values) if n is None else n
    interp = dict(t.interp)
    interp["F"] = Table({(k,): v for k, v in enumerate(values)})
    interp["i"] = Table({(): i})
    interp["j"] = Table({(): j})
    interp["n"] = Table({(): n})
    return State.build(t.vocabulary, t.domain, interp)


def f_values(state: State) -> list:
    n = state.table("n").entries[()]
    return [state.table("F").entries.get((k,), state.table("F").default) for k in range(n)]


def random_array(rng: random.Random, n_max: int = 8, lo: int = -9, hi: int = 9) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(rng.randint(1, n_max))]


def random_initial(rng: random.Random, n_max: int = 8) -> State:
    return sort_state(random_array(rng, n_max))


def random_configuration(rng: random.Random, n_max: int = 8) -> State:
    """Any reachable-looking configuration: 0 <= i < j <= n."""
    values = random_array(rng, n_max)
    n = len(values)
    i = rng.randint(0, n - 1)
    j = rng.randint(i + 1, n)
    return sort_state(values, i, j)


def constrained_pair(rng: random.Random, n_max: int = 8):
    """X and a Y that differs from it only in F away from i and j."""
    x = random_configuration(rng, n_max)
    i, j, n = (x.table(s).entries[()] for s in "ijn")
    entries = dict(x.table("F").entries)
    for k in rng.sample(range(n + 3), rng.randint(1, 3)):
        if k not in (i, j):
            entries[(k,)] = rng.randint(-9, 9)
    interp = dict(x.interp)
    interp["F"] = Table(entries)
    return x, State(x.vocabulary, x.domain, interp)


def loose_pair(rng: random.Random, n_max: int = 8):
    """X and a Y with the same i, j, n but freshly drawn F values."""
    x = random_configuration(rng, n_max)
    n = x.table("n").entries[()]
    interp = dict(x.interp)
    interp["F"] = Table({(k,): rng.randint(-9, 9) for k in range(n)})
    return x, State(x.vocabulary, x.domain, interp)


# Witness configurations for the four rows, all with n = 9.
_BASE = [5, 3, 8, 1, 9, 2, 7, 4, 6]


def case_table_witnesses() -> list[tuple[int, str, State]]:
    row2 = list(_BASE)
    row2[3], row2[6] = 20, 10
    row3 = list(_BASE)
    row3[3], row3[6] = 10, 20
    return [
        (0, "j = n = i+1", sort_state(_BASE, 8, 9)),
        (1, "j = n != i+1", sort_state(_BASE, 3, 9)),
        (2, "j != n, F(i) > F(j)", sort_state(row2, 3, 6)),
        (3, "j != n, not F(i) > F(j)", sort_state(row3, 3, 6)),
    ]


def case_table_delta(program: Program, state: State):
    """Update set of a state: Terminal, or the non-trivial proposed updates."""
    return derive_delta(state, proposed_updates(program, state))


def render_case_table(program: Program) -> str:
    terms = critical_terms(program)
    lines = []
    for row, cond, x in case_table_witnesses():
        d = case_table_delta(program, x)
        lines.append(f"row {row}: {cond}")
        lines.append(f"  witness: {format_assignments(x)}")
        if not hasattr(d, "updates"):
            lines.append("  delta: bottom")
            lines.append("  symbolic: bottom")
            continue
        lines.append(f"  delta: {format_updates(d.updates)}")
        assigns = sorted((express_update(u, x, terms) for u in d.updates), key=lambda a: str(a.lhs))
        lines.append(f"  symbolic: {format_rule_set(assigns)}")
    return "\n".join(lines) + "\n"
