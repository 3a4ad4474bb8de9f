"""Update-set semantics: proposed updates, clashes, the step function and runs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core.serialize import format_state
from .core.state import (
    Delta, Location, OutsideDomain, State, Terminal, Update, apply_updates, derive_delta,
    eval_term, format_updates, location_of, sorted_updates,
)
from .core.terms import Term, format_term
from .core.values import TRUE, format_value, value_key
from .parser import Assign, Par, Program


def holds(state: State, cond: Term) -> bool:
    """A condition holds only when it evaluates to exactly ``true``."""
    return eval_term(state, cond) is TRUE


def proposed_updates(program: Program, state: State, guards: list | None = None) -> frozenset:
    """Every update the program designates in ``state``.

    If ``guards`` is a list, each evaluated condition is appended to it as a
    ``(condition, held)`` pair.  Raises :class:`OutsideDomain` on a hang.
    """
    if isinstance(program, Assign):
        return frozenset({Update(location_of(state, program.lhs), eval_term(state, program.rhs))})
    if isinstance(program, Par):
        out = frozenset()
        for child in program.body:
            out |= proposed_updates(child, state, guards)
        return out
    ok = holds(state, program.cond)
    if guards is not None:
        guards.append((program.cond, ok))
    if ok:
        return proposed_updates(program.then, state, guards)
    if program.orelse is not None:
        return proposed_updates(program.orelse, state, guards)
    return frozenset()


@dataclass(frozen=True)
class ClashReport:
    conflicts: dict

    def locations(self) -> list[Location]:
        return sorted(self.conflicts, key=Location.sort_key)

    def __str__(self):
        parts = []
        for loc in self.locations():
            vals = sorted(self.conflicts[loc], key=value_key)
            parts.append(f"{loc} <- {{{', '.join(format_value(v) for v in vals)}}}")
        return "; ".join(parts)


def detect_clash(proposed) -> ClashReport | None:
    seen: dict = {}
    for u in proposed:
        seen.setdefault(u.location, set()).add(u.value)
    bad = {loc: frozenset(vals) for loc, vals in seen.items() if len(vals) > 1}
    return ClashReport(bad) if bad else None


@dataclass(frozen=True)
class Next:
    state: State
    proposed: frozenset
    delta: frozenset
    guards: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class Clash:
    report: ClashReport
    proposed: frozenset = frozenset()


@dataclass(frozen=True)
class Hang:
    term: Term


def step(program: Program, state: State):
    """One transition: ``Next``, ``Terminal``, ``Clash`` or ``Hang``.

    Clashes are looked for among the proposed updates, before trivial ones
    are dropped.
    """
    guards: list = []
    try:
        proposed = proposed_updates(program, state, guards)
    except OutsideDomain as e:
        return Hang(e.term)
    if not proposed:
        return Terminal()
    report = detect_clash(proposed)
    if report is not None:
        return Clash(report, proposed)
    delta = derive_delta(state, proposed)
    assert isinstance(delta, Delta)
    # trivial updates are no-ops, so applying the non-trivial part is enough
    return Next(apply_updates(state, delta.updates), proposed, delta.updates, tuple(guards))


class Outcome(enum.Enum):
    TERMINAL = "terminal"
    CLASH = "clash"
    HANG = "hang"
    STUTTER = "stutter"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True)
class TraceStep:
    proposed: frozenset
    delta: frozenset
    state: State
    guards: tuple = ()


@dataclass
class Trace:
    initial: State
    steps: list
    outcome: Outcome
    detail: object = None

    @property
    def final(self) -> State:
        return self.steps[-1].state if self.steps else self.initial

    def states(self) -> list[State]:
        return [self.initial] + [s.state for s in self.steps]

    def __len__(self):
        return len(self.steps)


def run(program: Program, state: State, max_steps: int = 1000) -> Trace:
    """Iterate :func:`step` for at most ``max_steps`` transitions.

    A step whose proposed updates are all trivial ends the run as a stutter:
    the machine is deterministic, so it would repeat that state forever.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    steps: list = []
    current = state
    while True:
        out = step(program, current)
        if isinstance(out, Terminal):
            return Trace(state, steps, Outcome.TERMINAL)
        if isinstance(out, Clash):
            return Trace(state, steps, Outcome.CLASH, out.report)
        if isinstance(out, Hang):
            return Trace(state, steps, Outcome.HANG, out.term)
        if not out.delta:
            return Trace(state, steps, Outcome.STUTTER, out.proposed)
        if len(steps) == max_steps:
            return Trace(state, steps, Outcome.STEP_LIMIT)
        steps.append(TraceStep(out.proposed, out.delta, out.state, out.guards))
        current = out.state


def _indent(text: str, pad: str = "  ") -> str:
    return "".join(pad + line + "\n" for line in text.splitlines())


def format_guards(guards) -> str:
    if not guards:
        return "(none)"
    return "; ".join(f"{format_term(c)} -> {'true' if ok else 'false'}" for c, ok in guards)


def format_changes(before: State, delta) -> str:
    parts = []
    for u in sorted_updates(delta):
        parts.append(f"{u.location}: {format_value(before.value_at(u.location))} -> {format_value(u.value)}")
    return ", ".join(parts) if parts else "(none)"


def describe_outcome(trace: Trace) -> str:
    n = len(trace.steps)
    if trace.outcome is Outcome.TERMINAL:
        return f"terminal after {n} step{'s' if n != 1 else ''}"
    if trace.outcome is Outcome.CLASH:
        return f"clash at step {n + 1}: {trace.detail}"
    if trace.outcome is Outcome.HANG:
        return f"hang at step {n + 1}: {format_term(trace.detail)} is outside its domain of definition"
    if trace.outcome is Outcome.STUTTER:
        return f"stutter at step {n + 1}: proposed {format_updates(trace.detail)} are all trivial"
    return f"step limit reached after {n} step{'s' if n != 1 else ''}"


def format_trace(trace: Trace) -> str:
    """Text form of a run: each step lists guards, proposed set, delta and changes."""
    out = ["initial", _indent(format_state(trace.initial)).rstrip("\n")]
    prev = trace.initial
    for k, s in enumerate(trace.steps, 1):
        out.append(f"step {k}")
        out.append(f"  guards: {format_guards(s.guards)}")
        out.append(f"  proposed: {format_updates(s.proposed)}")
        out.append(f"  delta: {format_updates(s.delta)}")
        out.append(f"  changed: {format_changes(prev, s.delta)}")
        prev = s.state
    out.append(f"outcome: {describe_outcome(trace)}")
    out.append("final")
    out.append(_indent(format_state(trace.final)).rstrip("\n"))
    return "\n".join(out) + "\n"


__all__ = [
    "holds", "proposed_updates", "ClashReport", "detect_clash", "Next", "Clash", "Hang",
    "Terminal", "step", "Outcome", "TraceStep", "Trace", "run", "format_trace",
    "describe_outcome", "format_guards", "format_changes",
]
