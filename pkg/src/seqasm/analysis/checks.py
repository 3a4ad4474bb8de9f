"""Randomised checks of the sequential postulates on concrete programs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from ..core.iso import Bijection, apply_isomorphism, transport_updates
from ..core.serialize import format_state
from ..core.state import OutsideDomain, State, Terminal, format_updates, states_agree_on
from ..core.terms import format_term
from ..parser import Program
from ..semantics import Clash, Hang, Next, proposed_updates, step


@dataclass
class Counterexample:
    message: str
    states: list = field(default_factory=list)   # (label, State) pairs

    def format(self) -> str:
        lines = [f"counterexample: {self.message}"]
        for label, s in self.states:
            lines.append(f"state {label}")
            try:
                text = format_state(s)
            except ValueError:
                text = "(relabelled state; no file form)\n"
            lines.extend("  " + ln for ln in text.splitlines())
        return "\n".join(lines)


@dataclass
class PropertyReport:
    name: str
    trials: int = 0
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.checked - len(self.counterexamples)

    @property
    def failed(self) -> int:
        return len(self.counterexamples)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        verdict = "pass" if self.ok else "FAIL"
        return (f"{self.name}: {verdict} ({self.trials} trials, {self.checked} checked, "
                f"{self.passed} passed, {self.failed} failed)")

    def format(self) -> str:
        lines = [f"property {self.name}", f"trials {self.trials}", f"checked {self.checked}",
                 f"passed {self.passed}", f"failed {self.failed}"]
        for c in self.counterexamples:
            lines.append(c.format())
        return "\n".join(lines) + "\n"


def _proposal(program, state):
    try:
        return proposed_updates(program, state)
    except OutsideDomain as e:
        return ("hang", e.term)


def _show(p) -> str:
    if isinstance(p, tuple):
        return f"hang at {format_term(p[1])}"
    return format_updates(p)


def check_bounded_exploration(program: Program, terms, sampler: Callable, trials: int,
                              seed: int = 0, max_counterexamples: int = 5) -> PropertyReport:
    """States agreeing on ``terms`` must receive the same proposed updates.

    ``sampler(rng)`` returns a pair of states; pairs that do not agree on
    every term are drawn but not counted as checked.
    """
    rng = random.Random(seed)
    terms = list(terms)
    report = PropertyReport("bounded-exploration")
    for _ in range(trials):
        x, y = sampler(rng)
        report.trials += 1
        if not states_agree_on(x, y, terms):
            continue
        report.checked += 1
        px, py = _proposal(program, x), _proposal(program, y)
        if px != py:
            if len(report.counterexamples) < max_counterexamples:
                report.counterexamples.append(Counterexample(
                    f"states agree on the terms but propose {_show(px)} vs {_show(py)}",
                    [("X", x), ("Y", y)]))
            else:
                report.counterexamples.append(Counterexample("(further counterexample elided)"))
    return report


def transport_outcome(outcome, z: Bijection, transport=apply_isomorphism):
    if isinstance(outcome, Next):
        return Next(transport(outcome.state, z), transport_updates(outcome.proposed, z),
                    transport_updates(outcome.delta, z))
    if isinstance(outcome, Clash):
        from ..semantics import detect_clash
        proposed = transport_updates(outcome.proposed, z)
        return Clash(detect_clash(proposed), proposed)
    return outcome


def _same_outcome(a, b) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Next):
        return a.proposed == b.proposed and a.delta == b.delta and a.state == b.state
    if isinstance(a, Clash):
        return a.proposed == b.proposed
    if isinstance(a, Hang):
        return a.term == b.term
    return True


def _describe(outcome) -> str:
    if isinstance(outcome, Next):
        return f"next with proposed {format_updates(outcome.proposed)}"
    if isinstance(outcome, Terminal):
        return "terminal"
    if isinstance(outcome, Clash):
        return f"clash at {outcome.report}"
    return f"hang at {format_term(outcome.term)}"


def check_isomorphism_respect(program: Program, state: State, bijections: Callable, trials: int,
                              seed: int = 0, transport=apply_isomorphism,
                              max_counterexamples: int = 5) -> PropertyReport:
    """``step`` on an isomorphic copy must be the transported ``step``.

    ``bijections(rng)`` draws a :class:`Bijection`.  ``transport`` builds
    the isomorphic copy of a state and is exposed so a faulty copy can be
    shown to be caught.
    """
    rng = random.Random(seed)
    report = PropertyReport("isomorphism-respect")
    base = step(program, state)
    for _ in range(trials):
        z = bijections(rng)
        report.trials += 1
        report.checked += 1
        got = step(program, transport(state, z))
        expected = transport_outcome(base, z, transport)
        if not _same_outcome(got, expected):
            if len(report.counterexamples) < max_counterexamples:
                report.counterexamples.append(Counterexample(
                    f"under {z!r}: copy steps to {_describe(got)}, transported step is {_describe(expected)}",
                    [("X", state)]))
            else:
                report.counterexamples.append(Counterexample("(further counterexample elided)"))
    return report


def check_determinism(program: Program, states, repeats: int = 3) -> PropertyReport:
    """Repeated steps from one state agree."""
    report = PropertyReport("determinism")
    for s in states:
        report.trials += 1
        report.checked += 1
        first = step(program, s)
        if any(not _same_outcome(first, step(program, s)) for _ in range(repeats - 1)):
            report.counterexamples.append(Counterexample("step is not a function of the state", [("X", s)]))
    return report


def compare_proposals(reference: Callable, candidate: Program, states, name="equivalence",
                      max_counterexamples: int = 5) -> PropertyReport:
    """Proposed updates of ``candidate`` against a reference oracle on each state.

    ``reference`` maps a state to its proposed update set (a frozenset).
    """
    report = PropertyReport(name)
    for s in states:
        report.trials += 1
        report.checked += 1
        want, got = reference(s), _proposal(candidate, s)
        if want != got:
            if len(report.counterexamples) < max_counterexamples:
                report.counterexamples.append(Counterexample(
                    f"expected {_show(want)}, got {_show(got)}", [("X", s)]))
            else:
                report.counterexamples.append(Counterexample("(further counterexample elided)"))
    return report
