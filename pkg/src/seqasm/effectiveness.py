"""Constructor vocabularies, effective states and ASMs as partial-function computers.

An effective state has a domain freely generated by a few static
constructors; every other operation is either a finite table over a
default value or is vouched for by a witness program that computes it
from the constructors.  Freeness can only be checked up to a term depth,
so every report carries the bound it was checked to.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .core.state import OUTSIDE, Builtin, State, Table, Update, apply_updates, eval_term, location_of, try_eval
from .core.terms import STATIC, Term, format_term
from .core.values import UNDEF, Special, format_value, value_key
from .parser import Program, parse_program, parse_state, parse_term
from .semantics import Outcome, run


@dataclass(frozen=True)
class ConstructorVocabulary:
    """Constructor symbols as ``(name, arity)`` pairs."""

    symbols: tuple

    @classmethod
    def from_names(cls, vocabulary, names) -> ConstructorVocabulary:
        out = []
        for name in names:
            sym = vocabulary[name]
            if sym.kind != STATIC:
                raise ValueError(f"constructor {name} must be static")
            out.append((sym.name, sym.arity))
        return cls(tuple(sorted(set(out))))

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.symbols]


def enumerate_constructor_terms(c: ConstructorVocabulary, depth: int) -> list[Term]:
    """All terms over ``c`` of depth at most ``depth``, depth-major then by text."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    levels = [sorted((Term(n) for n, k in c.symbols if k == 0), key=format_term)]
    for d in range(1, depth + 1):
        below = [t for lvl in levels for t in lvl]
        new = []
        for name, k in c.symbols:
            if k == 0:
                continue
            for args in itertools.product(below, repeat=k):
                # at least one argument sits on the previous level
                if any(a in levels[d - 1] for a in args):
                    new.append(Term(name, args))
        levels.append(sorted(set(new), key=format_term))
    return [t for lvl in levels for t in lvl]


def term_depth(t: Term) -> int:
    return 1 + max(map(term_depth, t.args)) if t.args else 0


@dataclass
class FreenessReport:
    depth_bound: int
    named: dict = field(default_factory=dict)        # value -> first term naming it
    duplicates: list = field(default_factory=list)   # (value, earlier term, later term)
    unnamed: list = field(default_factory=list)      # finite-domain elements no term reached
    skipped: list = field(default_factory=list)      # ill-sorted terms (undef or hanging)

    @property
    def ok(self) -> bool:
        return not self.duplicates and not self.unnamed

    def format(self) -> str:
        lines = [f"freeness up to depth {self.depth_bound}: {'pass' if self.ok else 'FAIL'}",
                 f"  named {len(self.named)} values, skipped {len(self.skipped)} ill-sorted terms"]
        for v, a, b in self.duplicates:
            lines.append(f"  duplicate: {format_value(v)} is named by {format_term(a)} and {format_term(b)}")
        for v in self.unnamed:
            lines.append(f"  unnamed: {format_value(v)}")
        return "\n".join(lines) + "\n"


def check_free_construction(state: State, c: ConstructorVocabulary, depth_bound: int) -> FreenessReport:
    """Look for values named twice (and, on finite domains, never) by constructor terms.

    Terms that evaluate to ``undef`` (except ``undef`` itself) or hang
    are ill-sorted applications such as ``c(true)`` and are skipped.
    """
    report = FreenessReport(depth_bound)
    for t in enumerate_constructor_terms(c, depth_bound):
        v = try_eval(state, t)
        if v is OUTSIDE or (v is UNDEF and t.head != "undef"):
            report.skipped.append(t)
            continue
        if v in report.named:
            report.duplicates.append((v, report.named[v], t))
        else:
            report.named[v] = t
    if state.domain.finite:
        report.unnamed = sorted((v for v in state.domain.elements if v not in report.named), key=value_key)
    return report


@dataclass(frozen=True)
class FunctionComputationSpec:
    """How a program computes a k-ary function: load the inputs, run, read the output."""

    inputs: tuple
    output: Term
    template: State
    budget: int = 1000

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        for t in self.inputs:
            sym = self.template.vocabulary[t.head]
            if not sym.dynamic:
                raise ValueError(f"input term {format_term(t)} is not a dynamic location")
            if len(t.args) != sym.arity:
                raise ValueError(f"input term {format_term(t)} has the wrong arity")

    @property
    def arity(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class Divergent:
    budget: int
    reason: str = "step-limit"

    def __str__(self):
        return f"divergent ({self.reason}, budget {self.budget})"


class ComputationClash(RuntimeError):
    def __init__(self, report):
        super().__init__(f"clash at {report}")
        self.report = report


class ComputationHang(RuntimeError):
    def __init__(self, term):
        super().__init__(f"hang: {format_term(term)} is outside its domain of definition")
        self.term = term


def make_input_states(spec: FunctionComputationSpec, values) -> State:
    """The template with the input locations set to ``values``."""
    values = tuple(values)
    if len(values) != spec.arity:
        raise ValueError(f"expected {spec.arity} input values, got {len(values)}")
    updates = [Update(location_of(spec.template, t), v) for t, v in zip(spec.inputs, values)]
    return apply_updates(spec.template, updates)


def compute_function(program: Program, spec: FunctionComputationSpec, values):
    """Output value at the terminal state, or :class:`Divergent` if none is reached in budget.

    A stutter also counts as divergence.  Clashes and hangs raise.
    """
    trace = run(program, make_input_states(spec, values), spec.budget)
    if trace.outcome is Outcome.TERMINAL:
        return eval_term(trace.final, spec.output)
    if trace.outcome is Outcome.CLASH:
        raise ComputationClash(trace.detail)
    if trace.outcome is Outcome.HANG:
        raise ComputationHang(trace.detail)
    return Divergent(spec.budget, trace.outcome.value)


def load_function_spec(path) -> tuple[Program, FunctionComputationSpec]:
    """Read a JSON spec naming program, template, inputs, output and budget."""
    path = Path(path)
    d = json.loads(path.read_text())
    program = parse_program((path.parent / d["program"]).read_text())
    template = parse_state((path.parent / d["template"]).read_text())
    spec = FunctionComputationSpec(tuple(parse_term(t) for t in d["inputs"]), parse_term(d["output"]),
                                   template, int(d.get("budget", 1000)))
    return program, spec


@dataclass(frozen=True)
class Witness:
    """A program computing a built-in operation from the constructors."""

    program: Program
    spec: FunctionComputationSpec


@dataclass
class EffectivenessReport:
    freeness: FreenessReport
    offending: list = field(default_factory=list)   # (symbol, reason)
    tables: list = field(default_factory=list)
    bootstrapped: dict = field(default_factory=dict)  # symbol -> points checked

    @property
    def ok(self) -> bool:
        return self.freeness.ok and not self.offending

    def offending_symbols(self) -> list[str]:
        return [s for s, _ in self.offending]

    def format(self) -> str:
        lines = [f"effective: {'pass' if self.ok else 'FAIL'}", self.freeness.format().rstrip("\n")]
        lines.append("tables: " + (", ".join(self.tables) or "(none)"))
        for name, n in sorted(self.bootstrapped.items()):
            lines.append(f"bootstrapped: {name} ({n} points agree)")
        for name, why in self.offending:
            lines.append(f"offending: {name}: {why}")
        return "\n".join(lines) + "\n"


def check_effective_state(state: State, c: ConstructorVocabulary, witnesses: dict | None = None,
                          depth_bound: int = 6, samples: int = 100, witness_depth: int = 12,
                          seed: int = 0) -> EffectivenessReport:
    """Constructors must be free up to ``depth_bound``; other symbols tables or witnessed.

    A witnessed built-in is compared with its witness on ``samples`` random
    argument tuples drawn from the values named by constructor terms of
    depth at most ``witness_depth``.
    """
    witnesses = witnesses or {}
    report = EffectivenessReport(check_free_construction(state, c, depth_bound))
    cons = set(c.names)
    for name, _ in c.symbols:
        if state.vocabulary[name].kind != STATIC:
            report.offending.append((name, "constructor is not static"))
    pool = None
    rng = random.Random(seed)
    for sym in state.vocabulary.user_symbols():
        if sym.name in cons:
            continue
        it = state.interp[sym.name]
        if isinstance(it, Table):
            report.tables.append(sym.name)
            continue
        w = witnesses.get(sym.name)
        if w is None:
            kind = f"builtin {it.op}" if isinstance(it, Builtin) else "opaque operation"
            report.offending.append((sym.name, f"{kind} with no witness program"))
            continue
        if w.spec.arity != sym.arity:
            report.offending.append((sym.name, f"witness takes {w.spec.arity} inputs, symbol has arity {sym.arity}"))
            continue
        if pool is None:
            named = check_free_construction(state, c, witness_depth).named
            pool = sorted((v for v in named if not isinstance(v, Special)), key=value_key)
        if not pool and sym.arity:
            report.offending.append((sym.name, "no constructor-named values to sample"))
            continue
        bad = None
        for _ in range(samples):
            args = tuple(rng.choice(pool) for _ in range(sym.arity))
            want = state.apply(sym.name, args)
            try:
                got = compute_function(w.program, w.spec, args)
            except (ComputationClash, ComputationHang) as e:
                got = e
            if got != want:
                bad = (args, want, got)
                break
        if bad is not None:
            args, want, got = bad
            shown = ", ".join(format_value(a) for a in args)
            got_s = format_value(got) if not isinstance(got, Exception | Divergent) else str(got)
            report.offending.append(
                (sym.name, f"witness gives {got_s} at ({shown}), state gives {format_value(want)}"))
        else:
            report.bootstrapped[sym.name] = samples
    return report


__all__ = [
    "ConstructorVocabulary", "enumerate_constructor_terms", "term_depth", "FreenessReport",
    "check_free_construction", "FunctionComputationSpec", "Divergent", "ComputationClash",
    "ComputationHang", "make_input_states", "compute_function", "load_function_spec", "Witness",
    "EffectivenessReport", "check_effective_state",
]
