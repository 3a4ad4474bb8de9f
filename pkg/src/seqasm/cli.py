"""Command-line front end.

Exit codes: 0 terminal or pass, 1 usage error, 2 clash, 3 stutter, hang or
divergence, 4 step limit, 5 parse or validation error, 6 failed check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .analysis import (
    SynthesisError, check_bounded_exploration, check_determinism, check_isomorphism_respect,
    critical_terms, perturbation_pairs, program_oracle, sorted_terms, synthesize_asm, value_bijections,
)
from .analysis.samplers import perturb, value_pool
from .core.serialize import format_state
from .core.state import format_updates
from .core.terms import format_term
from .core.values import format_value
from .effectiveness import (
    ComputationClash, ComputationHang, ConstructorVocabulary, Divergent, Witness, check_effective_state,
    compute_function, load_function_spec,
)
from .parser import ParseError, format_program, parse_program, parse_state, parse_term, parse_value, validate
from .semantics import Outcome, describe_outcome, format_trace, run

EXIT_OK, EXIT_USAGE, EXIT_CLASH, EXIT_DIVERGE, EXIT_LIMIT, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3, 4, 5, 6

OUTCOME_EXIT = {
    Outcome.TERMINAL: EXIT_OK,
    Outcome.CLASH: EXIT_CLASH,
    Outcome.STUTTER: EXIT_DIVERGE,
    Outcome.HANG: EXIT_DIVERGE,
    Outcome.STEP_LIMIT: EXIT_LIMIT,
}


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    """Parse or validation failure; carries the diagnostics to print."""

    def __init__(self, lines):
        super().__init__("\n".join(lines))
        self.lines = list(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_program(path):
    try:
        return parse_program(_read(path))
    except ParseError as e:
        raise InvalidInput([f"{path}:{d}" for d in e.diagnostics]) from None


def _load_state(path):
    try:
        return parse_state(_read(path))
    except ParseError as e:
        raise InvalidInput([f"{path}:{d}" for d in e.diagnostics]) from None


def _load_pair(args):
    program, state = _load_program(args.program), _load_state(args.state)
    diags = validate(program, state.vocabulary)
    if diags:
        raise InvalidInput([f"{args.program}:{d}" for d in diags])
    return program, state


def _emit(args, text: str):
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _structured(args) -> bool:
    return getattr(args, "format", "text") == "structured"


def _trace_json(trace) -> dict:
    return {
        "outcome": trace.outcome.value,
        "summary": describe_outcome(trace),
        "steps": [{"proposed": format_updates(s.proposed), "delta": format_updates(s.delta)}
                  for s in trace.steps],
        "final": format_state(trace.final),
    }


def cmd_run(args):
    program, state = _load_pair(args)
    trace = run(program, state, args.max_steps)
    if _structured(args):
        _emit(args, json.dumps(_trace_json(trace), indent=2) + "\n")
    else:
        _emit(args, f"outcome: {describe_outcome(trace)}\n" + format_state(trace.final))
    return OUTCOME_EXIT[trace.outcome]


def cmd_trace(args):
    program, state = _load_pair(args)
    trace = run(program, state, args.max_steps)
    _emit(args, json.dumps(_trace_json(trace), indent=2) + "\n" if _structured(args) else format_trace(trace))
    return OUTCOME_EXIT[trace.outcome]


def cmd_validate(args):
    _load_pair(args)
    _emit(args, "ok\n")
    return EXIT_OK


def cmd_critical_terms(args):
    terms = [format_term(t) for t in sorted_terms(critical_terms(_load_program(args.program)))]
    _emit(args, json.dumps(terms, indent=2) + "\n" if _structured(args) else "".join(t + "\n" for t in terms))
    return EXIT_OK


def cmd_check(args):
    if args.what != "postulates":
        raise UsageError(f"unknown check {args.what!r}; expected 'postulates'")
    program, state = _load_pair(args)
    if args.terms is not None:
        terms = [parse_term(t) for t in args.terms.split(";") if t.strip()]
    else:
        terms = critical_terms(program)
    rng = random.Random(args.seed)
    pool = value_pool(state, program)
    det_states = [state] + [perturb(state, rng, pool, 2) for _ in range(min(args.trials, 20))]
    reports = [
        check_determinism(program, det_states),
        check_bounded_exploration(program, terms, perturbation_pairs(state, program), args.trials, args.seed),
        check_isomorphism_respect(program, state, value_bijections(state, program), args.trials, args.seed),
    ]
    if _structured(args):
        _emit(args, "".join(r.format() for r in reports))
    else:
        _emit(args, "".join(r.summary() + "\n" for r in reports))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def cmd_synthesize(args):
    program, state = _load_pair(args)
    rng = random.Random(args.seed)
    pool = value_pool(state, program)
    samples = [state] + [_load_state(p) for p in args.sample_state or []]
    samples += [perturb(state, rng, pool, rng.randint(1, 4)) for _ in range(args.samples)]
    try:
        result = synthesize_asm(program_oracle(program), critical_terms(program), samples)
    except SynthesisError as e:
        print(f"synthesis failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    text = format_program(result)
    _emit(args, text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_effective(args):
    state = _load_state(args.state)
    names = [n.strip() for n in args.constructors.split(",") if n.strip()]
    try:
        c = ConstructorVocabulary.from_names(state.vocabulary, names)
    except (KeyError, ValueError) as e:
        raise UsageError(str(e)) from None
    witnesses = {}
    for w in args.witness or []:
        name, sep, path = w.partition("=")
        if not sep:
            raise UsageError(f"--witness expects NAME=SPEC.json, got {w!r}")
        witnesses[name] = Witness(*_load_spec(path))
    report = check_effective_state(state, c, witnesses, args.depth, args.samples, seed=args.seed)
    _emit(args, report.format())
    return EXIT_OK if report.ok else EXIT_FAILED


def _load_spec(path):
    try:
        return load_function_spec(path)
    except ParseError as e:
        raise InvalidInput([f"{path}: {d}" for d in e.diagnostics]) from None
    except (OSError, KeyError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot load function spec {path}: {e}") from None


def cmd_compute(args):
    program, spec = _load_spec(args.spec)
    diags = validate(program, spec.template.vocabulary)
    if diags:
        raise InvalidInput([f"{args.spec}: {d}" for d in diags])
    try:
        values = [parse_value(v) for v in args.values]
    except ParseError as e:
        raise UsageError(str(e)) from None
    if len(values) != spec.arity:
        raise UsageError(f"expected {spec.arity} input values, got {len(values)}")
    if args.budget is not None:
        spec = type(spec)(spec.inputs, spec.output, spec.template, args.budget)
    try:
        result = compute_function(program, spec, values)
    except ComputationClash as e:
        print(e, file=sys.stderr)
        return EXIT_CLASH
    except ComputationHang as e:
        print(e, file=sys.stderr)
        return EXIT_DIVERGE
    if isinstance(result, Divergent):
        _emit(args, f"{result}\n")
        return EXIT_DIVERGE
    _emit(args, format_value(result) + "\n")
    return EXIT_OK


def cmd_corpus(args):
    from .corpus import check_goldens, corpus_list, get_entry, regenerate_goldens
    entries = [get_entry(args.name)] if args.name else corpus_list()
    if args.action == "list":
        _emit(args, "".join(f"{e.name}\t{e.description}\n" for e in entries))
        return EXIT_OK
    if args.action == "regenerate":
        for e in entries:
            for p in regenerate_goldens(e):
                print(p)
        return EXIT_OK
    stale = [(e.name, rel) for e in entries for rel in check_goldens(e)]
    for name, rel in stale:
        print(f"stale golden: {name}/{rel}", file=sys.stderr)
    return EXIT_FAILED if stale else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seqasm", description="Run and analyse sequential abstract state machines.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, state=True):
        sp.add_argument("program")
        if state:
            sp.add_argument("state")
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.add_argument("--format", choices=("text", "structured"), default="text")

    for name, fn, helptext in (("run", cmd_run, "run and print the final state"),
                               ("trace", cmd_trace, "run and print the full trace")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--max-steps", type=int, default=1000)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("validate", help="parse and check a program against a state's vocabulary")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("critical-terms", help="list a program's critical terms")
    common(sp, state=False)
    sp.set_defaults(func=cmd_critical_terms)

    sp = sub.add_parser("check", help="property checks ('check postulates PROGRAM STATE')")
    sp.add_argument("what")
    common(sp)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--terms", help="';'-separated terms to use instead of the critical terms")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("synthesize", help="rebuild a program from its own update oracle")
    common(sp)
    sp.add_argument("--samples", type=int, default=200, help="number of perturbed sample states")
    sp.add_argument("--sample-state", action="append", help="extra sample state file (repeatable)")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_synthesize)

    sp = sub.add_parser("effective", help="check that a state is effective over given constructors")
    sp.add_argument("state")
    sp.add_argument("--constructors", required=True, help="comma-separated constructor symbols")
    sp.add_argument("--witness", action="append", help="NAME=SPEC.json witness program (repeatable)")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_effective)

    sp = sub.add_parser("compute", help="run a function-computation spec on input values")
    sp.add_argument("spec")
    sp.add_argument("values", nargs="*")
    sp.add_argument("--budget", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("corpus", help="list bundled entries, check or regenerate goldens")
    sp.add_argument("action", choices=("list", "check", "regenerate"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a subcommand is required")
        for name in ("max_steps", "trials", "samples", "depth", "budget"):
            v = getattr(args, name, None)
            if v is not None and v < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
        return args.func(args)
    except UsageError as e:
        print(f"seqasm: error: {e}", file=sys.stderr)
        print(parser.format_usage(), end="", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInput as e:
        for line in e.lines:
            print(line, file=sys.stderr)
        return EXIT_INVALID
    except KeyError as e:
        print(f"seqasm: error: {e.args[0]}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
