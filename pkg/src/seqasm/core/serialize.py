"""Canonical text form of states.

Symbols come alphabetically, table entries by argument order, so equal
states always print to the same bytes.  :func:`seqasm.parser.parse_state`
reads the format back.
"""

from __future__ import annotations

from .state import Builtin, State, Table
from .terms import STATIC
from .values import args_key, format_value, value_key


def format_domain(domain) -> str:
    if domain.kind == "finite":
        return "domain finite " + " ".join(format_value(v) for v in sorted(domain.elements, key=value_key))
    if domain.kind == "constructed":
        return "domain constructed " + " ".join(f"{n}/{k}" for n, k in sorted(domain.constructors))
    return "domain " + domain.kind


def _format_args(name, args):
    if not args:
        return name
    return name + "(" + ", ".join(format_value(a) for a in args) + ")"


def format_state(state: State) -> str:
    if state.literal_map is not None:
        raise ValueError("a relabelled state (literal map in force) has no file form")
    lines = [format_domain(state.domain)]
    for sym in state.vocabulary.user_symbols():
        lines.append(f"symbol {sym.name}/{sym.arity} {sym.kind} {sym.totality}")
        it = state.interp[sym.name]
        if isinstance(it, Table):
            lines.append(f"  default {format_value(it.default)}")
            for args in sorted(it.entries, key=args_key):
                lines.append(f"  {_format_args(sym.name, args)} = {format_value(it.entries[args])}")
        elif isinstance(it, Builtin):
            if it.params:
                lines.append(f"  builtin {it.op}(" + ", ".join(format_value(p) for p in it.params) + ")")
            else:
                lines.append(f"  builtin {it.op}")
        else:
            raise ValueError(f"{sym.name} carries a transported operation that has no file form")
    return "\n".join(lines) + "\n"


def format_assignments(state: State, dynamic_only: bool = False) -> str:
    """One-line summary of table contents, e.g. ``F(0)=1 F(1)=0 i=0``."""
    parts = []
    for sym in state.vocabulary.user_symbols():
        if dynamic_only and sym.kind == STATIC:
            continue
        it = state.interp[sym.name]
        if not isinstance(it, Table):
            continue
        if sym.arity == 0:
            parts.append(f"{sym.name}={format_value(it.entries.get((), it.default))}")
            continue
        for args in sorted(it.entries, key=args_key):
            parts.append(f"{_format_args(sym.name, args)}={format_value(it.entries[args])}")
    return " ".join(parts)
