"""Symbols, vocabularies and ground terms."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

STATIC = "static"
DYNAMIC = "dynamic"

TOTAL = "total"
UNDEF_RETURNING = "undef-returning"
STRICTLY_PARTIAL = "strictly-partial"

KINDS = (STATIC, DYNAMIC)
TOTALITIES = (TOTAL, UNDEF_RETURNING, STRICTLY_PARTIAL)

# heads of the logical symbols; "=" and "!=" are total, the connectives are strict
EQ, NE, NOT, AND, OR = "=", "!=", "not", "and", "or"
CONNECTIVES = frozenset({EQ, NE, NOT, AND, OR})
CONSTANTS = ("true", "false", "undef")

_LITERAL_RE = re.compile(r"-?\d+(/\d+)?\Z")
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    kind: str = STATIC
    totality: str = TOTAL

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name}")
        if self.kind not in KINDS:
            raise ValueError(f"bad kind {self.kind!r} for {self.name}")
        if self.totality not in TOTALITIES:
            raise ValueError(f"bad totality {self.totality!r} for {self.name}")

    @property
    def dynamic(self) -> bool:
        return self.kind == DYNAMIC


RESERVED = {
    "true": Symbol("true", 0),
    "false": Symbol("false", 0),
    "undef": Symbol("undef", 0),
    NOT: Symbol(NOT, 1),
    AND: Symbol(AND, 2),
    OR: Symbol(OR, 2),
    EQ: Symbol(EQ, 2),
    NE: Symbol(NE, 2),
}


def is_literal_name(name: str) -> bool:
    return bool(_LITERAL_RE.match(name))


def literal_value(name: str):
    v = Fraction(name)
    return int(v) if v.denominator == 1 else v


class Vocabulary:
    """A finite set of symbols; the reserved logical symbols are always present.

    Numeric literals (``0``, ``2``, ``1/128``) are implicit static nullary
    symbols and need no declaration.
    """

    def __init__(self, symbols: Iterable[Symbol] = ()):
        table = dict(RESERVED)
        for s in symbols:
            if s.name in RESERVED:
                if s != RESERVED[s.name]:
                    raise ValueError(f"reserved symbol {s.name} cannot be redeclared")
                continue
            if s.name in table:
                raise ValueError(f"duplicate symbol {s.name}")
            if is_literal_name(s.name):
                raise ValueError(f"numeric literal {s.name} cannot be declared")
            table[s.name] = s
        self._symbols = table

    def __contains__(self, name) -> bool:
        return name in self._symbols or is_literal_name(name)

    def __getitem__(self, name) -> Symbol:
        try:
            return self._symbols[name]
        except KeyError:
            if is_literal_name(name):
                return Symbol(name, 0)
            raise

    def get(self, name, default=None):
        return self[name] if name in self else default

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._symbols.values())

    def user_symbols(self) -> list[Symbol]:
        """Declared symbols minus the reserved ones, alphabetically."""
        return sorted((s for n, s in self._symbols.items() if n not in RESERVED), key=lambda s: s.name)

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self._symbols == other._symbols

    def __hash__(self):
        return hash(frozenset(self._symbols.items()))

    def __repr__(self):
        return "Vocabulary(" + ", ".join(f"{s.name}/{s.arity}" for s in self.user_symbols()) + ")"


@dataclass(frozen=True)
class Term:
    """A ground term ``head(args...)``; numeric literals are nullary terms."""

    head: str
    args: tuple = ()

    @property
    def is_literal(self) -> bool:
        return not self.args and is_literal_name(self.head)

    @property
    def is_plain(self) -> bool:
        """True unless the head is one of the logical connectives or (dis)equality."""
        return self.head not in CONNECTIVES

    def subterms(self) -> Iterator[Term]:
        yield self
        for a in self.args:
            yield from a.subterms()

    def proper_subterms(self) -> Iterator[Term]:
        for a in self.args:
            yield from a.subterms()

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)

    def __str__(self):
        return format_term(self)

    def __repr__(self):
        return f"Term({format_term(self)!r})"


def term_key(t: Term):
    """The fixed total order on terms: size first, then spelling."""
    return (t.size(), format_term(t))


def const(name) -> Term:
    return Term(str(name))


def app(head: str, *args) -> Term:
    return Term(head, tuple(a if isinstance(a, Term) else const(a) for a in args))


# binding strength for infix rendering
_PREC = {OR: 1, AND: 2, NOT: 3, EQ: 4, NE: 4}


def format_term(t: Term, _ctx: int = 0) -> str:
    head = t.head
    if head in (EQ, NE):
        s = f"{format_term(t.args[0], 5)} {head} {format_term(t.args[1], 5)}"
    elif head == NOT:
        s = f"not {format_term(t.args[0], 3)}"
    elif head in (AND, OR):
        p = _PREC[head]
        # left-associative: a right operand of equal strength needs parentheses
        s = f"{format_term(t.args[0], p)} {head} {format_term(t.args[1], p + 1)}"
    else:
        if not t.args:
            return head
        return head + "(" + ", ".join(format_term(a) for a in t.args) + ")"
    if _ctx > _PREC[head]:
        return "(" + s + ")"
    return s


def negate(cond: Term) -> Term:
    """Logical negation that keeps (dis)equalities readable."""
    if cond.head == EQ:
        return Term(NE, cond.args)
    if cond.head == NE:
        return Term(EQ, cond.args)
    return Term(NOT, (cond,))


def conjoin(conds: Iterable[Term]) -> Term | None:
    out = None
    for c in conds:
        out = c if out is None else Term(AND, (out, c))
    return out
