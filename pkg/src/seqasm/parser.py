"""Concrete syntax for programs and state files.

Program grammar (``#`` starts a line comment, whitespace is insignificant)::

    program := stmt
    stmt    := term ":=" term
             | "if" bexpr "then" stmt ["else" stmt]
             | "do" "{" stmt+ "}"
    bexpr   := bexpr "or" bexpr | bexpr "and" bexpr | "not" bexpr
             | "(" bexpr ")" | term ("=" | "!=") term | term
    term    := ident ["(" term ("," term)* ")"] | integer | integer "/" integer

``not`` binds tightest, then ``and``, then ``or``; both are left-associative.
A bare term used as a condition holds when it evaluates to ``true``.
An ``else`` always belongs to the nearest open ``if``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Union

from .core import state as st
from .core.terms import (
    AND, CONNECTIVES, IDENT_RE, KINDS, NOT, OR, RESERVED, TOTALITIES, Symbol, Term,
    Vocabulary, format_term, is_literal_name,
)
from .core.values import FALSE, TRUE, UNDEF, Atom, Con, norm

KEYWORDS = frozenset({"if", "then", "else", "do", "not", "and", "or"})


@dataclass(frozen=True)
class Assign:
    symbol: str
    args: tuple
    rhs: Term
    span: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def lhs(self) -> Term:
        return Term(self.symbol, self.args)


@dataclass(frozen=True)
class If:
    cond: Term
    then: "Program"
    orelse: "Program | None" = None
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Par:
    body: tuple
    span: tuple | None = field(default=None, compare=False, repr=False)


Program = Union[Assign, If, Par]


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    col: int
    code: str
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.severity}[{self.code}]: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def _error(line, col, code, message):
    return ParseError([Diagnostic("error", line, col, code, message)])


# ---------------------------------------------------------------- programs

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>-?\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>:=|!=|=|\(|\)|,|\{|\})
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise _error(line, pos - line_start + 1, "bad-character", f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            toks.append(_Tok("kw" if m.group() in KEYWORDS else "ident", m.group(), line, col))
        elif kind in ("num", "op"):
            toks.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _ProgramParser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def at(self, text):
        t = self.tok
        return t.text == text and t.kind in ("kw", "op")

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            t = self.tok
            found = t.text or "end of input"
            raise _error(t.line, t.col, "syntax", f"expected {text!r}, found {found!r}")
        return self.advance()

    def program(self):
        s = self.stmt()
        t = self.tok
        if t.kind != "eof":
            if t.text == "else":
                raise _error(t.line, t.col, "duplicate-else", "'else' without a matching open 'if'")
            raise _error(t.line, t.col, "syntax", f"unexpected {t.text!r} after the program")
        return s

    def stmt(self):
        t = self.tok
        span = (t.line, t.col)
        if self.at("if"):
            self.advance()
            cond = self.bexpr()
            self.expect("then")
            then = self.stmt()
            orelse = None
            if self.at("else"):
                self.advance()
                orelse = self.stmt()
            return If(cond, then, orelse, span=span)
        if self.at("do"):
            self.advance()
            self.expect("{")
            body = []
            while not self.at("}"):
                if self.tok.kind == "eof":
                    raise _error(self.tok.line, self.tok.col, "syntax", "unterminated do-block")
                if self.at("else"):
                    e = self.tok
                    raise _error(e.line, e.col, "duplicate-else", "'else' without a matching open 'if'")
                body.append(self.stmt())
            if not body:
                raise _error(t.line, t.col, "empty-do", "do-block must contain at least one statement")
            self.advance()
            return Par(tuple(body), span=span)
        if t.kind not in ("ident", "num"):
            raise _error(t.line, t.col, "syntax", f"expected a statement, found {t.text or 'end of input'!r}")
        lhs = self.term()
        self.expect(":=")
        rhs = self.term()
        return Assign(lhs.head, lhs.args, rhs, span=span)

    def bexpr(self):
        left = self.conj()
        while self.at("or"):
            self.advance()
            left = Term(OR, (left, self.conj()))
        return left

    def conj(self):
        left = self.neg()
        while self.at("and"):
            self.advance()
            left = Term(AND, (left, self.neg()))
        return left

    def neg(self):
        if self.at("not"):
            self.advance()
            return Term(NOT, (self.neg(),))
        if self.at("("):
            self.advance()
            e = self.bexpr()
            self.expect(")")
            return e
        left = self.term()
        if self.at("=") or self.at("!="):
            op = self.advance().text
            return Term(op, (left, self.term()))
        return left

    def term(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Term(t.text)
        if t.kind != "ident":
            raise _error(t.line, t.col, "syntax", f"expected a term, found {t.text or 'end of input'!r}")
        self.advance()
        if not self.at("("):
            return Term(t.text)
        self.advance()
        args = [self.term()]
        while self.at(","):
            self.advance()
            args.append(self.term())
        self.expect(")")
        return Term(t.text, tuple(args))


def parse_program(text: str) -> Program:
    """Parse program text; raises :class:`ParseError` carrying diagnostics."""
    return _ProgramParser(text).program()


def parse_term(text: str) -> Term:
    p = _ProgramParser(text)
    t = p.bexpr()
    if p.tok.kind != "eof":
        raise _error(p.tok.line, p.tok.col, "syntax", f"unexpected {p.tok.text!r}")
    return t


def _open_tail(p) -> bool:
    """Whether an ``else`` printed after ``p`` would be captured by an ``if`` inside it."""
    if isinstance(p, If):
        return p.orelse is None or _open_tail(p.orelse)
    return False


def format_program(p: Program, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(p, Assign):
        return f"{pad}{format_term(p.lhs)} := {format_term(p.rhs)}"
    if isinstance(p, Par):
        inner = "\n".join(format_program(s, indent + 1) for s in p.body)
        return f"{pad}do {{\n{inner}\n{pad}}}" if p.body else f"{pad}do {{ }}"
    then = p.then
    if p.orelse is not None and _open_tail(then):
        then = Par((then,))
    out = f"{pad}if {format_term(p.cond)} then\n{format_program(then, indent + 1)}"
    if p.orelse is not None:
        out += f"\n{pad}else\n{format_program(p.orelse, indent + 1)}"
    return out


def iter_statements(p: Program):
    yield p
    if isinstance(p, If):
        yield from iter_statements(p.then)
        if p.orelse is not None:
            yield from iter_statements(p.orelse)
    elif isinstance(p, Par):
        for s in p.body:
            yield from iter_statements(s)


def validate(program: Program, vocab: Vocabulary) -> list[Diagnostic]:
    """Static checks; an empty list means the program can run over ``vocab``."""
    out = []

    def report(node, code, message):
        line, col = node.span or (0, 0)
        out.append(Diagnostic("error", line, col, code, message))

    def check_term(node, t: Term):
        for s in t.subterms():
            if s.head in CONNECTIVES:
                continue
            if s.head not in vocab:
                report(node, "undeclared-symbol", f"symbol {s.head!r} is not declared")
            elif vocab[s.head].arity != len(s.args):
                report(node, "arity-mismatch",
                       f"{s.head} takes {vocab[s.head].arity} argument(s), given {len(s.args)}")

    for node in iter_statements(program):
        if isinstance(node, Assign):
            if node.symbol not in vocab:
                report(node, "undeclared-symbol", f"symbol {node.symbol!r} is not declared")
            else:
                sym = vocab[node.symbol]
                if not sym.dynamic:
                    report(node, "static-assignment", f"cannot assign to static symbol {node.symbol!r}")
                if sym.arity != len(node.args):
                    report(node, "arity-mismatch",
                           f"{node.symbol} takes {sym.arity} argument(s), given {len(node.args)}")
            for a in node.args:
                check_term(node, a)
            check_term(node, node.rhs)
        elif isinstance(node, If):
            check_term(node, node.cond)
    return out


# ---------------------------------------------------------------- state files

_VALUE_TOKEN_RE = re.compile(r"""
    \s*(?:
      (?P<num>-?\d+(?:/\d+)?)
    | (?P<str>"(?:[^"\\]|\\.)*")
    | (?P<con>@[A-Za-z_][A-Za-z0-9_']*)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    | (?P<op>[(),=/])
    )""", re.VERBOSE)


class _ValueReader:
    """Reads values from one line of a state file."""

    def __init__(self, text, line, offset=0):
        self.text, self.line, self.pos = text, line, offset

    def fail(self, code, message):
        raise _error(self.line, self.pos + 1, code, message)

    def peek(self):
        m = _VALUE_TOKEN_RE.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            return None, None
        return m.lastgroup, m

    def take(self):
        kind, m = self.peek()
        if kind is None:
            if self.text[self.pos:].strip():
                self.fail("malformed-value", f"cannot read {self.text[self.pos:].strip()!r}")
            self.fail("malformed-value", "unexpected end of line")
        self.pos = m.end()
        return kind, m.group(kind)

    def at_op(self, op):
        kind, m = self.peek()
        return kind == "op" and m.group("op") == op

    def expect_op(self, op):
        if not self.at_op(op):
            self.fail("syntax", f"expected {op!r}")
        self.take()

    def done(self):
        return not self.text[self.pos:].strip()

    def value(self):
        kind, text = self.take()
        if kind == "num":
            from fractions import Fraction
            try:
                return norm(Fraction(text))
            except ZeroDivisionError:
                self.fail("malformed-value", f"zero denominator in {text!r}")
        if kind == "str":
            return Atom(json.loads(text))
        if kind == "ident":
            try:
                return {"true": TRUE, "false": FALSE, "undef": UNDEF}[text]
            except KeyError:
                self.fail("malformed-value", f"{text!r} is not a value")
        if kind == "con":
            args = ()
            if self.at_op("("):
                args = self.value_list()
            return Con(text[1:], args)
        self.fail("malformed-value", f"unexpected {text!r}")

    def value_list(self):
        self.expect_op("(")
        vals = [self.value()]
        while self.at_op(","):
            self.take()
            vals.append(self.value())
        self.expect_op(")")
        return tuple(vals)


def parse_value(text: str):
    """One value in state-file notation, e.g. ``-3``, ``1/2``, ``"a"``, ``@nil``."""
    r = _ValueReader(text, 1)
    v = r.value()
    if not r.done():
        r.fail("malformed-value", f"trailing text {r.text[r.pos:].strip()!r}")
    return v


def _parse_domain(rest: str, line: int):
    parts = rest.split(None, 1)
    kind = parts[0] if parts else ""
    tail = parts[1] if len(parts) > 1 else ""
    if kind in (st.INTEGERS, st.RATIONALS, st.ATOMS):
        if tail.strip():
            raise _error(line, 1, "syntax", f"domain {kind} takes no elements")
        return st.Domain(kind)
    if kind == st.FINITE:
        r = _ValueReader(tail, line)
        elems = []
        while not r.done():
            elems.append(r.value())
        return st.Domain(kind, elements=tuple(elems))
    if kind == st.CONSTRUCTED:
        cons = []
        for item in tail.split():
            name, _, arity = item.partition("/")
            if not IDENT_RE.match(name) or not arity.isdigit():
                raise _error(line, 1, "syntax", f"bad constructor declaration {item!r}")
            cons.append((name, int(arity)))
        return st.Domain(kind, constructors=tuple(sorted(cons)))
    raise _error(line, 1, "syntax", f"unknown domain kind {kind!r}")


_HEADER_RE = re.compile(r"symbol\s+([A-Za-z_][A-Za-z0-9_']*)/(\d+)\s+(\S+)\s+(\S+)\s*\Z")
_ENTRY_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)\s*")
_BUILTIN_RE = re.compile(r"builtin\s+([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_state(text: str) -> st.State:
    """Read a state file (the format written by :func:`seqasm.core.format_state`)."""
    domain = None
    symbols: list[Symbol] = []
    interp: dict = {}
    defaults: dict = {}
    entries: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("domain ") or s == "domain":
            if domain is not None or symbols:
                raise _error(lineno, 1, "syntax", "the domain line must come first and only once")
            domain = _parse_domain(s[len("domain"):].strip(), lineno)
            continue
        if s.startswith("symbol"):
            m = _HEADER_RE.match(s)
            if not m:
                raise _error(lineno, 1, "syntax", "expected 'symbol NAME/ARITY KIND TOTALITY'")
            name, arity, kind, totality = m.group(1), int(m.group(2)), m.group(3), m.group(4)
            if kind not in KINDS:
                raise _error(lineno, 1, "syntax", f"kind must be one of {', '.join(KINDS)}")
            if totality not in TOTALITIES:
                raise _error(lineno, 1, "syntax", f"totality must be one of {', '.join(TOTALITIES)}")
            if name in RESERVED or any(x.name == name for x in symbols):
                raise _error(lineno, 1, "duplicate-symbol", f"symbol {name!r} declared twice or reserved")
            current = Symbol(name, arity, kind, totality)
            symbols.append(current)
            entries[name] = {}
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        if current is None:
            raise _error(lineno, col, "syntax", "table line before any symbol header")
        if s.startswith("default"):
            r = _ValueReader(s, lineno, len("default"))
            defaults[current.name] = r.value()
            if not r.done():
                r.fail("syntax", "trailing text after default value")
            continue
        m = _BUILTIN_RE.match(s)
        if m and not s.startswith(current.name + "(") and not s.startswith(current.name + " "):
            r = _ValueReader(s, lineno, m.end())
            params = r.value_list() if r.at_op("(") else ()
            if not r.done():
                r.fail("syntax", "trailing text after built-in")
            interp[current.name] = st.Builtin(m.group(1), params)
            continue
        m = _ENTRY_RE.match(s)
        if not m:
            raise _error(lineno, col, "syntax", "expected a table entry 'f(a, ...) = v'")
        name = m.group(1)
        if name != current.name:
            if any(x.name == name for x in symbols) or name in RESERVED:
                raise _error(lineno, col, "misplaced-entry", f"entry for {name!r} under symbol {current.name!r}")
            raise _error(lineno, col, "unknown-symbol", f"symbol {name!r} is not declared")
        r = _ValueReader(s, lineno, m.end())
        args = r.value_list() if r.at_op("(") else ()
        if len(args) != current.arity:
            raise _error(lineno, col, "arity-mismatch",
                         f"{name} takes {current.arity} argument(s), entry has {len(args)}")
        r.expect_op("=")
        v = r.value()
        if not r.done():
            r.fail("syntax", "trailing text after entry")
        if args in entries[name]:
            raise _error(lineno, col, "duplicate-entry", f"location {name}{args} given twice")
        entries[name][args] = v
    domain = domain or st.Domain()
    for sym in symbols:
        if sym.name in interp:
            if entries[sym.name] or sym.name in defaults:
                raise _error(0, 0, "syntax", f"{sym.name} has both a built-in and table lines")
            if sym.dynamic:
                raise _error(0, 0, "syntax", f"dynamic symbol {sym.name} cannot be a built-in")
        else:
            interp[sym.name] = st.Table(entries[sym.name], defaults.get(sym.name, UNDEF))
    try:
        return st.State.build(Vocabulary(symbols), domain, interp)
    except st.DomainError as e:
        raise _error(0, 0, "malformed-value", str(e)) from None
    except (ValueError, KeyError) as e:
        raise _error(0, 0, "syntax", str(e)) from None


def parse_vocabulary(text: str) -> Vocabulary:
    """A vocabulary declaration is a state file; only its symbol headers matter."""
    return parse_state(text).vocabulary


__all__ = [
    "Assign", "If", "Par", "Program", "Diagnostic", "ParseError", "parse_program", "parse_term",
    "format_program", "validate", "parse_state", "parse_vocabulary", "iter_statements",
    "is_literal_name", "parse_value",
]
