from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seqasm.core import Atom, Con, Domain, State, Symbol, Table, Term, Vocabulary, format_state
from seqasm.core.state import Builtin
from seqasm.core.terms import AND, DYNAMIC, EQ, NE, NOT, OR, STATIC, UNDEF_RETURNING
from seqasm.core.values import UNDEF
from seqasm.corpus import get_entry
from seqasm.parser import (
    Assign, If, Par, ParseError, format_program, parse_program, parse_state, parse_term, parse_value,
    validate,
)


def codes(text):
    with pytest.raises(ParseError) as e:
        parse_program(text)
    return [d.code for d in e.value.diagnostics]


def test_smallest_program():
    assert parse_program("x := 1") == Assign("x", (), Term("1"))


def test_algorithm_1_shape(sort_prog):
    assert isinstance(sort_prog, If)
    assert sort_prog.cond == parse_term("j = n")
    assert isinstance(sort_prog.orelse, Par)
    kinds = [type(s) for s in sort_prog.orelse.body]
    assert kinds == [If, Assign]


def test_algorithm_2_shape(bisection):
    prog, _ = bisection
    assert prog.cond == parse_term("gt(abs(sub(b, a)), eps)")
    assert isinstance(prog.then, Par) and [type(s) for s in prog.then.body] == [If, If]


def test_else_binds_to_nearest_if():
    p = parse_program("if a = 1 then if b = 1 then x := 1 else x := 2")
    assert p.orelse is None and p.then.orelse == Assign("x", (), Term("2"))


def test_comments_and_whitespace():
    p = parse_program("# head\n do {\n x := 1 # one\n\n y := plus(x,2) }")
    assert p == Par((Assign("x", (), Term("1")), Assign("y", (), parse_term("plus(x, 2)"))))


def test_bare_condition_is_a_term():
    p = parse_program("if gt(a, b) then x := 1")
    assert p.cond == parse_term("gt(a, b)")


def test_syntax_diagnostics_carry_positions():
    with pytest.raises(ParseError) as e:
        parse_program("x := \n  := 2")
    d = e.value.diagnostics[0]
    assert (d.line, d.col, d.code) == (2, 3, "syntax")
    assert codes("do { }") == ["empty-do"]
    assert codes("if a = 1 then x := 1 else y := 1 else z := 1") == ["duplicate-else"]
    assert codes("x := 1 $") == ["bad-character"]
    assert codes("if a = 1 x := 1") == ["syntax"]


def test_validate(sort_prog, x_state):
    assert validate(sort_prog, x_state.vocabulary) == []
    vocab = Vocabulary([Symbol("F", 1, DYNAMIC), Symbol("n", 0, STATIC)])
    assert [d.code for d in validate(parse_program("n := 0"), vocab)] == ["static-assignment"]
    assert [d.code for d in validate(parse_program("F(i, j) := 0"), vocab)] == \
        ["arity-mismatch", "undeclared-symbol", "undeclared-symbol"]
    assert [d.code for d in validate(parse_program("if F(1, 2) = 0 then F(0) := 1"), vocab)] == ["arity-mismatch"]


def test_parse_worked_state(x_state):
    text = get_entry("sort").path("states/n2.st").read_text()
    s = parse_state(text)
    assert s == x_state
    assert format_state(s) == text


def test_empty_table_is_all_undef():
    s = parse_state("domain integers\nsymbol F/1 dynamic undef-returning\n  default undef\n")
    from seqasm.core import eval_term
    assert all(eval_term(s, parse_term(f"F({k})")) is UNDEF for k in range(-3, 4))


@pytest.mark.parametrize("text,code", [
    ("domain integers\nsymbol x/0 dynamic total\n  y = 1\n", "unknown-symbol"),
    ("domain integers\nsymbol x/0 dynamic total\n  x(1) = 1\n", "arity-mismatch"),
    ("domain integers\nsymbol x/0 dynamic total\n  x = 1/0\n", "malformed-value"),
    ("domain integers\nsymbol x/0 dynamic total\n  x = yes\n", "malformed-value"),
    ("domain integers\nsymbol x/0 dynamic total\n  x = 1\n  x = 2\n", "duplicate-entry"),
    ("domain integers\nsymbol x/0 dynamic total\nsymbol x/0 dynamic total\n", "duplicate-symbol"),
    ("domain integers\nsymbol x/0 dynamic total\nsymbol y/0 dynamic total\n  x = 1\n", "misplaced-entry"),
    ("domain integers\nsymbol x/0 dynamic total\n  x = 1/2\n", "malformed-value"),
])
def test_state_diagnostics(text, code):
    with pytest.raises(ParseError) as e:
        parse_state(text)
    assert e.value.diagnostics[0].code == code


def test_parse_value():
    assert parse_value("-7") == -7
    assert parse_value("2/4") == Fraction(1, 2)
    assert parse_value('"ab"') == Atom("ab")
    assert parse_value("@s(@z, 1)") == Con("s", (Con("z"), 1))
    with pytest.raises(ParseError):
        parse_value("1 2")


# round trips

_names = st.sampled_from(["x", "y", "i"])
_funcs = st.sampled_from(["F", "g"])
_lits = st.integers(-3, 3).map(lambda k: Term(str(k)))


def _plain(depth=2):
    leaf = st.one_of(_names.map(Term), _lits, st.sampled_from(["true", "false", "undef"]).map(Term))
    return st.recursive(leaf, lambda inner: st.one_of(
        st.builds(lambda a: Term("F", (a,)), inner),
        st.builds(lambda a, b: Term("g", (a, b)), inner, inner)), max_leaves=4)


def _bexpr():
    atom = st.one_of(_plain(), st.builds(lambda op, a, b: Term(op, (a, b)), st.sampled_from([EQ, NE]), _plain(), _plain()))
    return st.recursive(atom, lambda inner: st.one_of(
        st.builds(lambda a: Term(NOT, (a,)), inner),
        st.builds(lambda op, a, b: Term(op, (a, b)), st.sampled_from([AND, OR]), inner, inner)), max_leaves=4)


def _assign():
    return st.one_of(
        st.builds(lambda n, r: Assign(n, (), r), _names, _plain()),
        st.builds(lambda a, r: Assign("F", (a,), r), _plain(), _plain()))


def programs():
    return st.recursive(_assign(), lambda inner: st.one_of(
        st.builds(If, _bexpr(), inner, st.none() | inner),
        st.lists(inner, min_size=1, max_size=3).map(lambda b: Par(tuple(b)))), max_leaves=6)


def _reachable(p):
    """The grammar cannot put an else after an open if; the printer wraps such then-branches."""
    if isinstance(p, Par):
        return Par(tuple(_reachable(s) for s in p.body))
    if isinstance(p, If):
        then = _reachable(p.then)
        orelse = None if p.orelse is None else _reachable(p.orelse)
        if orelse is not None and isinstance(then, If) and _open(then):
            then = Par((then,))
        return If(p.cond, then, orelse)
    return p


def _open(p):
    return isinstance(p, If) and (p.orelse is None or _open(p.orelse))


@settings(max_examples=300, deadline=None)
@given(programs())
def test_program_round_trip(p):
    p = _reachable(p)
    assert parse_program(format_program(p)) == p


def test_printer_wraps_dangling_then():
    inner = If(Term("x"), Assign("x", (), Term("1")))
    p = If(Term("y"), inner, Assign("x", (), Term("2")))
    assert parse_program(format_program(p)) == If(Term("y"), Par((inner,)), Assign("x", (), Term("2")))


@settings(max_examples=300, deadline=None)
@given(_bexpr())
def test_term_round_trip(t):
    from seqasm.core import format_term
    assert parse_term(format_term(t)) == t


_values = st.one_of(st.integers(-50, 50), st.fractions(max_denominator=9).map(
    lambda f: int(f) if f.denominator == 1 else f), st.sampled_from([UNDEF]))


@st.composite
def states(draw):
    syms = [Symbol("F", 1, DYNAMIC, UNDEF_RETURNING), Symbol("G", 2, DYNAMIC), Symbol("k", 0, STATIC),
            Symbol("p", 2, STATIC), Symbol("x", 0, DYNAMIC)]
    interp = {
        "F": Table(draw(st.dictionaries(st.tuples(_values), _values, max_size=4)), draw(_values)),
        "G": Table(draw(st.dictionaries(st.tuples(_values, _values), _values, max_size=4))),
        "k": Table({(): draw(_values)}),
        "p": draw(st.sampled_from([Builtin("add"), Builtin("poly", (1, Fraction(-1, 2))), Table({(1, 2): 3})])),
        "x": Table({(): draw(_values)}, draw(_values)),
    }
    return State.build(Vocabulary(syms), Domain("rationals"), interp)


@settings(max_examples=100, deadline=None)
@given(states())
def test_state_round_trip(s):
    text = format_state(s)
    back = parse_state(text)
    assert back == s
    assert format_state(back) == text


def test_finite_and_constructed_domains_round_trip():
    text = ("domain finite 1 2 3\nsymbol x/0 dynamic total\n  default undef\n  x = 2\n")
    assert format_state(parse_state(text)) == text
    text = ("domain constructed s/1 z/0\nsymbol s/1 static total\n  builtin construct\n"
            "symbol x/0 dynamic total\n  default undef\n  x = @s(@z)\n")
    assert format_state(parse_state(text)) == text
