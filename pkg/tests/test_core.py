import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seqasm.core import (
    FALSE, TRUE, UNDEF, Atom, Bijection, Builtin, Con, Delta, Domain, DomainError, InternalClashError,
    Location, OutsideDomain, State, Symbol, Table, Term, Terminal, Update, Vocabulary,
    apply_isomorphism, apply_updates, derive_delta, dynamic_diff, eval_term, format_state,
    format_term, random_bijection, states_agree_on, term_key, transport_updates, try_eval,
)
from seqasm.core.builtins import register_function, resolve
from seqasm.core.iso import active_values
from seqasm.core.state import OUTSIDE
from seqasm.core.terms import DYNAMIC, STRICTLY_PARTIAL, UNDEF_RETURNING, negate
from seqasm.core.values import format_value, norm, value_key
from seqasm.parser import parse_term
from seqasm.analysis.critical import critical_terms


def upd(sym, args, v):
    return Update(Location(sym, tuple(args)), v)


# values and terms

def test_python_bool_is_not_a_value():
    with pytest.raises(TypeError):
        format_value(True)
    assert TRUE != 1


def test_format_values():
    assert [format_value(v) for v in (TRUE, UNDEF, -3, Fraction(1, 128), Atom("a b"), Con("s", (Con("z"),)))] \
        == ["true", "undef", "-3", "1/128", '"a b"', "@s(@z)"]
    assert norm(Fraction(4, 2)) == 2 and type(norm(Fraction(4, 2))) is int


def test_value_key_is_total():
    vals = [Con("z"), Atom("x"), 3, Fraction(1, 2), UNDEF, TRUE, FALSE, -1]
    assert [format_value(v) for v in sorted(vals, key=value_key)] == \
        ["false", "true", "undef", "-1", "1/2", "3", '"x"', "@z"]


def test_term_rendering_and_order():
    t = parse_term("j = n and plus(i, 1) != n")
    assert format_term(t) == "j = n and plus(i, 1) != n"
    assert format_term(parse_term("(a = b or c) and not d")) == "(a = b or c) and not d"
    assert sorted([parse_term("plus(i, 1)"), parse_term("j"), parse_term("i")], key=term_key) == \
        [Term("i"), Term("j"), parse_term("plus(i, 1)")]
    assert negate(parse_term("j = n")) == parse_term("j != n")


def test_vocabulary_reserved_and_literals():
    v = Vocabulary([Symbol("x", 0, DYNAMIC)])
    assert "true" in v and "17" in v and "1/2" in v
    assert v["2"].arity == 0
    with pytest.raises(ValueError):
        Vocabulary([Symbol("and", 1)])
    with pytest.raises(ValueError):
        Vocabulary([Symbol("x", 0), Symbol("x", 1)])


# evaluation

def test_eval_worked_state(x_state):
    assert eval_term(x_state, Term("0")) == 0
    assert eval_term(x_state, parse_term("F(i)")) == 1
    assert eval_term(x_state, parse_term("F(5)")) is UNDEF
    assert eval_term(x_state, parse_term("F(5) = undef")) is TRUE
    assert eval_term(x_state, parse_term("gt(F(i), F(j))")) is TRUE


def test_undef_is_strict_except_equality(x_state):
    assert eval_term(x_state, parse_term("plus(F(7), 1)")) is UNDEF
    assert eval_term(x_state, parse_term("gt(F(7), 1)")) is UNDEF
    assert eval_term(x_state, parse_term("F(7) != 1")) is TRUE
    assert eval_term(x_state, parse_term("undef and true")) is UNDEF
    assert eval_term(x_state, parse_term("not undef")) is UNDEF


def _partial_state():
    vocab = Vocabulary([Symbol("g", 1, "static", STRICTLY_PARTIAL), Symbol("h", 1, "static", UNDEF_RETURNING)])
    return State.build(vocab, Domain(), {"g": Table({(1,): 10}), "h": Table({(1,): 10})})


def test_strictly_partial_hangs():
    s = _partial_state()
    assert eval_term(s, parse_term("g(1)")) == 10
    assert eval_term(s, parse_term("h(2)")) is UNDEF
    with pytest.raises(OutsideDomain) as e:
        eval_term(s, parse_term("h(g(2)) = undef"))
    assert e.value.term == parse_term("g(2)")
    assert try_eval(s, parse_term("g(2)")) is OUTSIDE


def test_rational_builtins():
    vocab = Vocabulary([Symbol(n, 2) for n in ("div", "add")] + [Symbol("f", 1)])
    s = State.build(vocab, Domain("rationals"),
                    {"div": Builtin("div"), "add": Builtin("add"), "f": Builtin("poly", (-2, 0, 1))})
    assert eval_term(s, parse_term("div(add(1, 2), 2)")) == Fraction(3, 2)
    assert eval_term(s, parse_term("f(div(3, 2))")) == Fraction(1, 4)
    assert eval_term(s, parse_term("div(1, 0)")) is UNDEF


def test_zigzag_enumeration():
    c = resolve("zigzag", (), "c")
    seq, v = [0], 0
    for _ in range(6):
        v = c(v)
        seq.append(v)
    assert seq == [0, -1, 1, -2, 2, -3, 3]
    assert c(TRUE) is UNDEF


def test_register_function():
    register_function("triple", lambda a: 3 * a)
    vocab = Vocabulary([Symbol("t", 1)])
    s = State.build(vocab, Domain(), {"t": Builtin("triple")})
    assert eval_term(s, parse_term("t(4)")) == 12


def test_build_rejects_out_of_domain_values():
    vocab = Vocabulary([Symbol("x", 0, DYNAMIC)])
    with pytest.raises(DomainError):
        State.build(vocab, Domain(), {"x": Table({(): Fraction(1, 2)})})
    with pytest.raises(ValueError):
        State.build(vocab, Domain(), {"x": Builtin("add")})


# update sets

def test_apply_updates_worked_steps(x_state):
    x1 = apply_updates(x_state, [upd("F", [0], 0), upd("F", [1], 1), upd("j", [], 2)])
    assert [eval_term(x1, parse_term(t)) for t in ("i", "j", "F(0)", "F(1)")] == [0, 2, 0, 1]
    x2 = apply_updates(x1, [upd("i", [], 1)])
    assert eval_term(x2, parse_term("j = n and n = plus(i, 1)")) is TRUE
    # the input is untouched
    assert eval_term(x_state, parse_term("F(0)")) == 1
    assert apply_updates(x_state, []) == x_state


def test_apply_updates_rejects_clash_and_static(x_state):
    with pytest.raises(InternalClashError):
        apply_updates(x_state, [upd("j", [], 1), upd("j", [], 2)])
    with pytest.raises(ValueError):
        apply_updates(x_state, [upd("plus", [1, 1], 3)])
    with pytest.raises(DomainError):
        apply_updates(x_state, [upd("j", [], Atom("a"))])


def test_derive_delta(x_state):
    x1 = apply_updates(x_state, [upd("F", [0], 0), upd("F", [1], 1), upd("j", [], 2)])
    assert derive_delta(x1, {upd("i", [], 1), upd("j", [], 2)}) == Delta(frozenset({upd("i", [], 1)}))
    assert derive_delta(x1, set()) == Terminal()
    assert derive_delta(x1, {upd("j", [], 2)}) == Delta(frozenset())


def test_states_agree_on(x_state, sort_prog):
    terms = critical_terms(sort_prog)
    assert states_agree_on(x_state, x_state, terms)
    x1 = apply_updates(x_state, [upd("F", [0], 0), upd("F", [1], 1), upd("j", [], 2)])
    assert not states_agree_on(x_state, x1, terms)


def _small_states():
    vocab = Vocabulary([Symbol("F", 1, DYNAMIC, UNDEF_RETURNING), Symbol("x", 0, DYNAMIC),
                        Symbol("y", 0, DYNAMIC)])
    vals = st.integers(-5, 5)
    return st.builds(
        lambda f, x, y: State.build(vocab, Domain(), {
            "F": Table({(k,): v for k, v in f.items()}), "x": Table({(): x}), "y": Table({(): y})}),
        st.dictionaries(vals, vals, max_size=4), vals, vals)


_locations = st.sampled_from([Location("x"), Location("y")] + [Location("F", (k,)) for k in range(-3, 4)])


@settings(max_examples=200, deadline=None)
@given(_small_states(), st.dictionaries(_locations, st.integers(-5, 5), max_size=5))
def test_apply_updates_changes_exactly_listed_locations(state, delta):
    updates = [Update(loc, v) for loc, v in delta.items()]
    after = apply_updates(state, updates)
    changed = dynamic_diff(state, after)
    assert changed == {u.location for u in updates if state.value_at(u.location) != u.value}
    for u in updates:
        assert after.value_at(u.location) == u.value
    assert after.domain == state.domain


@settings(max_examples=100, deadline=None)
@given(_small_states())
def test_fixpoint_when_delta_empty(state):
    trivial = {Update(Location("x"), state.value_at(Location("x")))}
    d = derive_delta(state, trivial)
    assert d == Delta(frozenset())
    assert apply_updates(state, d.updates) == state


# isomorphisms

def test_bijection_completion_and_rejection():
    z = Bijection({1: 2})
    assert z(1) == 2 and z(2) == 1 and z(3) == 3
    assert z.inverse(z(7)) == 7
    with pytest.raises(ValueError):
        Bijection({1: 3, 2: 3})
    with pytest.raises(ValueError):
        Bijection({TRUE: FALSE})


def test_identity_isomorphism(x_state, sort_prog):
    y = apply_isomorphism(x_state, Bijection())
    for t in critical_terms(sort_prog):
        assert eval_term(y, t) == eval_term(x_state, t)


def test_isomorphism_transports_terms(sort_prog):
    """Value of each critical term in the copy is the image of its value (>= 100 triples)."""
    from seqasm.corpus.sort import random_configuration
    rng = random.Random(5)
    terms = sorted(critical_terms(sort_prog), key=term_key) + [parse_term("F(9)"), parse_term("c(j)")]
    triples = 0
    for _ in range(40):
        x = random_configuration(rng)
        z = random_bijection(rng, active_values(x) | {1, 2}, x.domain)
        y = apply_isomorphism(x, z)
        for t in terms:
            assert try_eval(y, t) == z(try_eval(x, t)), format_term(t)
            triples += 1
    assert triples >= 100


def test_isomorphism_shift_sorts_in_same_steps(sort_prog):
    from seqasm.corpus.sort import sort_state
    from seqasm.semantics import run
    x = sort_state([4, 1, 3, 2])
    z = Bijection({v: v + 1000 for v in (1, 2, 3, 4)})
    y = apply_isomorphism(x, z)
    tx, ty = run(sort_prog, x), run(sort_prog, y)
    assert len(tx) == len(ty)
    for a, b in zip(tx.steps, ty.steps):
        assert b.delta == transport_updates(a.delta, z)


def test_relabelled_state_has_no_file_form(x_state):
    with pytest.raises(ValueError):
        format_state(apply_isomorphism(x_state, Bijection({0: 5})))
