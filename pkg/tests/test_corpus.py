import pytest

from seqasm.core import Term, eval_term
from seqasm.core.serialize import format_state
from seqasm.corpus import (
    NondeterminismError, check_goldens, corpus_list, get_entry, regenerate_goldens, run_entry,
)
from seqasm.corpus import sort as sortmod

ENTRIES = [e.name for e in corpus_list()]


def test_listing():
    assert ENTRIES == sorted(ENTRIES)
    assert {"sort", "bisection", "trivial-loop", "clash", "constructor-arithmetic"} <= set(ENTRIES)
    with pytest.raises(KeyError):
        get_entry("nope")


@pytest.mark.parametrize("name", ENTRIES)
def test_entry_validates(name):
    assert get_entry(name).validate() == []


@pytest.mark.parametrize("name", ENTRIES)
def test_states_are_canonical(name):
    e = get_entry(name)
    for r in e.runs:
        assert format_state(e.load_state(r.state)) == e.path(r.state).read_text()


@pytest.mark.parametrize("name", ENTRIES)
def test_goldens_are_current(name):
    assert check_goldens(get_entry(name)) == []


@pytest.mark.parametrize("name", ENTRIES)
def test_expected_outcomes(name):
    e = get_entry(name)
    for r in e.runs:
        assert run_entry(e, r).outcome is e.expected(r)


def test_regeneration_is_idempotent(tmp_path):
    e = get_entry("sort")
    first = regenerate_goldens(e, tmp_path)
    texts = [p.read_text() for p in first]
    regenerate_goldens(e, tmp_path)
    assert [p.read_text() for p in first] == texts
    for p in first:
        assert p.read_text() == e.path(str(p.relative_to(tmp_path))).read_text()


def test_nondeterminism_detected(monkeypatch):
    import seqasm.corpus as corpus
    calls = iter(range(100))
    monkeypatch.setattr(corpus, "format_trace", lambda t: f"{next(calls)}\n")
    with pytest.raises(NondeterminismError):
        regenerate_goldens(get_entry("clash"))


def test_sort_golden_trace_shape():
    e = get_entry("sort")
    text = e.path("goldens/n2.trace").read_text()
    assert "proposed: {F(0) -> 0, F(1) -> 1, j -> 2}" in text
    assert "delta: {i -> 1}" in text
    assert "outcome: terminal after 2 steps" in text


def test_sort_final_states_meet_termination_condition():
    e = get_entry("sort")
    for r in e.runs:
        fin = run_entry(e, r).final
        assert eval_term(fin, Term("j")) == eval_term(fin, Term("n")) == eval_term(fin, Term("i")) + 1


def test_case_table_golden_rows():
    text = get_entry("sort").path("goldens/case-table.txt").read_text()
    assert text == sortmod.render_case_table(sortmod.sort_program())
    assert "row 0: j = n = i+1\n" in text and "  delta: bottom\n" in text
    assert "  symbolic: {i -> plus(i, 1), j -> plus(i, 2)}\n" in text
    assert "  symbolic: {F(i) -> F(j), F(j) -> F(i), j -> plus(j, 1)}\n" in text
    assert "  symbolic: {j -> plus(j, 1)}\n" in text


def test_bisection_golden_steps():
    text = get_entry("bisection").path("goldens/sqrt2.trace").read_text()
    assert "outcome: terminal after 7 steps" in text


def test_clash_golden():
    text = get_entry("clash").path("goldens/x0.trace").read_text()
    assert "outcome: clash at step 1: x <- {1, 2}" in text
