"""Critical terms of a program."""

from __future__ import annotations

from ..core.terms import Term, conjoin, negate, term_key
from ..parser import Assign, Par, Program


def subterm_closure(terms) -> frozenset:
    out = set()
    for t in terms:
        out.update(t.subterms())
    return frozenset(out)


def critical_terms(program: Program) -> frozenset:
    """Terms whose values decide the program's updates, closed under subterms.

    Collected: every condition, the negated condition guarding an else
    branch, the conjunction of enclosing guards at each nested test, every
    right-hand side, and the proper subterms of every left-hand side.
    """
    found: list[Term] = []

    def walk(p, path):
        if isinstance(p, Assign):
            found.append(p.rhs)
            found.extend(p.args)
        elif isinstance(p, Par):
            for child in p.body:
                walk(child, path)
        else:
            found.append(p.cond)
            if path:
                found.append(conjoin(path + [p.cond]))
            walk(p.then, path + [p.cond])
            if p.orelse is not None:
                neg = negate(p.cond)
                found.append(neg)
                if path:
                    found.append(conjoin(path + [neg]))
                walk(p.orelse, path + [neg])

    walk(program, [])
    return subterm_closure(found)


def sorted_terms(terms) -> list[Term]:
    return sorted(terms, key=term_key)


def is_subterm_closed(terms) -> bool:
    terms = set(terms)
    return all(s in terms for t in terms for s in t.subterms())
