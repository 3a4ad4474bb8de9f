"""Bisection for the root of x^2 - 2 on [1, 2], with exact rationals throughout."""

from fractions import Fraction

from seqasm.core import Term, eval_term
from seqasm.corpus import get_entry
from seqasm.parser import format_program
from seqasm.semantics import run

entry = get_entry("bisection")
prog = entry.load_program()
x = entry.load_state("states/sqrt2.st")
print(format_program(prog))

trace = run(prog, x)
for k, s in enumerate(trace.states()):
    a, b = eval_term(s, Term("a")), eval_term(s, Term("b"))
    print(f"{k}: a = {a}  b = {b}  width = {b - a}")

a = eval_term(trace.final, Term("a"))
print("a^2 =", a * a, "~", float(a * a))
print("width <= 1/128:", eval_term(trace.final, Term("b")) - a <= Fraction(1, 128))
