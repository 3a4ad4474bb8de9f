"""Walk through the sorting machine: one run, its update sets, its critical terms,
and a machine rebuilt from nothing but its update oracle."""

import random

from seqasm.analysis import compare_proposals, critical_terms, program_oracle, sorted_terms, synthesize_asm
from seqasm.core import format_term
from seqasm.corpus.sort import f_values, random_configuration, render_case_table, sort_program, sort_state
from seqasm.parser import format_program
from seqasm.semantics import format_trace, proposed_updates, run

prog = sort_program()
print(format_program(prog))

# the two-element state: F = [1, 0], i = 0, j = 1, n = 2
x = sort_state([1, 0])
trace = run(prog, x, max_steps=10)
print(format_trace(trace))

# one witness state per case of the program's update sets
print(render_case_table(prog))

# the terms whose values decide every step
for t in sorted_terms(critical_terms(prog)):
    print("  ", format_term(t))

# a bigger array
t = run(prog, sort_state([7, 3, 9, 1, 4, 4, 0]))
print(len(t), "steps ->", f_values(t.final))

# rebuild the program from its behaviour on a few dozen states
rng = random.Random(1)
samples = [random_configuration(rng) for _ in range(80)]
rebuilt = synthesize_asm(program_oracle(prog), critical_terms(prog), samples)
print(format_program(rebuilt))

held_out = [random_configuration(rng) for _ in range(500)]
print(compare_proposals(lambda s: proposed_updates(prog, s), rebuilt, held_out).summary())
