"""Integers named by 0 and c alone, and arithmetic programmed on top of them."""

from seqasm.corpus import get_entry
from seqasm.corpus.sort import sort_state
from seqasm.effectiveness import (
    ConstructorVocabulary, Witness, check_effective_state, check_free_construction, compute_function,
    enumerate_constructor_terms, load_function_spec,
)
from seqasm.core import format_term, format_value

x = sort_state([3, 1, 2])
c = ConstructorVocabulary.from_names(x.vocabulary, ["0", "c"])

# every integer gets exactly one name: 0, c(0), c(c(0)), ...
freeness = check_free_construction(x, c, 6)
for v, t in sorted(freeness.named.items()):
    print(f"{format_value(v):>3} = {format_term(t)}")
print(len(enumerate_constructor_terms(c, 6)), "terms, duplicates:", freeness.duplicates)

# plus and gt are built-ins in the sorting state; programs over 0 and c compute them
arith = get_entry("constructor-arithmetic")
add_prog, add_spec = load_function_spec(arith.path("add.json"))
for a, b in [(2, -3), (5, 4), (-6, -1)]:
    print(f"{a} + {b} =", compute_function(add_prog, add_spec, (a, b)))

witnesses = {k: Witness(*load_function_spec(arith.path(p))) for k, p in arith.functions.items()}
full = ConstructorVocabulary.from_names(x.vocabulary, ["0", "true", "false", "undef", "c"])
print(check_effective_state(x, full, witnesses).format())
print(check_effective_state(x, full, {}).format())
