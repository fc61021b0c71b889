"""
Automata and their transition semigroups
========================================

Build a few small languages over {a, b}, combine them, and look at the
finite semigroups that recognize them.
"""

from pathlib import Path

from plusone import automata, languages
from plusone.semigroup import check_identity, idempotents_and_omega, syntactic_ordered_semigroup, transition_semigroup

DATA = Path(__file__).parent / "data"

# Automata are read from a small line-oriented text format.
contains_aa = automata.dfa_from_text((DATA / "contains_aa.dfa").read_text())
print(automata.dfa_to_text(contains_aa))

# Boolean operations are products of automata.
even = languages.length_mod("ab", 2, 0)
both = automata.intersect(contains_aa, even)
print("words of even length containing aa:", [automata.show_word(w) for w in automata.enumerate_accepted(both, 4)])

# Inclusion comes with the shortest counterexample when it fails.
aa_plus = languages.powers_mod("ab", "a", 2, 0)
print("(aa)+ includes contains-aa?", automata.includes(aa_plus, contains_aa))
print("first word in contains-aa but not in (aa)+:", automata.inclusion_counterexample(aa_plus, contains_aa))

# The upward closure adds every word that has an accepted word as a subword.
up = automata.determinize_minimize(automata.upward_closure(contains_aa))
print("aba in the closure of contains-aa?", up.accepts("aba"), "| in contains-aa?", contains_aa.accepts("aba"))

# Every DFA gives a finite semigroup of state transformations.
S, alpha = transition_semigroup(contains_aa)
E, omega = idempotents_and_omega(S)
print(f"contains-aa: {S.size} elements, idempotents {sorted(E)}, omega {omega}")
for s, w in enumerate(alpha.witnesses):
    print(f"  element {s} is the image of {automata.show_word(w)}")

# Identities: the parity semigroup is not aperiodic, contains-aa is.
parity, _ = transition_semigroup(languages.length_mod("a", 2, 0))
res = check_identity(parity, "aperiodic")
print("parity aperiodic?", res.holds, "counterexample", res.counterexample)
print("contains-aa aperiodic?", check_identity(S, "aperiodic").holds)

# The syntactic order of an upward-closed language: inserting letters goes up.
So, beta = syntactic_ordered_semigroup(languages.upward("ab", ["ab"]))
print("image of a below image of ab?", So.leq(beta.image("a"), beta.image("ab")))
