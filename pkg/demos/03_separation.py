"""
Separating regular languages
============================

Decide whether a formula using order, successor, first and last position,
with one block of existential quantifiers, can separate two languages.
"""

from plusone import automata, efgames, languages
from plusone.separation import (
    membership_sigma1,
    membership_sigma1_plus,
    minimal_patterns,
    sigma1_plus_separates,
    sigma1_separates,
    witness_pairs,
)

# Without successor, the only candidate separator is the upward closure.
up_ab = languages.upward("ab", ["ab"])
v = sigma1_separates(up_ab, languages.finite("ab", ["b"]))
print("up-ab vs {b}:", "separable" if v.is_separable else "not separable")
print("  patterns of the separator:", [automata.show_word(p) for p in minimal_patterns(v.separator)])

# contains-aa is not upward closed, but with successor it is definable.
ca = languages.contains_factor("ab", "aa")
print("contains-aa definable without successor?", membership_sigma1(ca))
print("contains-aa definable with successor?", membership_sigma1_plus(ca))

# A successful verdict carries a separator checked exactly against both inputs.
v = sigma1_plus_separates(ca, languages.complement_plus(ca))
print("separator states:", v.separator.n_states, "checks:", v.certificate)

# Parity cannot be separated.  The verdict produces, for each rank k, a word
# of each language that the enriched game cannot tell apart.
even, odd = languages.powers_mod("a", "a", 2, 0), languages.powers_mod("a", "a", 2, 1)
v = sigma1_plus_separates(even, odd)
print("(aa)+ vs a(aa)*:", "separable" if v.is_separable else "not separable")
for k in (1, 2, 3):
    u, up = witness_pairs(v, k)
    ok = efgames.sigma_preorder(u, up, 1, k, True, max_len=len(up), max_k=max(k, efgames.MAX_K))
    print(f"  k={k}: |u|={len(u)} |u'|={len(up)}, Duplicator wins: {ok}")
