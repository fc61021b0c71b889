"""
Well-formed words and the canonical encoding
============================================

Fix a recognizing morphism into a finite semigroup S.  A word over {a, b}
is cut at its distinguished positions, and each segment becomes one letter
remembering its image and the idempotents at its two ends.
"""

from plusone import automata, languages
from plusone.semigroup import transition_semigroup
from plusone.wellformed import (
    WfContext,
    beta_eval,
    canonical_wf,
    distinguished,
    expand,
    preimage_dfa,
    show_wf_word,
    wf_alphabet,
    wf_language_dfa,
)

# S = {1, 0} from "contains b": a maps to 1 (index 0), b to 0 (index 1).
_, alpha = transition_semigroup(languages.contains_factor("ab", "b"))
ctx = WfContext(alpha)
print("extended alphabet has", len(wf_alphabet(ctx)), "letters")

# Distinguished positions are those whose window image absorbs an idempotent.
w = "aabab"
print("distinguished:", [distinguished(ctx, w, x) for x in range(1, len(w) + 1)])

# The encoding evaluates back to the image of the word.
letters, positions, idems = canonical_wf(ctx, w)
print("encoding:", show_wf_word(letters))
print("cut after positions", positions, "with idempotents", idems)
print("beta of the encoding", beta_eval(ctx, letters), "== image", ctx.image(w))

# Expanding a well-formed word repeats every junction idempotent i times.
for i in (1, 2, 3):
    u = expand(ctx, letters, i)
    print(f"expansion with i={i}: {automata.show_word(u)} (image {ctx.image(u)})")

# Pulling a language of well-formed words back along the encoding gives a
# regular language over {a, b}; for the language of S itself we get L back.
K = wf_language_dfa(ctx, alpha.accepting["L"])
back = preimage_dfa(ctx, K)
print("pull-back equals contains-b?", automata.equivalent(back, languages.contains_factor("ab", "b")))
