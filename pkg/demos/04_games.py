"""
Ehrenfeucht-Fraisse games on words
==================================

Two-pebble games for two-variable logic and placement games for
quantifier alternation, with and without the successor relation.
"""

import itertools

from plusone.efgames import fo2_equiv, sigma_preorder, subword_profile_preorder

# Two pebbles, moved for k rounds.  With successor, Duplicator also has to
# respect adjacency, which a^3 and a^4 expose after two moves.
for enriched in (False, True):
    print(f"aaa vs aaaa, 2 rounds, successor={enriched}:", fo2_equiv("aaa", "aaaa", 2, enriched))

# Placement game with one existential block: embedding a word into another
# is a winning strategy for Duplicator.
print("ab below aabb:", sigma_preorder("ab", "aabb", 1, 2))

# With first and last position available, the endpoints have to match too.
print("ab below aabb, enriched:", sigma_preorder("ab", "aabb", 1, 2, True))

# Rank counts nesting depth, which sees more than short subwords: aaa has an
# a with an a on each side, so depth 2 tells it apart from aa even though
# both have the subwords a and aa.
print("aaa below aa at depth 2:", sigma_preorder("aaa", "aa", 1, 2))
print("subwords of aaa within those of aa:", subword_profile_preorder("aaa", "aa", 2))

# How often do the two relations disagree on short words?
words = ["".join(p) for n in range(1, 5) for p in itertools.product("ab", repeat=n)]
for k in (1, 2, 3):
    pairs = list(itertools.product(words, repeat=2))
    differ = sum(sigma_preorder(u, v, 1, k) != subword_profile_preorder(u, v, k) for u, v in pairs)
    print(f"k={k}: {differ} of {len(pairs)} pairs disagree")
