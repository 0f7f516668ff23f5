"""
Separation, covering and the saturation fixpoint
------------------------------------------------

A separator is a language of the class that contains one input and misses
the other.  The procedure never builds the separator.  It computes the
optimal imprint of a rating map by saturation and reads the answer off it.
"""

from tlhier.algebra import syntactic_morphism
from tlhier.automata import complement, regex_dfa
from tlhier.corpus import uv_languages
from tlhier.rating import canonical_rating_map
from tlhier.saturation import decide_covering, decide_separation, saturate_bounds

parity = regex_dfa("(aa)*", "a")
print("parity vs odd length:", decide_separation(parity, complement(parity)).result)

has_a = regex_dfa(".*a.*", "ab")
print("contains a vs b*:    ", decide_separation(has_a, complement(has_a)).result)

u1, v1 = uv_languages(1)
print("U1 vs V1:            ", decide_separation(u1, v1).result)

###############################################################################
# Covering generalises separation to several languages at once.  Here every
# word either contains an a or lies in b*, and content is visible to the
# class, so a cover exists.

res = decide_covering(regex_dfa(".*", "ab"), [has_a, regex_dfa("b*", "ab")])
print("\ncover of A* avoiding (A*aA*, b*):", res.result, res.detail)

###############################################################################
# The saturated set itself: one row per alphabet subset, each a downset of
# the powerset semiring of the monoid, stored by its maximal elements.

alpha = syntactic_morphism(regex_dfa("(ab)*", "ab")).morphism
bounds = saturate_bounds(canonical_rating_map(alpha))
print("\nexact:", bounds.exact, "rounds:", bounds.lower.rounds)
for B, row in sorted(bounds.lower.rows.items()):
    print(f"  content {bounds.lower.letters_of(B)!s:>10}: {row}")
print("optimal imprint on A*:", bounds.lower.opt())
