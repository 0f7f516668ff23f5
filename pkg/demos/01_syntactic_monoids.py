"""
Syntactic monoids and equational membership
-------------------------------------------

Every regular language has a smallest monoid that recognises it.  We build
it for (ab)*, look at its multiplication table, and then ask which logic
classes contain the language.
"""

import numpy as np

from tlhier.algebra import idempotents, syntactic_morphism
from tlhier.automata import regex_dfa, show
from tlhier.membership import decide_membership

rec = syntactic_morphism(regex_dfa("(ab)*", "ab"))
m = rec.monoid
words = [show(w) for w in rec.morphism.representatives()]

print("elements:", dict(enumerate(words)))
print("accepting:", sorted(rec.accepting))
print(m.mult)

###############################################################################
# Idempotents and ω-powers.  In (ab)* every element has an idempotent power;
# a and b both collapse to the zero aa = bb.

print("idempotents:", [words[e] for e in idempotents(m)])
print("omega:", {words[s]: words[int(w)] for s, w in enumerate(m.omega_table)})

###############################################################################
# Membership.  Each class is decided by one equation on the monoid, checked
# over all idempotents and the pairs of the chosen base.

languages = {"(aa)*": "a", "(ab)*": "ab", ".*a.*": "ab", "a.*": "ab", ".*aa.*": "ab"}
classes = ["sf", "tl-st", "tlx", "tl-mod", "tl2-st"]
table = np.array([[decide_membership(regex_dfa(r, a), c).member for c in classes]
                  for r, a in languages.items()])
print("\n" + " " * 8 + "  ".join(f"{c:>6}" for c in classes))
for name, row in zip(languages, table):
    print(f"{name:>8}" + "  ".join(f"{str(x):>6}" for x in row))

###############################################################################
# A failing equation comes with witness elements and short words for them.

res = decide_membership(regex_dfa("(ab)*", "ab"), "tl-st")
print("\n(ab)* in TL(ST)?", res.member, res.witness_words)
