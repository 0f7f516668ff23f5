"""
Witness languages across the hierarchy
--------------------------------------

The corpus builds the nested-star and alternating families from automaton
operations.  We look at their sizes and then place a few of them in the
levels the package can decide.
"""

from tlhier.algebra import syntactic_morphism
from tlhier.automata import regex_dfa
from tlhier.corpus import build, brzozowski_knast, encode_beta, uv_languages
from tlhier.membership import decide_membership

for n in range(5):
    h = brzozowski_knast(n)
    print(f"H{n}: {h.n_states} states, monoid of size {syntactic_morphism(h).monoid.size}")

###############################################################################
# U_k and V_k are disjoint languages over k + 1 letters.  Both sit in the
# second level, and the encoding over {a, b} keeps that.

for k in range(3):
    u, v = uv_languages(k)
    enc = encode_beta(k, u)
    print(f"k={k}: U {u.n_states} states, V {v.n_states} states,"
          f" tl2-st: U={decide_membership(u, 'tl2-st').member} V={decide_membership(v, 'tl2-st').member},"
          f" encoded U has {enc.n_states} states")

###############################################################################
# Third level: (ab)* is in, parity is not.  Facts that no procedure here can
# check travel with the corpus entry as notes.

for name, lang in [("(ab)*", brzozowski_knast(1)), ("H2", brzozowski_knast(2)),
                   ("(aa)*", regex_dfa("(aa)*", "a"))]:
    print(f"{name} in tl3-st:", decide_membership(lang, "tl3-st").member)
print("notes on V_2:", build("V", 2).asserted)
