"""
Writing and compiling temporal formulas
---------------------------------------

F[L]{φ} looks to the right for a position satisfying φ such that the
letters in between form a word of L.  P[L]{φ} looks to the left.
"""

from tlhier.automata import equivalent, regex_dfa
from tlhier.membership import decide_membership
from tlhier.tl import compile_formula, parse_formula, satisfaction

AB = "ab"

# "the last letter is an a": some position holds a, and only the end follows
phi = parse_formula("F[.*]{'a' & F[~]{max}}", AB)
print([int(x) for x in satisfaction(phi, "bba")])     # positions 0 .. 4

d = compile_formula(phi, AB)
print("states:", d.n_states, "same as .*a:", equivalent(d, regex_dfa(".*a", AB)))

###############################################################################
# The parameter (ab)* turns F into a counter over the whole word.

psi = parse_formula("F[(ab)*]{max}", AB)
print("F[(ab)*]{max} defines (ab)*:", equivalent(compile_formula(psi, AB), regex_dfa("(ab)*", AB)))

###############################################################################
# Formulas whose parameters only test which letters occur land in the second
# level over ST.  The membership test confirms it for a few of them.

for text in ["F[b*]{'a' & F[a*]{max}}", "!F[.*a.*]{'b'}", "F{'a' & P[~]{'b'}}"]:
    lang = compile_formula(parse_formula(text, AB), AB)
    print(f"{text:>28}  states={lang.n_states}  tl2-st={decide_membership(lang, 'tl2-st').member}")
