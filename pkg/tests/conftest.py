import random

import numpy as np
import pytest

from tlhier.automata import Alphabet, Dfa, minimize
from tlhier.corpus import fixtures

AB = Alphabet.of("ab")


def random_dfa(rng: random.Random, n_states: int = 4, alphabet: Alphabet = AB) -> Dfa:
    """Minimized random DFA with at most ``n_states`` states."""
    n = rng.randint(1, n_states)
    delta = [[rng.randrange(n) for _ in alphabet.letters] for _ in range(n)]
    accepting = [q for q in range(n) if rng.random() < 0.5]
    return minimize(Dfa(alphabet, np.array(delta), 0, accepting))


@pytest.fixture(scope="session")
def corpus():
    return fixtures(max_states=8)


@pytest.fixture
def rng():
    return random.Random(20261019)


# parameters that are Boolean combinations of A*aA*, i.e. unions of content classes
AT_PARAMETERS = [".*", "~", "a*", "b*", ".*a.*", ".*b.*", "!(.*a.*)", ".*a.*&.*b.*", "a+", "b*|a+"]


def random_formula(rng: random.Random, depth: int, alphabet: Alphabet = AB):
    """Random TL formula with AT parameters and modal depth at most ``depth``."""
    from tlhier.automata import regex_dfa
    from tlhier.tl import And, Bottom, Finally, Letter, Max, Min, Not, Or, Previously, Top

    def atom():
        pick = rng.randrange(len(alphabet) + 4)
        if pick < len(alphabet):
            return Letter(alphabet.letters[pick])
        return [Top(), Bottom(), Min(), Max()][pick - len(alphabet)]

    def go(d):
        roll = rng.random()
        if d == 0 or roll < 0.15:
            return atom()
        if roll < 0.3:
            return Not(go(d))
        if roll < 0.5:
            cls = And if rng.random() < 0.5 else Or
            return cls(go(d), go(d - 1) if rng.random() < 0.5 else atom())
        text = rng.choice(AT_PARAMETERS)
        cls = Finally if rng.random() < 0.6 else Previously
        return cls(regex_dfa(text, alphabet), go(d - 1), text)

    def rooted(d):
        # position 0 carries no letter, so the root must look to the future
        if d == 0:
            return atom()
        text = rng.choice(AT_PARAMETERS)
        return Finally(regex_dfa(text, alphabet), go(d - 1), text)

    phi = rooted(depth)
    if depth and rng.random() < 0.3:
        phi = (And if rng.random() < 0.5 else Or)(phi, Not(rooted(rng.randint(1, depth))))
    return phi


def small_semirings(max_size: int = 8):
    """Powersets of every monoid with at most 3 elements and truncated tropical semirings."""
    from tlhier.rating import PowersetSemiring, tropical_semiring
    from tlhier.tlx import _small_monoids

    out = [(f"2^M{i}", PowersetSemiring(m)) for i, m in enumerate(_small_monoids(3))
           if 1 << m.size <= max_size]
    out += [(f"trop{k}", tropical_semiring(k)) for k in range(0, max_size - 1)]
    return out


def tlx_suite():
    """Instances (name, R, Q) with |Q| <= 3 over the powerset of the (ab)* monoid and friends."""
    from tlhier.algebra import syntactic_morphism
    from tlhier.automata import regex_dfa
    from tlhier.rating import PowersetSemiring, tropical_semiring

    ab = PowersetSemiring(syntactic_morphism(regex_dfa("(ab)*", AB)).monoid)
    par = PowersetSemiring(syntactic_morphism(regex_dfa("(aa)*", "a")).monoid)
    three = PowersetSemiring(syntactic_morphism(regex_dfa("(aaa)*", "a")).monoid)
    trop = tropical_semiring(4)
    # (ab)* elements: 0 = 1, 1 = a, 2 = b, 3 = zero, 4 = ab, 5 = ba
    cases = [(ab, [2, 4]), (ab, [2, 4, 8]), (ab, [6, 16]), (ab, [2, 4, 48]), (ab, [2, 32]),
             (ab, [16, 32]), (par, [2]), (par, [1, 2]), (three, [2, 4]), (trop, [1, 2, 3])]
    return [(" ".join(R.show(q) for q in Q), R, Q) for R, Q in cases]


def random_tlx_instance(rng: random.Random):
    """Random subsemiring of a powerset (4 <= |R| <= 16) with 1 to 3 letters."""
    from tlhier.algebra import syntactic_morphism
    from tlhier.errors import ResourceLimit
    from tlhier.rating import powerset_subsemiring

    while True:
        m = syntactic_morphism(random_dfa(rng, 4)).monoid
        if m.size > 12:
            continue
        gens = [rng.randrange(1, 1 << m.size) for _ in range(rng.randint(1, 3))]
        try:
            R, _ = powerset_subsemiring(m, gens, limit=16)
        except ResourceLimit:
            continue
        if R.size < 4:
            continue
        k = min(R.size, rng.randint(1, 3))
        return R, sorted(rng.sample(range(R.size), k))


def rating_suite(rng: random.Random, n_random: int = 20):
    """Rating maps (name, ρ) with |R| <= 16: canonical maps of small corpus
    monoids and random letter ratings into subsemirings of powersets."""
    from tlhier.algebra import syntactic_morphism
    from tlhier.errors import ResourceLimit
    from tlhier.rating import RatingMap, canonical_rating_map, powerset_subsemiring

    out = []
    for name, d in fixtures(max_states=8).items():
        alpha = syntactic_morphism(d).morphism
        if alpha.monoid.size <= 4:
            out.append((f"canonical:{name}", canonical_rating_map(alpha)))
    wanted = len(out) + n_random
    while len(out) < wanted:
        m = syntactic_morphism(random_dfa(rng, 4)).monoid
        if m.size > 12:
            continue
        gens = [rng.randrange(1, 1 << m.size) for _ in range(2)]
        try:
            R, _ = powerset_subsemiring(m, gens, limit=16)
        except ResourceLimit:
            continue
        if R.size < 4:
            continue
        letters = [rng.randrange(R.size) for _ in AB.letters]
        out.append((f"random:{len(out)}", RatingMap(R, AB, letters)))
    return out


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
