"""Acceptance checks, one test per criterion.

Each test records a single PASS or FAIL line; the lines are printed in the
"acceptance criteria" section at the end of the pytest run.
"""

import random
import time

import pytest

from tlhier.algebra import brute_force_congruence, syntactic_morphism
from tlhier.automata import Alphabet, complement, content_class, regex_dfa, union, universal, empty
from tlhier.corpus import fixtures, uv_languages
from tlhier.cpairs import at_pairs, at_pairs_via_eta, length_profile, mod_pairs, mod_pairs_bruteforce
from tlhier.membership import decide_membership
from tlhier.rating import covering_to_imprint, imprint_via_covering_decisions
from tlhier.saturation import (audit_fixpoint, decide_covering, decide_separation, decide_tl3_st, saturate,
                               saturate_bounds)
from tlhier.tl import compile_formula, depth, evaluate, to_text
from tlhier.tlx import single_letter_exact, tlx_imprint

from conftest import (ACCEPTANCE_LINES, random_dfa, random_formula, random_tlx_instance, rating_suite,
                      small_semirings, tlx_suite)

AB = Alphabet.of("ab")


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return ok


def congruence_matches(d, max_len=8):
    rec = syntactic_morphism(d)
    alpha, m = rec.morphism, rec.monoid
    classes = brute_force_congruence(d, max_len)
    if len(classes) != m.size:
        return False
    element = {}
    for words in classes.values():
        images = {alpha(w) for w in words}
        if len(images) != 1:
            return False
        x = images.pop()
        if x in element.values():
            return False
        element.update((w, x) for w in words)
    reps = alpha.representatives()
    return all(element[reps[x] + reps[y]] == m.mul(x, y)
               for x in range(m.size) for y in range(m.size) if len(reps[x] + reps[y]) <= max_len)


def test_criterion_1_monoid_oracle():
    corpus = fixtures(max_states=8)
    bad = [name for name, d in corpus.items() if not congruence_matches(d)]
    ab = syntactic_morphism(regex_dfa("(ab)*", AB)).monoid.size
    aa = syntactic_morphism(regex_dfa("(aa)*", "a")).monoid.size
    ok = len(corpus) >= 20 and not bad and ab == 6 and aa == 2
    record(1, ok, f"{len(corpus)} corpus DFAs match the length-8 congruence"
                  f" (mismatches: {bad or 'none'}); |M((ab)*)| = {ab}, |M((aa)*)| = {aa}")
    assert ok


MEMBERSHIP_TABLE = [
    ("(aa)*", "a", "sf", False), ("(aa)*", "a", "tl-st", False), ("(aa)*", "a", "tl-mod", True),
    ("(aa)*", "a", "tl2-st", False),
    ("(ab)*", "ab", "sf", True), ("(ab)*", "ab", "tl-st", False), ("(ab)*", "ab", "tlx", True),
    ("(ab)*", "ab", "tl2-st", True),
    (".*a.*", "ab", "tl-st", True),
    ("a.*", "ab", "tlx", True),
]


def test_criterion_2_membership_table():
    wrong = []
    for regex, letters, klass, want in MEMBERSHIP_TABLE:
        got = decide_membership(regex_dfa(regex, letters), klass).member
        if got is not want:
            wrong.append(f"{regex}/{klass}: {got}")
    ok = not wrong
    record(2, ok, f"{len(MEMBERSHIP_TABLE) - len(wrong)}/{len(MEMBERSHIP_TABLE)} table entries exact"
                  + (f"; wrong: {wrong}" if wrong else ""))
    assert ok


def test_criterion_3_pair_engines():
    corpus = fixtures(max_states=8)
    literal_bad, wide_bad, eta_bad, checked = [], [], [], 0
    for name, d in corpus.items():
        alpha = syntactic_morphism(d).morphism
        if at_pairs(alpha) != at_pairs_via_eta(alpha):
            eta_bad.append(name)
        if alpha.monoid.size > 6:
            continue
        checked += 1
        exact = mod_pairs(alpha)
        if exact != mod_pairs_bruteforce(alpha, 12, 8):
            literal_bad.append(name)
        _, T, P = length_profile(alpha)
        if exact != mod_pairs_bruteforce(alpha, max(12, T + 9 * P), 8):
            wide_bad.append(name)
    ok = not literal_bad and not eta_bad
    record(3, ok, f"mod_pairs vs word search (|w| <= 12, n <= 8) on {checked} morphisms with |M| <= 6:"
                  f" mismatches {literal_bad or 'none'}; with |w| <= T + 9P: mismatches {wide_bad or 'none'};"
                  f" at_pairs == eta_pairs on all {len(corpus)}: {not eta_bad}")
    # the closed form and the sufficient-bound search must agree in any case
    assert not wide_bad and not eta_bad
    if literal_bad:
        pytest.xfail("a 12-letter search cannot witness modulus 7 for (ab)*; the closed form is right there")


def test_criterion_4_compiler_loop():
    rng = random.Random(4)
    words = list(AB.words(8))
    formulas = [random_formula(rng, 3) for _ in range(32)]
    disagree, outside = [], []
    for phi in formulas:
        d = compile_formula(phi, AB)
        if any(d.accepts(w) != evaluate(phi, w, 0) for w in words):
            disagree.append(to_text(phi))
        if decide_membership(d, "tl2-st").member is not True:
            outside.append(to_text(phi))
    ok = not disagree and not outside and all(depth(phi) <= 3 for phi in formulas)
    record(4, ok, f"{len(formulas)} formulas (depth <= 3, AT parameters): compile/eval disagreements"
                  f" {len(disagree)}, compiled languages outside TL2(ST) {len(outside)}")
    assert ok


def test_criterion_5_separation_suite():
    parity = regex_dfa("(aa)*", "a")
    has_a = regex_dfa(".*a.*", AB)
    u1, v1 = uv_languages(1)
    checks = {
        "parity | co-parity": decide_separation(parity, complement(parity)).result == "not_separable",
        "A*aA* | complement": decide_separation(has_a, complement(has_a)).result == "separable",
        "U1 | V1": decide_separation(u1, v1).result == "separable",
    }
    for k in range(3):
        checks[f"U{k} in TL2"] = decide_membership(uv_languages(k)[0], "tl2-st").member is True
    rng = random.Random(5)
    unknown = disagree = 0
    for _ in range(15):
        d = random_dfa(rng, 4)
        verdict = decide_separation(d, complement(d)).result
        unknown += verdict == "unknown"
        disagree += (verdict == "separable") != decide_membership(d, "tl2-st").member
    ok = all(checks.values()) and unknown == 0 and disagree == 0
    failed = [k for k, v in checks.items() if not v]
    record(5, ok, f"fixed cases {'all hold' if not failed else failed}; consistency law on 15 random DFAs:"
                  f" {disagree} disagreements, {unknown} unknown")
    assert ok


def test_criterion_6_saturation_integrity():
    suite = rating_suite(random.Random(6), 40)
    # covering reductions add instances whose rating maps come from joint morphisms
    parity = regex_dfa("(aa)*", "a")
    u1, v1 = uv_languages(1)
    for name, (L0, Ls) in {"parity": (parity, [complement(parity)]), "U1/V1": (u1, [v1]),
                           "ab": (regex_dfa("(ab)*", AB), [regex_dfa("a.*", AB)])}.items():
        suite.append((f"reduction:{name}", covering_to_imprint(L0, Ls).rating))
    inexact, unaudited, crossed, mismatched = [], [], 0, []
    oracle = lambda L, Ks: decide_covering(L, Ks).result  # noqa: E731
    for name, rho in suite:
        bounds = saturate_bounds(rho)
        if not bounds.exact or saturate(rho, "upper") != bounds.lower:
            inexact.append(name)
        if audit_fixpoint(bounds.lower):
            unaudited.append(name)
        if rho.semiring.size <= 16:
            crossed += 1
            if imprint_via_covering_decisions(universal(rho.alphabet), rho, oracle) != bounds.lower.opt():
                mismatched.append(name)
    ok = not inexact and not unaudited and not mismatched
    record(6, ok, f"{len(suite)} instances: lower == upper on {len(suite) - len(inexact)},"
                  f" fixpoint audit clean on {len(suite) - len(unaudited)},"
                  f" covering cross-check agrees on {crossed - len(mismatched)}/{crossed} with |R| <= 16")
    assert ok


def test_criterion_7_tlx_oracle():
    start = time.perf_counter()
    single_bad, n_single = [], 0
    for name, R in small_semirings(8):
        for q in range(R.size):
            n_single += 1
            b = tlx_imprint(R, [q])
            exact = single_letter_exact(R, q)
            if not (b.lower == exact == b.upper):
                single_bad.append((name, q))
    suite_bad = [name for name, R, Q in tlx_suite() if not tlx_imprint(R, Q).exact]
    rng = random.Random(7)
    order_bad = 0
    for _ in range(200):
        R, Q = random_tlx_instance(rng)
        b = tlx_imprint(R, Q)
        order_bad += not (b.lower <= b.upper)
    elapsed = time.perf_counter() - start
    ok = not single_bad and not suite_bad and order_bad == 0 and elapsed <= 300
    record(7, ok, f"{n_single - len(single_bad)}/{n_single} single-letter instances match the closed form;"
                  f" {10 - len(suite_bad)}/10 suite instances exact; lower <= upper on"
                  f" {200 - order_bad}/200 random instances; {elapsed:.1f}s")
    assert ok


def test_criterion_8_third_level():
    classes = [content_class(AB, B) for B in ([], ["a"], ["b"], ["a", "b"])]
    at_languages = []
    for mask in range(16):
        chosen = [c for i, c in enumerate(classes) if (mask >> i) & 1]
        lang = empty(AB)
        for c in chosen:
            lang = union(lang, c)
        at_languages.append(lang)
    answers = [decide_tl3_st(d) for d in at_languages]
    ab = decide_tl3_st(regex_dfa("(ab)*", AB))
    parity = decide_tl3_st(regex_dfa("(aa)*", "a"))
    ok = all(a is True for a in answers) and ab is True and parity is False
    record(8, ok, f"{sum(a is True for a in answers)}/16 AT languages accepted,"
                  f" {sum(a is None for a in answers)} unknown; (ab)* -> {ab}; (aa)* -> {parity}")
    assert ok
