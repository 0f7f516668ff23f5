import random

import pytest

from tlhier.algebra import preimage_dfa, syntactic_morphism
from tlhier.automata import Alphabet, complement, regex_dfa, universal
from tlhier.corpus import uv_languages
from tlhier.errors import InputError
from tlhier.membership import decide_membership
from tlhier.rating import canonical_rating_map, imprint_via_covering_decisions
from tlhier.saturation import (audit_fixpoint, covering_verdict, decide_covering, decide_separation, saturate,
                               saturate_bounds, tlat_pairs, tlat_pairs_by_separation, trivial_elements)
from tlhier.tlx import tlx_lower

from conftest import random_dfa, rating_suite

AB = Alphabet.of("ab")


def covering_oracle(L, Ks):
    return decide_covering(L, Ks).result


def test_trivial_elements_match_words():
    alpha = syntactic_morphism(regex_dfa("(ab)*", AB)).morphism
    rho = canonical_rating_map(alpha)
    expected = {}
    for w in AB.words(6):
        B = sum(1 << AB.index(a) for a in set(w))
        expected.setdefault(B, set()).add(rho.star(w))
    assert trivial_elements(rho) == expected


def test_rating_suite_is_exact_and_audited():
    for name, rho in rating_suite(random.Random(1), 15):
        b = saturate_bounds(rho)
        assert b.exact and b.certified, name
        assert audit_fixpoint(b.lower) == [], name


def test_order_does_not_matter():
    for name, rho in rating_suite(random.Random(2), 10):
        base = saturate(rho)
        for seed in (1, 2, 3):
            assert saturate(rho, seed=seed) == base, name


def test_upper_mode_contains_lower_mode():
    for name, rho in rating_suite(random.Random(3), 10):
        lo, hi = saturate(rho, "lower"), saturate(rho, "upper")
        for B, row in lo.rows.items():
            assert row <= hi.row(B), name


def test_cross_check_with_covering_decisions():
    for name, rho in rating_suite(random.Random(4), 10):
        expected = imprint_via_covering_decisions(universal(rho.alphabet), rho, covering_oracle)
        assert saturate_bounds(rho).lower.opt() == expected, name


def test_audit_detects_missing_elements():
    alpha = syntactic_morphism(regex_dfa("(ab)*", AB)).morphism
    state = saturate(canonical_rating_map(alpha))
    full = max(state.rows)
    broken = type(state)(state.rating, dict(state.rows), state.mode)
    R = state.rating.semiring
    broken.rows[full] = type(state.rows[full])(R, [R.zero])
    assert audit_fixpoint(broken)


def test_separation_examples():
    parity = regex_dfa("(aa)*", "a")
    assert decide_separation(parity, complement(parity)).result == "not_separable"
    has_a = regex_dfa(".*a.*", AB)
    assert decide_separation(has_a, complement(has_a)).result == "separable"
    u1, v1 = uv_languages(1)
    assert decide_separation(u1, v1).result == "separable"


def test_covering_with_several_languages():
    target = regex_dfa(".*", AB)
    avoid = [regex_dfa(".*a.*", AB), regex_dfa("b*", AB)]
    # content decides membership in each avoided language
    assert covering_verdict(target, avoid) == "coverable"
    parity = regex_dfa("(aa)*", "a")
    assert covering_verdict(regex_dfa("a*", "a"), [parity, complement(parity)]) == "not_coverable"


def test_covering_requires_languages():
    with pytest.raises(InputError):
        decide_covering(regex_dfa("a", AB), [])
    with pytest.raises(InputError):
        saturate(canonical_rating_map(syntactic_morphism(regex_dfa("a", AB)).morphism), mode="sideways")


def test_consistency_law(rng):
    for _ in range(20):
        d = random_dfa(rng, 4)
        verdict = decide_separation(d, complement(d)).result
        member = decide_membership(d, "tl2-st").member
        assert verdict != "unknown"
        assert (verdict == "separable") == member


def test_tlat_pairs_match_separation(corpus):
    for name, d in corpus.items():
        alpha = syntactic_morphism(d).morphism
        if alpha.monoid.size > 8:
            continue
        fast, slow = tlat_pairs(alpha), tlat_pairs_by_separation(alpha)
        assert fast.pairs == slow.pairs and not fast.partial, name


def test_tlat_pairs_are_preimage_separations():
    alpha = syntactic_morphism(regex_dfa("(ab)*", AB)).morphism
    pairs = tlat_pairs(alpha)
    a, b = alpha("a"), alpha("b")
    assert (a, b) not in pairs            # first letter tells them apart
    assert (a, alpha("aba")) in pairs     # same element
    sep = decide_separation(preimage_dfa(alpha, [a]), preimage_dfa(alpha, [b])).result
    assert sep == "separable"


def test_lower_operation_is_used():
    # the rating of a star is only reachable through the TLX rule
    parity = syntactic_morphism(regex_dfa("(aa)*", "a")).morphism
    rho = canonical_rating_map(parity)
    state = saturate(rho)
    R = rho.semiring
    both = (1 << 0) | (1 << 1)
    assert both in state.opt()
    assert both in tlx_lower(R, [1 << parity.images[0]])
