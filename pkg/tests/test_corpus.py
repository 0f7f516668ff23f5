import json

import pytest

from tlhier.automata import Alphabet, equivalent, intersect, is_empty, regex_dfa
from tlhier.corpus import (FAMILIES, brzozowski_knast, build, encode_beta, encode_delta_gamma, fixtures,
                           kn_language, level_alphabet, ln_language, uv_languages)
from tlhier.errors import InputError, ResourceLimit
from tlhier.membership import decide_membership
from tlhier.saturation import decide_separation

AB = Alphabet.of("ab")

H_REGEX = ["~", "(ab)*", "(a(ab)*b)*", "(a(a(ab)*b)*b)*"]

# hand unfolded U_k and V_k over A_k, written with explicit letters
U_REGEX = ["~", "(l1 l0+)*", "(l2 (l1 l0+)* l1 (l1 l0+)*)*"]
V_REGEX = ["l0+", "(l1 l0+)* l1 (l1 l0+)*",
           "(l2 (l1 l0+)* l1 (l1 l0+)*)* l2 (l1 l0+)* (l2 (l1 l0+)* l1 (l1 l0+)*)*"]


def beta_regex(k, text):
    for i in range(k, -1, -1):
        text = text.replace(f"l{i}", "(" + "a" * i + "b" + "a" * (k - i) + ")")
    return text.replace(" ", "")


def delta_gamma_regex(k, text):
    for i in range(k, -1, -1):
        text = text.replace(f"l{i}", "(b" + "a" * (i + 1) + "b*)")
    return "b*(" + text.replace(" ", "") + ")"


@pytest.mark.parametrize("n", range(4))
def test_h_family(n):
    assert equivalent(brzozowski_knast(n), regex_dfa(H_REGEX[n], AB))
    assert brzozowski_knast(n).n_states == n + 2


@pytest.mark.parametrize("k", range(3))
def test_uv_family(k):
    A = level_alphabet(k)
    u, v = uv_languages(k)
    assert equivalent(u, regex_dfa(U_REGEX[k], A))
    assert equivalent(v, regex_dfa(V_REGEX[k], A))
    assert is_empty(intersect(u, v))


@pytest.mark.parametrize("k", range(3))
def test_encodings_commute_with_regex(k):
    u, _ = uv_languages(k)
    assert equivalent(encode_beta(k, u), regex_dfa(beta_regex(k, U_REGEX[k]), AB))
    assert equivalent(encode_delta_gamma(k, u), regex_dfa(delta_gamma_regex(k, U_REGEX[k]), AB))


def test_encoding_examples():
    A1 = level_alphabet(1)
    word = regex_dfa("l0 l1", A1)
    assert equivalent(encode_beta(1, word), regex_dfa("baab", AB))
    assert equivalent(encode_delta_gamma(1, regex_dfa("~", A1)), regex_dfa("b*", AB))
    assert encode_beta(1, uv_languages(1)[0]).accepts("abba")


def test_k_and_l_families():
    assert equivalent(kn_language(0), regex_dfa("~", AB))
    assert equivalent(ln_language(0), regex_dfa("a*", AB))
    x = ["ab", "abb", "abbb", "abbbb"]
    assert kn_language(1).accepts(x[0] + x[1] + x[0] + x[2] + x[3] + x[2])
    q = "(ab)+(abb)+(ab)"
    r = "(abbb)+(abbbb)+(abbb)"
    assert equivalent(kn_language(1), regex_dfa(f"({q}{r})*", AB))
    y = ["a+b", "a+bb", "a+bbb", "a+bbbb"]
    s = f"({y[0]})+({y[1]})+({y[0]})"
    t = f"({y[2]})+({y[3]})+({y[2]})"
    assert equivalent(ln_language(1), regex_dfa(f"(a|{s}a*{t})*", AB))


def test_level_two_membership_and_separation():
    for k in range(3):
        u, v = uv_languages(k)
        assert decide_membership(u, "tl2-st").member is True
        assert decide_membership(v, "tl2-st").member is True
    for k in range(1, 3):
        u, v = uv_languages(k)
        assert decide_separation(u, v).result == "separable"


def test_guards_and_errors():
    with pytest.raises(ResourceLimit):
        brzozowski_knast(7)
    with pytest.raises(ResourceLimit):
        build("K", 3)
    with pytest.raises(InputError):
        build("Z", 1)
    with pytest.raises(InputError):
        encode_beta(1, regex_dfa("a", AB))


def test_build_entries():
    for family in FAMILIES:
        entry = build(family, 1)
        out = json.loads(json.dumps(entry.to_json()))
        assert out["format"] == "tlhier/1" and out["family"] == family
        assert entry.dfa.n_states >= 1
    assert build("U", 2).asserted        # facts that no procedure here checks


def test_fixtures_are_small_and_named():
    fx = fixtures(max_states=8)
    assert len(fx) >= 20
    assert all(d.n_states <= 8 for d in fx.values())
    assert {"parity", "ab_star", "H1", "U1"} <= set(fx)
