import pytest

from tlhier.algebra import syntactic_morphism
from tlhier.automata import Alphabet, regex_dfa
from tlhier.cpairs import PairSet, at_pairs, st_pairs
from tlhier.errors import BaseUnsupported, InputError
from tlhier.membership import (ClassName, check_eq_ipol2, check_eq_tl, class_name, decide_membership,
                               is_aperiodic)

AB = Alphabet.of("ab")

TABLE = [
    ("(aa)*", "a", {"sf": False, "tl-st": False, "tl-mod": True, "tl2-st": False}),
    ("(ab)*", "ab", {"sf": True, "tl-st": False, "tlx": True, "tl2-st": True}),
    (".*a.*", "ab", {"tl-st": True}),
    ("a.*", "ab", {"tlx": True}),
]


@pytest.mark.parametrize("regex,letters,expected", TABLE)
def test_membership_table(regex, letters, expected):
    d = regex_dfa(regex, letters)
    for klass, want in expected.items():
        assert decide_membership(d, klass).member is want, klass


def test_more_classes():
    # the first letter is visible without successor, a factor aa is not
    assert decide_membership(regex_dfa("a.*", AB), "tl-st").member is True
    assert decide_membership(regex_dfa(".*aa.*", AB), "tl-st").member is False
    # the AT parameter {ε} acts as a successor step
    assert decide_membership(regex_dfa(".*aa.*", AB), "tl2-st").member is True
    assert decide_membership(regex_dfa(".*aa.*", AB), "ipol2-st").member is False
    assert decide_membership(regex_dfa(".*aa.*", AB), "tlx").member is True
    assert decide_membership(regex_dfa("((a|b)(a|b))*", AB), "tl-mod").member is True
    assert decide_membership(regex_dfa("((a|b)(a|b))*", AB), "tl2-st").member is False


def test_tl_implies_sf():
    for regex in ["(ab)*", ".*a.*b.*", "a*b*", "!(.*bb.*)", "(a|bb)*"]:
        d = regex_dfa(regex, AB)
        for klass in ("tl-st", "tlx", "tl2-st"):
            if decide_membership(d, klass).member:
                assert decide_membership(d, "sf").member, (regex, klass)


def test_hierarchy_inclusions(corpus):
    for name, d in corpus.items():
        tl1 = decide_membership(d, "tl-st").member
        tl2 = decide_membership(d, "tl2-st").member
        if tl1:
            assert tl2, name


def test_witness_words_for_failures():
    res = decide_membership(regex_dfa("(ab)*", AB), "tl-st")
    assert res.member is False
    e, s, t = res.witness
    assert set(res.witness_words) == {"e", "s", "t"}
    cert = res.to_json()["certificate"]
    assert cert["e"] == e and cert["s"] == s and cert["t"] == t


def test_parity_is_not_aperiodic():
    res = decide_membership(regex_dfa("(aa)*", "a"), "sf")
    assert res.member is False and res.witness is not None
    assert is_aperiodic(syntactic_morphism(regex_dfa("(ab)*", AB)).monoid)


def test_equations_are_monotone_in_pairs():
    m = syntactic_morphism(regex_dfa("(ab)*", AB))
    full, small = st_pairs(m.morphism), at_pairs(m.morphism)
    assert set(small) < set(full)
    assert check_eq_tl(m.monoid, small) and not check_eq_tl(m.monoid, full)
    assert check_eq_tl(m.monoid, PairSet(m.monoid.size, frozenset()))
    assert not check_eq_ipol2(m.monoid, full)


def test_class_names():
    assert class_name("TL_ST") is ClassName.TL_ST
    assert class_name("tl-at") is ClassName.TL2_ST
    with pytest.raises(BaseUnsupported):
        class_name("tl-gr")
    with pytest.raises(InputError):
        class_name("nope")


def test_tl3_small_cases():
    assert decide_membership(regex_dfa("(ab)*", AB), "tl3-st").member is True
    assert decide_membership(regex_dfa("(aa)*", "a"), "tl3-st").member is False
    assert decide_membership(regex_dfa(".*a.*", AB), "tl3-st").member is True


def test_json_shape():
    out = decide_membership(regex_dfa(".*a.*", AB), "tl-st").to_json()
    assert out == {"class": "tl-st", "member": True, "monoid_size": 2, "certificate": "equation verified"}


@pytest.mark.slow
def test_tl3_on_nested_stars():
    from tlhier.corpus import brzozowski_knast
    from tlhier.saturation import tlat_pairs

    h2 = brzozowski_knast(2)
    # the pair computation stays partial here, but the widest pair set already passes
    assert tlat_pairs(syntactic_morphism(h2).morphism).partial
    assert decide_membership(h2, "tl3-st").member is True
    assert decide_membership(brzozowski_knast(3), "tl3-st").member is False
