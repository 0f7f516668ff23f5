import numpy as np
import pytest

from tlhier.algebra import (Monoid, brute_force_congruence, content_morphism, context_congruence, idempotents,
                            omega_exponent, preimage_dfa, product_morphism, recognized_from_json,
                            syntactic_morphism, transition_monoid, value_set)
from tlhier.automata import Alphabet, equivalent, regex_dfa
from tlhier.errors import InputError, ResourceLimit

from conftest import random_dfa

AB = Alphabet.of("ab")


def check_against_congruence(d, max_len=8):
    """Monoid elements must be exactly the classes of the brute-force
    congruence, and products of representatives must land in the right class."""
    rec = syntactic_morphism(d)
    alpha = rec.morphism
    classes = brute_force_congruence(d, max_len)
    assert len(classes) == rec.monoid.size
    element_of = {}
    for words in classes.values():
        images = {alpha(w) for w in words}
        assert len(images) == 1
        (x,) = images
        assert x not in element_of.values()
        for w in words:
            element_of[w] = x
    reps = alpha.representatives()
    for x in range(rec.monoid.size):
        for y in range(rec.monoid.size):
            uv = reps[x] + reps[y]
            if len(uv) <= max_len:
                assert element_of[uv] == rec.monoid.mul(x, y)
    return rec


def test_textbook_sizes():
    assert syntactic_morphism(regex_dfa("(ab)*", AB)).monoid.size == 6
    assert syntactic_morphism(regex_dfa("(aa)*", "a")).monoid.size == 2
    assert syntactic_morphism(regex_dfa(".*a.*", AB)).monoid.size == 2


def test_corpus_against_congruence(corpus):
    for name, d in corpus.items():
        check_against_congruence(d)


def test_random_against_congruence(rng):
    for _ in range(25):
        check_against_congruence(random_dfa(rng, 4))


def test_syntactic_equals_context_congruence():
    d = regex_dfa("a(ab)*b*", AB)
    rec = syntactic_morphism(d)
    assert len(context_congruence(d, 5, 4)) == rec.monoid.size


def test_recognition():
    d = regex_dfa("(a|b)*ab(a|b)*b", AB)
    rec = syntactic_morphism(d)
    for w in AB.words(7):
        assert rec.accepts(w) == d.accepts(w)
    assert equivalent(preimage_dfa(rec.morphism, rec.accepting), d)


def test_identity_and_order():
    alpha = syntactic_morphism(regex_dfa("ab", AB)).morphism
    m = alpha.monoid
    assert alpha(()) == m.identity == 0
    # x·y means "x then y"
    assert alpha("ab") == m.mul(alpha.letter("a"), alpha.letter("b"))
    assert alpha("ab") != alpha("ba")


def test_omega_powers():
    m = syntactic_morphism(regex_dfa("(aaa)*", "a")).monoid
    e = omega_exponent(m)
    for s in range(m.size):
        w = int(m.omega_table[s])
        assert m.is_idempotent(w)
        assert m.power(s, e) == w
    assert len(idempotents(m)) == 1


def test_index_period():
    m = syntactic_morphism(regex_dfa("aa(aaa)*", "a")).monoid
    a = 1
    t, p = m.index_period(a)
    assert m.power(a, t + p) == m.power(a, t)
    assert p == 3


def test_monoid_validation():
    with pytest.raises(InputError):
        Monoid([[0, 1], [1, 2]])
    with pytest.raises(InputError):
        Monoid([[1, 0], [0, 1]])        # element 0 is not an identity
    with pytest.raises(InputError):
        Monoid([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_guard():
    with pytest.raises(ResourceLimit):
        transition_monoid(regex_dfa("((a|b)(a|b)(a|b)(a|b)(a|b))*", AB), max_size=3)


def test_value_set_and_product():
    alpha = syntactic_morphism(regex_dfa("(ab)*", AB)).morphism
    assert value_set(alpha, regex_dfa("(ab)+", AB)) == {alpha("ab")}
    prod, index = product_morphism(alpha, content_morphism(AB))
    assert prod.monoid.size == len(index)
    for w in AB.words(5):
        assert prod(w) == index[(alpha(w), content_morphism(AB)(w))]


def test_json_round_trip():
    rec = syntactic_morphism(regex_dfa("a*b", AB))
    back = recognized_from_json(rec.to_json())
    assert back.monoid == rec.monoid
    assert all(back.accepts(w) == rec.accepts(w) for w in AB.words(5))


def test_content_morphism_is_union():
    eta = content_morphism(Alphabet.of("abc"))
    assert eta("abba") == 0b011
    assert eta("cc") == 0b100
    assert np.array_equal(eta.monoid.mult, np.bitwise_or.outer(np.arange(8), np.arange(8)))
