"""Witness languages used as fixtures and hard instances.

Every family is built from DFA operations (concatenation, star, union,
substitution).  The tests rebuild the same languages from regular
expressions and check equivalence, so the two constructions guard each
other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .automata import (Alphabet, Dfa, concat, minimize, plus, regex_dfa, star, substitute, union,
                       intersect, is_empty)
from .errors import InputError, ResourceLimit

AB = Alphabet.of("ab")
FAMILIES = ("H", "K", "L", "U", "V", "betaU", "deltaGammaU")
LIMITS = {"H": 6, "K": 2, "L": 2, "U": 3, "V": 3, "betaU": 3, "deltaGammaU": 3}


@dataclass(frozen=True)
class CorpusParams:
    family: str
    index: int
    alphabet: Alphabet


@dataclass
class CorpusEntry:
    params: CorpusParams
    dfa: Dfa
    # facts stated for the family that no procedure in this package checks
    asserted: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"format": "tlhier/1", "family": self.params.family, "index": self.params.index,
                "alphabet": list(self.params.alphabet.letters), "dfa": self.dfa.to_json(),
                "asserted": list(self.asserted)}


def _guard(family: str, n: int) -> None:
    if n < 0:
        raise InputError("index must be non-negative")
    if n > LIMITS[family]:
        raise ResourceLimit(f"family {family} is limited to index <= {LIMITS[family]}")


def _word(text: str) -> Dfa:
    return regex_dfa(text, AB)


def _seq(*ds: Dfa) -> Dfa:
    out = ds[0]
    for d in ds[1:]:
        out = concat(out, d)
    return out


def brzozowski_knast(n: int) -> Dfa:
    """H_0 = {ε}, H_n = (a H_{n-1} b)*."""
    _guard("H", n)
    h = _word("~")
    for _ in range(n):
        h = star(_seq(_word("a"), h, _word("b")))
    return h


def x_word(i: int) -> Dfa:
    """{a b^i}."""
    return _word("a" + "b" * i)


def y_lang(i: int) -> Dfa:
    """a⁺ b^i."""
    return _seq(plus(_word("a")), _word("b" * i) if i else _word("~"))


def _block(first, second) -> Dfa:
    return _seq(plus(first), plus(second), first)


def kn_language(n: int) -> Dfa:
    """K_0 = {ε}, K_n = (Q K_{n-1} R)* with Q = x₁⁺x₂⁺x₁ and R = x₃⁺x₄⁺x₃."""
    _guard("K", n)
    q = _block(x_word(1), x_word(2))
    r = _block(x_word(3), x_word(4))
    k = _word("~")
    for _ in range(n):
        k = star(_seq(q, k, r))
    return k


def ln_language(n: int) -> Dfa:
    """L_0 = a*, L_n = (a + S L_{n-1} T)* with S = Y₁⁺Y₂⁺Y₁ and T = Y₃⁺Y₄⁺Y₃."""
    _guard("L", n)
    s = _block(y_lang(1), y_lang(2))
    t = _block(y_lang(3), y_lang(4))
    lang = _word("a*")
    for _ in range(n):
        lang = star(union(_word("a"), _seq(s, lang, t)))
    return lang


def level_alphabet(k: int) -> Alphabet:
    """A_k = {l0, ..., lk}."""
    return Alphabet(tuple(f"l{i}" for i in range(k + 1)))


def uv_languages(k: int) -> tuple[Dfa, Dfa]:
    """(U_k, V_k) over A_k.

    U_0 = {ε}, V_0 = l0⁺, U_k = (l_k V_{k-1})*,
    V_k = (l_k V_{k-1})* l_k U_{k-1} (l_k V_{k-1})*.
    """
    _guard("U", k)
    A = level_alphabet(k)
    u, v = regex_dfa("~", A), regex_dfa("l0+", A)
    for j in range(1, k + 1):
        lj = regex_dfa(f"l{j}", A)
        loop = star(concat(lj, v))
        u, v = loop, _seq(loop, lj, u, loop)
    if not is_empty(intersect(u, v)):
        raise AssertionError("U_k and V_k must be disjoint")
    return u, v


def beta_block(k: int, i: int) -> str:
    return "a" * i + "b" + "a" * (k - i)


def encode_beta(k: int, lang: Dfa) -> Dfa:
    """β_k(L) over {a, b} with l_i ↦ a^i b a^(k-i)."""
    _guard("betaU", k)
    _check_level(k, lang)
    return substitute(lang, AB, {f"l{i}": beta_block(k, i) for i in range(k + 1)})


def encode_delta_gamma(k: int, lang: Dfa) -> Dfa:
    """δ_k(γ_k⁻¹(L)): insert b's anywhere, then l_i ↦ b a^(i+1) and b ↦ b."""
    _guard("deltaGammaU", k)
    _check_level(k, lang)
    wide = Alphabet(lang.alphabet.letters + ("b",))
    loops = np.arange(lang.n_states, dtype=np.int64)[:, None]
    padded = Dfa(wide, np.hstack([lang.delta, loops]), lang.initial, lang.accepting)
    blocks = {f"l{i}": "b" + "a" * (i + 1) for i in range(k + 1)}
    blocks["b"] = "b"
    return substitute(padded, AB, blocks)


def _check_level(k: int, lang: Dfa) -> None:
    if lang.alphabet.letters != level_alphabet(k).letters:
        raise InputError(f"expected a language over {','.join(level_alphabet(k).letters)}")


def build(family: str, n: int) -> CorpusEntry:
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    _guard(family, n)
    notes: list[str] = []
    if family == "H":
        d = brzozowski_knast(n)
    elif family == "K":
        d = kn_language(n)
        notes.append(f"K_{n} lies outside level {n} of the TL hierarchy over GR")
    elif family == "L":
        d = ln_language(n)
    elif family in ("U", "V"):
        u, v = uv_languages(n)
        d = u if family == "U" else v
        notes.append(f"{family}_{n} lies outside Pol^{n + 1}(ST)")
    else:
        u, _ = uv_languages(n)
        d = encode_beta(n, u) if family == "betaU" else encode_delta_gamma(n, u)
    return CorpusEntry(CorpusParams(family, n, d.alphabet), minimize(d), notes)


def fixtures(max_states: int = 8) -> dict[str, Dfa]:
    """Named small DFAs: corpus members plus classic textbook examples."""
    out = {
        "parity": regex_dfa("(aa)*", "a"),
        "a_plus": regex_dfa("a+", "a"),
        "ab_star": regex_dfa("(ab)*", AB),
        "contains_a": regex_dfa(".*a.*", AB),
        "starts_a": regex_dfa("a.*", AB),
        "ends_ab": regex_dfa(".*ab", AB),
        "no_bb": regex_dfa("!(.*bb.*)", AB),
        "even_b": regex_dfa("(a*ba*b)*a*", AB),
        "a_before_b": regex_dfa(".*a.*b.*", AB),
        "len_mod_3": regex_dfa("((a|b)(a|b)(a|b))*", AB),
        "abc_content": regex_dfa(".*a.*&.*c.*", "abc"),
    }
    for n in range(0, 4):
        out[f"H{n}"] = brzozowski_knast(n)
    out["K0"] = kn_language(0)
    out["L0"] = ln_language(0)
    for k in (0, 1):
        u, v = uv_languages(k)
        out[f"U{k}"], out[f"V{k}"] = u, v
        out[f"betaU{k}"] = encode_beta(k, u)
    out["deltaGammaU0"] = encode_delta_gamma(0, uv_languages(0)[0])
    return {name: d for name, d in out.items() if d.n_states <= max_states}
