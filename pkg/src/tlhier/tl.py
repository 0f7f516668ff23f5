"""Unary temporal logic with language-parameterised modalities.

A word w has positions 0 .. |w|+1; position p in 1..|w| carries the letter
w[p-1] while the two endpoints are unlabeled.  ``F[L]{φ}`` holds at i when
some j > i satisfies φ and the letters strictly between i and j form a word
of L.  ``P[L]{φ}`` is the mirror image.  A formula defines the language of
words satisfying it at position 0.

Text syntax::

    T  F  min  max  'a'  !φ  φ & ψ  φ | ψ  (φ)  F[regex]{φ}  P[regex]{φ}

``F{φ}`` and ``P{φ}`` abbreviate the parameter A*.  The compiler turns a
formula into a minimal DFA by building, bottom-up, an automaton over
sentinel-wrapped words whose extra track records where each subformula
holds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import automata as fa
from .automata import Alphabet, Dfa
from .errors import InputError, ResourceLimit

# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Min:
    pass


@dataclass(frozen=True)
class Max:
    pass


@dataclass(frozen=True)
class Letter:
    letter: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Finally:
    lang: Dfa
    arg: "Formula"
    text: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Previously:
    lang: Dfa
    arg: "Formula"
    text: str | None = field(default=None, compare=False)


Formula = Union[Top, Bottom, Min, Max, Letter, Not, And, Or, Finally, Previously]


def depth(phi: Formula) -> int:
    if isinstance(phi, (Finally, Previously)):
        return 1 + depth(phi.arg)
    if isinstance(phi, Not):
        return depth(phi.arg)
    if isinstance(phi, (And, Or)):
        return max(depth(phi.left), depth(phi.right))
    return 0


def parameters(phi: Formula) -> list[Dfa]:
    """Language parameters of all modalities, outermost first."""
    if isinstance(phi, (Finally, Previously)):
        return [phi.lang] + parameters(phi.arg)
    if isinstance(phi, Not):
        return parameters(phi.arg)
    if isinstance(phi, (And, Or)):
        return parameters(phi.left) + parameters(phi.right)
    return []


def to_text(phi: Formula) -> str:
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, Bottom):
        return "F"
    if isinstance(phi, Min):
        return "min"
    if isinstance(phi, Max):
        return "max"
    if isinstance(phi, Letter):
        return f"'{phi.letter}'"
    if isinstance(phi, Not):
        return "!" + _wrap(phi.arg)
    if isinstance(phi, And):
        return f"{_wrap(phi.left)} & {_wrap(phi.right)}"
    if isinstance(phi, Or):
        return f"{_wrap(phi.left)} | {_wrap(phi.right)}"
    op = "F" if isinstance(phi, Finally) else "P"
    if phi.text is None:
        raise InputError("formula parameter has no regex text; use the JSON form")
    return f"{op}[{phi.text}]{{{to_text(phi.arg)}}}"


def _wrap(phi: Formula) -> str:
    s = to_text(phi)
    return f"({s})" if isinstance(phi, (And, Or)) else s


# ---------------------------------------------------------------- parsing

class _FormulaParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, msg):
        from .errors import RegexSyntaxError
        raise RegexSyntaxError(msg, self.pos)

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expect(self, c):
        if self.peek() != c:
            self.error(f"expected {c!r}")
        self.pos += 1

    def parse(self) -> Formula:
        phi = self.disj()
        if self.peek() is not None:
            self.error(f"unexpected {self.text[self.pos]!r}")
        return phi

    def disj(self):
        left = self.conj()
        while self.peek() == "|":
            self.pos += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "&":
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        c = self.peek()
        if c is None:
            self.error("unexpected end of formula")
        if c == "!":
            self.pos += 1
            return Not(self.unary())
        if c == "(":
            self.pos += 1
            phi = self.disj()
            self.expect(")")
            return phi
        if c == "'":
            end = self.text.find("'", self.pos + 1)
            if end < 0:
                self.error("unterminated letter")
            a = self.text[self.pos + 1:end]
            if a not in self.alphabet:
                self.error(f"unknown letter {a!r}")
            self.pos = end + 1
            return Letter(a)
        for word, node in (("min", Min()), ("max", Max())):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return node
        if c in "FP":
            self.pos += 1
            nxt = self.peek()
            if nxt not in ("[", "{"):
                if c == "F":
                    return Bottom()
                self.error("expected '[' or '{' after P")
            text = ".*"
            if nxt == "[":
                end = self.text.find("]", self.pos)
                if end < 0:
                    self.error("unterminated parameter")
                text = self.text[self.pos + 1:end].strip()
                self.pos = end + 1
            lang = fa.regex_dfa(text, self.alphabet)
            self.expect("{")
            arg = self.disj()
            self.expect("}")
            return (Finally if c == "F" else Previously)(lang, arg, text)
        if c == "T":
            self.pos += 1
            return Top()
        self.error(f"unexpected {c!r}")


def parse_formula(text: str, alphabet: Alphabet | Sequence[str] | str) -> Formula:
    return _FormulaParser(text, Alphabet.of(alphabet)).parse()


def formula_to_json(phi: Formula) -> dict:
    if isinstance(phi, (Top, Bottom, Min, Max)):
        return {"op": {Top: "true", Bottom: "false", Min: "min", Max: "max"}[type(phi)]}
    if isinstance(phi, Letter):
        return {"op": "letter", "letter": phi.letter}
    if isinstance(phi, Not):
        return {"op": "not", "arg": formula_to_json(phi.arg)}
    if isinstance(phi, (And, Or)):
        return {"op": "and" if isinstance(phi, And) else "or",
                "left": formula_to_json(phi.left), "right": formula_to_json(phi.right)}
    out = {"op": "finally" if isinstance(phi, Finally) else "previously",
           "arg": formula_to_json(phi.arg)}
    if phi.text is not None:
        out["regex"] = phi.text
    else:
        out["automaton"] = phi.lang.to_json()
    return out


def formula_from_json(data: dict | str, alphabet: Alphabet | Sequence[str] | str) -> Formula:
    if isinstance(data, str):
        data = json.loads(data)
    alphabet = Alphabet.of(alphabet)
    try:
        op = data["op"]
        simple = {"true": Top(), "false": Bottom(), "min": Min(), "max": Max()}
        if op in simple:
            return simple[op]
        if op == "letter":
            if data["letter"] not in alphabet:
                raise InputError(f"unknown letter {data['letter']!r}")
            return Letter(data["letter"])
        if op == "not":
            return Not(formula_from_json(data["arg"], alphabet))
        if op in ("and", "or"):
            cls = And if op == "and" else Or
            return cls(formula_from_json(data["left"], alphabet),
                       formula_from_json(data["right"], alphabet))
        if op in ("finally", "previously"):
            cls = Finally if op == "finally" else Previously
            if "regex" in data:
                lang, text = fa.regex_dfa(data["regex"], alphabet), data["regex"]
            else:
                lang, text = fa.minimize(fa.dfa_from_json(data["automaton"])), None
                if lang.alphabet.letters != alphabet.letters:
                    raise InputError("parameter automaton uses another alphabet")
            return cls(lang, formula_from_json(data["arg"], alphabet), text)
    except KeyError as exc:
        raise InputError(f"malformed formula JSON: missing {exc}") from None
    raise InputError(f"unknown formula operator {op!r}")


# ---------------------------------------------------------------- evaluation

def satisfaction(phi: Formula, w: Sequence[str]) -> list[bool]:
    """Truth value of ``phi`` at every position 0 .. |w|+1 of ``w``."""
    n = len(w)
    if isinstance(phi, Top):
        return [True] * (n + 2)
    if isinstance(phi, Bottom):
        return [False] * (n + 2)
    if isinstance(phi, Min):
        return [i == 0 for i in range(n + 2)]
    if isinstance(phi, Max):
        return [i == n + 1 for i in range(n + 2)]
    if isinstance(phi, Letter):
        return [1 <= i <= n and w[i - 1] == phi.letter for i in range(n + 2)]
    if isinstance(phi, Not):
        return [not x for x in satisfaction(phi.arg, w)]
    if isinstance(phi, And):
        return [x and y for x, y in zip(satisfaction(phi.left, w), satisfaction(phi.right, w))]
    if isinstance(phi, Or):
        return [x or y for x, y in zip(satisfaction(phi.left, w), satisfaction(phi.right, w))]
    sub = satisfaction(phi.arg, w)
    d = phi.lang
    delta, acc, q0 = d.delta, d.accepting, d.initial
    idx = d.alphabet._index
    out = [False] * (n + 2)
    if isinstance(phi, Finally):
        # live = states q such that some j > i has δ(q, infix(i, j)) ∈ F and sub[j]
        live: set[int] = set()
        for i in range(n + 1, -1, -1):
            out[i] = q0 in live
            if i == 0:
                break
            nxt = set(acc) if sub[i] else set()
            if i <= n:
                c = idx[w[i - 1]]
                nxt |= {q for q in range(d.n_states) if int(delta[q, c]) in live}
            live = nxt
        return out
    # Previously: reached = {δ(q0, infix(j, i)) : j < i, sub[j]}
    reached: set[int] = set()
    for i in range(n + 2):
        out[i] = bool(reached & acc)
        nxt = {int(delta[q, idx[w[i - 1]]]) for q in reached} if 1 <= i <= n else set()
        if sub[i]:
            nxt.add(q0)
        reached = nxt
    return out


def evaluate(phi: Formula, w: str | Sequence[str], i: int, alphabet: Alphabet | None = None) -> bool:
    """w, i ⊨ φ."""
    if alphabet is not None:
        w = alphabet.word(w)
    elif isinstance(w, str):
        w = tuple(w)
    if not 0 <= i <= len(w) + 1:
        raise InputError(f"position {i} outside 0..{len(w) + 1}")
    return satisfaction(phi, w)[i]


def language_of(phi: Formula, alphabet: Alphabet | None = None):
    """Membership predicate of the language defined by φ."""
    return lambda w: evaluate(phi, w, 0, alphabet)


# ---------------------------------------------------------------- compilation
#
# A marked automaton over k tracks reads symbols (x, bits) where x indexes
# the alphabet extended with two sentinels and bits is a k-bit mark vector.
# The letter with symbol x and marks b is named "x.b" and has index x*2^k + b.


class _Marked:
    def __init__(self, alphabet: Alphabet, state_cap: int):
        self.base = alphabet
        self.n_sym = len(alphabet) + 2
        self.left = len(alphabet)
        self.right = len(alphabet) + 1
        self.state_cap = state_cap
        self._alph: dict[int, Alphabet] = {}

    def alphabet(self, k: int) -> Alphabet:
        if k not in self._alph:
            self._alph[k] = Alphabet(tuple(f"{x}.{b}" for x in range(self.n_sym)
                                           for b in range(1 << k)))
        return self._alph[k]

    def local(self, pred) -> Dfa:
        """Sentinel-wrapped words with one mark track where mark(p) = pred(symbol)."""
        k = 1
        rows = np.full((4, self.n_sym << k), 3, dtype=np.int64)
        for x in range(self.n_sym):
            for b in range(2):
                c = (x << k) | b
                if b != int(pred(x)):
                    continue
                if x == self.left:
                    rows[0, c] = 1
                elif x == self.right:
                    rows[1, c] = 2
                else:
                    rows[1, c] = 1
        return Dfa(self.alphabet(k), rows, 0, [2])

    def lift(self, d: Dfa, k: int, tracks: Sequence[int]) -> Dfa:
        """View a one-track automaton as a k-track one reading the given tracks."""
        src = self.alphabet(len(tracks))
        dst = self.alphabet(k)
        cols = []
        for x in range(self.n_sym):
            for b in range(1 << k):
                sb = 0
                for j, t in enumerate(tracks):
                    sb |= ((b >> t) & 1) << j
                cols.append(src.index(f"{x}.{sb}"))
        return Dfa(dst, d.delta[:, cols], d.initial, d.accepting)

    def project(self, d: Dfa, k: int, keep: int) -> Dfa:
        """Keep only track ``keep`` of a k-track automaton, then determinize."""
        dst = self.alphabet(1)
        src = self.alphabet(k)
        mapping = {f"{x}.{b}": f"{x}.{(b >> keep) & 1}"
                   for x in range(self.n_sym) for b in range(1 << k)}
        assert len(mapping) == len(src)
        nfa = fa.letter_image(d, dst, mapping.__getitem__)
        return fa.minimize(fa.determinize(nfa, self.state_cap))

    def check(self, d: Dfa) -> Dfa:
        if d.n_states > self.state_cap:
            raise ResourceLimit(f"compiled automaton exceeds {self.state_cap} states")
        return d

    def consistency(self, k: int, start, step) -> Dfa:
        """Deterministic checker over k=2 tracks (sub-mark track 0, own mark track 1).

        ``step(state, x, sub_mark, mark)`` returns the next state or None.
        """
        alph = self.alphabet(k)
        index = {start: 0}
        order = [start]
        rows = []
        i = 0
        while i < len(order):
            st = order[i]
            row = []
            for x in range(self.n_sym):
                for b in range(1 << k):
                    nxt = step(st, x, b & 1, (b >> 1) & 1)
                    if nxt is None:
                        nxt = "sink"
                    j = index.get(nxt)
                    if j is None:
                        j = index[nxt] = len(order)
                        order.append(nxt)
                        if len(order) > self.state_cap:
                            raise ResourceLimit("consistency automaton too large")
                    row.append(j)
            rows.append(row)
            i += 1
        acc = [j for j, s in enumerate(order) if s != "sink"]
        return Dfa(alph, np.array(rows, dtype=np.int64), 0, acc)


def _future_checker(mk: _Marked, lang: Dfa) -> Dfa:
    """Reverse-reading checker for F[lang]: mark(i) ⇔ q0 ∈ S(i)."""
    delta = lang.delta
    nq = lang.n_states
    acc_mask = sum(1 << q for q in lang.accepting)
    q0 = lang.initial
    n_letters = len(mk.base)

    def pre(mask: int, x: int) -> int:
        return sum(1 << q for q in range(nq) if (mask >> int(delta[q, x])) & 1)

    def step(st, x, sub, mark):
        if st == "sink":
            return None
        if st == "start":
            s = 0
        else:
            s_next, sub_next, x_next = st
            s = acc_mask if sub_next else 0
            if x_next < n_letters:
                s |= pre(s_next, x_next)
        if bool((s >> q0) & 1) != bool(mark):
            return None
        return (s, sub, x)

    return mk.consistency(2, "start", step)


def _past_checker(mk: _Marked, lang: Dfa) -> Dfa:
    """Forward checker for P[lang]: mark(i) ⇔ T(i) ∩ F ≠ ∅."""
    delta = lang.delta
    nq = lang.n_states
    acc_mask = sum(1 << q for q in lang.accepting)
    q0 = lang.initial
    n_letters = len(mk.base)

    def step(st, x, sub, mark):
        if st == "sink":
            return None
        if bool(st & acc_mask) != bool(mark):
            return None
        nxt = 0
        if x < n_letters:
            for q in range(nq):
                if (st >> q) & 1:
                    nxt |= 1 << int(delta[q, x])
        if sub:
            nxt |= 1 << q0
        return nxt

    return mk.consistency(2, 0, step)


def _reverse_dfa(d: Dfa, state_cap: int) -> Dfa:
    trans = [(int(d.delta[q, i]), a, q) for q in range(d.n_states)
             for i, a in enumerate(d.alphabet.letters)]
    nfa = fa.Nfa(d.alphabet, d.n_states, frozenset(d.accepting), frozenset(trans),
                 frozenset([d.initial]))
    return fa.minimize(fa.determinize(nfa, state_cap))


def compile_marked(phi: Formula, alphabet: Alphabet, state_cap: int = fa.DEFAULT_STATE_CAP) -> Dfa:
    """Marked automaton of φ: accepts ◁w▷ decorated with the positions satisfying φ."""
    mk = _Marked(alphabet, state_cap)
    cache: dict = {}

    def go(psi: Formula) -> Dfa:
        if psi in cache:
            return cache[psi]
        if isinstance(psi, Top):
            out = mk.local(lambda x: True)
        elif isinstance(psi, Bottom):
            out = mk.local(lambda x: False)
        elif isinstance(psi, Min):
            out = mk.local(lambda x: x == mk.left)
        elif isinstance(psi, Max):
            out = mk.local(lambda x: x == mk.right)
        elif isinstance(psi, Letter):
            c = alphabet.index(psi.letter)
            out = mk.local(lambda x: x == c)
        elif isinstance(psi, Not):
            child = go(psi.arg)
            flip = [child.alphabet.index(f"{x}.{1 - b}") for x in range(mk.n_sym) for b in range(2)]
            out = fa.minimize(Dfa(child.alphabet, child.delta[:, flip], child.initial, child.accepting))
        elif isinstance(psi, (And, Or)):
            g1 = mk.lift(go(psi.left), 3, [0])
            g2 = mk.lift(go(psi.right), 3, [1])
            op = (lambda u, v: u & v) if isinstance(psi, And) else (lambda u, v: u | v)
            glue = _bool_glue(mk, op)
            both = fa.product(fa.product(g1, g2, "and"), glue, "and")
            out = mk.project(both, 3, 2)
        else:
            if psi.lang.alphabet.letters != alphabet.letters:
                raise InputError("modality parameter uses another alphabet")
            sub = mk.lift(go(psi.arg), 2, [0])
            if isinstance(psi, Finally):
                checker = _reverse_dfa(_future_checker(mk, psi.lang), state_cap)
            else:
                checker = _past_checker(mk, psi.lang)
            out = mk.project(fa.product(sub, checker, "and"), 2, 1)
        cache[psi] = mk.check(out)
        return cache[psi]

    return go(phi)


def _bool_glue(mk: _Marked, op) -> Dfa:
    """Three-track automaton enforcing mark2 = op(mark0, mark1) everywhere."""
    alph = mk.alphabet(3)
    row = [0 if ((b >> 2) & 1) == op(b & 1, (b >> 1) & 1) else 1
           for x in range(mk.n_sym) for b in range(8)]
    return Dfa(alph, [row, [1] * len(row)], 0, [0])


def compile_formula(phi: Formula, alphabet: Alphabet | Sequence[str] | str,
                    state_cap: int = fa.DEFAULT_STATE_CAP) -> Dfa:
    """Minimal DFA of L(φ) = {w : w, 0 ⊨ φ}."""
    alphabet = Alphabet.of(alphabet)
    g = compile_marked(phi, alphabet, state_cap)
    mk = _Marked(alphabet, state_cap)
    start = g.step(g.initial, f"{mk.left}.1")
    right = [g.alphabet.index(f"{mk.right}.{b}") for b in range(2)]
    trans = set()
    for q in range(g.n_states):
        for i, a in enumerate(alphabet.letters):
            for b in range(2):
                trans.add((q, a, int(g.delta[q, g.alphabet.index(f"{i}.{b}")])))
    acc = [q for q in range(g.n_states) if any(int(g.delta[q, c]) in g.accepting for c in right)]
    nfa = fa.Nfa(alphabet, g.n_states, frozenset([start]), frozenset(trans), frozenset(acc))
    return fa.minimize(fa.determinize(nfa, state_cap))


compile = compile_formula
