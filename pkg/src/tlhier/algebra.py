"""Finite monoids, morphisms from free monoids and syntactic morphisms.

Elements of a :class:`Monoid` are the integers ``0 .. size-1`` and the
multiplication is a numpy table.  Monoids computed from automata number
their elements by first discovery in breadth-first word order, so the
identity is always element 0 and letters come next in alphabet order.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .automata import Alphabet, Dfa, Word, minimize
from .errors import AlphabetMismatch, InputError, ResourceLimit

OMEGA_CAP = 10**6


class Monoid:
    """A finite monoid given by its multiplication table."""

    def __init__(self, mult, identity: int = 0, validate: bool = True):
        mult = np.array(mult, dtype=np.int64)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or mult.shape[0] == 0:
            raise InputError("multiplication table must be a non-empty square")
        n = mult.shape[0]
        if mult.min() < 0 or mult.max() >= n:
            raise InputError("multiplication table has out-of-range entries")
        if not 0 <= identity < n:
            raise InputError("identity out of range")
        mult.setflags(write=False)
        self.mult = mult
        self.identity = int(identity)
        self._omega: np.ndarray | None = None
        if validate:
            self.validate()

    @property
    def size(self) -> int:
        return self.mult.shape[0]

    def validate(self) -> None:
        m, e, n = self.mult, self.identity, self.size
        if not (np.array_equal(m[e], np.arange(n)) and np.array_equal(m[:, e], np.arange(n))):
            raise InputError("identity laws fail")
        left = m[m]                                             # m[m[a, b], c]
        right = m[np.arange(n)[:, None, None], m[None, :, :]]  # m[a, m[b, c]]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise InputError(f"multiplication is not associative at {tuple(int(x) for x in bad)}")

    def mul(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = int(self.mult[out, x])
        return out

    def power(self, s: int, k: int) -> int:
        out = self.identity
        base = s
        while k:
            if k & 1:
                out = int(self.mult[out, base])
            base = int(self.mult[base, base])
            k >>= 1
        return out

    def index_period(self, s: int) -> tuple[int, int]:
        """Threshold t and period p with s^(t+p) = s^t, both minimal, t >= 1."""
        seen = {}
        x = s
        k = 1
        while x not in seen:
            seen[x] = k
            x = int(self.mult[x, s])
            k += 1
        t = seen[x]
        return t, k - t

    def is_idempotent(self, s: int) -> bool:
        return int(self.mult[s, s]) == s

    @property
    def omega_table(self) -> np.ndarray:
        """Vector of ω-powers: omega_table[s] is the idempotent power of s."""
        if self._omega is None:
            om = np.empty(self.size, dtype=np.int64)
            for s in range(self.size):
                x = s
                while int(self.mult[x, x]) != x:
                    x = int(self.mult[x, s])
                om[s] = x
            om.setflags(write=False)
            self._omega = om
        return self._omega

    def to_json(self) -> dict:
        return {"size": self.size, "identity": self.identity, "mult": self.mult.tolist()}

    def __eq__(self, other) -> bool:
        return (isinstance(other, Monoid) and self.identity == other.identity
                and np.array_equal(self.mult, other.mult))

    def __hash__(self) -> int:
        return hash((self.identity, self.mult.tobytes()))

    def __repr__(self) -> str:
        return f"Monoid(size={self.size})"


def idempotents(m: Monoid) -> list[int]:
    return [int(s) for s in np.flatnonzero(m.mult[np.arange(m.size), np.arange(m.size)]
                                            == np.arange(m.size))]


def omega_power(m: Monoid, s: int) -> int:
    return int(m.omega_table[s])


def omega_exponent(m: Monoid) -> int:
    """Least k >= 1 such that s^k is idempotent for every element s."""
    period = 1
    threshold = 1
    for s in range(m.size):
        t, p = m.index_period(s)
        period = math.lcm(period, p)
        threshold = max(threshold, t)
        if period > OMEGA_CAP:
            raise ResourceLimit(f"ω exponent exceeds {OMEGA_CAP}")
    k = period * math.ceil(threshold / period)
    if k > OMEGA_CAP:
        raise ResourceLimit(f"ω exponent exceeds {OMEGA_CAP}")
    return k


class Morphism:
    """A morphism A* -> M given by the images of the letters."""

    def __init__(self, alphabet: Alphabet, monoid: Monoid, letter_image: dict[str, int] | Sequence[int]):
        self.alphabet = alphabet
        self.monoid = monoid
        if isinstance(letter_image, dict):
            try:
                images = [int(letter_image[a]) for a in alphabet.letters]
            except KeyError as exc:
                raise InputError(f"no image for letter {exc}") from None
        else:
            images = [int(x) for x in letter_image]
        if len(images) != len(alphabet) or any(not 0 <= x < monoid.size for x in images):
            raise InputError("letter images do not match the alphabet or monoid")
        self.images = tuple(images)
        self._words: list[Word | None] | None = None

    def letter(self, a: str) -> int:
        return self.images[self.alphabet.index(a)]

    def __call__(self, w: str | Sequence[str]) -> int:
        x = self.monoid.identity
        idx = self.alphabet._index
        mult = self.monoid.mult
        for a in self.alphabet.word(w):
            x = int(mult[x, self.images[idx[a]]])
        return x

    def image(self) -> list[int]:
        """Elements with a non-empty preimage, in discovery order."""
        return [s for s, w in enumerate(self.representatives()) if w is not None]

    def is_surjective(self) -> bool:
        return all(w is not None for w in self.representatives())

    def representatives(self) -> list[Word | None]:
        """For each element, a shortest (length-lex least) preimage word or None."""
        if self._words is None:
            words: list[Word | None] = [None] * self.monoid.size
            words[self.monoid.identity] = ()
            queue = deque([self.monoid.identity])
            while queue:
                x = queue.popleft()
                for a, g in zip(self.alphabet.letters, self.images):
                    y = int(self.monoid.mult[x, g])
                    if words[y] is None:
                        words[y] = words[x] + (a,)
                        queue.append(y)
            self._words = words
        return self._words

    def nonempty_image(self) -> set[int]:
        """Elements α(w) for non-empty words w."""
        seen = set(self.images)
        stack = list(seen)
        while stack:
            x = stack.pop()
            for g in self.images:
                y = int(self.monoid.mult[x, g])
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def to_json(self) -> dict:
        out = self.monoid.to_json()
        out["alphabet"] = list(self.alphabet.letters)
        out["letter_image"] = dict(zip(self.alphabet.letters, self.images))
        return out


@dataclass(frozen=True)
class RecognizedLanguage:
    morphism: Morphism
    accepting: frozenset[int]

    @property
    def monoid(self) -> Monoid:
        return self.morphism.monoid

    def accepts(self, w) -> bool:
        return self.morphism(w) in self.accepting

    def to_json(self) -> dict:
        out = self.morphism.to_json()
        out["accepting"] = sorted(self.accepting)
        return out


def recognized_from_json(data: dict) -> RecognizedLanguage:
    try:
        monoid = Monoid(data["mult"], data.get("identity", 0))
        alphabet = Alphabet.of(data["alphabet"] if "alphabet" in data else list(data["letter_image"]))
        morph = Morphism(alphabet, monoid, data["letter_image"])
        acc = frozenset(int(x) for x in data.get("accepting", []))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed monoid JSON: {exc}") from None
    return RecognizedLanguage(morph, acc)


def transition_monoid(d: Dfa, max_size: int | None = None) -> Morphism:
    """Transition monoid of ``d`` with the morphism sending a letter to its action.

    Elements are state transformations discovered in breadth-first order;
    the result is surjective by construction.
    """
    n, k = d.n_states, len(d.alphabet)
    letters = [np.ascontiguousarray(d.delta[:, c]) for c in range(k)]
    ident = np.arange(n, dtype=np.int64)
    elems = [ident]
    index = {ident.tobytes(): 0}
    right = []      # right[x][c] = index of x followed by letter c
    i = 0
    while i < len(elems):
        row = []
        for c in range(k):
            y = letters[c][elems[i]]
            key = y.tobytes()
            j = index.get(key)
            if j is None:
                j = index[key] = len(elems)
                elems.append(y)
                if max_size is not None and len(elems) > max_size:
                    raise ResourceLimit(f"transition monoid exceeds {max_size} elements")
            row.append(j)
        right.append(row)
        i += 1
    size = len(elems)
    table = np.stack(elems)                     # table[x] = transformation of x
    # x*y acts as "x then y": (x*y)(q) = y(x(q))
    mult = np.empty((size, size), dtype=np.int64)
    for y in range(size):
        composed = table[y][table]              # composed[x] = y ∘ x
        keys = [row.tobytes() for row in composed]
        mult[:, y] = [index[kk] for kk in keys]
    monoid = Monoid(mult, 0, validate=False)
    images = [right[0][c] for c in range(k)]
    morph = Morphism(d.alphabet, monoid, images)
    morph.transformations = table
    return morph


def syntactic_morphism(d: Dfa, max_size: int | None = None) -> RecognizedLanguage:
    """Syntactic morphism of L(d) with the accepting set F, L = α⁻¹(F)."""
    d = minimize(d)
    morph = transition_monoid(d, max_size)
    table = morph.transformations
    acc = frozenset(int(x) for x in range(morph.monoid.size)
                    if int(table[x][d.initial]) in d.accepting)
    return RecognizedLanguage(morph, acc)


def value_set(alpha: Morphism, k: Dfa) -> set[int]:
    """{α(w) : w ∈ L(k)} by reachability in the product with the Cayley graph."""
    if alpha.alphabet.letters != k.alphabet.letters:
        raise AlphabetMismatch("morphism and automaton use different alphabets")
    start = (k.initial, alpha.monoid.identity)
    seen = {start}
    stack = [start]
    mult = alpha.monoid.mult
    while stack:
        q, x = stack.pop()
        for c, g in enumerate(alpha.images):
            nxt = (int(k.delta[q, c]), int(mult[x, g]))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return {x for q, x in seen if q in k.accepting}


def preimage_dfa(alpha: Morphism, elements: Iterable[int]) -> Dfa:
    """Minimal DFA of α⁻¹(X): the Cayley graph of α with accepting set X."""
    mult = alpha.monoid.mult
    delta = mult[:, list(alpha.images)]
    return minimize(Dfa(alpha.alphabet, delta, alpha.monoid.identity, set(elements)))


def brute_force_congruence(d: Dfa, max_len: int) -> dict[tuple[int, ...], list[Word]]:
    """Group every word of length <= max_len by the action it induces on the minimal DFA.

    The action is computed by running the word from each state independently,
    without reusing any monoid structure.
    """
    d = minimize(d)
    classes: dict[tuple[int, ...], list[Word]] = {}
    for w in d.alphabet.words(max_len):
        sig = tuple(d.run(w, start=q) for q in range(d.n_states))
        classes.setdefault(sig, []).append(w)
    return classes


def context_congruence(d: Dfa, max_len: int, context_len: int) -> dict[tuple[bool, ...], list[Word]]:
    """Group words by two-sided context membership x·w·y ∈ L for |x|,|y| <= context_len."""
    contexts = list(d.alphabet.words(context_len))
    classes: dict[tuple[bool, ...], list[Word]] = {}
    for w in d.alphabet.words(max_len):
        sig = tuple(d.accepts(x + w + y) for x in contexts for y in contexts)
        classes.setdefault(sig, []).append(w)
    return classes


def trivial_morphism(alphabet: Alphabet) -> Morphism:
    return Morphism(alphabet, Monoid([[0]]), [0] * len(alphabet))


def content_morphism(alphabet: Alphabet) -> Morphism:
    """η_AT: A* -> (2^A, ∪); element B is encoded as the bitmask of B."""
    k = len(alphabet)
    size = 1 << k
    mult = np.bitwise_or.outer(np.arange(size), np.arange(size))
    return Morphism(alphabet, Monoid(mult, 0, validate=False), [1 << i for i in range(k)])


def product_morphism(alpha: Morphism, beta: Morphism) -> tuple[Morphism, dict[tuple[int, int], int]]:
    """Restriction of α × β to its image; returns the morphism and the pair numbering."""
    if alpha.alphabet.letters != beta.alphabet.letters:
        raise AlphabetMismatch("morphisms use different alphabets")
    ma, mb = alpha.monoid.mult, beta.monoid.mult
    start = (alpha.monoid.identity, beta.monoid.identity)
    index = {start: 0}
    elems = [start]
    i = 0
    while i < len(elems):
        x, y = elems[i]
        for g, h in zip(alpha.images, beta.images):
            z = (int(ma[x, g]), int(mb[y, h]))
            if z not in index:
                index[z] = len(elems)
                elems.append(z)
        i += 1
    # the image of a morphism is a submonoid, so products stay inside it
    mult = np.empty((len(elems), len(elems)), dtype=np.int64)
    for i, (x1, y1) in enumerate(elems):
        for j, (x2, y2) in enumerate(elems):
            mult[i, j] = index[(int(ma[x1, x2]), int(mb[y1, y2]))]
    letters = [index[(g, h)] for g, h in zip(alpha.images, beta.images)]
    return Morphism(alpha.alphabet, Monoid(mult, 0, validate=False), letters), index
