"""Finite automata over explicit alphabets.

Words are tuples of letters.  Letters are short strings; when every letter
is a single character a plain ``str`` may be passed wherever a word is
expected, and multi-character letters are tokenised by longest match.

DFAs are always complete.  Their transition function is a numpy integer
array of shape ``(n_states, n_letters)`` whose columns follow the alphabet
order.  ``minimize`` returns a canonical automaton: two DFAs recognise the
same language exactly when their minimized forms compare equal.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import AlphabetMismatch, InputError, RegexSyntaxError, ResourceLimit

Word = tuple[str, ...]

DEFAULT_STATE_CAP = 1_000_000


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {letters!r}")
        for a in letters:
            if not isinstance(a, str) or not a:
                raise InputError(f"letters must be non-empty strings, got {a!r}")

    @classmethod
    def of(cls, letters: Iterable[str] | str) -> "Alphabet":
        if isinstance(letters, Alphabet):
            return letters
        if isinstance(letters, str):
            letters = [x for x in letters.replace(",", " ").split()] if (
                "," in letters or " " in letters) else list(letters)
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, a: object) -> bool:
        return a in self.letters

    def index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise InputError(f"unknown letter {a!r}") from None

    @property
    def _index(self) -> dict[str, int]:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {a: i for i, a in enumerate(self.letters)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def word(self, w: str | Sequence[str]) -> Word:
        """Normalise ``w`` to a tuple of letters of this alphabet."""
        if isinstance(w, str):
            out = []
            i = 0
            by_len = sorted(self.letters, key=len, reverse=True)
            while i < len(w):
                for a in by_len:
                    if w.startswith(a, i):
                        out.append(a)
                        i += len(a)
                        break
                else:
                    raise InputError(f"cannot read {w[i:]!r} as letters of {self.letters}")
            return tuple(out)
        word = tuple(w)
        for a in word:
            if a not in self._index:
                raise InputError(f"unknown letter {a!r}")
        return word

    def words(self, max_len: int) -> Iterator[Word]:
        """All words of length at most ``max_len`` in length-lexicographic order."""
        level: list[Word] = [()]
        for _ in range(max_len + 1):
            yield from level
            level = [u + (a,) for u in level for a in self.letters]


def show(w: Sequence[str]) -> str:
    """Render a word; letters are joined without separators when unambiguous."""
    if not w:
        return "ε"
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True, eq=False)
class Nfa:
    """Epsilon-free nondeterministic automaton."""

    alphabet: Alphabet
    n_states: int
    initial: frozenset[int]
    transitions: frozenset[tuple[int, str, int]]
    accepting: frozenset[int]

    def __post_init__(self):
        for p, a, q in self.transitions:
            if not (0 <= p < self.n_states and 0 <= q < self.n_states):
                raise InputError(f"transition ({p},{a},{q}) uses an unknown state")
            if a not in self.alphabet:
                raise InputError(f"transition uses unknown letter {a!r}")
        for q in self.initial | self.accepting:
            if not 0 <= q < self.n_states:
                raise InputError(f"unknown state {q}")

    def successor_table(self) -> list[list[frozenset[int]]]:
        table = [[set() for _ in self.alphabet] for _ in range(self.n_states)]
        for p, a, q in self.transitions:
            table[p][self.alphabet.index(a)].add(q)
        return [[frozenset(s) for s in row] for row in table]

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "states": self.n_states,
            "initial": sorted(self.initial),
            "accepting": sorted(self.accepting),
            "transitions": sorted([p, a, q] for p, a, q in self.transitions),
        }


class Dfa:
    """Complete deterministic automaton; immutable after construction."""

    __slots__ = ("alphabet", "delta", "initial", "accepting", "_key")

    def __init__(self, alphabet: Alphabet, delta, initial: int, accepting: Iterable[int]):
        delta = np.array(delta, dtype=np.int64).reshape(-1, len(alphabet))
        n = delta.shape[0]
        if n == 0:
            raise InputError("a DFA needs at least one state")
        if delta.size and (delta.min() < 0 or delta.max() >= n):
            raise InputError("transition function is not total over the state set")
        if not 0 <= initial < n:
            raise InputError("initial state out of range")
        acc = frozenset(int(q) for q in accepting)
        if any(not 0 <= q < n for q in acc):
            raise InputError("accepting state out of range")
        delta.setflags(write=False)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "initial", int(initial))
        object.__setattr__(self, "accepting", acc)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("Dfa is immutable")

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    def key(self):
        if self._key is None:
            object.__setattr__(self, "_key", (self.alphabet.letters, self.delta.tobytes(),
                                              self.delta.shape, self.initial,
                                              tuple(sorted(self.accepting))))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Dfa) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (f"Dfa(states={self.n_states}, alphabet={list(self.alphabet.letters)}, "
                f"accepting={sorted(self.accepting)})")

    def step(self, q: int, a: str) -> int:
        return int(self.delta[q, self.alphabet.index(a)])

    def run(self, w: str | Sequence[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        idx = self.alphabet._index
        for a in self.alphabet.word(w):
            q = self.delta[q, idx[a]]
        return int(q)

    def accepts(self, w: str | Sequence[str]) -> bool:
        return self.run(w) in self.accepting

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "states": self.n_states,
            "initial": [self.initial],
            "accepting": sorted(self.accepting),
            "transitions": [[q, a, int(self.delta[q, i])]
                            for q in range(self.n_states)
                            for i, a in enumerate(self.alphabet.letters)],
        }

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point];']
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  q{q} [shape={shape}, label=\"{q}\"];")
        lines.append(f"  init -> q{self.initial};")
        edges: dict[tuple[int, int], list[str]] = {}
        for q in range(self.n_states):
            for i, a in enumerate(self.alphabet.letters):
                edges.setdefault((q, int(self.delta[q, i])), []).append(a)
        for (p, q), labels in sorted(edges.items()):
            lines.append(f"  q{p} -> q{q} [label=\"{','.join(labels)}\"];")
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------- JSON loading

def automaton_from_json(data: dict | str) -> Dfa | Nfa:
    """Load either a DFA or an NFA from the shared JSON schema.

    The result is a :class:`Dfa` when the transition relation is total and
    deterministic with a single initial state, otherwise an :class:`Nfa`.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        alphabet = Alphabet.of(data["alphabet"])
        n = int(data["states"])
        initial = [int(q) for q in data["initial"]]
        accepting = [int(q) for q in data["accepting"]]
        trans = [(int(p), str(a), int(q)) for p, a, q in data["transitions"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed automaton JSON: {exc}") from None
    nfa = Nfa(alphabet, n, frozenset(initial), frozenset(trans), frozenset(accepting))
    seen: dict[tuple[int, str], int] = {}
    deterministic = len(initial) == 1
    for p, a, q in trans:
        if seen.setdefault((p, a), q) != q:
            deterministic = False
    if deterministic and len(seen) == n * len(alphabet):
        delta = np.zeros((n, len(alphabet)), dtype=np.int64)
        for (p, a), q in seen.items():
            delta[p, alphabet.index(a)] = q
        return Dfa(alphabet, delta, initial[0], accepting)
    return nfa


def dfa_from_json(data: dict | str) -> Dfa:
    aut = automaton_from_json(data)
    return aut if isinstance(aut, Dfa) else determinize(aut)


# ---------------------------------------------------------------- constructors

def _nfa(alphabet, n, initial, transitions, accepting) -> Nfa:
    return Nfa(alphabet, n, frozenset(initial), frozenset(transitions), frozenset(accepting))


def empty_nfa(alphabet: Alphabet) -> Nfa:
    return _nfa(alphabet, 1, [0], [], [])


def epsilon_nfa(alphabet: Alphabet) -> Nfa:
    return _nfa(alphabet, 1, [0], [], [0])


def letter_nfa(alphabet: Alphabet, a: str) -> Nfa:
    return _nfa(alphabet, 2, [0], [(0, a, 1)], [1])


def word_nfa(alphabet: Alphabet, w: Sequence[str]) -> Nfa:
    w = alphabet.word(w)
    return _nfa(alphabet, len(w) + 1, [0], [(i, a, i + 1) for i, a in enumerate(w)], [len(w)])


def _shift(n: Nfa, k: int):
    return ({q + k for q in n.initial}, {(p + k, a, q + k) for p, a, q in n.transitions},
            {q + k for q in n.accepting})


def nfa_union(n1: Nfa, n2: Nfa) -> Nfa:
    _check_same(n1.alphabet, n2.alphabet)
    i2, t2, f2 = _shift(n2, n1.n_states)
    return _nfa(n1.alphabet, n1.n_states + n2.n_states, n1.initial | i2,
                n1.transitions | t2, n1.accepting | f2)


def nfa_concat(n1: Nfa, n2: Nfa) -> Nfa:
    _check_same(n1.alphabet, n2.alphabet)
    i2, t2, f2 = _shift(n2, n1.n_states)
    trans = set(n1.transitions) | t2
    for p, a, q in n1.transitions:
        if q in n1.accepting:
            trans.update((p, a, i) for i in i2)
    initial = set(n1.initial)
    if n1.initial & n1.accepting:
        initial |= i2
    accepting = set(f2)
    if i2 & f2:
        accepting |= n1.accepting
    return _nfa(n1.alphabet, n1.n_states + n2.n_states, initial, trans, accepting)


def nfa_plus(n: Nfa) -> Nfa:
    trans = set(n.transitions)
    for p, a, q in n.transitions:
        if q in n.accepting:
            trans.update((p, a, i) for i in n.initial)
    return _nfa(n.alphabet, n.n_states, n.initial, trans, n.accepting)


def nfa_star(n: Nfa) -> Nfa:
    return nfa_union(epsilon_nfa(n.alphabet), nfa_plus(n))


def dfa_to_nfa(d: Dfa) -> Nfa:
    trans = [(q, a, int(d.delta[q, i])) for q in range(d.n_states)
             for i, a in enumerate(d.alphabet.letters)]
    return _nfa(d.alphabet, d.n_states, [d.initial], trans, d.accepting)


def _check_same(a1: Alphabet, a2: Alphabet) -> None:
    if a1.letters != a2.letters:
        raise AlphabetMismatch(f"alphabets differ: {list(a1.letters)} vs {list(a2.letters)}")


# ---------------------------------------------------------------- regex parser

class _RegexParser:
    # precedence, loosest first: |  &  concatenation  !  postfix * +
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0
        self.by_len = sorted(alphabet.letters, key=len, reverse=True)

    def error(self, msg: str):
        raise RegexSyntaxError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Nfa:
        if not len(self.alphabet):
            raise InputError("the alphabet must be non-empty")
        result = self.union()
        if self.peek() is not None:
            self.error(f"unexpected {self.text[self.pos]!r}")
        return result

    def union(self) -> Nfa:
        left = self.inter()
        while self.peek() == "|":
            self.pos += 1
            left = nfa_union(left, self.inter())
        return left

    def inter(self) -> Nfa:
        left = self.concat()
        while self.peek() == "&":
            self.pos += 1
            right = self.concat()
            left = dfa_to_nfa(product(determinize(left), determinize(right), "and"))
        return left

    def concat(self) -> Nfa:
        parts = []
        while (c := self.peek()) is not None and c not in "|&)":
            parts.append(self.prefix())
        if not parts:
            self.error("expected an expression")
        out = parts[0]
        for p in parts[1:]:
            out = nfa_concat(out, p)
        return out

    def prefix(self) -> Nfa:
        if self.peek() == "!":
            self.pos += 1
            inner = self.prefix()
            return dfa_to_nfa(complement(determinize(inner)))
        return self.postfix()

    def postfix(self) -> Nfa:
        out = self.atom()
        while (c := self.peek()) in ("*", "+"):
            self.pos += 1
            out = nfa_star(out) if c == "*" else nfa_plus(out)
        return out

    def atom(self) -> Nfa:
        c = self.peek()
        if c is None:
            self.error("unexpected end of expression")
        if c == "(":
            self.pos += 1
            inner = self.union()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "~":
            self.pos += 1
            return epsilon_nfa(self.alphabet)
        if c == "@":
            self.pos += 1
            return empty_nfa(self.alphabet)
        if c == ".":
            self.pos += 1
            return _nfa(self.alphabet, 2, [0], [(0, a, 1) for a in self.alphabet], [1])
        for a in self.by_len:
            if self.text.startswith(a, self.pos):
                self.pos += len(a)
                return letter_nfa(self.alphabet, a)
        if c in "*+)":
            self.error(f"unexpected {c!r}")
        raise RegexSyntaxError(f"unknown letter {c!r}", self.pos)


def parse_regex(text: str, alphabet: Alphabet | Iterable[str] | str) -> Nfa:
    """Parse a regular expression into an epsilon-free NFA.

    Grammar: letters, ``()``, ``~`` (empty word), ``@`` (empty set), ``.``
    (any single letter), concatenation, ``|``, ``&``, prefix ``!``
    (complement) and postfix ``*`` / ``+``.
    """
    return _RegexParser(text, Alphabet.of(alphabet)).parse()


def regex_dfa(text: str, alphabet: Alphabet | Iterable[str] | str) -> Dfa:
    """Minimal DFA of a regular expression."""
    return minimize(determinize(parse_regex(text, alphabet)))


# ---------------------------------------------------------------- core algorithms

def determinize(n: Nfa, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Subset construction restricted to reachable subsets."""
    table = n.successor_table()
    k = len(n.alphabet)
    start = frozenset(n.initial)
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for c in range(k):
            succ = frozenset().union(*(table[q][c] for q in subset)) if subset else frozenset()
            j = index.get(succ)
            if j is None:
                j = index[succ] = len(order)
                order.append(succ)
                if len(order) > state_cap:
                    raise ResourceLimit(f"determinization exceeded {state_cap} states")
            row.append(j)
        rows.append(row)
        i += 1
    accepting = [j for j, s in enumerate(order) if s & n.accepting]
    return Dfa(n.alphabet, np.array(rows, dtype=np.int64).reshape(len(order), k), 0, accepting)


def _reachable(d: Dfa) -> list[int]:
    """States reachable from the initial state in BFS order (letter order)."""
    seen = {d.initial}
    order = [d.initial]
    i = 0
    while i < len(order):
        for q in d.delta[order[i]]:
            q = int(q)
            if q not in seen:
                seen.add(q)
                order.append(q)
        i += 1
    return order


def minimize(d: Dfa) -> Dfa:
    """Canonical minimal DFA: trim, Moore refinement, BFS renumbering."""
    order = _reachable(d)
    remap = np.full(d.n_states, -1, dtype=np.int64)
    remap[order] = np.arange(len(order))
    delta = remap[d.delta[order]]
    acc = np.array([q in d.accepting for q in order], dtype=np.int64)
    classes = acc.copy()
    n_classes = len(set(acc.tolist()))
    while True:
        sig = np.concatenate([classes[:, None], classes[delta]], axis=1)
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1)
        m = int(new.max()) + 1
        if m == n_classes:
            classes = new
            break
        classes, n_classes = new, m
    # quotient automaton, then canonical BFS numbering from the initial class
    qdelta = np.zeros((n_classes, len(d.alphabet)), dtype=np.int64)
    qdelta[classes] = classes[delta]
    qacc = {int(classes[i]) for i in range(len(order)) if acc[i]}
    quotient = Dfa(d.alphabet, qdelta, int(classes[0]), qacc)
    bfs = _reachable(quotient)
    renum = np.empty(n_classes, dtype=np.int64)
    renum[bfs] = np.arange(n_classes)
    return Dfa(d.alphabet, renum[qdelta[bfs]], 0, {int(renum[q]) for q in qacc})


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.delta, d.initial, set(range(d.n_states)) - d.accepting)


_OPS: dict[str, Callable[[bool, bool], bool]] = {
    "and": lambda x, y: x and y,
    "or": lambda x, y: x or y,
    "diff": lambda x, y: x and not y,
    "xor": lambda x, y: x != y,
}


def product(d1: Dfa, d2: Dfa, op: str = "and") -> Dfa:
    """Reachable product automaton with Boolean combination ``op``."""
    _check_same(d1.alphabet, d2.alphabet)
    try:
        f = _OPS[op]
    except KeyError:
        raise InputError(f"unknown product operation {op!r}") from None
    n2 = d2.n_states
    # vectorised over the full product, then trimmed by minimize's BFS
    delta = (d1.delta[:, None, :] * n2 + d2.delta[None, :, :]).reshape(-1, len(d1.alphabet))
    acc = [p * n2 + q for p in range(d1.n_states) for q in range(n2)
           if f(p in d1.accepting, q in d2.accepting)]
    return _trim(Dfa(d1.alphabet, delta, d1.initial * n2 + d2.initial, acc))


def _trim(d: Dfa) -> Dfa:
    order = _reachable(d)
    if len(order) == d.n_states:
        return d
    remap = np.full(d.n_states, -1, dtype=np.int64)
    remap[order] = np.arange(len(order))
    return Dfa(d.alphabet, remap[d.delta[order]], 0,
               [int(remap[q]) for q in d.accepting if remap[q] >= 0])


def intersect(*ds: Dfa) -> Dfa:
    out = ds[0]
    for d in ds[1:]:
        out = minimize(product(out, d, "and"))
    return out


def union(*ds: Dfa) -> Dfa:
    out = ds[0]
    for d in ds[1:]:
        out = minimize(product(out, d, "or"))
    return out


def is_empty(d: Dfa) -> bool:
    return not any(q in d.accepting for q in _reachable(d))


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return is_empty(product(d1, d2, "xor"))


def includes(big: Dfa, small: Dfa) -> bool:
    """True when L(small) is a subset of L(big)."""
    return is_empty(product(small, big, "diff"))


def left_quotient(d: Dfa, u: str | Sequence[str]) -> Dfa:
    """Automaton for u⁻¹L = {w : uw ∈ L}."""
    return minimize(Dfa(d.alphabet, d.delta, d.run(u), d.accepting))


def right_quotient(d: Dfa, u: str | Sequence[str]) -> Dfa:
    """Automaton for Lu⁻¹ = {w : wu ∈ L}."""
    u = d.alphabet.word(u)
    acc = [q for q in range(d.n_states) if d.run(u, start=q) in d.accepting]
    return minimize(Dfa(d.alphabet, d.delta, d.initial, acc))


def enumerate_words(d: Dfa, max_len: int) -> list[Word]:
    """Accepted words of length at most ``max_len``, length-lexicographically."""
    out = []
    level: list[tuple[Word, int]] = [((), d.initial)]
    for _ in range(max_len + 1):
        out.extend(w for w, q in level if q in d.accepting)
        level = [(w + (a,), int(d.delta[q, i])) for w, q in level
                 for i, a in enumerate(d.alphabet.letters)]
    return out


def shortest_word(d: Dfa) -> Word | None:
    """A shortest accepted word (least in letter order), or None when empty."""
    parent: dict[int, tuple[int, str] | None] = {d.initial: None}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        if q in d.accepting:
            w = []
            while parent[q] is not None:
                q, a = parent[q]
                w.append(a)
            return tuple(reversed(w))
        for i, a in enumerate(d.alphabet.letters):
            r = int(d.delta[q, i])
            if r not in parent:
                parent[r] = (q, a)
                queue.append(r)
    return None


def universal(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, [0])


def empty(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, [])


def reverse(d: Dfa) -> Dfa:
    """Minimal DFA of the mirror language."""
    trans = [(int(d.delta[q, i]), a, q) for q in range(d.n_states)
             for i, a in enumerate(d.alphabet.letters)]
    return minimize(determinize(_nfa(d.alphabet, d.n_states, d.accepting, trans, [d.initial])))


def concat(d1: Dfa, d2: Dfa) -> Dfa:
    return minimize(determinize(nfa_concat(dfa_to_nfa(d1), dfa_to_nfa(d2))))


def star(d: Dfa) -> Dfa:
    return minimize(determinize(nfa_star(dfa_to_nfa(d))))


def plus(d: Dfa) -> Dfa:
    return minimize(determinize(nfa_plus(dfa_to_nfa(d))))


def inverse_image(d: Dfa, alphabet: Alphabet, h: Callable[[str], str]) -> Dfa:
    """Preimage of L(d) under the letter-to-letter map ``h`` from ``alphabet``."""
    cols = [d.alphabet.index(h(b)) for b in alphabet.letters]
    return Dfa(alphabet, d.delta[:, cols], d.initial, d.accepting)


def letter_image(d: Dfa, alphabet: Alphabet, h: Callable[[str], str | None]) -> Nfa:
    """Image of L(d) under a letter-to-letter map; letters mapped to None are erased.

    Erasing is handled by epsilon closure, so the result is epsilon-free.
    """
    k = len(d.alphabet)
    images = [h(a) for a in d.alphabet.letters]
    erase = [c for c in range(k) if images[c] is None]
    closure = []
    for q in range(d.n_states):
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            for c in erase:
                r = int(d.delta[p, c])
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        closure.append(seen)
    trans = set()
    for q in range(d.n_states):
        for p in closure[q]:
            for c in range(k):
                if images[c] is not None:
                    r = int(d.delta[p, c])
                    trans.update((q, images[c], s) for s in closure[r])
    accepting = [q for q in range(d.n_states) if closure[q] & d.accepting]
    return _nfa(alphabet, d.n_states, [d.initial], trans, accepting)


def substitute(d: Dfa, alphabet: Alphabet, blocks: dict[str, Sequence[str]]) -> Dfa:
    """Image of L(d) under the morphism sending each letter to a word of ``alphabet``.

    Every block must be non-empty.
    """
    trans = set()
    n = d.n_states
    for q in range(n):
        for i, a in enumerate(d.alphabet.letters):
            block = alphabet.word(blocks[a])
            if not block:
                raise InputError("substitution blocks must be non-empty")
            target = int(d.delta[q, i])
            prev = q
            for j, b in enumerate(block):
                if j == len(block) - 1:
                    trans.add((prev, b, target))
                else:
                    trans.add((prev, b, n))
                    prev = n
                    n += 1
    return minimize(determinize(_nfa(alphabet, n, [d.initial], trans, d.accepting)))


def words_over(alphabet: Alphabet, letters: Iterable[str]) -> Dfa:
    """DFA of B* for a subset B of the alphabet."""
    allowed = set(letters)
    delta = [[0 if a in allowed else 1 for a in alphabet.letters], [1] * len(alphabet)]
    return Dfa(alphabet, delta, 0, [0])


def contains_letter(alphabet: Alphabet, a: str) -> Dfa:
    """DFA of A*aA*."""
    c = alphabet.index(a)
    delta = [[1 if i == c else 0 for i in range(len(alphabet))], [1] * len(alphabet)]
    return Dfa(alphabet, delta, 0, [1])


def content_class(alphabet: Alphabet, letters: Iterable[str]) -> Dfa:
    """DFA of the words whose set of letters is exactly ``letters``."""
    letters = set(letters)
    out = words_over(alphabet, letters)
    for a in sorted(letters):
        out = product(out, contains_letter(alphabet, a), "and")
    return minimize(out)
