"""Idempotent semirings, full multiplicative rating maps and imprints.

Two semiring representations share one interface:

* :class:`TableSemiring` stores explicit addition and multiplication tables
  and validates every axiom on construction;
* :class:`PowersetSemiring` is the semiring (2^M, ∪, ·) of a finite monoid
  with elements encoded as Python integer bitmasks and products computed on
  demand, so its 2^|M| elements are never listed.

An :class:`Imprint` is a downward closed subset of a semiring.  It is stored
as the antichain of its maximal elements, which is canonical, so two
imprints are equal exactly when their antichains are.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .algebra import Monoid, Morphism, transition_monoid
from .automata import Alphabet, Dfa, _reachable, is_empty, minimize, universal
from .errors import AlphabetMismatch, InputError, ResourceLimit

DEFAULT_MONOID_GUARD = 256


class Semiring:
    """Interface for finite idempotent semirings (R, +, ·, 0, 1)."""

    zero: int
    one: int

    def add(self, x: int, y: int) -> int:
        raise NotImplementedError

    def mul(self, x: int, y: int) -> int:
        raise NotImplementedError

    def leq(self, x: int, y: int) -> bool:
        return self.add(x, y) == y

    def meet(self, x: int, y: int) -> list[int]:
        """Maximal common lower bounds of x and y."""
        raise NotImplementedError

    def elements(self) -> Iterator[int]:
        raise NotImplementedError

    def below(self, x: int) -> Iterator[int]:
        """All elements r <= x."""
        return (r for r in self.elements() if self.leq(r, x))

    def sum(self, xs: Iterable[int]) -> int:
        return reduce(self.add, xs, self.zero)

    def prod(self, xs: Iterable[int]) -> int:
        return reduce(self.mul, xs, self.one)

    def power(self, x: int, k: int) -> int:
        out, base = self.one, x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def index_period(self, x: int) -> tuple[int, int]:
        seen: dict[int, int] = {}
        y, k = x, 1
        while y not in seen:
            seen[y] = k
            y = self.mul(y, x)
            k += 1
        return seen[y], k - seen[y]

    def omega(self, x: int) -> int:
        y = x
        while self.mul(y, y) != y:
            y = self.mul(y, x)
        return y

    def maxima(self, xs: Iterable[int]) -> frozenset[int]:
        items = sorted(set(xs), key=self.rank, reverse=True)
        out: list[int] = []
        for x in items:
            if not any(self.leq(x, y) for y in out):
                out.append(x)
        return frozenset(out)

    def rank(self, x: int) -> int:
        """A height function: x < y implies rank(x) < rank(y)."""
        return sum(1 for _ in self.below(x))

    def show(self, x: int) -> str:
        return str(x)


class TableSemiring(Semiring):
    """Finite idempotent semiring given by explicit tables."""

    def __init__(self, add, mult, zero: int, one: int, validate: bool = True):
        add = np.array(add, dtype=np.int64)
        mult = np.array(mult, dtype=np.int64)
        n = add.shape[0] if add.ndim == 2 else 0
        if n == 0 or add.shape != (n, n) or mult.shape != (n, n):
            raise InputError("semiring tables must be square and of equal size")
        if min(add.min(), mult.min()) < 0 or max(add.max(), mult.max()) >= n:
            raise InputError("semiring tables have out-of-range entries")
        if not (0 <= zero < n and 0 <= one < n):
            raise InputError("zero or one out of range")
        add.setflags(write=False)
        mult.setflags(write=False)
        self.add_table, self.mult_table = add, mult
        self.zero, self.one = int(zero), int(one)
        self.size = n
        if validate:
            self.validate()
        self.order = self.add_table == np.arange(n)[None, :]     # order[x, y]: x <= y
        self._rank = self.order.sum(axis=0)

    def validate(self) -> None:
        A, M, n = self.add_table, self.mult_table, self.size
        r = np.arange(n)
        checks = [
            (np.array_equal(A, A.T), "addition is not commutative"),
            (np.array_equal(A[A], A[r[:, None, None], A[None, :, :]]), "addition is not associative"),
            (np.array_equal(A[r, r], r), "addition is not idempotent"),
            (np.array_equal(A[self.zero], r), "zero is not neutral for addition"),
            (np.array_equal(M[M], M[r[:, None, None], M[None, :, :]]), "multiplication is not associative"),
            (np.array_equal(M[self.one], r) and np.array_equal(M[:, self.one], r),
             "one is not neutral for multiplication"),
            ((M[self.zero] == self.zero).all() and (M[:, self.zero] == self.zero).all(),
             "zero is not absorbing"),
            # x(y+z) = xy+xz and (y+z)x = yx+zx
            (np.array_equal(M[r[:, None, None], A[None, :, :]],
                            A[M[:, :, None], M[:, None, :]]), "left distributivity fails"),
            (np.array_equal(M[A[:, :, None], r[None, None, :]],
                            A[M[:, None, :], M[None, :, :]]), "right distributivity fails"),
        ]
        for ok, msg in checks:
            if not ok:
                raise InputError(msg)

    def add(self, x, y):
        return int(self.add_table[x, y])

    def mul(self, x, y):
        return int(self.mult_table[x, y])

    def leq(self, x, y):
        return bool(self.order[x, y])

    def rank(self, x):
        return int(self._rank[x])

    def elements(self):
        return iter(range(self.size))

    def meet(self, x, y):
        common = np.flatnonzero(self.order[:, x] & self.order[:, y])
        return sorted(self.maxima(int(c) for c in common))

    def to_json(self) -> dict:
        return {"size": self.size, "add": self.add_table.tolist(), "mult": self.mult_table.tolist(),
                "zero": self.zero, "one": self.one}

    def __eq__(self, other):
        return (isinstance(other, TableSemiring) and self.zero == other.zero
                and self.one == other.one and np.array_equal(self.add_table, other.add_table)
                and np.array_equal(self.mult_table, other.mult_table))

    def __hash__(self):
        return hash((self.add_table.tobytes(), self.mult_table.tobytes(), self.zero, self.one))


class PowersetSemiring(Semiring):
    """The semiring (2^M, ∪, ·) with subsets of M encoded as bitmasks."""

    def __init__(self, monoid: Monoid):
        self.monoid = monoid
        self.n = monoid.size
        self.zero = 0
        self.one = 1 << monoid.identity
        self.size = 1 << self.n
        # chunk tables, built on first use: left[x][c][byte] = {x*y : y in byte-chunk c}
        self._n_chunks = (self.n + 7) // 8
        self._left: dict[int, list[list[int]]] = {}
        self._cache: dict[tuple[int, int], int] = {}

    def add(self, x, y):
        return x | y

    def leq(self, x, y):
        return x & ~y == 0

    def meet(self, x, y):
        return [x & y]

    def rank(self, x):
        return x.bit_count() if hasattr(x, "bit_count") else bin(x).count("1")

    def mul(self, x, y):
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = 0
        chunks = []
        yy = y
        while yy:
            chunks.append(yy & 0xFF)
            yy >>= 8
        xx = x
        while xx:
            low = xx & -xx
            i = low.bit_length() - 1
            left = self._left.get(i) or self._left_table(i)
            for c, byte in enumerate(chunks):
                if byte:
                    out |= left[c][byte]
            xx ^= low
        if len(self._cache) > 2_000_000:
            self._cache.clear()
        self._cache[key] = out
        return out

    def _left_table(self, x: int) -> list[list[int]]:
        row = self.monoid.mult[x]
        per_chunk = []
        for c in range(self._n_chunks):
            table = [0] * 256
            for byte in range(1, 256):
                low = byte & -byte
                y = c * 8 + low.bit_length() - 1
                bit = (1 << int(row[y])) if y < self.n else 0
                table[byte] = table[byte ^ low] | bit
            per_chunk.append(table)
        self._left[x] = per_chunk
        return per_chunk

    def elements(self):
        if self.n > 20:
            raise ResourceLimit(f"refusing to enumerate 2^{self.n} semiring elements")
        return iter(range(self.size))

    def below(self, x):
        sub = x
        while True:
            yield sub
            if sub == 0:
                return
            sub = (sub - 1) & x

    def members(self, x: int) -> list[int]:
        return [i for i in range(self.n) if (x >> i) & 1]

    def show(self, x):
        return "{" + ",".join(str(i) for i in self.members(x)) + "}"

    def singleton(self, m: int) -> int:
        return 1 << m


def powerset_subsemiring(monoid: Monoid, generators: Iterable[int], limit: int = 64
                         ) -> tuple[TableSemiring, list[int]]:
    """Subsemiring of (2^M, ∪, ·) generated by bitmasks; returns it with the
    bitmask of every table element."""
    full = PowersetSemiring(monoid)
    elems = {full.zero, full.one, *generators}
    while True:
        cur = sorted(elems)
        new = {op(x, y) for x in cur for y in cur for op in (full.add, full.mul)} - elems
        if not new:
            break
        elems |= new
        if len(elems) > limit:
            raise ResourceLimit(f"subsemiring exceeds {limit} elements")
    masks = sorted(elems)
    index = {m: i for i, m in enumerate(masks)}
    add = [[index[x | y] for y in masks] for x in masks]
    mult = [[index[full.mul(x, y)] for y in masks] for x in masks]
    return TableSemiring(add, mult, index[full.zero], index[full.one]), masks


def tropical_semiring(k: int) -> TableSemiring:
    """(min, +) on {0, ..., k, ∞} with sums capped at k; ∞ is element k + 1."""
    if k < 0:
        raise InputError("k must be non-negative")
    inf = k + 1
    r = range(k + 2)
    add = [[min(x, y) for y in r] for x in r]
    mult = [[inf if inf in (x, y) else min(x + y, k) for y in r] for x in r]
    return TableSemiring(add, mult, inf, 0)


# ---------------------------------------------------------------- imprints

class Imprint:
    """Downward closed subset of a semiring, stored by its maximal elements."""

    __slots__ = ("semiring", "maximal")

    def __init__(self, semiring: Semiring, generators: Iterable[int] = ()):
        self.semiring = semiring
        self.maximal = semiring.maxima(generators)

    @classmethod
    def from_maximal(cls, semiring: Semiring, maximal: frozenset[int]) -> "Imprint":
        out = cls.__new__(cls)
        out.semiring = semiring
        out.maximal = frozenset(maximal)
        return out

    def __contains__(self, r: int) -> bool:
        return any(self.semiring.leq(r, g) for g in self.maximal)

    def __eq__(self, other) -> bool:
        return isinstance(other, Imprint) and self.maximal == other.maximal

    def __hash__(self):
        return hash(self.maximal)

    def __le__(self, other: "Imprint") -> bool:
        return all(g in other for g in self.maximal)

    def __bool__(self) -> bool:
        return bool(self.maximal)

    def __repr__(self) -> str:
        return "↓{" + ", ".join(self.semiring.show(g) for g in sorted(self.maximal)) + "}"

    def union(self, other: "Imprint") -> "Imprint":
        return Imprint(self.semiring, self.maximal | other.maximal)

    def intersection(self, other: "Imprint") -> "Imprint":
        s = self.semiring
        return Imprint(s, (m for x in self.maximal for y in other.maximal for m in s.meet(x, y)))

    def add(self, r: int) -> "Imprint":
        return Imprint(self.semiring, self.maximal | {r})

    def members(self) -> list[int]:
        out: set[int] = set()
        for g in self.maximal:
            out.update(self.semiring.below(g))
        return sorted(out)

    def meets(self, predicate: Callable[[int], bool]) -> list[int]:
        """Maximal elements satisfying an upward closed predicate."""
        return sorted(g for g in self.maximal if predicate(g))

    def to_json(self) -> dict:
        return {"maximal": [self.semiring.show(g) if isinstance(self.semiring, PowersetSemiring) else g
                            for g in sorted(self.maximal)]}


@dataclass
class PointedImprint:
    """Rows indexed by elements of a pointing monoid (here: subsets of A as bitmasks)."""

    rows: dict[int, Imprint]

    def __getitem__(self, key: int) -> Imprint:
        return self.rows[key]


def pointed_union(p: PointedImprint) -> Imprint:
    rows = list(p.rows.values())
    if not rows:
        raise InputError("empty pointed imprint")
    out = rows[0]
    for r in rows[1:]:
        out = out.union(r)
    return out


# ---------------------------------------------------------------- rating maps

class RatingMap:
    """Full multiplicative rating map determined by the ratings of letters."""

    def __init__(self, semiring: Semiring, alphabet: Alphabet, letter_rating: dict[str, int] | Sequence[int]):
        self.semiring = semiring
        self.alphabet = alphabet
        if isinstance(letter_rating, dict):
            vals = [letter_rating[a] for a in alphabet.letters]
        else:
            vals = list(letter_rating)
        if len(vals) != len(alphabet):
            raise InputError("one rating per letter is required")
        self.letters = tuple(int(v) for v in vals)

    def star(self, w) -> int:
        """ρ*(w): the product of the letter ratings."""
        s = self.semiring
        out = s.one
        for a in self.alphabet.word(w):
            out = s.mul(out, self.letters[self.alphabet.index(a)])
        return out

    def value_set(self, k: Dfa | None = None) -> set[int]:
        """{ρ*(w) : w ∈ L(k)}, or over all of A* when k is omitted."""
        if k is None:
            k = universal(self.alphabet)
        if k.alphabet.letters != self.alphabet.letters:
            raise AlphabetMismatch("rating map and automaton use different alphabets")
        s = self.semiring
        start = (k.initial, s.one)
        seen = {start}
        stack = [start]
        while stack:
            q, r = stack.pop()
            for c, g in enumerate(self.letters):
                nxt = (int(k.delta[q, c]), s.mul(r, g))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return {r for q, r in seen if q in k.accepting}

    def preimage(self, r: int) -> Dfa:
        """Minimal DFA of ρ*⁻¹(r), built on the reachable values of ρ*."""
        values = sorted(self.value_set())
        index = {v: i for i, v in enumerate(values)}
        s = self.semiring
        delta = [[index[s.mul(v, g)] for g in self.letters] for v in values]
        acc = [index[r]] if r in index else []
        return minimize(Dfa(self.alphabet, delta, index[s.one], acc))

    def to_json(self) -> dict:
        out = self.semiring.to_json() if isinstance(self.semiring, TableSemiring) else {}
        out["letter_rating"] = dict(zip(self.alphabet.letters, self.letters))
        return out


def rating_map_from_json(data: dict | str, alphabet: Alphabet | None = None) -> RatingMap:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        semiring = TableSemiring(data["add"], data["mult"], data["zero"], data["one"])
        lr = data["letter_rating"]
        alphabet = alphabet or Alphabet.of(list(lr))
        return RatingMap(semiring, alphabet, {a: int(lr[a]) for a in alphabet.letters})
    except KeyError as exc:
        raise InputError(f"malformed rating map JSON: missing {exc}") from None


def canonical_rating_map(alpha: Morphism, guard: int = DEFAULT_MONOID_GUARD) -> RatingMap:
    """The map K ↦ α(K) into (2^M, ∪, ·)."""
    if alpha.monoid.size > guard:
        raise ResourceLimit(f"monoid has {alpha.monoid.size} elements (guard {guard})")
    semiring = PowersetSemiring(alpha.monoid)
    return RatingMap(semiring, alpha.alphabet, [1 << g for g in alpha.images])


def rate(rho: RatingMap, k: Dfa) -> int:
    """ρ(L(k)) as the sum of the finitely many values ρ*(w), w ∈ L(k)."""
    return rho.semiring.sum(rho.value_set(k))


def imprint_of_cover(rho: RatingMap, cover: Sequence[Dfa]) -> Imprint:
    return Imprint(rho.semiring, (rate(rho, k) for k in cover))


# ---------------------------------------------------------------- covering reductions

@dataclass
class CoveringReduction:
    """Covering instance (L0, [L1..Ln]) recast over one recognising morphism.

    ``targets[i]`` is the bitmask of the accepting set F_i of L_i.  The
    instance is coverable exactly when no element of the optimal imprint on
    A* meets every F_i, i = 0..n.
    """

    morphism: Morphism
    rating: RatingMap
    targets: list[int]

    def in_target(self, x: int) -> bool:
        return all(x & f for f in self.targets)

    def target_elements(self) -> list[int]:
        """Explicit listing of F (only for small monoids)."""
        return [x for x in self.rating.semiring.elements() if self.in_target(x)]


def joint_morphism(dfas: Sequence[Dfa], guard: int = DEFAULT_MONOID_GUARD) -> tuple[Morphism, list[int]]:
    """Transition monoid of the product of the given DFAs with each accepting set."""
    if not dfas:
        raise InputError("at least one automaton is required")
    alphabet = dfas[0].alphabet
    for d in dfas[1:]:
        if d.alphabet.letters != alphabet.letters:
            raise AlphabetMismatch("automata use different alphabets")
    mins = [minimize(d) for d in dfas]
    # product automaton with states numbered as mixed-radix tuples
    sizes = [d.n_states for d in mins]
    total = int(np.prod(sizes))
    if total > 10**6:
        raise ResourceLimit("product automaton too large")
    idx = np.indices(sizes).reshape(len(sizes), -1)        # component states per product state
    strides = np.cumprod([1] + sizes[::-1])[:-1][::-1]
    delta = np.zeros((total, len(alphabet)), dtype=np.int64)
    for c in range(len(alphabet)):
        delta[:, c] = sum(mins[i].delta[idx[i], c] * strides[i] for i in range(len(mins)))
    initial = int(sum(mins[i].initial * strides[i] for i in range(len(mins))))
    # restrict to reachable product states so the monoid stays small
    order = _reachable(Dfa(alphabet, delta, initial, []))
    remap = np.full(total, -1, dtype=np.int64)
    remap[order] = np.arange(len(order))
    reach = Dfa(alphabet, remap[delta[order]], 0, [])
    alpha = transition_monoid(reach, max_size=guard)
    table = alpha.transformations
    masks = []
    for i, d in enumerate(mins):
        comp = idx[i][order]
        mask = 0
        for x in range(alpha.monoid.size):
            if int(comp[table[x][0]]) in d.accepting:
                mask |= 1 << x
        masks.append(mask)
    return alpha, masks


def covering_to_imprint(L0: Dfa, Ls: Sequence[Dfa], guard: int = DEFAULT_MONOID_GUARD) -> CoveringReduction:
    if not Ls:
        raise InputError("the list of languages to avoid must be non-empty")
    alpha, masks = joint_morphism([L0, *Ls], guard)
    return CoveringReduction(alpha, canonical_rating_map(alpha, guard), masks)


def imprint_via_covering_decisions(L: Dfa, rho: RatingMap, decide) -> Imprint:
    """↓{Σ Q : (L, {ρ*⁻¹(q) : q ∈ Q}) is not coverable}, Q ranging over sets of values.

    ``decide(L, [K1, ...])`` returns "coverable", "not_coverable" or
    "unknown"; an unknown answer raises, since the result would be
    unreliable.
    """
    values = sorted(rho.value_set())
    pre = {v: rho.preimage(v) for v in values}
    s = rho.semiring
    gens = []
    for k in range(1, len(values) + 1):
        for Q in itertools.combinations(values, k):
            total = s.sum(Q)
            if any(s.leq(total, g) for g in gens):
                continue
            verdict = decide(L, [pre[q] for q in Q])
            if verdict == "unknown":
                raise ResourceLimit("covering oracle returned unknown")
            if verdict == "not_coverable":
                gens.append(total)
    # the empty Q contributes 0 whenever L is non-empty
    if not is_empty(L):
        gens.append(s.zero)
    return Imprint(s, gens)
