"""Pair relations: (s, t) is a pair when α⁻¹(s) and α⁻¹(t) cannot be
separated by a language of the base class.

Supported bases are ST, DD, MOD and AT, plus a generic engine that derives
pairs from an auxiliary morphism η.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .algebra import Morphism, content_morphism
from .errors import AlphabetMismatch, BaseUnsupported, InputError

BASES = ("ST", "DD", "MOD", "AT")
UNSUPPORTED_BASES = ("GR", "AMT", "LT")


@dataclass(frozen=True)
class PairSet:
    size: int
    pairs: frozenset[tuple[int, int]]
    partial: bool = False
    unknown: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        table: dict[int, list[int]] = {}
        for s, t in self.pairs:
            table.setdefault(s, []).append(t)
        object.__setattr__(self, "_partners", {s: sorted(ts) for s, ts in table.items()})

    def __contains__(self, st) -> bool:
        return tuple(st) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def matrix(self) -> np.ndarray:
        out = np.zeros((self.size, self.size), dtype=bool)
        for s, t in self.pairs:
            out[s, t] = True
        return out

    def partners(self, s: int) -> list[int]:
        return list(self._partners.get(s, ()))

    def is_symmetric(self) -> bool:
        return all((t, s) in self.pairs for s, t in self.pairs)

    def to_json(self, base: str | None = None) -> dict:
        out = {"pairs": [list(p) for p in sorted(self.pairs)]}
        if base is not None:
            out = {"base": base, **out}
        if self.partial:
            out["partial"] = True
            out["unknown"] = [list(p) for p in sorted(self.unknown)]
        return out


def _square(elements: Iterable[int], size: int) -> PairSet:
    els = list(elements)
    return PairSet(size, frozenset((s, t) for s in els for t in els))


def st_pairs(alpha: Morphism) -> PairSet:
    """Every pair of elements in the image: only ∅ and A* are available."""
    return _square(alpha.image(), alpha.monoid.size)


def _epsilon_only(alpha: Morphism) -> tuple[set[int], int]:
    ident = alpha.monoid.identity
    plus = alpha.nonempty_image()
    return plus, ident


def dd_pairs(alpha: Morphism) -> PairSet:
    """Pairs for {∅, {ε}, A⁺, A*}.

    The only candidate separators that can split two classes are {ε} and
    A⁺, so a pair fails exactly when one preimage is {ε} and the other
    misses ε.
    """
    plus, ident = _epsilon_only(alpha)
    image = alpha.image()

    def only_eps(s):
        return s == ident and ident not in plus

    def has_eps(s):
        return s == ident

    pairs = set()
    for s in image:
        for t in image:
            if only_eps(s) and not has_eps(t):
                continue
            if only_eps(t) and not has_eps(s):
                continue
            pairs.add((s, t))
    return PairSet(alpha.monoid.size, frozenset(pairs))


class DDPartners:
    """Partner lists of the DD relation without materialising every pair."""

    def __init__(self, alpha: Morphism):
        plus, ident = _epsilon_only(alpha)
        self.ident = ident
        self.image = sorted(alpha.image())
        self.eps_only = ident not in plus
        self._rest = [s for s in self.image if s != ident]

    def partners(self, s: int) -> list[int]:
        if s not in self.image:
            return []
        if not self.eps_only:
            return list(self.image)
        return [self.ident] if s == self.ident else list(self._rest)


def content_values(alpha: Morphism) -> dict[int, set[int]]:
    """V_B = {α(w) : content(w) = B} keyed by the bitmask of B."""
    start = (0, alpha.monoid.identity)
    seen = {start}
    stack = [start]
    mult = alpha.monoid.mult
    while stack:
        b, x = stack.pop()
        for i, g in enumerate(alpha.images):
            nxt = (b | (1 << i), int(mult[x, g]))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    out: dict[int, set[int]] = {}
    for b, x in seen:
        out.setdefault(b, set()).add(x)
    return out


def at_pairs(alpha: Morphism) -> PairSet:
    pairs = set()
    for values in content_values(alpha).values():
        pairs.update((s, t) for s in values for t in values)
    return PairSet(alpha.monoid.size, frozenset(pairs))


def length_profile(alpha: Morphism) -> tuple[dict[int, set[int]], int, int]:
    """Length sets Λ(m) restricted to [0, T+P) with threshold T and period P.

    X_n = α(Aⁿ) is computed iteratively; since X_{n+1} depends only on X_n
    the sequence is ultimately periodic.  Returns (Λ, T, P).
    """
    mult = alpha.monoid.mult
    imgs = list(set(alpha.images))
    current = frozenset([alpha.monoid.identity])
    seen: dict[frozenset[int], int] = {}
    history: list[frozenset[int]] = []
    limit = 2 ** min(alpha.monoid.size, 62) + 1
    while current not in seen:
        seen[current] = len(history)
        history.append(current)
        if len(history) > limit:
            raise AssertionError("length profile failed to become periodic")
        current = frozenset(int(mult[x, g]) for x in current for g in imgs)
    threshold = seen[current]
    period = len(history) - threshold
    lam: dict[int, set[int]] = {}
    for n, xs in enumerate(history):
        for x in xs:
            lam.setdefault(x, set()).add(n)
    return lam, threshold, period


def mod_pairs(alpha: Morphism) -> PairSet:
    lam, T, P = length_profile(alpha)
    image = sorted(lam)
    pairs = set()
    for s in image:
        for t in image:
            if any(x % P == y % P and (x == y or x >= T or y >= T)
                   for x in lam[s] for y in lam[t]):
                pairs.add((s, t))
    return PairSet(alpha.monoid.size, frozenset(pairs))


def mod_pairs_bruteforce(alpha: Morphism, max_len: int = 12, max_mod: int = 8) -> PairSet:
    """Reference: (s,t) is a pair when every modulus n <= max_mod has words
    u ∈ α⁻¹(s), v ∈ α⁻¹(t) of length <= max_len with |u| ≡ |v| (mod n)."""
    lengths: dict[int, set[int]] = {}
    level = {alpha.monoid.identity}
    mult = alpha.monoid.mult
    for n in range(max_len + 1):
        for x in level:
            lengths.setdefault(x, set()).add(n)
        level = {int(mult[x, g]) for x in level for g in alpha.images}
    pairs = set()
    for s in lengths:
        for t in lengths:
            if all(any((x - y) % n == 0 for x in lengths[s] for y in lengths[t])
                   for n in range(1, max_mod + 1)):
                pairs.add((s, t))
    return PairSet(alpha.monoid.size, frozenset(pairs))


def eta_pairs(alpha: Morphism, eta: Morphism, order: np.ndarray | None = None) -> PairSet:
    """{(α(u), α(v)) : η(u) <= η(v)}, with equality when no order is given.

    ``order[x, y]`` is True when x <= y in η's codomain.
    """
    if alpha.alphabet.letters != eta.alphabet.letters:
        raise AlphabetMismatch("α and η use different alphabets")
    ma, me = alpha.monoid.mult, eta.monoid.mult
    start = (alpha.monoid.identity, eta.monoid.identity)
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for g, h in zip(alpha.images, eta.images):
            nxt = (int(ma[x, g]), int(me[y, h]))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    by_eta: dict[int, set[int]] = {}
    for x, y in seen:
        by_eta.setdefault(y, set()).add(x)
    pairs = set()
    for y1, xs1 in by_eta.items():
        for y2, xs2 in by_eta.items():
            le = (y1 == y2) if order is None else bool(order[y1, y2])
            if le:
                pairs.update((s, t) for s in xs1 for t in xs2)
    return PairSet(alpha.monoid.size, frozenset(pairs))


def at_pairs_via_eta(alpha: Morphism) -> PairSet:
    return eta_pairs(alpha, content_morphism(alpha.alphabet))


def pairs_for(alpha: Morphism, base: str) -> PairSet:
    base = base.upper()
    if base == "ST":
        return st_pairs(alpha)
    if base == "DD":
        return dd_pairs(alpha)
    if base == "MOD":
        return mod_pairs(alpha)
    if base == "AT":
        return at_pairs(alpha)
    if base in UNSUPPORTED_BASES:
        raise BaseUnsupported(f"no pair engine for base {base}")
    raise InputError(f"unknown base {base!r}")
