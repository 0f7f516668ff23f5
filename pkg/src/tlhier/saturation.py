"""Saturation fixpoint computing pointed optimal imprints for TL(AT), and the
covering, separation and pair decisions built on it.

The state maps every alphabet subset B (a bitmask) to a downset S(B) of the
rating semiring.  Starting from the trivial elements (content(w), ρ(w)),
the fixpoint closes under

* multiplication: (B1, r1), (B2, r2) give (B1 ∪ B2, r1·r2);
* the TLX operation: the optimal TLX imprint of S(B)⁺ lies in S(B).

The TLX operation is only available through lower and upper bounds
(:mod:`tlhier.tlx`).  Running the fixpoint with the lower bound gives a set
contained in the true one.  If every row of that set is also closed under
the upper bound, the set is closed under the exact rule too, hence equal to
the true least fixpoint; otherwise a separate upper-mode run brackets it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Morphism, preimage_dfa
from .automata import Dfa, complement
from .cpairs import PairSet
from .errors import InputError
from .rating import (CoveringReduction, Imprint, PointedImprint, RatingMap, canonical_rating_map,
                     covering_to_imprint, pointed_union)
from .tlx import Budget, tlx_imprint, tlx_lower

MODES = ("lower", "upper")


@dataclass
class SaturationState:
    rating: RatingMap
    rows: dict[int, Imprint]
    mode: str
    rounds: int = 0

    def row(self, B: int) -> Imprint:
        return self.rows[B]

    def __contains__(self, item) -> bool:
        B, r = item
        return B in self.rows and r in self.rows[B]

    def pointed(self) -> PointedImprint:
        return PointedImprint(dict(self.rows))

    def opt(self) -> Imprint:
        """Optimal imprint on A*: the union of all rows."""
        return pointed_union(self.pointed())

    def __eq__(self, other) -> bool:
        return isinstance(other, SaturationState) and self.rows == other.rows

    def letters_of(self, B: int) -> list[str]:
        return [a for i, a in enumerate(self.rating.alphabet.letters) if (B >> i) & 1]

    def to_json(self) -> dict:
        return {"mode": self.mode,
                "rows": [{"content": self.letters_of(B), **self.rows[B].to_json()}
                         for B in sorted(self.rows)]}


def trivial_elements(rho: RatingMap) -> dict[int, set[int]]:
    """{(content(w), ρ*(w))} by closing (∅, 1) under appending letters."""
    s = rho.semiring
    start = (0, s.one)
    seen = {start}
    stack = [start]
    while stack:
        B, r = stack.pop()
        for i, g in enumerate(rho.letters):
            nxt = (B | (1 << i), s.mul(r, g))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    out: dict[int, set[int]] = {}
    for B, r in seen:
        out.setdefault(B, set()).add(r)
    return out


class _Saturator:
    def __init__(self, rho: RatingMap, mode: str, budget: Budget | None, shuffle: random.Random | None):
        if mode not in MODES:
            raise InputError(f"unknown saturation mode {mode!r}")
        self.rho = rho
        self.R = rho.semiring
        self.mode = mode
        self.budget = budget
        self.shuffle = shuffle
        self.cache: dict[frozenset[int], Imprint] = {}

    def tlx_op(self, Q: frozenset[int]) -> Imprint:
        hit = self.cache.get(Q)
        if hit is None:
            letters = sorted(Q)
            if self.mode == "lower":
                hit = tlx_lower(self.R, letters)
            else:
                hit = tlx_imprint(self.R, letters, self.budget).upper
            self.cache[Q] = hit
        return hit

    def order(self, items):
        items = list(items)
        if self.shuffle is not None:
            self.shuffle.shuffle(items)
        return items

    def run(self) -> SaturationState:
        R = self.R
        rows = {B: set(R.maxima(rs)) for B, rs in trivial_elements(self.rho).items()}
        rounds = 0
        while True:
            rounds += 1
            self.close_multiplication(rows)
            changed = False
            for B in self.order(rows):
                Q = tlx_alphabet(R, rows[B])
                extra = self.tlx_op(Q).maximal
                if not all(any(R.leq(x, g) for g in rows[B]) for x in extra):
                    rows[B] = set(R.maxima(rows[B] | set(extra)))
                    changed = True
            if not changed:
                break
        return SaturationState(self.rho, {B: Imprint.from_maximal(R, frozenset(g))
                                          for B, g in rows.items()}, self.mode, rounds)

    def close_multiplication(self, rows: dict[int, set[int]]) -> None:
        R = self.R
        while True:
            changed = False
            keys = self.order(rows)
            for B1 in keys:
                for B2 in keys:
                    B = B1 | B2
                    new = {R.mul(x, y) for x in list(rows[B1]) for y in list(rows[B2])}
                    fresh = [z for z in new if not any(R.leq(z, g) for g in rows[B])]
                    if fresh:
                        rows[B] = set(R.maxima(rows[B] | set(fresh)))
                        changed = True
            if not changed:
                return


def tlx_alphabet(R, generators) -> frozenset[int]:
    """Letters used for the TLX operation: the maximal elements, without 0
    unless 0 is all there is.  Smaller letters cannot change the optimum."""
    gens = set(R.maxima(generators))
    if len(gens) > 1:
        gens.discard(R.zero)
    return frozenset(gens)


def saturate(rho: RatingMap, mode: str = "lower", budget: Budget | None = None,
             seed: int | None = None) -> SaturationState:
    """Least saturated set using the lower or the upper TLX bound.

    ``seed`` shuffles the order in which rules are applied; the least
    fixpoint does not depend on it.
    """
    rng = random.Random(seed) if seed is not None else None
    return _Saturator(rho, mode, budget, rng).run()


@dataclass
class SaturationBounds:
    lower: SaturationState
    upper: SaturationState
    certified: bool

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def certify(state: SaturationState, budget: Budget | None = None) -> bool:
    """True when every row is closed under the upper TLX bound."""
    R = state.rating.semiring
    for B, row in state.rows.items():
        Q = tlx_alphabet(R, row.maximal)
        bounds = tlx_imprint(R, sorted(Q), budget, target=row)
        if not bounds.upper <= row:
            return False
    return True


def saturate_bounds(rho: RatingMap, budget: Budget | None = None) -> SaturationBounds:
    lower = saturate(rho, "lower", budget)
    if certify(lower, budget):
        upper = SaturationState(rho, dict(lower.rows), "upper", lower.rounds)
        return SaturationBounds(lower, upper, True)
    return SaturationBounds(lower, saturate(rho, "upper", budget), False)


def audit_fixpoint(state: SaturationState, tlx_op=None) -> list[str]:
    """Re-apply every rule to a finished state; returns the violated rules."""
    rho, R = state.rating, state.rating.semiring
    problems = []
    for B, rs in trivial_elements(rho).items():
        if any((B, r) not in state for r in rs):
            problems.append("trivial")
            break
    for B, row in state.rows.items():
        if any(not (x in row) for x in row.maximal):
            problems.append("downset")
    for B1, r1 in state.rows.items():
        for B2, r2 in state.rows.items():
            if any((B1 | B2, R.mul(x, y)) not in state for x in r1.maximal for y in r2.maximal):
                problems.append("multiplication")
                break
        else:
            continue
        break
    op = tlx_op or (lambda Q: tlx_lower(R, sorted(Q)))
    for B, row in state.rows.items():
        if not op(tlx_alphabet(R, row.maximal)) <= row:
            problems.append("tlx")
            break
    return problems


# ---------------------------------------------------------------- decisions

@dataclass
class CoveringResult:
    result: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"result": self.result, "mode_detail": self.detail}


def decide_covering_reduced(red: CoveringReduction, budget: Budget | None = None) -> CoveringResult:
    bounds = saturate_bounds(red.rating, budget)
    lo = bounds.lower.opt()
    hi = bounds.upper.opt()
    hit_lo = lo.meets(red.in_target)
    hit_hi = hi.meets(red.in_target)
    detail = {"monoid_size": red.morphism.monoid.size, "certified": bounds.certified,
              "exact": bounds.exact, "lower_rounds": bounds.lower.rounds}
    if hit_lo:
        return CoveringResult("not_coverable", detail | {"witness": red.rating.semiring.show(hit_lo[0])})
    if not hit_hi:
        return CoveringResult("coverable", detail)
    return CoveringResult("unknown", detail)


def decide_covering(L0: Dfa, Ls: Sequence[Dfa], budget: Budget | None = None) -> CoveringResult:
    """Is there a TL(AT) cover of L0 each of whose members misses some L in Ls?"""
    return decide_covering_reduced(covering_to_imprint(L0, Ls), budget)


def covering_verdict(L0: Dfa, Ls: Sequence[Dfa]) -> str:
    return decide_covering(L0, Ls).result


def decide_separation(L1: Dfa, L2: Dfa, budget: Budget | None = None) -> CoveringResult:
    res = decide_covering(L1, [L2], budget)
    names = {"coverable": "separable", "not_coverable": "not_separable", "unknown": "unknown"}
    return CoveringResult(names[res.result], res.detail)


def tlat_pairs(alpha: Morphism, budget: Budget | None = None) -> PairSet:
    """TL(AT) pairs of α from one saturation of the canonical rating map.

    (s, t) is a pair exactly when some element of the optimal imprint on A*
    contains both s and t.
    """
    rho = canonical_rating_map(alpha)
    bounds = saturate_bounds(rho, budget)
    lo, hi = bounds.lower.opt(), bounds.upper.opt()
    image = alpha.image()
    sure, unsure = set(), set()
    for s in image:
        for t in image:
            want = (1 << s) | (1 << t)
            if want in lo:
                sure.add((s, t))
            elif want in hi:
                unsure.add((s, t))
    return PairSet(alpha.monoid.size, frozenset(sure), bool(unsure), frozenset(unsure))


def tlat_pairs_by_separation(alpha: Morphism) -> PairSet:
    """Reference implementation: one separation query per pair of elements."""
    image = alpha.image()
    sure, unsure = set(), set()
    pre = {s: preimage_dfa(alpha, [s]) for s in image}
    for s in image:
        for t in image:
            res = decide_separation(pre[s], pre[t]).result
            if res == "not_separable":
                sure.add((s, t))
            elif res == "unknown":
                unsure.add((s, t))
    return PairSet(alpha.monoid.size, frozenset(sure), bool(unsure), frozenset(unsure))


def decide_tl3_st(d: Dfa) -> bool | None:
    """Membership in the third level over ST; None when inconclusive."""
    from .membership import ClassName, decide_membership
    return decide_membership(d, ClassName.TL3_ST).member


def separates_complement(d: Dfa) -> str:
    return decide_separation(d, complement(d)).result
