"""Two-sided bounds on optimal TLX imprints of Q⁺ for the rating map π(q) = q.

Here TLX is unary temporal logic with the next/previous modalities, i.e.
the logic whose parameters are {∅, {ε}, A⁺, A*}.  A morphism onto a finite
monoid recognises only TLX languages exactly when its image satisfies

    (esete)^ω = (esete)^ω · ete · (esete)^ω

for every idempotent e and all s, t forming pairs with e for that base.

Lower bound
    The least set containing the letters that is closed under downset,
    product, and the merge rule: for r1, r2, r3 in the set with e = r1^ω
    and x = e·r2·e·r3·e, it contains x^ω + x^ω·e·r3·e·x^ω.  Every TLX
    morphism merges the two sides of the equation, so each such sum is
    below the rating of a single class of any TLX cover.

Upper bound
    Each TLX morphism η gives a cover {η⁻¹(n) ∩ Q⁺}; its imprint bounds the
    optimum from above.  Candidates are lifts of the letters inside the
    lower bound, finest TLX quotients of π × λ for small auxiliary
    morphisms λ, and exhaustive search over tiny monoids.

When the bounds meet, the value is certified exact.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import Monoid, Morphism
from .automata import Alphabet
from .cpairs import DDPartners
from .membership import check_eq_tl
from .rating import Imprint, Semiring


@dataclass
class Budget:
    """Search configuration for the upper bound."""

    max_threshold: int = 4
    max_window: int = 2
    max_monoid: int = 3
    max_quotient: int = 4000
    max_lifts: int = 64
    # seconds per upper-bound search; stopping early only loosens the bound
    time_limit: float | None = 10.0

    def escalate(self) -> "Budget":
        return Budget(self.max_threshold * 2, self.max_window + 1, self.max_monoid,
                      self.max_quotient * 4, self.max_lifts * 4, self.time_limit)


@dataclass
class ImprintBounds:
    lower: Imprint
    upper: Imprint
    exact: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"lower": self.lower.to_json(), "upper": self.upper.to_json(), "exact": self.exact,
                **({"detail": self.detail} if self.detail else {})}


def _letters(Q: Sequence[int]) -> Alphabet:
    return Alphabet(tuple(f"q{i}" for i in range(len(Q))))


# ---------------------------------------------------------------- morphism test

def tw_violations(m: Monoid, pairs) -> list[tuple[int, int]]:
    """All (lhs, rhs) with lhs = (esete)^ω != rhs = lhs·ete·lhs."""
    M, W = m.mult, m.omega_table
    out = set()
    for e in range(m.size):
        if int(M[e, e]) != e:
            continue
        part = np.array(pairs.partners(e), dtype=np.int64)
        if part.size == 0:
            continue
        ete = np.unique(M[M[e, part], e])
        x = M[ete[:, None], ete[None, :]]
        lhs = W[x]
        rhs = M[M[lhs, ete[None, :]], lhs]
        for i, j in np.argwhere(lhs != rhs):
            out.add((int(lhs[i, j]), int(rhs[i, j])))
    return sorted(out)


def is_tlx_morphism(eta: Morphism) -> bool:
    return check_eq_tl(eta.monoid, DDPartners(eta)).holds


# ---------------------------------------------------------------- lower bound

def tlx_lower(R: Semiring, Q: Iterable[int], max_rounds: int = 10_000) -> Imprint:
    """Least downset containing Q closed under product and the merge rule.

    The merge rule sends e = r1^ω, a = e·r2·e, b = e·r3·e to
    x^ω + x^ω·b·x^ω with x = a·b.  Its output depends on (a, b) alone and
    is monotone in both, so each pair of maximal sandwiches is handled once.
    """
    Q = list(Q)
    gens = set(R.maxima(Q))
    if not gens:
        return Imprint(R, ())
    done_mul: set[tuple[int, int]] = set()
    done_merge: set[tuple[int, int]] = set()
    for _ in range(max_rounds):
        cur = sorted(gens)
        new = set()
        for x in cur:
            for y in cur:
                if (x, y) not in done_mul:
                    done_mul.add((x, y))
                    new.add(R.mul(x, y))
        for e in {R.omega(r) for r in cur}:
            sand = R.maxima(R.mul(R.mul(e, r), e) for r in cur)
            for a2 in sand:
                for b2 in sand:
                    if (a2, b2) in done_merge:
                        continue
                    done_merge.add((a2, b2))
                    xw = R.omega(R.mul(a2, b2))
                    new.add(R.add(xw, R.mul(R.mul(xw, b2), xw)))
        merged = R.maxima(gens | new)
        if merged == gens:
            break
        gens = set(merged)
    return Imprint.from_maximal(R, frozenset(gens))


# ---------------------------------------------------------------- upper bound

def morphism_imprint(R: Semiring, Q: Sequence[int], eta: Morphism) -> Imprint:
    """↓{π(η⁻¹(n) ∩ Q⁺)} for a morphism η over the letters of Q."""
    M = eta.monoid.mult
    start = {(g, q) for g, q in zip(eta.images, Q)}
    seen = set(start)
    stack = list(start)
    while stack:
        n, r = stack.pop()
        for g, q in zip(eta.images, Q):
            nxt = (int(M[n, g]), R.mul(r, q))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    classes: dict[int, int] = {}
    for n, r in seen:
        classes[n] = R.add(classes.get(n, R.zero), r)
    return Imprint(R, classes.values())


def _monoid_from_closure(letters: Sequence, mul, identity_key,
                         limit: int | None = None) -> tuple[Monoid, list[int]] | None:
    """Monoid T¹ generated by ``letters`` under ``mul``; element 0 is a formal identity.

    Returns None when more than ``limit`` elements appear.
    """
    keys = [identity_key]
    index = {identity_key: 0}
    images = []
    for g in letters:
        if g not in index:
            index[g] = len(keys)
            keys.append(g)
        images.append(index[g])
    i = 1
    while i < len(keys):
        for g in letters:
            h = mul(keys[i], g)
            if h not in index:
                index[h] = len(keys)
                keys.append(h)
        if limit is not None and len(keys) > limit:
            return None
        i += 1
    n = len(keys)
    mult = np.empty((n, n), dtype=np.int64)
    mult[0, :] = np.arange(n)
    mult[:, 0] = np.arange(n)
    for i in range(1, n):
        for j in range(1, n):
            mult[i, j] = index[mul(keys[i], keys[j])]
    return Monoid(mult, 0, validate=False), images


def _lift_candidates(R: Semiring, Q: Sequence[int], lower: Imprint, budget: Budget):
    """Lifts q ↦ ψ(q) ≥ q with ψ(q) maximal in the lower bound."""
    choices = [sorted(g for g in lower.maximal if R.leq(q, g)) for q in Q]
    for combo in itertools.islice(itertools.product(*choices), budget.max_lifts):
        yield list(combo)


def _quotient_tlx(eta: Morphism, limit: int) -> Morphism | None:
    """Finest quotient of η whose image satisfies the TLX equation."""
    m = eta.monoid
    n = m.size
    if n > limit:
        return None
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    M = m.mult
    gens = sorted(set(eta.images))

    def merge(pairs):
        stack = list(pairs)
        while stack:
            a, b = stack.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            parent[max(ra, rb)] = min(ra, rb)
            for g in gens:
                stack.append((int(M[a, g]), int(M[b, g])))
                stack.append((int(M[g, a]), int(M[g, b])))

    while True:
        reps = sorted({find(x) for x in range(n)})
        idx = {r: i for i, r in enumerate(reps)}
        cls = np.array([idx[find(x)] for x in range(n)], dtype=np.int64)
        qmult = np.empty((len(reps), len(reps)), dtype=np.int64)
        qmult[cls[:, None], cls[None, :]] = cls[M]
        qmon = Monoid(qmult, int(cls[m.identity]), validate=False)
        qeta = Morphism(eta.alphabet, qmon, [int(cls[g]) for g in eta.images])
        bad = tw_violations(qmon, DDPartners(qeta))
        if not bad:
            return qeta
        merge((reps[a], reps[b]) for a, b in bad)


def _product_with(R: Semiring, Q: Sequence[int], lam: Morphism, limit: int | None = None) -> Morphism | None:
    """The morphism w ↦ (π(w), λ(w)) restricted to its image (None if too large)."""
    lm = lam.monoid.mult
    letters = [(q, g) for q, g in zip(Q, lam.images)]
    ident = ("id",)

    def mul(x, y):
        if x == ident:
            return y
        if y == ident:
            return x
        return (R.mul(x[0], y[0]), int(lm[x[1], y[1]]))

    built = _monoid_from_closure(letters, mul, ident, limit)
    if built is None:
        return None
    return Morphism(_letters(Q), *built)


def threshold_morphism(n_letters: int, k: int) -> Morphism:
    """Length counting up to k: elements 0..k, addition capped at k."""
    size = k + 1
    mult = np.minimum(np.add.outer(np.arange(size), np.arange(size)), k)
    return Morphism(_letters(range(n_letters)), Monoid(mult, 0, validate=False), [min(1, k)] * n_letters)


def window_morphism(n_letters: int, k: int, limit: int | None = None) -> Morphism | None:
    """Words of length <= 2k exactly; longer words by their length-k prefix and suffix."""
    ident = ()

    def mul(x, y):
        x_long, y_long = x[:1] == ("#",), y[:1] == ("#",)
        if not x_long and not y_long and len(x) + len(y) <= 2 * k:
            return x + y
        x_pre, x_suf = (x[1], x[2]) if x_long else (x[:k], x[-k:])
        y_pre, y_suf = (y[1], y[2]) if y_long else (y[:k], y[-k:])
        pre = x_pre if (x_long or len(x) >= k) else (x + y_pre)[:k]
        suf = y_suf if (y_long or len(y) >= k) else (x_suf + y)[-k:]
        return ("#", pre, suf)

    built = _monoid_from_closure([(a,) for a in range(n_letters)], mul, ident, limit)
    if built is None:
        return None
    return Morphism(_letters(range(n_letters)), *built)


def content_morphism_q(n_letters: int) -> Morphism:
    size = 1 << n_letters
    mult = np.bitwise_or.outer(np.arange(size), np.arange(size))
    return Morphism(_letters(range(n_letters)), Monoid(mult, 0, validate=False),
                    [1 << i for i in range(n_letters)])


def _small_monoids(max_size: int) -> list[Monoid]:
    """All monoid tables with identity 0 up to the given size (tiny sizes only)."""
    out = []
    for n in range(1, max_size + 1):
        free = [(i, j) for i in range(1, n) for j in range(1, n)]
        for vals in itertools.product(range(n), repeat=len(free)):
            mult = np.zeros((n, n), dtype=np.int64)
            mult[0, :] = np.arange(n)
            mult[:, 0] = np.arange(n)
            for (i, j), v in zip(free, vals):
                mult[i, j] = v
            if np.array_equal(mult[mult], mult[np.arange(n)[:, None, None], mult[None, :, :]]):
                out.append(Monoid(mult, 0, validate=False))
    return out


_SMALL_CACHE: dict[int, list[Monoid]] = {}


def _exhaustive_candidates(n_letters: int, max_size: int):
    if max_size not in _SMALL_CACHE:
        _SMALL_CACHE[max_size] = _small_monoids(max_size)
    alph = _letters(range(n_letters))
    for mon in _SMALL_CACHE[max_size]:
        if mon.size ** n_letters > 4096:
            continue
        for images in itertools.product(range(mon.size), repeat=n_letters):
            eta = Morphism(alph, mon, list(images))
            if eta.is_surjective() and is_tlx_morphism(eta):
                yield eta


def tlx_upper(R: Semiring, Q: Sequence[int], budget: Budget | None = None,
              lower: Imprint | None = None, target: Imprint | None = None) -> Imprint:
    """Intersection of the imprints of the candidate TLX morphisms.

    The search stops early once the bound lies inside ``target`` (default:
    ``lower``), since further candidates cannot be needed by the caller.
    """
    budget = budget or Budget()
    Q = list(Q)
    alph = _letters(Q)
    goal = target if target is not None else lower
    best = morphism_imprint(R, Q, Morphism(alph, Monoid([[0]], validate=False), [0] * len(Q)))
    if goal is not None and best <= goal:
        return best
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    for eta in _upper_candidates(R, Q, budget, lower):
        best = best.intersection(morphism_imprint(R, Q, eta))
        if goal is not None and best <= goal:
            break
        if deadline is not None and time.monotonic() > deadline:
            break
    return best


def _upper_candidates(R: Semiring, Q: Sequence[int], budget: Budget, lower: Imprint | None):
    alph = _letters(Q)
    n = len(Q)
    if lower is not None:
        for combo in _lift_candidates(R, Q, lower, budget):
            built = _monoid_from_closure(combo, R.mul, ("id",), budget.max_quotient)
            if built is None:
                continue
            eta = Morphism(alph, *built)
            if is_tlx_morphism(eta):
                yield eta
    def lams():
        yield Morphism(alph, Monoid([[0]], validate=False), [0] * n)
        if n <= 6:
            yield content_morphism_q(n)
        for k in range(1, budget.max_threshold + 1):
            yield threshold_morphism(n, k)
        for k in range(1, budget.max_window + 1):
            yield window_morphism(n, k, budget.max_quotient)

    for lam in lams():
        if lam is None:
            continue
        prod = _product_with(R, Q, lam, budget.max_quotient)
        if prod is None:
            continue
        q = _quotient_tlx(prod, budget.max_quotient)
        if q is not None:
            yield q
    if budget.max_monoid:
        yield from _exhaustive_candidates(n, budget.max_monoid)


def tlx_imprint(R: Semiring, Q: Sequence[int], budget: Budget | None = None,
                escalations: int = 1, target: Imprint | None = None) -> ImprintBounds:
    """Lower and upper bounds on the optimal TLX imprint of Q⁺; exact when equal.

    With ``target`` the upper search may stop as soon as it fits inside it.
    """
    budget = budget or Budget()
    Q = sorted(set(Q))
    lower = tlx_lower(R, Q)
    goal = lower if target is None else target
    upper = tlx_upper(R, Q, budget, lower, goal)
    for _ in range(escalations):
        if upper <= goal:
            break
        budget = budget.escalate()
        upper = upper.intersection(tlx_upper(R, Q, budget, lower, goal))
    assert lower <= upper, "lower bound exceeds upper bound"
    return ImprintBounds(lower, upper, upper <= lower)


def single_letter_exact(R: Semiring, q: int) -> Imprint:
    """Closed form for |Q| = 1 from the threshold t and period p of q."""
    t, p = R.index_period(q)
    powers = [R.power(q, i) for i in range(1, t + p)]
    if p == 1:
        return Imprint(R, powers)
    tail = R.sum(R.power(q, t + i) for i in range(p))
    return Imprint(R, powers[: t - 1] + [tail])
