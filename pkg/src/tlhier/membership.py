"""Equational membership tests on syntactic monoids."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .algebra import Monoid, RecognizedLanguage, idempotents, syntactic_morphism
from .automata import Dfa, show
from .cpairs import PairSet, at_pairs, dd_pairs, mod_pairs, st_pairs
from .errors import BaseUnsupported, InputError


class ClassName(str, Enum):
    SF = "sf"
    TL_ST = "tl-st"
    TLX = "tlx"
    TL_MOD = "tl-mod"
    TL2_ST = "tl2-st"
    IPOL2_ST = "ipol2-st"
    TL3_ST = "tl3-st"


ALIASES = {
    "sf": ClassName.SF, "tl-st": ClassName.TL_ST, "tlx": ClassName.TLX, "tl-dd": ClassName.TLX,
    "tl-mod": ClassName.TL_MOD, "tl2-st": ClassName.TL2_ST, "tl-at": ClassName.TL2_ST,
    "ipol2-st": ClassName.IPOL2_ST, "tl3-st": ClassName.TL3_ST,
}
UNSUPPORTED = {"tl-lt", "tl-gr", "tl-amt", "tl2-dd", "tl2-mod"}


def class_name(name: str | ClassName) -> ClassName:
    if isinstance(name, ClassName):
        return name
    key = name.strip().lower().replace("_", "-")
    if key in ALIASES:
        return ALIASES[key]
    if key in UNSUPPORTED:
        raise BaseUnsupported(f"class {name} is not supported")
    raise InputError(f"unknown class {name!r}")


@dataclass(frozen=True)
class EquationResult:
    holds: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_eq_tl(m: Monoid, pairs: PairSet) -> EquationResult:
    """(esete)^ω = (esete)^ω·ete·(esete)^ω for e idempotent and (e,s),(e,t) pairs."""
    M, W = m.mult, m.omega_table
    for e in idempotents(m):
        part = np.array(pairs.partners(e), dtype=np.int64)
        if part.size == 0:
            continue
        # only the distinct values of e·s·e matter
        ese, first = np.unique(M[M[e, part], e], return_index=True)
        x = M[ese[:, None], ese[None, :]]          # es·e·te = ese·ete
        lhs = W[x]
        rhs = M[M[lhs, ese[None, :]], lhs]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j = bad[0]
            return EquationResult(False, (e, int(part[first[i]]), int(part[first[j]])))
    return EquationResult(True)


def check_eq_ipol2(m: Monoid, pairs: PairSet) -> EquationResult:
    """(esete)^(ω+1) = (esete)^ω·ete·(esete)^ω for (e,s) a pair and any t."""
    M, W = m.mult, m.omega_table
    every = np.arange(m.size)
    for e in idempotents(m):
        part = np.array(pairs.partners(e), dtype=np.int64)
        if part.size == 0:
            continue
        ese = M[M[e, part], e]
        ete = M[M[e, every], e]
        x = M[ese[:, None], ete[None, :]]
        wx = W[x]
        lhs = M[wx, x]
        rhs = M[M[wx, ete[None, :]], wx]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j = bad[0]
            return EquationResult(False, (e, int(part[i]), int(every[j])))
    return EquationResult(True)


def is_aperiodic(m: Monoid) -> bool:
    W = m.omega_table
    return bool(np.array_equal(m.mult[W, np.arange(m.size)], W))


@dataclass
class MembershipResult:
    member: bool | None
    klass: ClassName
    monoid_size: int
    witness: tuple[int, int, int] | None = None
    witness_words: dict[str, str] | None = None
    detail: dict = field(default_factory=dict)

    def certificate(self) -> dict | str:
        if self.member is None:
            return {"status": "unknown", **self.detail}
        if self.witness is None:
            return "equation verified"
        out = {"e": self.witness[0], "s": self.witness[1], "t": self.witness[2]}
        if self.witness_words:
            out["words"] = self.witness_words
        return out

    def to_json(self) -> dict:
        return {"class": self.klass.value, "member": self.member,
                "monoid_size": self.monoid_size, "certificate": self.certificate()}


def _words_for(rec: RecognizedLanguage, triple, budget: int) -> dict[str, str] | None:
    reps = rec.morphism.representatives()
    out = {}
    for name, x in zip("est", triple):
        w = reps[x]
        if w is None or len(w) > budget:
            return None
        out[name] = show(w)
    return out


def decide_membership(d: Dfa, klass: str | ClassName, word_budget: int = 12) -> MembershipResult:
    """Decide whether L(d) belongs to the named class via its syntactic monoid."""
    klass = class_name(klass)
    rec = syntactic_morphism(d)
    alpha, m = rec.morphism, rec.monoid
    if klass is ClassName.SF:
        ok = is_aperiodic(m)
        witness = None
        if not ok:
            W = m.omega_table
            s = next(s for s in range(m.size) if int(m.mult[W[s], s]) != int(W[s]))
            witness = (int(W[s]), s, s)
        return _result(rec, klass, ok, witness, word_budget)
    if klass is ClassName.TL3_ST:
        from .saturation import tlat_pairs
        pairs = tlat_pairs(alpha)
        res = check_eq_tl(m, pairs)
        if not pairs.partial or not res.holds:
            # certain pairs suffice to refute; with no uncertainty they also confirm
            return _result(rec, klass, res.holds, res.witness, word_budget)
        # the equation is monotone in the pair set: passing with every
        # possible pair confirms membership
        widest = PairSet(m.size, pairs.pairs | pairs.unknown)
        if check_eq_tl(m, widest).holds:
            return _result(rec, klass, True, None, word_budget)
        return MembershipResult(None, klass, m.size,
                                detail={"reason": "pair computation was inconclusive",
                                        "unknown_pairs": [list(p) for p in sorted(pairs.unknown)]})
    engine = {ClassName.TL_ST: st_pairs, ClassName.TLX: dd_pairs, ClassName.TL_MOD: mod_pairs,
              ClassName.TL2_ST: at_pairs, ClassName.IPOL2_ST: st_pairs}[klass]
    pairs = engine(alpha)
    check = check_eq_ipol2 if klass is ClassName.IPOL2_ST else check_eq_tl
    res = check(m, pairs)
    return _result(rec, klass, res.holds, res.witness, word_budget)


def _result(rec, klass, ok, witness, budget) -> MembershipResult:
    words = _words_for(rec, witness, budget) if witness is not None else None
    return MembershipResult(bool(ok), klass, rec.monoid.size, witness, words)
