"""Command line front end.

Every command prints one JSON document tagged ``"format": "tlhier/1"``.
Exit codes: 0 answered, 2 unknown, 3 unsupported base, 4 input error,
5 resource guard.

Language arguments are regular expressions over the ``--alphabet``; an
argument naming an existing ``.json`` file is read as an automaton instead.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .algebra import syntactic_morphism
from .automata import Alphabet, Dfa, automaton_from_json, determinize, minimize, regex_dfa
from .corpus import FAMILIES, build
from .cpairs import pairs_for
from .errors import AlphabetMismatch, BaseUnsupported, InputError, ResourceLimit, TlhierError
from .membership import class_name, decide_membership
from .rating import imprint_of_cover, rating_map_from_json
from .saturation import decide_covering, decide_separation, saturate_bounds, tlat_pairs
from .tl import compile_formula, evaluate, parse_formula, satisfaction
from .tlx import tlx_imprint

FORMAT = "tlhier/1"
EXIT_OK, EXIT_UNKNOWN, EXIT_UNSUPPORTED, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3, 4, 5
COVERING_CLASSES = {"tl2-st", "tl-at"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _alphabet(args) -> Alphabet | None:
    return Alphabet.of(args.alphabet) if getattr(args, "alphabet", None) else None


def _language(text: str, alphabet: Alphabet | None) -> Dfa:
    if text.endswith(".json") and os.path.exists(text):
        data = _read_json(text)
        if isinstance(data, dict) and isinstance(data.get("dfa"), dict):
            data = data["dfa"]      # output of the corpus and compile-formula commands
        auto = automaton_from_json(data)
        d = auto if isinstance(auto, Dfa) else determinize(auto)
        if alphabet is not None and d.alphabet.letters != alphabet.letters:
            raise AlphabetMismatch(f"{text} is over {','.join(d.alphabet.letters)}")
        return minimize(d)
    if alphabet is None:
        raise InputError("--alphabet is required for regular expression inputs")
    return regex_dfa(text, alphabet)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None


def _covering_class(name: str) -> None:
    key = name.strip().lower()
    if key not in COVERING_CLASSES:
        class_name(key)  # raises for unknown or unsupported names
        raise BaseUnsupported(f"covering is only implemented for tl2-st, not {name}")


# ---------------------------------------------------------------- commands

def cmd_monoid(args):
    rec = syntactic_morphism(_language(args.lang, _alphabet(args)))
    return rec.to_json(), EXIT_OK


def cmd_pairs(args):
    alpha = syntactic_morphism(_language(args.lang, _alphabet(args))).morphism
    base = args.base.upper()
    pairs = tlat_pairs(alpha) if base in ("TLAT", "TL-AT") else pairs_for(alpha, base)
    return pairs.to_json(base), EXIT_UNKNOWN if pairs.partial else EXIT_OK


def cmd_member(args):
    res = decide_membership(_language(args.lang, _alphabet(args)), args.klass)
    return res.to_json(), EXIT_UNKNOWN if res.member is None else EXIT_OK


def cmd_separate(args):
    _covering_class(args.klass)
    alph = _alphabet(args)
    res = decide_separation(_language(args.lhs, alph), _language(args.rhs, alph))
    return res.to_json(), EXIT_UNKNOWN if res.result == "unknown" else EXIT_OK


def cmd_cover(args):
    _covering_class(args.klass)
    alph = _alphabet(args)
    res = decide_covering(_language(args.target, alph), [_language(x, alph) for x in args.avoid])
    return res.to_json(), EXIT_UNKNOWN if res.result == "unknown" else EXIT_OK


def cmd_imprint(args):
    rho = rating_map_from_json(_read_json(args.rating))
    if args.cover:
        cover = [_language(x, rho.alphabet if args.alphabet is None else _alphabet(args))
                 for x in args.cover]
        return {"imprint": imprint_of_cover(rho, cover).to_json()}, EXIT_OK
    bounds = saturate_bounds(rho)
    out = {"exact": bounds.exact, "lower": bounds.lower.to_json(), "optimal": bounds.lower.opt().to_json()}
    if not bounds.exact:
        out["upper"] = bounds.upper.to_json()
        out["optimal_upper"] = bounds.upper.opt().to_json()
    return out, EXIT_OK if bounds.exact else EXIT_UNKNOWN


def cmd_tlx_imprint(args):
    rho = rating_map_from_json(_read_json(args.rating))
    try:
        Q = [int(x) for x in args.q.split(",") if x.strip()]
    except ValueError:
        raise InputError("--q expects comma separated semiring elements") from None
    if not Q or any(not 0 <= q < rho.semiring.size for q in Q):
        raise InputError("--q must list elements of the semiring")
    bounds = tlx_imprint(rho.semiring, Q)
    return bounds.to_json(), EXIT_OK if bounds.exact else EXIT_UNKNOWN


def cmd_compile(args):
    alph = _alphabet(args)
    if alph is None:
        raise InputError("--alphabet is required")
    phi = parse_formula(args.formula, alph)
    return {"dfa": compile_formula(phi, alph).to_json()}, EXIT_OK


def cmd_eval(args):
    alph = _alphabet(args)
    if alph is None:
        raise InputError("--alphabet is required")
    phi = parse_formula(args.formula, alph)
    w = alph.word(args.word)
    if not 0 <= args.position <= len(w) + 1:
        raise InputError("position must lie between 0 and |w| + 1")
    return {"holds": evaluate(phi, w, args.position, alph),
            "positions": satisfaction(phi, w)}, EXIT_OK


def cmd_corpus(args):
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}")
    entry = build(args.family, args.k)
    out = entry.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(out, fh, indent=2)
        return {"written": args.out, "states": entry.dfa.n_states}, EXIT_OK
    return out, EXIT_OK


# ---------------------------------------------------------------- wiring

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tlhier", description="Decision procedures for unary temporal logic hierarchies.")
    p.add_argument("--version", action="version", version=f"tlhier {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--alphabet", help="letters, e.g. 'ab' or 'l0,l1'")
        return sp

    sp = add("monoid", cmd_monoid, "syntactic monoid of a language")
    sp.add_argument("--lang", required=True)
    sp = add("pairs", cmd_pairs, "pairs of the syntactic morphism for a base")
    sp.add_argument("--base", required=True, help="st, dd, mod, at or tlat")
    sp.add_argument("--lang", required=True)
    sp = add("member", cmd_member, "class membership")
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--lang", required=True)
    sp = add("separate", cmd_separate, "TL(AT) separation")
    sp.add_argument("--class", dest="klass", default="tl2-st")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp = add("cover", cmd_cover, "TL(AT) covering")
    sp.add_argument("--class", dest="klass", default="tl2-st")
    sp.add_argument("--target", required=True)
    sp.add_argument("--avoid", required=True, nargs="+")
    sp = add("imprint", cmd_imprint, "optimal TL(AT) imprint on A* of a rating map")
    sp.add_argument("--rating", required=True, help="rating map JSON file")
    sp.add_argument("--cover", nargs="+", help="imprint of this explicit cover instead")
    sp = add("tlx-imprint", cmd_tlx_imprint, "bounds on the optimal TLX imprint of Q+")
    sp.add_argument("--rating", required=True, help="semiring JSON file")
    sp.add_argument("--q", required=True, help="comma separated semiring elements")
    sp = add("compile-formula", cmd_compile, "compile a TL formula to a DFA")
    sp.add_argument("--formula", required=True)
    sp = add("eval-formula", cmd_eval, "evaluate a TL formula on a word")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--position", type=int, default=0)
    sp = add("corpus", cmd_corpus, "generate a witness language")
    sp.add_argument("--family", required=True, help=", ".join(FAMILIES))
    sp.add_argument("--k", "--n", dest="k", type=int, required=True)
    sp.add_argument("--out")
    return p


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Execute one command; returns the exit code and the JSON payload."""
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        payload, code = args.func(args)
        payload = {"format": FORMAT, "command": args.command, **payload}
    except BaseUnsupported as exc:
        payload, code = {"format": FORMAT, "error": exc.to_json()}, EXIT_UNSUPPORTED
    except ResourceLimit as exc:
        payload, code = {"format": FORMAT, "error": exc.to_json()}, EXIT_RESOURCE
    except (InputError, TlhierError) as exc:
        payload, code = {"format": FORMAT, "error": exc.to_json()}, EXIT_INPUT
    payload["version"] = __version__
    payload["elapsed_seconds"] = round(time.perf_counter() - start, 4)
    return code, payload


def main(argv: list[str] | None = None) -> int:
    try:
        code, payload = run(argv)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    json.dump(payload, sys.stdout, indent=2, sort_keys=False, default=_jsonable)
    sys.stdout.write("\n")
    return code


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"cannot serialise {type(x).__name__}")


if __name__ == "__main__":
    sys.exit(main())
