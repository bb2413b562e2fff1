"""Command-line interface: ``mealysg <command> ...``.

Exit codes: 0 success (or "equal"), 1 a negative answer (not equal, defects
found, no witness), 2 bad input.
"""

from __future__ import annotations

import argparse
import shlex
import sys

from . import catalog
from .algebra import GeneratorHom, idempotents
from .constructions import (
    ActExtensionSpec,
    FreeProductFiniteSpec,
    FreeProductGeneralSpec,
    IdealExtensionSpec,
    ReesSpec,
    SemilatticeSpec,
    act_extension,
    adjoin_identity,
    adjoin_zero,
    direct_power,
    direct_product,
    find_identity_state,
    free_product_finite,
    free_product_general,
    ideal_extension,
    rees_matrix,
    strong_semilattice,
    wreath_product,
)
from .core import (
    EventuallyPeriodicString,
    MealyError,
    act,
    act_eventually_periodic,
    export_dot,
    minimize,
    validate,
)
from .formats import (
    parse_automaton,
    parse_map,
    parse_semigroup,
    parse_valuation,
    quote,
    read_text,
    serialize_automaton,
)
from .oracles import agreement
from .word_problem import PreconditionError, ball, equal, periodic_by_recursion, refute_N0_valuation, words_up_to


class UsageError(MealyError):
    pass


def _automaton(path: str):
    return parse_automaton(read_text(path))


def _semigroup(path: str):
    return parse_semigroup(read_text(path))


def _map(path: str):
    return parse_map(read_text(path))


def _tokens(text: str) -> list[str]:
    try:
        return shlex.split(text)
    except ValueError as exc:
        raise UsageError(f"cannot split {text!r}: {exc}") from None


def _word(A, text: str):
    names = _tokens(text)
    if not names:
        raise UsageError("words must be nonempty")
    return A.word(names)


def _string(A, text: str):
    return A.string(_tokens(text))


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _symbols(A, s) -> str:
    return " ".join(quote(c) for c in A.symbol_names(s))


def _pick_idempotent(S, name: str | None) -> int:
    if name is not None:
        return S.index(name)
    found = idempotents(S)
    if not found:
        raise UsageError("finite semigroup has no idempotent")
    return found[0]


def _pick_identity(A, name: str | None) -> int:
    if name is not None:
        return A.state(name)
    q = find_identity_state(A)
    if q is None:
        raise UsageError("no state acts as the identity; name an idempotent state")
    return q


# -- build --------------------------------------------------------------------


def _build(args) -> str:
    kind = args.kind
    if kind == "free-product-finite":
        S, T = _semigroup(args.left), _semigroup(args.right)
        spec = FreeProductFiniteSpec(S, T, _pick_idempotent(S, args.left_state), _pick_idempotent(T, args.right_state))
        A = free_product_finite(spec)
    elif kind == "free-product":
        A1, A2 = _automaton(args.left), _automaton(args.right)
        mode = "asserted-homogeneous" if args.asserted_homogeneous else "idempotent-verified"
        spec = FreeProductGeneralSpec(A1, A2, _pick_identity(A1, args.left_state), _pick_identity(A2, args.right_state), mode)
        A = free_product_general(spec)
    elif kind == "wreath":
        A = wreath_product(_automaton(args.automaton), _semigroup(args.top), args.identity_state)
    elif kind == "rees":
        base = _automaton(args.automaton)
        identity = args.identity or base.states[_pick_identity(base, None)]
        spec = ReesSpec(
            base, identity, tuple(_tokens(args.rows)), tuple(_tokens(args.cols)),
            _map(args.matrix), _map(args.left_mult) if args.left_mult else {},
        )
        A = rees_matrix(spec)
    elif kind == "semilattice":
        if not args.part or len(args.part) != len(args.hom or []):
            raise UsageError("give one --hom per --part")
        parts = tuple(_automaton(p) for p in args.part)
        base = _semigroup(args.base)
        homs = tuple(GeneratorHom.from_names(p, base, _map(h)) for p, h in zip(parts, args.hom))
        A = strong_semilattice(SemilatticeSpec(parts, base, base.index(args.zero), homs, args.bound))
    elif kind == "ideal-ext":
        base, S = _automaton(args.automaton), _semigroup(args.ideal)
        spec = IdealExtensionSpec(base, S, S.index(args.zero), _map(args.left), _map(args.right), args.bound)
        A = ideal_extension(spec)
    elif kind == "sx":
        spec = ActExtensionSpec(_automaton(args.automaton), tuple(_tokens(args.points)), _map(args.action), args.bound)
        A = act_extension(spec)
    elif kind == "adjoin-zero":
        A = adjoin_zero(_automaton(args.automaton))
    elif kind == "adjoin-identity":
        A = adjoin_identity(_automaton(args.automaton))
    elif kind == "product":
        A = direct_product(_automaton(args.automaton), _automaton(args.other))
    elif kind == "power":
        A = direct_power(_automaton(args.automaton), args.n)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown construction {kind}")
    return serialize_automaton(A)


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    A = parse_automaton(read_text(args.automaton), strict=False)
    defects = validate(A)
    for d in defects:
        print(d)
    if not defects:
        print(f"ok: {A.n_states} states, {A.n_symbols} symbols")
    return 1 if defects else 0


def cmd_build(args) -> int:
    _emit(_build(args), args.output)
    return 0


def cmd_eq(args) -> int:
    A = _automaton(args.automaton)
    res = equal(A, _word(A, args.u), _word(A, args.v))
    if res.equal:
        print(f"equal (explored {res.explored} configurations)")
        return 0
    w = res.witness
    u, v = _word(A, args.u), _word(A, args.v)
    print("not equal")
    print(f"witness: {_symbols(A, w)}")
    print(f"u: {_symbols(A, act(A, u, w))}")
    print(f"v: {_symbols(A, act(A, v, w))}")
    return 1


def cmd_act(args) -> int:
    A = _automaton(args.automaton)
    w = _word(A, args.word)
    if (args.string is None) == (args.periodic is None):
        raise UsageError("give exactly one of --string and --periodic")
    if args.string is not None:
        print(_symbols(A, act(A, w, _string(A, args.string))))
        return 0
    if ":" not in args.periodic:
        raise UsageError("--periodic takes 'prefix:period'")
    pre, per = args.periodic.split(":", 1)
    image = act_eventually_periodic(A, w, EventuallyPeriodicString.of(_string(A, pre), _string(A, per)))
    print(f"prefix: {_symbols(A, image.prefix)}")
    print(f"period: {_symbols(A, image.period)}")
    if args.depth:
        print(f"first {args.depth}: {_symbols(A, image.unroll(args.depth))}")
    return 0


def cmd_ball(args) -> int:
    A = _automaton(args.automaton)
    reps, growth = ball(A, args.radius)
    if args.growth:
        print(" ".join(map(str, growth)))
    else:
        for w in reps:
            print(" ".join(quote(q) for q in A.state_names(w)))
    return 0


def cmd_minimize(args) -> int:
    M, _ = minimize(_automaton(args.automaton))
    _emit(serialize_automaton(M), args.output)
    return 0


def cmd_dot(args) -> int:
    _emit(export_dot(_automaton(args.automaton)), args.output)
    return 0


def cmd_periodic(args) -> int:
    A = _automaton(args.automaton)
    try:
        found = periodic_by_recursion(A, A.state(args.state), A.state(args.zero))
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 2
    if found is None:
        print("no period found")
        return 1
    print(f"{found[0]} {found[1]}")
    return 0


def cmd_refute(args) -> int:
    A = _automaton(args.automaton)
    witness = refute_N0_valuation(A, parse_valuation(read_text(args.valuation)))
    print(witness.describe(A))
    return 1 if witness.kind == "Inconclusive" else 0


def cmd_oracle_check(args) -> int:
    ex = catalog.example(args.construction)
    A, model = ex.build(), ex.model()
    words = list(words_up_to(A.n_states, args.length))
    problems = agreement(A, model, words)
    for p in problems[: args.show]:
        print(p.describe(A))
    print(f"{args.construction}: {len(words)} words, {len(problems)} discrepancies")
    return 1 if problems else 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mealysg", description="Mealy automata and the semigroups they generate.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an automaton file for missing or bad transitions")
    s.add_argument("automaton")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("build", help="compile a construction into an automaton")
    s.add_argument("kind", choices=[
        "free-product-finite", "free-product", "wreath", "rees", "semilattice", "ideal-ext", "sx",
        "adjoin-zero", "adjoin-identity", "product", "power",
    ])
    s.add_argument("automaton", nargs="?", help="base automaton (all kinds except free products and semilattice)")
    s.add_argument("-o", "--output")
    s.add_argument("--left", help="left factor (.sg or .mealy); left action map for ideal-ext")
    s.add_argument("--right", help="right factor (.sg or .mealy); right action map for ideal-ext")
    s.add_argument("--left-state", help="idempotent of the left factor")
    s.add_argument("--right-state", help="idempotent of the right factor")
    s.add_argument("--asserted-homogeneous", action="store_true",
                   help="skip the idempotent check for free products and mark the result unverified")
    s.add_argument("--top", help="finite top monoid for wreath")
    s.add_argument("--identity-state", help="identity state of the base automaton for wreath")
    s.add_argument("--identity", help="identity state for rees")
    s.add_argument("--rows", help="row indices I for rees, space separated")
    s.add_argument("--cols", help="column indices Lambda for rees, space separated")
    s.add_argument("--matrix", help="map file 'lam i -> state'")
    s.add_argument("--left-mult", help="map file 'p x -> y' of left-multiplication claims")
    s.add_argument("--part", action="append", help="automaton of an upper part (repeatable)")
    s.add_argument("--hom", action="append", help="map file 'state -> base element' for each part")
    s.add_argument("--base", help="finite base semigroup")
    s.add_argument("--zero", help="right zero of the base (semilattice) or of the ideal (ideal-ext)")
    s.add_argument("--ideal", help="finite ideal semigroup for ideal-ext")
    s.add_argument("--points", help="point names for sx, space separated")
    s.add_argument("--action", help="map file 'state point -> point' for sx")
    s.add_argument("--other", help="second automaton for product")
    s.add_argument("--n", type=int, default=2, help="exponent for power")
    s.add_argument("--bound", type=int, default=3, help="word length for compatibility checks")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("eq", help="decide whether two words are equal")
    s.add_argument("automaton")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("act", help="apply a word to a finite or eventually periodic string")
    s.add_argument("automaton")
    s.add_argument("word")
    s.add_argument("--string")
    s.add_argument("--periodic", help="'prefix:period' with space separated symbols")
    s.add_argument("--depth", type=int, default=0, help="also print this many symbols of a periodic image")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("ball", help="enumerate elements by word length")
    s.add_argument("automaton")
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--growth", action="store_true", help="print only the growth counts")
    s.set_defaults(func=cmd_ball)

    s = sub.add_parser("minimize", help="merge behaviourally equivalent states")
    s.add_argument("automaton")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("dot", help="export in Graphviz DOT")
    s.add_argument("automaton")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("periodic", help="find m < n with q^m = q^n for a state recursing to itself and a zero")
    s.add_argument("automaton")
    s.add_argument("--state", required=True)
    s.add_argument("--zero", required=True)
    s.set_defaults(func=cmd_periodic)

    s = sub.add_parser("refute", help="refute a claimed embedding into N with a zero")
    s.add_argument("automaton")
    s.add_argument("--valuation", required=True)
    s.set_defaults(func=cmd_refute)

    s = sub.add_parser("oracle-check", help="compare a shipped construction with its algebraic model")
    s.add_argument("--construction", required=True, choices=list(catalog.EXAMPLES))
    s.add_argument("--length", type=int, default=2, help="maximum word length")
    s.add_argument("--show", type=int, default=10, help="discrepancies to print")
    s.set_defaults(func=cmd_oracle_check)
    return p


def _check_build_args(args) -> None:
    needs_base = {"wreath", "rees", "ideal-ext", "sx", "adjoin-zero", "adjoin-identity", "product", "power"}
    required = {
        "free-product-finite": ["left", "right"],
        "free-product": ["left", "right"],
        "wreath": ["top"],
        "rees": ["rows", "cols", "matrix"],
        "semilattice": ["base", "zero"],
        "ideal-ext": ["ideal", "zero", "left", "right"],
        "sx": ["points", "action"],
        "product": ["other"],
    }
    if args.kind in needs_base and not args.automaton:
        raise UsageError(f"build {args.kind} needs a base automaton")
    for name in required.get(args.kind, []):
        if getattr(args, name) is None:
            raise UsageError(f"build {args.kind} needs --{name.replace('_', '-')}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            _check_build_args(args)
        return args.func(args)
    except (MealyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
