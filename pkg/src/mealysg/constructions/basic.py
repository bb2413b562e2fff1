from __future__ import annotations

import itertools
import logging
from collections import deque

from ..core import InputError, MealyAutomaton, fresh_name, validate

log = logging.getLogger(__name__)


def tuple_name(parts) -> str:
    return "(" + ",".join(parts) + ")"


def require_valid(automaton: MealyAutomaton, what: str = "automaton") -> None:
    defects = validate(automaton)
    if defects:
        raise InputError(f"{what} is not a valid Mealy automaton: {defects[0]}")


def acts_as_identity(automaton: MealyAutomaton, q: int) -> bool:
    """True iff every state reachable from ``q`` copies its input symbol."""
    seen = {q}
    todo = deque([q])
    while todo:
        r = todo.popleft()
        for b in range(automaton.n_symbols):
            if automaton.out[r][b] != b:
                return False
            t = automaton.next[r][b]
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return True


def disjoint_names(groups, suffixes):
    """Keep names as they are unless two groups collide; then suffix every group."""
    flat = [n for g in groups for n in g]
    if len(set(flat)) == len(flat):
        return [list(g) for g in groups]
    return [[f"{n}{sfx}" for n in g] for g, sfx in zip(groups, suffixes)]


def adjoin_identity(automaton: MealyAutomaton) -> MealyAutomaton:
    """Add a state ``1`` that fixes every symbol."""
    require_valid(automaton)
    one = fresh_name("1", automaton.states)
    nb = automaton.n_symbols
    q1 = automaton.n_states
    return MealyAutomaton(
        automaton.states + (one,),
        automaton.alphabet,
        automaton.next + (tuple(q1 for _ in range(nb)),),
        automaton.out + (tuple(range(nb)),),
        automaton.notes + (f"adjoined identity state {one}",),
    )


def adjoin_zero(automaton: MealyAutomaton) -> MealyAutomaton:
    """Add a symbol ``0^`` and a sink state ``z`` that writes ``0^`` forever.

    Old states copy ``0^`` and stay put, so ``z`` is a two-sided zero.
    """
    require_valid(automaton)
    zsym_name = fresh_name("0^", automaton.alphabet)
    zname = fresh_name("z", automaton.states)
    nb = automaton.n_symbols
    zs, zq = nb, automaton.n_states
    nxt = tuple(row + (q,) for q, row in enumerate(automaton.next)) + (tuple(zq for _ in range(nb + 1)),)
    out = tuple(row + (zs,) for row in automaton.out) + (tuple(zs for _ in range(nb + 1)),)
    return MealyAutomaton(
        automaton.states + (zname,),
        automaton.alphabet + (zsym_name,),
        nxt,
        out,
        automaton.notes + (f"adjoined zero state {zname} with symbol {zsym_name}",),
    )


def _product(factors: list[MealyAutomaton], note: str) -> MealyAutomaton:
    for f in factors:
        require_valid(f)
    state_tuples = list(itertools.product(*(range(f.n_states) for f in factors)))
    symbol_tuples = list(itertools.product(*(range(f.n_symbols) for f in factors)))
    s_ix = {t: i for i, t in enumerate(state_tuples)}
    b_ix = {t: i for i, t in enumerate(symbol_tuples)}
    nxt, out = [], []
    for qs in state_tuples:
        n_row, o_row = [], []
        for bs in symbol_tuples:
            pairs = [f.transition(q, b) for f, q, b in zip(factors, qs, bs)]
            n_row.append(s_ix[tuple(p[0] for p in pairs)])
            o_row.append(b_ix[tuple(p[1] for p in pairs)])
        nxt.append(tuple(n_row))
        out.append(tuple(o_row))
    return MealyAutomaton(
        tuple(tuple_name(f.states[q] for f, q in zip(factors, qs)) for qs in state_tuples),
        tuple(tuple_name(f.alphabet[b] for f, b in zip(factors, bs)) for bs in symbol_tuples),
        tuple(nxt),
        tuple(out),
        (note,),
    )


def direct_product(a1: MealyAutomaton, a2: MealyAutomaton) -> MealyAutomaton:
    """Componentwise automaton on pairs of states and pairs of symbols."""
    return _product([a1, a2], "direct product")


def direct_power(automaton: MealyAutomaton, n: int) -> MealyAutomaton:
    if n < 1:
        raise InputError("power must be at least 1")
    return _product([automaton] * n, f"direct power {n}")
