"""Wreath products with a finite monoid and Rees matrix semigroups."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Mapping

from ..algebra import FiniteSemigroup, right_zeros_and_identity
from ..core import InputError, MealyAutomaton, fresh_name
from ..word_problem import are_equal
from .basic import acts_as_identity, adjoin_identity, require_valid, tuple_name

log = logging.getLogger(__name__)


def find_identity_state(automaton: MealyAutomaton) -> int | None:
    return next((q for q in range(automaton.n_states) if acts_as_identity(automaton, q)), None)


def wreath_product(
    automaton: MealyAutomaton, top: FiniteSemigroup, identity_state: str | int | None = None
) -> MealyAutomaton:
    """Automaton for ``S wr T`` where ``S`` is generated by ``automaton``.

    States are pairs ``(s, t)`` with ``s`` a ``|T|``-tuple of states (indexed
    by the elements of ``T`` in table order) and symbols are pairs ``(a, b)``
    with ``a`` a ``|T|``-tuple of symbols.  Reading ``(a, b)`` in ``(s, t)``
    first permutes ``s`` by ``s^b[i] = s[t_i b]``, runs the permuted tuple on
    ``a`` componentwise, moves to ``(., 1)`` and emits ``(., b t)``.
    """
    require_valid(automaton)
    _, one = right_zeros_and_identity(top)
    if one is None:
        raise InputError("top semigroup must be a monoid")
    if identity_state is None:
        identity_state = find_identity_state(automaton)
        if identity_state is None:
            log.warning("no identity state; adjoining one (this builds S^1 wr T)")
            automaton = adjoin_identity(automaton)
            identity_state = automaton.n_states - 1
    elif isinstance(identity_state, str):
        identity_state = automaton.state(identity_state)
    if not acts_as_identity(automaton, identity_state):
        raise InputError(f"state {automaton.states[identity_state]} does not act as the identity")

    n = len(top)
    tuples = list(itertools.product(range(automaton.n_states), repeat=n))
    sym_tuples = list(itertools.product(range(automaton.n_symbols), repeat=n))
    s_ix = {(s, t): i for i, (s, t) in enumerate(itertools.product(tuples, range(n)))}
    c_ix = {(a, b): i for i, (a, b) in enumerate(itertools.product(sym_tuples, range(n)))}

    def state_name(s, t):
        return tuple_name([tuple_name(automaton.states[q] for q in s), top.names[t]])

    def symbol_name(a, b):
        return tuple_name([tuple_name(automaton.alphabet[x] for x in a), top.names[b]])

    nxt = [[0] * len(c_ix) for _ in s_ix]
    out = [[0] * len(c_ix) for _ in s_ix]
    for (s, t), i in s_ix.items():
        for (a, b), j in c_ix.items():
            moved = [automaton.transition(s[top.mul(k, b)], a[k]) for k in range(n)]
            nxt[i][j] = s_ix[tuple(m[0] for m in moved), one]
            out[i][j] = c_ix[tuple(m[1] for m in moved), top.mul(b, t)]
    return MealyAutomaton(
        tuple(state_name(s, t) for s, t in s_ix),
        tuple(symbol_name(a, b) for a, b in c_ix),
        tuple(map(tuple, nxt)),
        tuple(map(tuple, out)),
        (f"wreath product with a monoid of order {n}",),
    )


@dataclass(frozen=True)
class ReesSpec:
    """Data for a Rees matrix semigroup over the monoid generated by ``automaton``.

    ``entries[(lam, i)]`` is the state at matrix position ``(lam, i)`` and
    ``left_mult[(p, x)] = y`` claims ``p x = y`` for every non-identity entry
    ``p`` and state ``x``; each claim is checked with the word problem.
    """

    automaton: MealyAutomaton
    identity: str
    I: tuple[str, ...]
    Lambda: tuple[str, ...]
    entries: Mapping[tuple[str, str], str]
    left_mult: Mapping[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        A = self.automaton
        require_valid(A)
        one = A.state(self.identity)
        if not acts_as_identity(A, one):
            raise InputError(f"{self.identity} does not act as the identity")
        if not self.I or not self.Lambda:
            raise InputError("index sets must be nonempty")
        for lam in self.Lambda:
            for i in self.I:
                if (lam, i) not in self.entries:
                    raise InputError(f"matrix entry ({lam}, {i}) missing")
                A.state(self.entries[lam, i])
        if self.identity not in self.entries.values():
            raise InputError("no matrix entry is the identity")
        for p in sorted(set(self.entries.values())):
            if p == self.identity:
                continue
            for x in A.states:
                if (p, x) not in self.left_mult:
                    raise InputError(f"no left-multiplication claim for ({p}, {x})")
                y = self.left_mult[p, x]
                if not are_equal(A, A.word([p, x]), A.word([y])):
                    raise InputError(f"left-multiplication claim fails: {p} {x} != {y}")

    def times(self, p: str, x: str) -> str:
        return x if p == self.identity else self.left_mult[p, x]


def rees_matrix(spec: ReesSpec) -> MealyAutomaton:
    A = spec.automaton
    I, L = spec.I, spec.Lambda
    tag = fresh_name("e", I)
    one_i, one_l = I[0], L[0]

    def st(j, x, mu):
        return tuple_name([j, x, mu])

    def tagged(i, lam):
        return tuple_name([i, lam])

    extra = [tagged(i, lam) for i in (tag,) + I for lam in L]
    alphabet = list(A.alphabet) + [fresh_name(c, A.alphabet) for c in extra]
    c_name = dict(zip(extra, alphabet[A.n_symbols:]))
    states = [st(j, x, mu) for j in I for x in A.states for mu in L]

    delta = {}
    for j in I:
        for xi, x in enumerate(A.states):
            for mu in L:
                q = st(j, x, mu)
                for lam in L:
                    delta[q, c_name[tagged(tag, lam)]] = (st(one_i, x, one_l), c_name[tagged(j, mu)])
                    for i in I:
                        y = spec.times(spec.entries[lam, j], x)
                        delta[q, c_name[tagged(i, lam)]] = (st(one_i, y, one_l), c_name[tagged(i, mu)])
                for a in range(A.n_symbols):
                    r, c = A.transition(xi, a)
                    delta[q, A.alphabet[a]] = (st(one_i, A.states[r], one_l), A.alphabet[c])
    return MealyAutomaton.from_transitions(
        states, alphabet, delta, notes=[f"Rees matrix semigroup, |I|={len(I)}, |Lambda|={len(L)}"]
    )


def rees_state(j: str, x: str, mu: str) -> str:
    return tuple_name([j, x, mu])

