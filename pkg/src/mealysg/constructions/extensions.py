"""Small extensions: an automaton semigroup with a finite ideal attached,
and the semigroup ``S[X]`` of a right action on a finite set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..algebra import FiniteSemigroup, compose, right_zeros_and_identity, transformation_closure
from ..core import InputError, MealyAutomaton, fresh_name
from ..word_problem import first_inconsistency
from .basic import disjoint_names, require_valid, tuple_name

IDENTITY_TRANSFORMATION = "id"


def _describe(automaton, pair):
    u, v = pair
    return f"{' '.join(automaton.state_names(u))} = {' '.join(automaton.state_names(v))}"


@dataclass(frozen=True)
class IdealExtensionSpec:
    """``S1`` (given by an automaton) together with the finite ideal ``S2``.

    ``left_action[(q, s)]`` is the product ``q s`` and ``right_action[(s, q)]``
    the product ``s q`` in the assembled semigroup, for states ``q`` of the
    automaton and elements ``s`` of ``S2``.
    """

    automaton: MealyAutomaton
    ideal: FiniteSemigroup
    zero: int
    left_action: Mapping[tuple[str, str], str]
    right_action: Mapping[tuple[str, str], str]
    bound: int = 3

    def __post_init__(self):
        A, S = self.automaton, self.ideal
        require_valid(A)
        zeros, _ = right_zeros_and_identity(S)
        if self.zero not in zeros:
            raise InputError(f"{S.names[self.zero]} is not a right zero")
        for q in A.states:
            for s in S.names:
                for table, key in ((self.left_action, (q, s)), (self.right_action, (s, q))):
                    if key not in table:
                        raise InputError(f"action undefined on ({key[0]}, {key[1]})")
                    S.index(table[key])
        lam, rho = self.left_tables(), self.right_tables()
        n = len(S)
        for q, q2 in itertools.product(range(A.n_states), repeat=2):
            for s in range(n):
                # (q s) q2 = q (s q2)
                if rho[q2][lam[q][s]] != lam[q][rho[q2][s]]:
                    raise InputError(
                        f"actions are not associative on {A.states[q]} {S.names[s]} {A.states[q2]}"
                    )
        for q in range(A.n_states):
            for s, t in itertools.product(range(n), repeat=2):
                checks = (
                    (S.mul(lam[q][s], t), lam[q][S.mul(s, t)], "q s t"),
                    (S.mul(rho[q][s], t), S.mul(s, lam[q][t]), "s q t"),
                    (rho[q][S.mul(s, t)], S.mul(s, rho[q][t]), "s t q"),
                )
                for left, right, shape in checks:
                    if left != right:
                        raise InputError(
                            f"actions are not associative ({shape}) with q={A.states[q]}, "
                            f"s={S.names[s]}, t={S.names[t]}"
                        )
        bad = first_inconsistency(A, self.bound, self.induced_transformations)
        if bad is not None:
            raise InputError(f"actions are not compatible with {_describe(A, bad)}")

    def left_tables(self) -> list[tuple[int, ...]]:
        """``lam[q][s]`` is the index of ``q s``."""
        S = self.ideal
        return [
            tuple(S.index(self.left_action[q, s]) for s in S.names) for q in self.automaton.states
        ]

    def right_tables(self) -> list[tuple[int, ...]]:
        """``rho[q][s]`` is the index of ``s q``."""
        S = self.ideal
        return [
            tuple(S.index(self.right_action[s, q]) for s in S.names) for q in self.automaton.states
        ]

    def induced_transformations(self, w: Sequence[int]):
        """Left and right multiplication maps of ``S2`` induced by the word ``w``."""
        lam, rho = self.left_tables(), self.right_tables()
        n = len(self.ideal)
        left = tuple(range(n))
        right = tuple(range(n))
        for q in reversed(w):
            left = tuple(lam[q][y] for y in left)
        for q in w:
            right = compose(right, rho[q])
        return left, right


def ideal_extension(spec: IdealExtensionSpec) -> MealyAutomaton:
    """Automaton for ``S1 u S2`` with ``S2`` an ideal.

    Symbols are pairs ``(a, L[...])`` of a symbol of the ``S1`` automaton and a
    left-multiplication map of ``S2`` (``id`` for the identity map), followed by
    the elements of ``S2`` themselves.
    """
    A, S = spec.automaton, spec.ideal
    lam, rho = spec.left_tables(), spec.right_tables()
    n = len(S)
    maps = transformation_closure(lam, with_identity=True)
    ident = tuple(range(n))

    def map_name(mu):
        if mu == ident:
            return IDENTITY_TRANSFORMATION
        return "L[" + ",".join(S.names[y] for y in mu) + "]"

    pairs = [tuple_name([a, map_name(mu)]) for a in A.alphabet for mu in maps]
    b_names = [fresh_name(s, pairs) for s in S.names]
    alphabet = pairs + b_names
    q1, q2 = disjoint_names([A.states, S.names], ["_1", "_2"])
    z = q2[spec.zero]
    m_ix = {mu: i for i, mu in enumerate(maps)}

    def pair(a, mu):
        return pairs[a * len(maps) + m_ix[mu]]

    delta = {}
    for x in range(A.n_states):
        for a in range(A.n_symbols):
            r, c = A.transition(x, a)
            for mu in maps:
                delta[q1[x], pair(a, mu)] = (q1[r], pair(c, compose(lam[x], mu)))
        for b in range(n):
            delta[q1[x], b_names[b]] = (z, b_names[rho[x][b]])
    for y in range(n):
        for a in range(A.n_symbols):
            for mu in maps:
                delta[q2[y], pair(a, mu)] = (z, b_names[mu[y]])
        for b in range(n):
            delta[q2[y], b_names[b]] = (z, b_names[S.mul(b, y)])
    return MealyAutomaton.from_transitions(
        q1 + q2, alphabet, delta,
        notes=[f"ideal extension by a semigroup of order {n}, {len(maps)} left maps"],
    )


@dataclass(frozen=True)
class ActExtensionSpec:
    """``S`` acting on the right of the finite set ``points``.

    ``action[(q, x)]`` is the image of the point ``x`` under the state ``q``.
    """

    automaton: MealyAutomaton
    points: tuple[str, ...]
    action: Mapping[tuple[str, str], str]
    bound: int = 3

    def __post_init__(self):
        A = self.automaton
        require_valid(A)
        if not self.points or len(set(self.points)) != len(self.points):
            raise InputError("points must be a nonempty list of distinct names")
        for q in A.states:
            for x in self.points:
                if (q, x) not in self.action:
                    raise InputError(f"action undefined on ({q}, {x})")
                if self.action[q, x] not in self.points:
                    raise InputError(f"action of {q} on {x} is not a point")
        bad = first_inconsistency(A, self.bound, self.point_map)
        if bad is not None:
            raise InputError(f"action is not compatible with {_describe(A, bad)}")

    def tables(self) -> list[tuple[int, ...]]:
        ix = {x: i for i, x in enumerate(self.points)}
        return [tuple(ix[self.action[q, x]] for x in self.points) for q in self.automaton.states]

    def point_map(self, w: Sequence[int]) -> tuple[int, ...]:
        tabs = self.tables()
        f = tuple(range(len(self.points)))
        for q in w:
            f = compose(f, tabs[q])
        return f


def act_extension(spec: ActExtensionSpec) -> MealyAutomaton:
    """Automaton for ``S[X]``: points are sink states that write themselves."""
    A = spec.automaton
    tabs = spec.tables()
    qs, xs = disjoint_names([A.states, spec.points], ["_S", "_X"])
    x_syms = [fresh_name(x, A.alphabet) for x in spec.points]
    alphabet = list(A.alphabet) + x_syms
    delta = {}
    for q in range(A.n_states):
        for a in range(A.n_symbols):
            r, c = A.transition(q, a)
            delta[qs[q], A.alphabet[a]] = (qs[r], A.alphabet[c])
        for x, sym in enumerate(x_syms):
            y = tabs[q][x]
            delta[qs[q], sym] = (xs[y], x_syms[y])
    for x, name in enumerate(xs):
        for c in alphabet:
            delta[name, c] = (name, x_syms[x])
    return MealyAutomaton.from_transitions(
        qs + xs, alphabet, delta, notes=[f"S[X] extension with {len(xs)} points"]
    )
