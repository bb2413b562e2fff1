"""Strong semilattices of automaton semigroups over a finite base with a right zero."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..algebra import ADJOINED_ONE, FiniteSemigroup, GeneratorHom, check_generator_hom, right_zeros_and_identity
from ..core import InputError, MealyAutomaton, fresh_name
from .basic import disjoint_names, require_valid, tuple_name


@dataclass(frozen=True)
class SemilatticeSpec:
    """Automata ``parts`` for ``S_1..S_k`` sitting above the finite ``bottom``.

    ``homs[i]`` maps the states of ``parts[i]`` into ``bottom``; it is checked
    on all equal word pairs up to length ``bound``.
    """

    parts: tuple[MealyAutomaton, ...]
    bottom: FiniteSemigroup
    zero: int
    homs: tuple[GeneratorHom, ...]
    bound: int = 4

    def __post_init__(self):
        if not self.parts:
            raise InputError("need at least one part")
        if len(self.homs) != len(self.parts):
            raise InputError("need one homomorphism per part")
        zeros, _ = right_zeros_and_identity(self.bottom)
        if self.zero not in zeros:
            raise InputError(f"{self.bottom.names[self.zero]} is not a right zero")
        for i, (part, hom) in enumerate(zip(self.parts, self.homs)):
            require_valid(part, f"part {i + 1}")
            if hom.target != self.bottom:
                raise InputError(f"homomorphism {i + 1} does not map into the base")
            verdict = check_generator_hom(hom, part, self.bound)
            if not verdict:
                u, v = verdict.witness
                raise InputError(
                    f"homomorphism {i + 1} is not well defined: "
                    f"{' '.join(part.state_names(u))} = {' '.join(part.state_names(v))} "
                    "but their images differ"
                )


def semilattice_state_names(spec: SemilatticeSpec) -> list[list[str]]:
    groups = [p.states for p in spec.parts] + [spec.bottom.names]
    suffixes = [f"_{i + 1}" for i in range(len(spec.parts))] + ["_T"]
    return disjoint_names(groups, suffixes)


def strong_semilattice(spec: SemilatticeSpec) -> MealyAutomaton:
    """Automaton for the strong semilattice with the base at the bottom.

    Symbols are tuples ``(a_1, ..., a_k, b)`` where ``a_i`` is a symbol of part
    ``i`` or the pad ``0`` and ``b`` is an element of the base (with an
    identity adjoined when the base has none).
    """
    T = spec.bottom
    k = len(spec.parts)
    _, one = right_zeros_and_identity(T)
    adjoined = one is None
    b_names = list(T.names)
    if adjoined:
        b_names = [fresh_name(ADJOINED_ONE, T.names)] + b_names

    def b_times(b: int, p: int) -> int:
        """Index in ``b_names`` of ``b * p`` for ``p`` in the base."""
        if not adjoined:
            return T.mul(b, p)
        return p + 1 if b == 0 else T.mul(b - 1, p) + 1

    pad = fresh_name("0", [a for p in spec.parts for a in p.alphabet] + b_names)
    padded = [[pad] + list(p.alphabet) for p in spec.parts]
    groups = semilattice_state_names(spec)
    z_state = groups[k][spec.zero]

    def name(ixs):
        *ais, b = ixs
        return tuple_name([padded[i][a] for i, a in enumerate(ais)] + [b_names[b]])

    symbols = list(itertools.product(*(range(len(p)) for p in padded), range(len(b_names))))
    zeros = (0,) * k
    delta = {}
    for c in symbols:
        b = c[-1]
        for p in range(len(T)):
            delta[groups[k][p], name(c)] = (z_state, name(zeros + (b_times(b, p),)))
        for i, (part, hom) in enumerate(zip(spec.parts, spec.homs)):
            for q in range(part.n_states):
                last = b_times(b, hom.image[q])
                if c[i] == 0:
                    delta[groups[i][q], name(c)] = (z_state, name(zeros + (last,)))
                else:
                    r, a = part.transition(q, c[i] - 1)
                    emitted = list(zeros) + [last]
                    emitted[i] = a + 1
                    delta[groups[i][q], name(c)] = (groups[i][r], name(emitted))
    states = [q for g in groups for q in g]
    return MealyAutomaton.from_transitions(
        states, [name(c) for c in symbols], delta,
        notes=[f"strong semilattice of {k} parts over a base of order {len(T)}"],
    )


def homs_from_names(parts: Sequence[MealyAutomaton], bottom: FiniteSemigroup, maps) -> tuple[GeneratorHom, ...]:
    return tuple(GeneratorHom.from_names(p, bottom, m) for p, m in zip(parts, maps))
