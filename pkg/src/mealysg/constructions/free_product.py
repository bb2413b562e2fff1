"""Automata for free products.

Symbol naming: a domino is ``D[x|y]`` and a tablet ``T[y|x]`` with ``-`` for a
blank entry; suffix ``o`` marks a circled symbol and ``^S``/``^T`` the two
factor marks.  Gates are ``$`` (open), ``$^`` (half-open), ``$-`` (closed)
and ``$o`` (circled), likewise for ``#``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..algebra import FiniteSemigroup
from ..core import InputError, MealyAutomaton
from ..word_problem import are_equal
from .basic import disjoint_names, require_valid

log = logging.getLogger(__name__)

BLANK = "-"
UNVERIFIED = "UNVERIFIED"


def domino(top: str, bottom: str, mark: str = "") -> str:
    return f"D[{top}|{bottom}]{mark}"


def tablet(top: str, bottom: str, mark: str = "") -> str:
    return f"T[{top}|{bottom}]{mark}"


@dataclass(frozen=True)
class FreeProductFiniteSpec:
    S: FiniteSemigroup
    T: FiniteSemigroup
    e: int
    f: int

    def __post_init__(self):
        if self.S.mul(self.e, self.e) != self.e:
            raise InputError(f"{self.S.names[self.e]} is not idempotent in the left factor")
        if self.T.mul(self.f, self.f) != self.f:
            raise InputError(f"{self.T.names[self.f]} is not idempotent in the right factor")
        if BLANK in self.S.names or BLANK in self.T.names:
            raise InputError(f"element name {BLANK!r} is reserved for blank entries")


def free_product_finite_states(spec: FreeProductFiniteSpec) -> tuple[list[str], list[str]]:
    q1, q2 = disjoint_names([spec.S.names, spec.T.names], ["_S", "_T"])
    return q1, q2


def free_product_finite(spec: FreeProductFiniteSpec) -> MealyAutomaton:
    """Automaton generating ``S * T`` for finite ``S``, ``T``."""
    S, T = spec.S, spec.T
    sn, tn = S.names, T.names
    q1, q2 = free_product_finite_states(spec)
    e_state, f_state = q1[spec.e], q2[spec.f]
    nS, nT = len(S), len(T)

    alphabet = [domino(BLANK, BLANK)]
    alphabet += [domino(a, BLANK) for a in sn]
    alphabet += [domino(a, b) for a in sn for b in tn]
    alphabet += [domino(a, b, "o") for a in sn for b in tn]
    alphabet += [tablet(BLANK, BLANK)]
    alphabet += [tablet(b, BLANK) for b in tn]
    alphabet += [tablet(b, a) for b in tn for a in sn]
    alphabet += [tablet(b, a, "o") for b in tn for a in sn]

    delta = {}
    for si in range(nS):
        s = q1[si]
        delta[s, domino(BLANK, BLANK)] = (f_state, domino(sn[si], BLANK))
        delta[s, tablet(BLANK, BLANK)] = (e_state, tablet(BLANK, BLANK))
        for a in range(nS):
            delta[s, domino(sn[a], BLANK)] = (f_state, domino(sn[S.mul(a, si)], BLANK))
        for b in range(nT):
            delta[s, tablet(tn[b], BLANK)] = (e_state, tablet(tn[b], sn[si]))
            for a in range(nS):
                delta[s, domino(sn[a], tn[b])] = (s, domino(sn[a], tn[b], "o"))
                delta[s, domino(sn[a], tn[b], "o")] = (s, domino(sn[a], tn[b], "o"))
                delta[s, tablet(tn[b], sn[a])] = (e_state, tablet(tn[b], sn[S.mul(a, si)]))
                delta[s, tablet(tn[b], sn[a], "o")] = (s, tablet(tn[b], sn[a], "o"))
    for ti in range(nT):
        t = q2[ti]
        delta[t, domino(BLANK, BLANK)] = (f_state, domino(BLANK, BLANK))
        delta[t, tablet(BLANK, BLANK)] = (e_state, tablet(tn[ti], BLANK))
        for b in range(nT):
            delta[t, tablet(tn[b], BLANK)] = (e_state, tablet(tn[T.mul(b, ti)], BLANK))
        for a in range(nS):
            delta[t, domino(sn[a], BLANK)] = (f_state, domino(sn[a], tn[ti]))
            for b in range(nT):
                delta[t, domino(sn[a], tn[b])] = (f_state, domino(sn[a], tn[T.mul(b, ti)]))
                delta[t, domino(sn[a], tn[b], "o")] = (t, domino(sn[a], tn[b], "o"))
                delta[t, tablet(tn[b], sn[a])] = (t, tablet(tn[b], sn[a], "o"))
                delta[t, tablet(tn[b], sn[a], "o")] = (t, tablet(tn[b], sn[a], "o"))
    return MealyAutomaton.from_transitions(
        q1 + q2, alphabet, delta,
        notes=[f"free product of finite semigroups, idempotents {sn[spec.e]} and {tn[spec.f]}"],
    )


@dataclass(frozen=True)
class FreeProductGeneralSpec:
    """Two automata and distinguished states ``e`` (of ``A1``) and ``f`` (of ``A2``).

    ``hypothesis_mode`` is ``"idempotent-verified"`` (``e`` and ``f`` are
    checked to be idempotent) or ``"asserted-homogeneous"`` (the caller vouches
    for the length condition; the output is flagged unverified).
    """

    A1: MealyAutomaton
    A2: MealyAutomaton
    e: int
    f: int
    hypothesis_mode: str = "idempotent-verified"

    def __post_init__(self):
        require_valid(self.A1, "left factor")
        require_valid(self.A2, "right factor")
        if self.hypothesis_mode not in ("idempotent-verified", "asserted-homogeneous"):
            raise InputError(f"unknown hypothesis mode {self.hypothesis_mode!r}")
        if self.hypothesis_mode == "idempotent-verified":
            if not are_equal(self.A1, (self.e, self.e), (self.e,)):
                raise InputError(f"{self.A1.states[self.e]} is not idempotent")
            if not are_equal(self.A2, (self.f, self.f), (self.f,)):
                raise InputError(f"{self.A2.states[self.f]} is not idempotent")

    @property
    def verified(self) -> bool:
        return self.hypothesis_mode == "idempotent-verified"


def free_product_general_states(spec: FreeProductGeneralSpec) -> tuple[list[str], list[str]]:
    q1, q2 = disjoint_names([spec.A1.states, spec.A2.states], ["_S", "_T"])
    return q1, q2


GATE_MARKS = ("-", "^", "", "o")  # closed, half-open, open, circled


def free_product_general(spec: FreeProductGeneralSpec) -> MealyAutomaton:
    """Automaton generating ``S * T`` from automata for ``S`` and ``T``."""
    A1, A2 = spec.A1, spec.A2
    A, B = A1.alphabet, A2.alphabet
    q1, q2 = free_product_general_states(spec)
    e_state, f_state = q1[spec.e], q2[spec.f]

    alphabet = []
    for mark in ("", "^S", "^T", "o"):
        alphabet += [domino(a, b, mark) for a in A for b in B]
    for mark in ("", "^T", "^S", "o"):
        alphabet += [tablet(b, a, mark) for b in B for a in A]
    alphabet += ["$" + m for m in GATE_MARKS]
    alphabet += ["#" + m for m in GATE_MARKS]

    delta = {}
    for si in range(A1.n_states):
        s = q1[si]
        for ai in range(A1.n_symbols):
            s0, a0 = A1.transition(si, ai)
            s0n, a, a0n = q1[s0], A[ai], A[a0]
            for b in B:
                delta[s, domino(a, b)] = (s0n, domino(a0n, b, "^S"))
                delta[s, domino(a, b, "^S")] = (s0n, domino(a0n, b, "^S"))
                delta[s, domino(a, b, "^T")] = (s, domino(a, b, "o"))
                delta[s, domino(a, b, "o")] = (s, domino(a, b, "o"))
                # tablets: the dual rows seen from an S-state
                delta[s, tablet(b, a)] = (s, tablet(b, a))
                delta[s, tablet(b, a, "^T")] = (s0n, tablet(b, a0n, "^S"))
                delta[s, tablet(b, a, "^S")] = (s0n, tablet(b, a0n, "^S"))
                delta[s, tablet(b, a, "o")] = (s, tablet(b, a, "o"))
        delta[s, "$-"] = (f_state, "$^")
        delta[s, "$^"] = (f_state, "$^")
        delta[s, "$"] = (s, "$o")
        delta[s, "$o"] = (s, "$o")
        delta[s, "#-"] = (e_state, "#-")
        delta[s, "#^"] = (e_state, "#")
        delta[s, "#"] = (e_state, "#")
        delta[s, "#o"] = (s, "#o")
    for ti in range(A2.n_states):
        t = q2[ti]
        for bi in range(A2.n_symbols):
            t0, b0 = A2.transition(ti, bi)
            t0n, b, b0n = q2[t0], B[bi], B[b0]
            for a in A:
                delta[t, domino(a, b)] = (t, domino(a, b))
                delta[t, domino(a, b, "^S")] = (t0n, domino(a, b0n, "^T"))
                delta[t, domino(a, b, "^T")] = (t0n, domino(a, b0n, "^T"))
                delta[t, domino(a, b, "o")] = (t, domino(a, b, "o"))
                delta[t, tablet(b, a)] = (t0n, tablet(b0n, a, "^T"))
                delta[t, tablet(b, a, "^T")] = (t0n, tablet(b0n, a, "^T"))
                delta[t, tablet(b, a, "^S")] = (t, tablet(b, a, "o"))
                delta[t, tablet(b, a, "o")] = (t, tablet(b, a, "o"))
        delta[t, "$-"] = (f_state, "$-")
        delta[t, "$^"] = (f_state, "$")
        delta[t, "$"] = (f_state, "$")
        delta[t, "$o"] = (t, "$o")
        delta[t, "#-"] = (e_state, "#^")
        delta[t, "#^"] = (e_state, "#^")
        delta[t, "#"] = (t, "#o")
        delta[t, "#o"] = (t, "#o")

    notes = [f"free product of automaton semigroups, distinguished {A1.states[spec.e]} and {A2.states[spec.f]}",
             f"hypothesis: {spec.hypothesis_mode}"]
    if not spec.verified:
        log.warning("free product emitted without a verified hypothesis")
        notes.append(UNVERIFIED)
    return MealyAutomaton.from_transitions(q1 + q2, alphabet, delta, notes=notes)
