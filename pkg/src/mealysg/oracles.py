"""Reference arithmetic for the semigroups the builders produce.

Each model knows the defining multiplication of its semigroup and lists one
model element per state of the corresponding built automaton, in the same
order.  Elements of infinite factors are stored as shortlex-least words of
the factor automaton, so equal model elements mean equal semigroup elements.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

from .algebra import FiniteSemigroup, GeneratorHom
from .constructions import (
    ActExtensionSpec,
    FreeProductFiniteSpec,
    FreeProductGeneralSpec,
    IdealExtensionSpec,
    ReesSpec,
    SemilatticeSpec,
    find_identity_state,
)
from .constructions.free_product import BLANK, domino, tablet
from .core import EventuallyPeriodicString, InputError, MealyAutomaton, MealyError, act_eventually_periodic
from .word_problem import BallEnumerator, ElementIndex

FREE_PRODUCT = "FreeProduct"
WREATH = "Wreath"
REES = "Rees"
SEMILATTICE = "Semilattice"
IDEAL_EXT = "IdealExt"
ACT_EXT = "ActExt"


@dataclass(frozen=True)
class ModelElement:
    tag: str
    payload: tuple


class WordFactor:
    """Elements of an automaton semigroup as shortlex-least words."""

    def __init__(self, automaton: MealyAutomaton):
        self.automaton = automaton
        self._enum = BallEnumerator(automaton)
        self._cache: dict = {}

    def canon(self, w: Sequence[int]) -> tuple[int, ...]:
        w = tuple(w)
        if not w:
            raise InputError("words must be nonempty")
        hit = self._cache.get(w)
        if hit is None:
            hit = self._cache[w] = self._enum.representative(w)
        return hit

    def gen(self, q: int) -> tuple[int, ...]:
        return self.canon((q,))

    def mul(self, u, v):
        return self.canon(u + v)


class TableFactor:
    def __init__(self, semigroup: FiniteSemigroup):
        self.semigroup = semigroup

    def gen(self, x: int) -> int:
        return x

    def mul(self, x, y):
        return self.semigroup.mul(x, y)


class Model:
    tag = ""

    def generators(self) -> list[ModelElement]:
        raise NotImplementedError

    def multiply(self, x: ModelElement, y: ModelElement) -> ModelElement:
        raise NotImplementedError

    def evaluate(self, w: Sequence[int]) -> ModelElement:
        if not w:
            raise InputError("words must be nonempty")
        gens = self.generators()
        acc = gens[w[0]]
        for q in w[1:]:
            acc = self.multiply(acc, gens[q])
        return acc

    def element(self, payload) -> ModelElement:
        return ModelElement(self.tag, tuple(payload))


def model_multiply(model: Model, x: ModelElement, y: ModelElement) -> ModelElement:
    if x.tag != model.tag or y.tag != model.tag:
        raise InputError(f"cannot multiply {x.tag} by {y.tag} in a {model.tag} model")
    return model.multiply(x, y)


# -- free products ------------------------------------------------------------


class FreeProductModel(Model):
    """Alternating blocks ``(factor, element)`` with factor 0 (left) or 1 (right)."""

    tag = FREE_PRODUCT

    def __init__(self, left, right, left_states: int, right_states: int):
        self.factors = (left, right)
        self._gens = [self.element([(0, left.gen(q))]) for q in range(left_states)]
        self._gens += [self.element([(1, right.gen(q))]) for q in range(right_states)]

    @classmethod
    def finite(cls, spec: FreeProductFiniteSpec) -> "FreeProductModel":
        return cls(TableFactor(spec.S), TableFactor(spec.T), len(spec.S), len(spec.T))

    @classmethod
    def general(cls, spec: FreeProductGeneralSpec) -> "FreeProductModel":
        return cls(WordFactor(spec.A1), WordFactor(spec.A2), spec.A1.n_states, spec.A2.n_states)

    def generators(self):
        return self._gens

    def multiply(self, x, y):
        return free_reduce(self, x.payload + y.payload)

    def reduced_length(self, x: ModelElement) -> int:
        return len(x.payload)


def free_reduce(model: FreeProductModel, blocks) -> ModelElement:
    """Merge neighbouring blocks from the same factor."""
    blocks = list(blocks)
    if not blocks:
        raise InputError("a free product element needs at least one block")
    out = [blocks[0]]
    for side, x in blocks[1:]:
        if out[-1][0] == side:
            out[-1] = (side, model.factors[side].mul(out[-1][1], x))
        else:
            out.append((side, x))
    return model.element(out)


_SYMBOL = re.compile(r"^([DT])\[([^|\]]*)\|([^|\]]*)\](o?)$")


def _parse_symbol(name: str):
    m = _SYMBOL.match(name)
    if m is None:
        raise MealyError(f"unexpected symbol {name!r} in read-off string")
    shape, top, bottom, circled = m.groups()
    return shape, None if top == BLANK else top, None if bottom == BLANK else bottom, bool(circled)


def read_off_strings(automaton: MealyAutomaton, w: Sequence[int]):
    """Images of ``D[-|-]^omega`` and ``T[-|-]^omega`` under ``w``."""
    d = act_eventually_periodic(automaton, w, EventuallyPeriodicString.of((), (automaton.symbol(domino(BLANK, BLANK)),)))
    t = act_eventually_periodic(automaton, w, EventuallyPeriodicString.of((), (automaton.symbol(tablet(BLANK, BLANK)),)))
    return d, t


def _parse(automaton: MealyAutomaton, s: EventuallyPeriodicString, shape: str) -> list[str]:
    names = []
    for b in s.unroll(len(s.prefix) + len(s.period)):
        kind, first, second, circled = _parse_symbol(automaton.alphabet[b])
        if kind != shape:
            raise MealyError(f"read-off string contains {automaton.alphabet[b]!r}")
        if first is None:
            break
        names.append(first)
        if second is None:
            break
        names.append(second)
        if not circled:
            break
    return names


def recover_reduced_word(automaton: MealyAutomaton, spec: FreeProductFiniteSpec, w: Sequence[int]) -> ModelElement:
    """Reduced word of ``w`` read from its action on the two blank strings.

    The domino string spells out reduced words that start in the left
    factor and the tablet string those that start in the right factor; the
    other string misses the first block, so the longer reading wins.
    """
    if not w:
        raise InputError("words must be nonempty")
    d, t = read_off_strings(automaton, w)
    from_d = _parse(automaton, d, "D")
    from_t = _parse(automaton, t, "T")
    if len(from_d) == len(from_t):
        raise MealyError("read-off strings have equal length; construction is broken")
    names, first = (from_d, 0) if len(from_d) > len(from_t) else (from_t, 1)
    factors = (spec.S, spec.T)
    blocks = []
    for k, name in enumerate(names):
        side = (first + k) % 2
        blocks.append((side, factors[side].index(name)))
    return ModelElement(FREE_PRODUCT, tuple(blocks))


# -- wreath products ----------------------------------------------------------


class WreathModel(Model):
    """Pairs ``(s, t)`` with ``s`` a tuple of factor elements indexed by ``T``."""

    tag = WREATH

    def __init__(self, automaton: MealyAutomaton, top: FiniteSemigroup):
        one = find_identity_state(automaton)
        if one is None:
            raise InputError("wreath model needs an automaton with an identity state")
        self.factor = WordFactor(automaton)
        self.top = top
        n = len(top)
        self._gens = [
            self.element([tuple(self.factor.gen(q) for q in s), t])
            for s in itertools.product(range(automaton.n_states), repeat=n)
            for t in range(n)
        ]

    def generators(self):
        return self._gens

    def twist(self, s, t):
        return tuple(s[self.top.mul(k, t)] for k in range(len(self.top)))

    def multiply(self, x, y):
        s, t = x.payload
        s2, t2 = y.payload
        s2t = self.twist(s2, t)
        return self.element([tuple(self.factor.mul(a, b) for a, b in zip(s, s2t)), self.top.mul(t, t2)])


# -- Rees matrix semigroups ---------------------------------------------------


class ReesModel(Model):
    """Triples ``(i, x, lam)`` multiplied through the sandwich matrix."""

    tag = REES

    def __init__(self, spec: ReesSpec):
        A = spec.automaton
        self.spec = spec
        self.factor = WordFactor(A)
        self._gens = [
            self.element([j, self.factor.gen(x), mu])
            for j in spec.I
            for x in range(A.n_states)
            for mu in spec.Lambda
        ]

    def generators(self):
        return self._gens

    def multiply(self, x, y):
        i, a, lam = x.payload
        j, b, mu = y.payload
        p = self.factor.gen(self.spec.automaton.state(self.spec.entries[lam, j]))
        return self.element([i, self.factor.mul(self.factor.mul(a, p), b), mu])


# -- strong semilattices ------------------------------------------------------


class SemilatticeModel(Model):
    """``("part", i, word)`` for the upper parts and ``("base", t)`` for the base."""

    tag = SEMILATTICE

    def __init__(self, spec: SemilatticeSpec):
        self.spec = spec
        self.factors = [WordFactor(p) for p in spec.parts]
        self._gens = [
            self.element(["part", i, f.gen(q)])
            for i, f in enumerate(self.factors)
            for q in range(spec.parts[i].n_states)
        ]
        self._gens += [self.element(["base", t]) for t in range(len(spec.bottom))]

    def generators(self):
        return self._gens

    def _down(self, x) -> int:
        if x.payload[0] == "base":
            return x.payload[1]
        _, i, w = x.payload
        hom: GeneratorHom = self.spec.homs[i]
        return hom.of_word(w)

    def multiply(self, x, y):
        if x.payload[0] == "part" and y.payload[0] == "part" and x.payload[1] == y.payload[1]:
            i = x.payload[1]
            return self.element(["part", i, self.factors[i].mul(x.payload[2], y.payload[2])])
        return self.element(["base", self.spec.bottom.mul(self._down(x), self._down(y))])


# -- small extensions ---------------------------------------------------------


class IdealExtensionModel(Model):
    """``("S1", word)`` or ``("S2", s)``."""

    tag = IDEAL_EXT

    def __init__(self, spec: IdealExtensionSpec):
        self.spec = spec
        self.factor = WordFactor(spec.automaton)
        self.lam, self.rho = spec.left_tables(), spec.right_tables()
        self._gens = [self.element(["S1", self.factor.gen(q)]) for q in range(spec.automaton.n_states)]
        self._gens += [self.element(["S2", s]) for s in range(len(spec.ideal))]

    def generators(self):
        return self._gens

    def multiply(self, x, y):
        kx, vx = x.payload
        ky, vy = y.payload
        if kx == "S1" and ky == "S1":
            return self.element(["S1", self.factor.mul(vx, vy)])
        if kx == "S1":
            s = vy
            for q in reversed(vx):
                s = self.lam[q][s]
            return self.element(["S2", s])
        if ky == "S1":
            s = vx
            for q in vy:
                s = self.rho[q][s]
            return self.element(["S2", s])
        return self.element(["S2", self.spec.ideal.mul(vx, vy)])


class ActExtensionModel(Model):
    """``("S", word)`` or ``("X", point)`` with ``xs = x^s``, ``sx = x``, ``xy = y``."""

    tag = ACT_EXT

    def __init__(self, spec: ActExtensionSpec):
        self.spec = spec
        self.factor = WordFactor(spec.automaton)
        self.tables = spec.tables()
        self._gens = [self.element(["S", self.factor.gen(q)]) for q in range(spec.automaton.n_states)]
        self._gens += [self.element(["X", x]) for x in range(len(spec.points))]

    def generators(self):
        return self._gens

    def multiply(self, x, y):
        kx, vx = x.payload
        ky, vy = y.payload
        if kx == "S" and ky == "S":
            return self.element(["S", self.factor.mul(vx, vy)])
        if kx == "X" and ky == "S":
            for q in vy:
                vx = self.tables[q][vx]
            return self.element(["X", vx])
        return y


# -- cross-checking -----------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    u: tuple[int, ...]
    v: tuple[int, ...]
    automaton_equal: bool

    def describe(self, automaton: MealyAutomaton) -> str:
        u = " ".join(automaton.state_names(self.u))
        v = " ".join(automaton.state_names(self.v))
        if self.automaton_equal:
            return f"{u} = {v} in the automaton but not in the model"
        return f"{u} != {v} in the automaton but equal in the model"


def agreement(automaton: MealyAutomaton, model: Model, words) -> list[Discrepancy]:
    """Compare the partitions of ``words`` induced by the automaton and the model.

    The automaton side is decided by the word problem (through
    :class:`ElementIndex`), the model side by structural equality.  An empty
    result means every pair of the given words agrees.
    """
    index = ElementIndex(automaton)
    by_auto: dict[int, tuple] = {}
    by_model: dict[ModelElement, tuple] = {}
    model_of: dict[tuple, ModelElement] = {}
    auto_of: dict[tuple, int] = {}
    problems = []
    for w in words:
        w = tuple(w)
        i, _ = index.add(w)
        m = model.evaluate(w)
        first_a = by_auto.setdefault(i, w)
        first_m = by_model.setdefault(m, w)
        model_of.setdefault(w, m)
        auto_of.setdefault(w, i)
        # if the partitions differ, some word disagrees with one of its founders
        if model_of[first_a] != m:
            problems.append(Discrepancy(first_a, w, True))
        elif auto_of[first_m] != i:
            problems.append(Discrepancy(first_m, w, False))
    return problems
