"""Finite semigroups given by Cayley tables, transformation closures, and
bounded checks of homomorphisms defined on generators."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import InputError, MealyAutomaton, fresh_name
from .word_problem import first_inconsistency

Transformation = tuple[int, ...]

ADJOINED_ONE = "1"


@dataclass(frozen=True)
class FiniteSemigroup:
    """Cayley table; ``table[x][y]`` is the product ``x * y`` (row times column)."""

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("element names must be unique")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise InputError("Cayley table must be square and match the element list")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise InputError("Cayley table entry out of range")

    @classmethod
    def from_rows(cls, names: Sequence[str], rows: Sequence[Sequence[str]]) -> "FiniteSemigroup":
        ix = {x: i for i, x in enumerate(names)}
        try:
            table = tuple(tuple(ix[x] for x in row) for row in rows)
        except KeyError as exc:
            raise InputError(f"unknown element {exc.args[0]!r} in table") from None
        return cls(tuple(names), table)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown element {name!r}") from None

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, xs: Iterable[int]) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc


def trivial_semigroup(name: str = "e") -> FiniteSemigroup:
    return FiniteSemigroup((name,), ((0,),))


def cyclic_group(names: Sequence[str]) -> FiniteSemigroup:
    """Cyclic group with ``names[0]`` the identity and ``names[i]`` the i-th power of ``names[1]``."""
    n = len(names)
    return FiniteSemigroup(tuple(names), tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def right_zero_semigroup(names: Sequence[str]) -> FiniteSemigroup:
    n = len(names)
    return FiniteSemigroup(tuple(names), tuple(tuple(range(n)) for _ in range(n)))


def validate_semigroup(table: Sequence[Sequence[int]]) -> list[tuple[int, int, int]]:
    """All triples ``(x, y, z)`` with ``(xy)z != x(yz)``."""
    if isinstance(table, FiniteSemigroup):
        table = table.table
    n = len(table)
    return [
        (x, y, z)
        for x, y, z in itertools.product(range(n), repeat=3)
        if table[table[x][y]][z] != table[x][table[y][z]]
    ]


def idempotents(s: FiniteSemigroup) -> list[int]:
    return [x for x in range(len(s)) if s.mul(x, x) == x]


def right_zeros_and_identity(s: FiniteSemigroup) -> tuple[list[int], int | None]:
    n = len(s)
    zeros = [z for z in range(n) if all(s.mul(x, z) == z for x in range(n))]
    identity = next(
        (e for e in range(n) if all(s.mul(e, x) == x and s.mul(x, e) == x for x in range(n))),
        None,
    )
    return zeros, identity


def compose(f: Transformation, g: Transformation) -> Transformation:
    """``f`` then ``g``."""
    return tuple(g[x] for x in f)


def transformation_closure(generators: Iterable[Sequence[int]], with_identity: bool = False) -> list[Transformation]:
    """Semigroup (or monoid, with ``with_identity``) generated under composition.

    Breadth-first from the generators, so the order is deterministic.
    """
    gens = [tuple(g) for g in generators]
    sizes = {len(g) for g in gens}
    if len(sizes) > 1:
        raise InputError("generators act on sets of different sizes")
    if not gens and not with_identity:
        return []
    m = sizes.pop() if sizes else 0
    result: list[Transformation] = []
    seen = set()

    def push(t):
        if t not in seen:
            seen.add(t)
            result.append(t)
            queue.append(t)

    queue: deque = deque()
    if with_identity:
        push(tuple(range(m)))
    for g in gens:
        push(g)
    while queue:
        f = queue.popleft()
        for g in gens:
            push(compose(f, g))
    return result


def finite_semigroup_automaton(s: FiniteSemigroup, z: int | str) -> MealyAutomaton:
    """Automaton whose states are the elements of ``s``.

    The alphabet is ``s`` with an identity adjoined; state ``t`` reading ``b``
    emits ``b*t`` and moves to the right zero ``z``.
    """
    if isinstance(z, str):
        z = s.index(z)
    zeros, _ = right_zeros_and_identity(s)
    if z not in zeros:
        raise InputError(f"{s.names[z]} is not a right zero")
    one = fresh_name(ADJOINED_ONE, s.names)
    alphabet = (one,) + s.names
    n = len(s)
    nxt = tuple(tuple(z for _ in range(n + 1)) for _ in range(n))
    out = tuple(tuple([t + 1] + [s.mul(b, t) + 1 for b in range(n)]) for t in range(n))
    return MealyAutomaton(s.names, alphabet, nxt, out, (f"finite semigroup automaton, right zero {s.names[z]}",))


@dataclass(frozen=True)
class GeneratorHom:
    """Map from automaton states to elements of a finite semigroup."""

    target: FiniteSemigroup
    image: tuple[int, ...]

    @classmethod
    def from_names(cls, automaton: MealyAutomaton, target: FiniteSemigroup, mapping: Mapping[str, str]):
        missing = [q for q in automaton.states if q not in mapping]
        if missing:
            raise InputError(f"homomorphism undefined on {', '.join(missing)}")
        return cls(target, tuple(target.index(mapping[q]) for q in automaton.states))

    def of_word(self, w: Sequence[int]) -> int:
        return self.target.product(self.image[q] for q in w)


@dataclass(frozen=True)
class HomVerdict:
    passed: bool
    bound: int
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self):
        return self.passed


def check_generator_hom(hom: GeneratorHom, automaton: MealyAutomaton, bound: int = 4) -> HomVerdict:
    """Bounded evidence that ``hom`` extends to a homomorphism.

    Every pair of equal words of length <= ``bound`` must have equal images.
    A pass says nothing about longer words.
    """
    if len(hom.image) != automaton.n_states:
        raise InputError("homomorphism is not total on the states")
    bad = first_inconsistency(automaton, bound, hom.of_word)
    return HomVerdict(bad is None, bound, bad)
