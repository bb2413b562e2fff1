"""Shipped example automata, semigroups and construction inputs."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .algebra import FiniteSemigroup, GeneratorHom, idempotents
from .constructions import (
    ActExtensionSpec,
    FreeProductFiniteSpec,
    FreeProductGeneralSpec,
    IdealExtensionSpec,
    ReesSpec,
    SemilatticeSpec,
    act_extension,
    find_identity_state,
    free_product_finite,
    free_product_general,
    ideal_extension,
    rees_matrix,
    strong_semilattice,
    wreath_product,
)
from .core import InputError, MealyAutomaton
from .formats import parse_automaton, parse_map, parse_semigroup, parse_valuation
from .oracles import (
    ActExtensionModel,
    FreeProductModel,
    IdealExtensionModel,
    Model,
    ReesModel,
    SemilatticeModel,
    WreathModel,
)


def data_text(name: str) -> str:
    return resources.files("mealysg").joinpath("data", name).read_text(encoding="utf-8")


def data_names() -> list[str]:
    return sorted(p.name for p in resources.files("mealysg").joinpath("data").iterdir())


def automaton(name: str) -> MealyAutomaton:
    return parse_automaton(data_text(name + ".mealy"))


def semigroup(name: str) -> FiniteSemigroup:
    return parse_semigroup(data_text(name + ".sg"))


def mapping(name: str) -> dict:
    return parse_map(data_text(name + ".map"))


def valuation(name: str) -> dict:
    return parse_valuation(data_text(name + ".map"))


# -- construction inputs ------------------------------------------------------


def free_product_finite_spec(left: str = "trivial", right: str = "trivial_f") -> FreeProductFiniteSpec:
    S, T = semigroup(left), semigroup(right)
    return FreeProductFiniteSpec(S, T, idempotents(S)[0], idempotents(T)[0])


def free_product_general_spec() -> FreeProductGeneralSpec:
    A = automaton("n0")
    one = find_identity_state(A)
    return FreeProductGeneralSpec(A, A, one, one)


def wreath_inputs() -> tuple[MealyAutomaton, FiniteSemigroup]:
    return automaton("n0"), semigroup("c2")


def rees_spec() -> ReesSpec:
    matrix = mapping("rees_f0_matrix")
    claims = mapping("rees_f0_left_mult")
    return ReesSpec(automaton("f0"), "a", ("1", "2"), ("1", "2"), matrix, claims)


def semilattice_spec() -> SemilatticeSpec:
    parts = (automaton("f2"), automaton("n0_cd"))
    base = semigroup("ez")
    homs = (
        GeneratorHom.from_names(parts[0], base, mapping("semilattice_f2_hom")),
        GeneratorHom.from_names(parts[1], base, mapping("semilattice_n0_hom")),
    )
    return SemilatticeSpec(parts, base, base.index("z"), homs)


def act_extension_spec() -> ActExtensionSpec:
    return ActExtensionSpec(automaton("f2"), ("p", "q"), mapping("f2_points"))


def ideal_extension_spec() -> IdealExtensionSpec:
    """N0 with the ideal ``{e, z}`` where every mixed product is ``z``."""
    A, S = automaton("n0"), semigroup("ez")
    left = {(q, s): "z" for q in A.states for s in S.names}
    right = {(s, q): "z" for q in A.states for s in S.names}
    return IdealExtensionSpec(A, S, S.index("z"), left, right)


@dataclass(frozen=True)
class Example:
    build: Callable[[], MealyAutomaton]
    model: Callable[[], Model]
    summary: str


def _fpf(left, right):
    return Example(
        lambda: free_product_finite(free_product_finite_spec(left, right)),
        lambda: FreeProductModel.finite(free_product_finite_spec(left, right)),
        f"free product of finite semigroups {left} and {right}",
    )


EXAMPLES: dict[str, Example] = {
    "free-product-trivial": _fpf("trivial", "trivial_f"),
    "free-product-c2": _fpf("c2_g", "c2_g"),
    "free-product-n0": Example(
        lambda: free_product_general(free_product_general_spec()),
        lambda: FreeProductModel.general(free_product_general_spec()),
        "free product of two copies of N0",
    ),
    "wreath-n0-c2": Example(
        lambda: wreath_product(*wreath_inputs()),
        lambda: WreathModel(*wreath_inputs()),
        "N0 wreath C2",
    ),
    "rees-f0": Example(
        lambda: rees_matrix(rees_spec()),
        lambda: ReesModel(rees_spec()),
        "Rees matrix semigroup over F^0 with a 2x2 sandwich matrix",
    ),
    "semilattice-f2-n0": Example(
        lambda: strong_semilattice(semilattice_spec()),
        lambda: SemilatticeModel(semilattice_spec()),
        "strong semilattice of F2 and N0 over {e, z}",
    ),
    "ideal-ext-n0": Example(
        lambda: ideal_extension(ideal_extension_spec()),
        lambda: IdealExtensionModel(ideal_extension_spec()),
        "N0 with the ideal {e, z}",
    ),
    "sx-f2": Example(
        lambda: act_extension(act_extension_spec()),
        lambda: ActExtensionModel(act_extension_spec()),
        "F2[X] with X = {p, q}",
    ),
}


def example(name: str) -> Example:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise InputError(f"unknown construction {name!r}; choose from {', '.join(EXAMPLES)}") from None
