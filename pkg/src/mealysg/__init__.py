"""Mealy automata, the semigroups they generate, and builders for
semigroup constructions (free products, wreath products, Rees matrices,
strong semilattices and small extensions)."""

from .algebra import (
    FiniteSemigroup,
    GeneratorHom,
    HomVerdict,
    check_generator_hom,
    compose,
    cyclic_group,
    finite_semigroup_automaton,
    idempotents,
    right_zero_semigroup,
    right_zeros_and_identity,
    transformation_closure,
    trivial_semigroup,
    validate_semigroup,
)
from .core import (
    EventuallyPeriodicString,
    InputError,
    MealyAutomaton,
    MealyError,
    WreathRecursion,
    act,
    act_eventually_periodic,
    compose_recursions,
    export_dot,
    isomorphic,
    minimize,
    restriction,
    validate,
    wreath_recursion,
)
from .word_problem import (
    ZERO,
    BallEnumerator,
    ElementIndex,
    EqualityResult,
    PreconditionError,
    RefutationWitness,
    are_equal,
    ball,
    equal,
    first_inconsistency,
    is_zero_element,
    periodic_bound,
    periodic_by_recursion,
    refute_N0_valuation,
    restrictions_respect_equality,
)

__version__ = "0.1.0"
