"""Builders that compile semigroup constructions into Mealy automata."""

from .basic import acts_as_identity, adjoin_identity, adjoin_zero, direct_power, direct_product
from .extensions import ActExtensionSpec, IdealExtensionSpec, act_extension, ideal_extension
from .free_product import (
    UNVERIFIED,
    FreeProductFiniteSpec,
    FreeProductGeneralSpec,
    domino,
    free_product_finite,
    free_product_general,
    tablet,
)
from .semilattice import SemilatticeSpec, homs_from_names, strong_semilattice
from .wreath import ReesSpec, find_identity_state, rees_matrix, rees_state, wreath_product

__all__ = [
    "ActExtensionSpec",
    "FreeProductFiniteSpec",
    "FreeProductGeneralSpec",
    "IdealExtensionSpec",
    "ReesSpec",
    "SemilatticeSpec",
    "UNVERIFIED",
    "act_extension",
    "acts_as_identity",
    "adjoin_identity",
    "adjoin_zero",
    "direct_power",
    "direct_product",
    "domino",
    "find_identity_state",
    "free_product_finite",
    "free_product_general",
    "homs_from_names",
    "ideal_extension",
    "rees_matrix",
    "rees_state",
    "strong_semilattice",
    "tablet",
    "wreath_product",
]
