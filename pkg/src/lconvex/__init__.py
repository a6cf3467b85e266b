"""Finite stratified L-convex spaces over finite commutative integral quantales:
hulls, sobriety, sobrification and the surrounding categorical checks."""

from .convex import LConvexSpace, SpaceMap, generate_structure, hull, is_S0, validate_structure
from .errors import LConvexError
from .lfuzz import LSet, sub
from .lorder import LOrderedSet
from .quantale import Quantale, build_chain_quantale, build_from_tables, diamond_frame
from .sober import irr, is_sober, lift_map, sobrify

__all__ = [
    "LConvexError", "LConvexSpace", "LOrderedSet", "LSet", "Quantale", "SpaceMap",
    "build_chain_quantale", "build_from_tables", "diamond_frame", "generate_structure",
    "hull", "irr", "is_S0", "is_sober", "lift_map", "sobrify", "sub", "validate_structure",
]
