"""Small named spaces used as fixtures, suite seeds and CLI demos."""
from __future__ import annotations

from .convex import LConvexSpace, generate_structure, validate_structure
from .lfuzz import LSet
from .quantale import Quantale, build_chain_quantale


def boolean() -> Quantale:
    return build_chain_quantale(2, "godel")


def godel3() -> Quantale:
    return build_chain_quantale(3, "godel")


def lukasiewicz3() -> Quantale:
    return build_chain_quantale(3, "lukasiewicz")


def crisp(q: Quantale, size: int, members) -> LSet:
    """Characteristic L-subset of a set of point indices."""
    return LSet(q, tuple(q.top if x in members else q.bottom for x in range(size)))


def crisp_space(size: int, sets, labels=None) -> LConvexSpace:
    """A Boolean space from subsets given as point-index collections."""
    q = boolean()
    return validate_structure(q, size, [crisp(q, size, s) for s in sets], labels=labels)


def godel_worked_space() -> LConvexSpace:
    """Goedel-3 on two points ``a, b`` with ``{0_X, D=(1, 1/2), 1_X}``; sober."""
    q = godel3()
    return validate_structure(q, 2, [LSet(q, (0, 0)), LSet(q, (2, 1)), LSet(q, (2, 2))],
                              labels=["a", "b"])


def indiscrete(q: Quantale, size: int) -> LConvexSpace:
    """The least structure: the closure of the two constant sets."""
    return generate_structure(q, size, labels=[chr(ord("a") + i) for i in range(size)])


def boolean_chain_space() -> LConvexSpace:
    """``{{}, {a}, {a,b}}``: sober."""
    return crisp_space(2, [(), (0,), (0, 1)], labels=["a", "b"])


def boolean_three_point_non_sober() -> LConvexSpace:
    """``{{}, {a}, {b}, {c}, {a,b,c}}``: S0, but the whole set is the hull of no point."""
    return crisp_space(3, [(), (0,), (1,), (2,), (0, 1, 2)], labels=["a", "b", "c"])


def s0_non_sober_examples() -> list[LConvexSpace]:
    """Hand-built S0 spaces that are not sober."""
    q = godel3()
    return [
        boolean_three_point_non_sober(),
        crisp_space(2, [(), (0,), (1,), (0, 1)], labels=["a", "b"]),
        crisp_space(3, [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)],
                    labels=["a", "b", "c"]),
        crisp_space(3, [(), (0,), (1,), (0, 1), (0, 1, 2)], labels=["a", "b", "c"]),
        generate_structure(q, 2, [LSet(q, (2, 0)), LSet(q, (0, 2))], labels=["a", "b"]),
    ]
