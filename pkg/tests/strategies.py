"""Hypothesis strategies for quantales, L-subsets and small spaces."""
from hypothesis import strategies as st

from lconvex.convex import generate_structure
from lconvex.lfuzz import LSet
from lconvex.quantale import build_chain_quantale, diamond_frame

QUANTALES = [
    build_chain_quantale(2, "godel"),
    build_chain_quantale(3, "godel"),
    build_chain_quantale(3, "lukasiewicz"),
    build_chain_quantale(4, "lukasiewicz"),
    diamond_frame(),
]

quantales = st.sampled_from(QUANTALES)


def lsets(q, size):
    return st.tuples(*[st.integers(0, q.size - 1)] * size).map(lambda d: LSet(q, d))


@st.composite
def spaces(draw, qs=QUANTALES, max_size=3, max_generators=3):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, max_size))
    gens = draw(st.lists(lsets(q, n), max_size=max_generators))
    return generate_structure(q, n, gens)
