"""Seeded random spaces and maps.

Every trial draws from its own generator seeded with ``"<seed>/<trial>"``,
so any single trial can be replayed without running the ones before it.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence

from .convex import LConvexSpace, SpaceMap, all_maps, count_maps, generate_structure
from .errors import BudgetExceeded
from .lfuzz import LSet
from .quantale import Quantale


def trial_rng(seed: int, trial: int, stream: str = "") -> random.Random:
    # str seeds hash with sha512, independent of PYTHONHASHSEED
    return random.Random(f"{seed}/{stream}/{trial}")


def random_lset(rng: random.Random, q: Quantale, size: int) -> LSet:
    return LSet(q, tuple(rng.randrange(q.size) for _ in range(size)))


def random_space(rng: random.Random, quantales: Sequence[Quantale],
                 sizes: tuple[int, int] = (1, 3), generators: tuple[int, int] = (0, 3),
                 max_convexes: Optional[int] = None, cap: Optional[int] = None,
                 attempts: int = 50) -> Optional[LConvexSpace]:
    """Closure of a few random generators; None when every attempt is too big."""
    for _ in range(attempts):
        q = quantales[rng.randrange(len(quantales))]
        n = rng.randint(*sizes)
        gens = [random_lset(rng, q, n) for _ in range(rng.randint(*generators))]
        try:
            X = generate_structure(q, n, gens, cap=cap)
        except BudgetExceeded:
            continue
        if max_convexes is None or len(X.convexes) <= max_convexes:
            return X
    return None


def random_cp_map(rng: random.Random, X: LConvexSpace, Y: LConvexSpace,
                  enumerate_cap: int = 50_000, samples: int = 200) -> Optional[SpaceMap]:
    """A uniformly chosen cp map when the maps can be enumerated, else a
    sampled one; None if none was found."""
    if count_maps(X, Y) <= enumerate_cap:
        maps = [f for f in all_maps(X, Y) if f.flags.cp]
        return maps[rng.randrange(len(maps))] if maps else None
    for _ in range(samples):
        f = SpaceMap(X, Y, tuple(rng.randrange(Y.size) for _ in X.points))
        if f.flags.cp:
            return f
    return None
