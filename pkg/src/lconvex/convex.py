"""Finite stratified L-convex spaces and maps between them."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    BudgetExceeded,
    CarrierMismatch,
    EmptySubcarrier,
    IndexOutOfRange,
    MissingBottomTop,
    NotDirectedJoinClosed,
    NotMeetClosed,
    NotStratified,
    SizeLimitExceeded,
    StructureError,
)
from .lfuzz import (
    LSet,
    characteristic,
    constant,
    pointwise_join,
    zadeh_backward,
    zadeh_forward,
)
from .quantale import Quantale

DEFAULT_FAMILY_CAP = 4096
DIRECTED_AUDIT_LIMIT = 12


def family_cap() -> int:
    """Closure budget; ``LCONVEX_MAX_FAMILY`` overrides the default."""
    value = os.environ.get("LCONVEX_MAX_FAMILY")
    return int(value) if value else DEFAULT_FAMILY_CAP


class LConvexSpace:
    """A carrier of ``size`` points with a validated stratified L-convex structure.

    ``convexes`` is sorted by degree sequence and duplicate-free, so two
    spaces are equal iff they have the same quantale, size and family.
    Point labels are cosmetic.
    """

    def __init__(self, quantale: Quantale, size: int, convexes: Iterable[LSet], labels=None):
        self.quantale = quantale
        self.size = size
        self.convexes: tuple[LSet, ...] = tuple(sorted(set(convexes), key=lambda c: c.degrees))
        self.members = frozenset(c.degrees for c in self.convexes)
        self.index = {c.degrees: i for i, c in enumerate(self.convexes)}
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(size))
        self._key = (quantale, size, tuple(c.degrees for c in self.convexes))

    def __eq__(self, other):
        if not isinstance(other, LConvexSpace):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LConvexSpace(size={self.size}, convexes={len(self.convexes)}, L={self.quantale!r})"

    def __contains__(self, A: LSet) -> bool:
        return A.degrees in self.members

    @property
    def points(self) -> range:
        return range(self.size)

    def bottom_set(self) -> LSet:
        return constant(self.quantale, self.size, self.quantale.bottom)

    def top_set(self) -> LSet:
        return constant(self.quantale, self.size, self.quantale.top)

    @cached_property
    def point_hulls(self) -> tuple[LSet, ...]:
        return tuple(hull(self, characteristic(self.quantale, self.size, x)) for x in self.points)

    def to_document(self) -> dict:
        return {
            "quantale": self.quantale.to_document(),
            "points": list(self.labels),
            "convexes": [c.to_document() for c in self.convexes],
        }


def _check_family(q: Quantale, size: int, family: Sequence[LSet]) -> None:
    for C in family:
        if C.quantale != q or C.size != size:
            raise CarrierMismatch(f"{C!r} is not an L-subset of the {size}-point carrier over {q!r}")


def validate_structure(q: Quantale, size: int, family: Iterable[LSet], labels=None,
                       audit_directed: bool = False) -> LConvexSpace:
    """Check C1, closure under binary meets and stratification.

    With ``audit_directed`` the directed-join condition is also checked over
    every directed subfamily (only for families of at most 12 sets).
    """
    family = list(family)
    if not family:
        raise StructureError("a convex structure needs at least the two constant sets")
    _check_family(q, size, family)
    members = {C.degrees for C in family}
    bottom, top = (q.bottom,) * size, (q.top,) * size
    if bottom not in members or top not in members:
        missing = "0_X" if bottom not in members else "1_X"
        raise MissingBottomTop(f"{missing} is not in the family", witness=missing)
    distinct = sorted(members)
    meet = q.meet
    for a, b in combinations(distinct, 2):
        m = tuple(meet[x][y] for x, y in zip(a, b))
        if m not in members:
            raise NotMeetClosed(f"meet of {a} and {b} is missing", witness=(a, b))
    res = q.residuum
    for p in q.elements:
        for c in distinct:
            r = tuple(res[p][x] for x in c)
            if r not in members:
                raise NotStratified(f"{p} -> {c} is missing", witness=(p, c))
    space = LConvexSpace(q, size, (LSet(q, d) for d in distinct), labels=labels)
    if audit_directed:
        bad = directed_join_audit(space)
        if bad is not None:
            raise NotDirectedJoinClosed("a directed subfamily has no join in the family", witness=bad)
    return space


def directed_subfamilies(family: Sequence[LSet]) -> Iterator[tuple[LSet, ...]]:
    """Every non-empty subfamily in which each pair has an upper bound inside it."""
    n = len(family)
    if n > DIRECTED_AUDIT_LIMIT:
        raise SizeLimitExceeded(f"{n} sets exceed the directed-audit limit", witness=n)
    above = [[family[i] <= family[j] for j in range(n)] for i in range(n)]
    for r in range(1, n + 1):
        for idx in combinations(range(n), r):
            if all(any(above[i][k] and above[j][k] for k in idx) for i, j in combinations(idx, 2)):
                yield tuple(family[i] for i in idx)


def directed_join_audit(X: LConvexSpace) -> Optional[tuple]:
    """First directed subfamily whose pointwise join is not convex, or None."""
    for sub_family in directed_subfamilies(X.convexes):
        j = pointwise_join(X.quantale, X.size, sub_family)
        if j not in X:
            return tuple(c.degrees for c in sub_family)
    return None


def generate_structure(q: Quantale, size: int, generators: Iterable[LSet] = (),
                       stratified: bool = True, cap: Optional[int] = None,
                       labels=None) -> LConvexSpace:
    """Least (stratified) convex structure containing ``generators``."""
    if size < 1:
        raise EmptySubcarrier("a space needs at least one point")
    cap = family_cap() if cap is None else cap
    generators = list(generators)
    _check_family(q, size, generators)
    meet, res = q.meet, q.residuum
    seeds = [(q.bottom,) * size, (q.top,) * size] + sorted({g.degrees for g in generators})
    family: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()

    def add(d):
        if d not in seen:
            seen.add(d)
            family.append(d)
            if len(family) > cap:
                raise BudgetExceeded(f"closure exceeds {cap} sets", witness=cap)

    for d in seeds:
        add(d)
    i = 0
    while i < len(family):
        c = family[i]
        if stratified:
            for p in q.elements:
                add(tuple(res[p][x] for x in c))
        for d in family[: i + 1]:
            add(tuple(meet[x][y] for x, y in zip(c, d)))
        i += 1
    convexes = [LSet(q, d) for d in family]
    if stratified:
        return validate_structure(q, size, convexes, labels=labels)
    return LConvexSpace(q, size, convexes, labels=labels)


def hull(X: LConvexSpace, A: LSet) -> LSet:
    """Pointwise meet of all convex sets above ``A``."""
    if A.size != X.size or A.quantale != X.quantale:
        raise CarrierMismatch(f"{A!r} is not an L-subset of {X!r}")
    q = X.quantale
    leq, meet = q.leq, q.meet
    acc = [q.top] * X.size
    a = A.degrees
    for C in X.convexes:
        c = C.degrees
        if all(leq[x][y] for x, y in zip(a, c)):
            acc = [meet[u][v] for u, v in zip(acc, c)]
    return LSet(q, tuple(acc))


def is_S0(X: LConvexSpace) -> bool:
    return len(set(X.point_hulls)) == X.size


def s0_witness(X: LConvexSpace) -> Optional[tuple[int, int]]:
    """Two distinct points with the same hull, or None."""
    seen: dict[LSet, int] = {}
    for x, h in enumerate(X.point_hulls):
        if h in seen:
            return seen[h], x
        seen[h] = x
    return None


def _normalize_points(X: LConvexSpace, points: Iterable[int]) -> tuple[int, ...]:
    pts = tuple(sorted(set(points)))
    if not pts:
        raise EmptySubcarrier("a subspace needs at least one point")
    for y in pts:
        if not 0 <= y < X.size:
            raise IndexOutOfRange(f"point {y} outside carrier of size {X.size}", witness=y)
    return pts


def subspace(X: LConvexSpace, points: Iterable[int]) -> LConvexSpace:
    """The family of restrictions to ``points`` (sorted), as a space."""
    pts = _normalize_points(X, points)
    q = X.quantale
    restricted = {tuple(C.degrees[y] for y in pts) for C in X.convexes}
    return validate_structure(q, len(pts), (LSet(q, d) for d in restricted),
                              labels=[X.labels[y] for y in pts])


@dataclass(frozen=True)
class MapFlags:
    cp: bool
    convex_to_convex: bool
    injective: bool
    surjective: bool
    bijective: bool
    homeomorphism: bool
    subspace_embedding: bool
    quasihomeomorphism: bool

    def to_document(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class SpaceMap:
    """A point function ``source -> target``; classification is cached."""

    source: LConvexSpace
    target: LConvexSpace
    points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.source.quantale != self.target.quantale:
            raise CarrierMismatch("source and target use different quantales")
        if len(self.points) != self.source.size:
            raise CarrierMismatch(f"{len(self.points)} images for {self.source.size} points")
        for y in self.points:
            if not 0 <= y < self.target.size:
                raise IndexOutOfRange(f"image {y} outside target of size {self.target.size}", witness=y)

    def __call__(self, x: int) -> int:
        return self.points[x]

    def backward(self, D: LSet) -> LSet:
        return zadeh_backward(self.points, D)

    def forward(self, A: LSet) -> LSet:
        return zadeh_forward(self.points, A, self.target.size)

    @cached_property
    def preimage_indices(self) -> tuple[Optional[int], ...]:
        """For each convex set of the target, the index of its preimage in
        the source family (None when the preimage is not convex)."""
        idx = self.source.index
        return tuple(idx.get(tuple(D.degrees[y] for y in self.points)) for D in self.target.convexes)

    @cached_property
    def flags(self) -> MapFlags:
        return _classify(self)

    def to_document(self) -> dict:
        return {"points": list(self.points)}


def _classify(f: SpaceMap) -> MapFlags:
    X, Y = f.source, f.target
    pre = f.preimage_indices
    cp = all(i is not None for i in pre)
    c2c = all(f.forward(C) in Y for C in X.convexes)
    image = set(f.points)
    injective = len(image) == X.size
    surjective = len(image) == Y.size
    bijective = injective and surjective
    quasi = cp and len(set(pre)) == len(pre) == len(X.convexes)
    embedding = injective and _corestriction_is_homeomorphism(f, sorted(image))
    return MapFlags(
        cp=cp,
        convex_to_convex=c2c,
        injective=injective,
        surjective=surjective,
        bijective=bijective,
        homeomorphism=bijective and cp and c2c,
        subspace_embedding=embedding,
        quasihomeomorphism=quasi,
    )


def _corestriction_is_homeomorphism(f: SpaceMap, image: list[int]) -> bool:
    sub_y = subspace(f.target, image)
    pos = {y: i for i, y in enumerate(image)}
    g = SpaceMap(f.source, sub_y, tuple(pos[y] for y in f.points))
    cp = all(i is not None for i in g.preimage_indices)
    return cp and all(g.forward(C) in sub_y for C in g.source.convexes)


def classify_map(f: SpaceMap) -> MapFlags:
    return f.flags


def identity(X: LConvexSpace) -> SpaceMap:
    return SpaceMap(X, X, tuple(X.points))


def constant_map(X: LConvexSpace, Y: LConvexSpace, y: int) -> SpaceMap:
    return SpaceMap(X, Y, (y,) * X.size)


def compose(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    """``g o f``."""
    if f.target != g.source:
        raise CarrierMismatch("maps are not composable")
    return SpaceMap(f.source, g.target, tuple(g.points[y] for y in f.points))


def inverse(f: SpaceMap) -> SpaceMap:
    if not f.flags.bijective:
        raise ValueError("only bijections have inverses")
    inv = [0] * f.target.size
    for x, y in enumerate(f.points):
        inv[y] = x
    return SpaceMap(f.target, f.source, tuple(inv))


def inclusion(X: LConvexSpace, points: Iterable[int]) -> SpaceMap:
    """The inclusion of ``subspace(X, points)`` into ``X``."""
    pts = _normalize_points(X, points)
    return SpaceMap(subspace(X, pts), X, pts)


def count_maps(X: LConvexSpace, Y: LConvexSpace) -> int:
    return Y.size ** X.size


def all_maps(X: LConvexSpace, Y: LConvexSpace, cap: Optional[int] = None,
             fixed: Optional[dict[int, int]] = None) -> Iterator[SpaceMap]:
    """Point maps ``X -> Y`` in lexicographic order of images.

    ``fixed`` pins the images of some points; only the remaining points are
    enumerated, and ``cap`` bounds that count.
    """
    fixed = fixed or {}
    free = [x for x in X.points if x not in fixed]
    total = Y.size ** len(free)
    if cap is not None and total > cap:
        raise SizeLimitExceeded(f"{total} maps exceed the cap {cap}", witness=total)
    for images in product(range(Y.size), repeat=len(free)):
        pts = dict(fixed)
        pts.update(zip(free, images))
        yield SpaceMap(X, Y, tuple(pts[x] for x in X.points))


def cp_maps(X: LConvexSpace, Y: LConvexSpace, cap: Optional[int] = None,
            fixed: Optional[dict[int, int]] = None) -> list[SpaceMap]:
    return [f for f in all_maps(X, Y, cap=cap, fixed=fixed) if f.flags.cp]
