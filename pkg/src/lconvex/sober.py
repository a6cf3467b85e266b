"""Algebraic irreducible convex sets, sobriety, and the sobrification."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .convex import (
    LConvexSpace,
    SpaceMap,
    cp_maps,
    directed_subfamilies,
    hull,
    is_S0,
    validate_structure,
)
from .errors import InternalConsistencyError, NotCP, NotSober, SizeLimitExceeded
from .lfuzz import LSet, pointwise_join, sub

IRR_AUDIT_LIMIT = 10
DEFAULT_MAP_CAP = 200_000


def irr(X: LConvexSpace) -> tuple[LSet, ...]:
    """Convex sets whose degrees join to top, in canonical order.

    The directed-sup condition holds automatically on a finite family (every
    directed subfamily contains its maximum); :func:`irr_audit` checks it.
    """
    top = X.quantale.top
    return tuple(F for F in X.convexes if F.height() == top)


def irr_audit(X: LConvexSpace) -> Optional[tuple[LSet, tuple[LSet, ...]]]:
    """Check the directed-sup condition for every member of ``irr(X)``
    against every directed subfamily.  Returns the first failure or None."""
    if len(X.convexes) > IRR_AUDIT_LIMIT:
        raise SizeLimitExceeded(f"{len(X.convexes)} convex sets exceed the audit limit",
                                witness=len(X.convexes))
    q = X.quantale
    families = list(directed_subfamilies(X.convexes))
    for F in irr(X):
        for fam in families:
            lhs = sub(F, pointwise_join(q, X.size, fam))
            rhs = q.join_all(sub(F, C) for C in fam)
            if lhs != rhs:
                return F, fam
    return None


@dataclass(frozen=True)
class SoberVerdict:
    """Outcome of the hull-of-a-unique-point test.

    ``kind`` is ``"sober"``, ``"non_point_irr"`` (``witness`` is the hull of
    no point) or ``"ambiguous_point"`` (``witness`` is the hull of every point
    in ``points``).  A space that fails S0 always shows up as
    ``ambiguous_point``, since every point hull is irreducible.
    """

    kind: str
    s0: bool
    witness: Optional[LSet] = None
    points: tuple[int, ...] = ()

    @property
    def sober(self) -> bool:
        return self.kind == "sober"

    def to_document(self) -> dict:
        doc = {"verdict": self.kind, "sober": self.sober, "s0": self.s0}
        if self.witness is not None:
            doc["witness"] = {"irr": self.witness.to_document(), "points": list(self.points)}
        return doc


def hull_verdict(X: LConvexSpace) -> SoberVerdict:
    hulls = X.point_hulls
    s0 = is_S0(X)
    for F in irr(X):
        pts = tuple(a for a in X.points if hulls[a] == F)
        if not pts:
            return SoberVerdict("non_point_irr", s0, F)
        if len(pts) > 1:
            return SoberVerdict("ambiguous_point", s0, F, pts)
    return SoberVerdict("sober", s0)


def eta_verdict(X: LConvexSpace) -> bool:
    """Sobriety decided as "the unit into the sobrification is a homeomorphism"."""
    return sobrify(X).eta.flags.homeomorphism


def is_sober(X: LConvexSpace, cross_check: bool = True) -> SoberVerdict:
    """Decide sobriety; with ``cross_check`` both deciders must agree."""
    verdict = hull_verdict(X)
    if cross_check and verdict.sober != eta_verdict(X):
        raise InternalConsistencyError(
            f"hull decider says {verdict.kind}, unit decider disagrees", witness=X.to_document())
    return verdict


@dataclass(frozen=True)
class Sobrification:
    base: LConvexSpace
    irr_points: tuple[LSet, ...]
    space: LConvexSpace
    eta: SpaceMap
    # phi image of each convex set of ``base``, aligned with base.convexes
    phi_images: tuple[LSet, ...]

    def position(self, F: LSet) -> Optional[int]:
        try:
            return self.irr_points.index(F)
        except ValueError:
            return None

    def phi(self, C: LSet) -> LSet:
        return phi(self.irr_points, C)

    def to_document(self) -> dict:
        return {
            "irr": [F.to_document() for F in self.irr_points],
            "eta": list(self.eta.points),
            "space": self.space.to_document(),
        }


def phi(irr_points, C: LSet) -> LSet:
    """``phi(C)(F) = sub(F, C)`` over the irreducible sets."""
    return LSet(C.quantale, tuple(sub(F, C) for F in irr_points))


def _irr_label(X: LConvexSpace, F: LSet, i: int) -> str:
    pts = [X.labels[a] for a in X.points if X.point_hulls[a] == F]
    return f"co({','.join(pts)})" if pts else f"F{i}"


def sobrify(X: LConvexSpace) -> Sobrification:
    """The space of irreducible convex sets with the phi-image structure,
    together with the unit ``eta_X(x) = co(1_x)``."""
    return _sobrify(X, X.labels)


@lru_cache(maxsize=1024)
def _sobrify(X: LConvexSpace, _labels) -> Sobrification:
    # labels are part of the key: equal spaces may be labelled differently
    points = irr(X)
    images = tuple(phi(points, C) for C in X.convexes)
    if len(set(images)) != len(images):
        raise InternalConsistencyError("phi is not injective", witness=X.to_document())
    labels = [_irr_label(X, F, i) for i, F in enumerate(points)]
    S = validate_structure(X.quantale, len(points), images, labels=labels)
    pos = {F: i for i, F in enumerate(points)}
    try:
        eta_points = tuple(pos[h] for h in X.point_hulls)
    except KeyError as exc:
        raise InternalConsistencyError("a point hull is not irreducible") from exc
    return Sobrification(X, points, S, SpaceMap(X, S, eta_points), images)


def lift_map(f: SpaceMap) -> SpaceMap:
    """``S(f)``: sends ``F`` to the hull of its image under ``f``."""
    if not f.flags.cp:
        raise NotCP("only convexity-preserving maps lift to sobrifications")
    SX, SY = sobrify(f.source), sobrify(f.target)
    pos = {F: i for i, F in enumerate(SY.irr_points)}
    out = []
    for F in SX.irr_points:
        G = hull(f.target, f.forward(F))
        if G not in pos:
            raise InternalConsistencyError("lifted image is not irreducible", witness=G.to_document())
        out.append(pos[G])
    return SpaceMap(SX.space, SY.space, tuple(out))


def factorizations(X: LConvexSpace, Z: LConvexSpace, f: SpaceMap,
                   cap: int = DEFAULT_MAP_CAP) -> list[SpaceMap]:
    """All cp maps ``g: S(X) -> Z`` with ``g o eta_X = f``, by enumeration.

    Points of ``S(X)`` in the image of ``eta_X`` have their images forced by
    the equation; the others range over all of ``Z``.
    """
    S = sobrify(X)
    fixed: dict[int, int] = {}
    for x, F in enumerate(S.eta.points):
        if fixed.setdefault(F, f.points[x]) != f.points[x]:
            return []
    return cp_maps(S.space, Z, cap=cap, fixed=fixed)


def check_universal_property(X: LConvexSpace, Z: LConvexSpace, f: SpaceMap,
                             cap: int = DEFAULT_MAP_CAP) -> SpaceMap:
    """The unique cp ``g: S(X) -> Z`` with ``g o eta_X = f``."""
    if f.source != X or f.target != Z:
        raise ValueError("f must be a map X -> Z")
    if not f.flags.cp:
        raise NotCP("the universal property concerns cp maps")
    if not hull_verdict(Z).sober:
        raise NotSober("the target of the universal property must be sober")
    found = factorizations(X, Z, f, cap=cap)
    if len(found) != 1:
        raise InternalConsistencyError(f"{len(found)} factorizations through the unit",
                                       witness=[list(g.points) for g in found])
    return found[0]
