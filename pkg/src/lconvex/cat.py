"""Quasihomeomorphisms, strict embeddings and the characterization checks.

The theorem checks evaluate, on one instance, the conditions a result
claims equivalent (or predicts) and return a :class:`TheoremReport`.
Nothing here certifies a theorem beyond the instance it was run on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .convex import (
    LConvexSpace,
    SpaceMap,
    all_maps,
    compose,
    cp_maps,
    identity,
    inverse,
    is_S0,
    subspace,
)
from .errors import (
    EmptyEqualizer,
    InternalConsistencyError,
    NoCanonicalExtension,
    NotARetraction,
    NotCP,
    NotS0,
    NotSober,
    NotStrictEmbedding,
)
from .lorder import find_order_iso, inclusion_order
from .sober import (
    DEFAULT_MAP_CAP,
    factorizations,
    hull_verdict,
    is_sober,
    lift_map,
    sobrify,
)


@dataclass
class TheoremReport:
    theorem: str
    conditions: dict[str, bool]
    instance: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    exhaustive: bool = True
    # when set, every condition must also equal this value
    predicted: Optional[bool] = None

    @property
    def agreement(self) -> bool:
        values = set(self.conditions.values())
        if len(values) > 1:
            return False
        return self.predicted is None or values <= {self.predicted}

    def to_document(self) -> dict:
        doc = {
            "theorem": self.theorem,
            "instance": self.instance,
            "conditions": dict(self.conditions),
            "witnesses": self.witnesses,
            "exhaustive": self.exhaustive,
            "agreement": self.agreement,
        }
        if self.predicted is not None:
            doc["predicted"] = self.predicted
        return doc


def _require_cp(*maps: SpaceMap) -> None:
    for f in maps:
        if not f.flags.cp:
            raise NotCP(f"map {list(f.points)} is not convexity-preserving", witness=list(f.points))


def is_quasihomeomorphism(f: SpaceMap) -> bool:
    """True iff ``D -> f<-(D)`` is a bijection ``C(Y) -> C(X)``."""
    _require_cp(f)
    return f.flags.quasihomeomorphism


def is_strict_embedding(f: SpaceMap) -> bool:
    return is_quasihomeomorphism(f) and f.flags.subspace_embedding


def preimage_surjective(f: SpaceMap) -> bool:
    """``f<-`` maps ``C(Y)`` into ``C(X)`` and hits every convex set of ``X``."""
    images = {f.backward(D) for D in f.target.convexes}
    return all(C in f.source for C in images) and set(f.source.convexes) <= images


def embedding_iff_surjection(f: SpaceMap) -> TheoremReport:
    if not (is_S0(f.source) and is_S0(f.target)):
        raise NotS0("both spaces must be S0")
    return TheoremReport(
        "embedding-iff-surjection",
        {
            "subspace_embedding": f.flags.subspace_embedding,
            "preimage_surjective": preimage_surjective(f),
        },
        instance={"points": list(f.points)},
    )


def sobrification_witness(X: LConvexSpace, Y: LConvexSpace,
                          cap: int = DEFAULT_MAP_CAP) -> Optional[tuple[SpaceMap, SpaceMap]]:
    """A cp ``eta: X -> Y`` whose factorization ``S(X) -> Y`` is a homeomorphism.

    Since ``S(X)`` is a sobrification and sobrifications are unique up to
    homeomorphism, ``(Y, eta)`` is a sobrification of ``X`` iff the unique
    factorization of ``eta`` through ``eta_X`` is a homeomorphism.  Both the
    candidate units and the factorizations are found by enumeration.
    """
    for eta in all_maps(X, Y, cap=cap):
        if not eta.flags.cp:
            continue
        found = factorizations(X, Y, eta, cap=cap)
        if len(found) != 1:
            raise InternalConsistencyError(
                f"{len(found)} factorizations of a cp map into a sober space",
                witness=list(eta.points))
        if found[0].flags.homeomorphism:
            return eta, found[0]
    return None


def characterize_sobrification(X: LConvexSpace, Y: LConvexSpace,
                               cap: int = DEFAULT_MAP_CAP) -> TheoremReport:
    """Sobrification / quasihomeomorphism / order-isomorphic families."""
    if not hull_verdict(Y).sober:
        raise NotSober("Y must be sober")
    witnesses: dict = {}
    unit = sobrification_witness(X, Y, cap=cap)
    if unit is not None:
        witnesses["unit"] = list(unit[0].points)
        witnesses["comparison"] = list(unit[1].points)
    quasi = next((f for f in all_maps(X, Y, cap=cap)
                  if f.flags.cp and f.flags.quasihomeomorphism), None)
    if quasi is not None:
        witnesses["quasihomeomorphism"] = list(quasi.points)
    iso = find_order_iso(inclusion_order(X.quantale, X.convexes),
                         inclusion_order(Y.quantale, Y.convexes))
    if iso is not None:
        witnesses["order_iso"] = list(iso)
    return TheoremReport(
        "char-sobrification",
        {
            "sobrification": unit is not None,
            "quasihomeomorphism_exists": quasi is not None,
            "families_order_isomorphic": iso is not None,
        },
        instance={"X": X.to_document(), "Y": Y.to_document()},
        witnesses=witnesses,
    )


def lift_is_homeo_iff_quasi(f: SpaceMap) -> TheoremReport:
    _require_cp(f)
    lifted = lift_map(f)
    return TheoremReport(
        "lift-homeo",
        {
            "quasihomeomorphism": f.flags.quasihomeomorphism,
            "lift_homeomorphism": lifted.flags.homeomorphism,
        },
        instance={"points": list(f.points)},
        witnesses={"lift": list(lifted.points)},
    )


def extensions(j: SpaceMap, f: SpaceMap, cap: int = DEFAULT_MAP_CAP) -> list[SpaceMap]:
    """Every cp ``g: Z -> X`` with ``g o j = f`` (enumerated)."""
    fixed: dict[int, int] = {}
    for y, z in enumerate(j.points):
        if fixed.setdefault(z, f.points[y]) != f.points[y]:
            return []
    return cp_maps(j.target, f.target, cap=cap, fixed=fixed)


def extend_along(j: SpaceMap, f: SpaceMap, check_unique: bool = True,
                 cap: int = DEFAULT_MAP_CAP) -> SpaceMap:
    """Extend cp ``f: Y -> X`` along a strict embedding ``j: Y -> Z``.

    Built as ``eta_X^-1 o S(f) o S(j)^-1 o eta_Z``; requires ``X`` sober.
    A strict embedding need not lift to a homeomorphism (irreducibility
    asks for height top, which restriction can lose), in which case
    ``NoCanonicalExtension`` is raised and ``extensions`` is the fallback.
    """
    X = f.target
    if j.source != f.source:
        raise ValueError("j and f must share their source")
    _require_cp(f)
    if not hull_verdict(X).sober:
        raise NotSober("the extension target must be sober")
    if not (j.flags.cp and is_strict_embedding(j)):
        raise NotStrictEmbedding("j must be a strict embedding", witness=list(j.points))
    lifted_j = lift_map(j)
    if not lifted_j.flags.homeomorphism:
        raise NoCanonicalExtension("S(j) is not a homeomorphism", witness=list(lifted_j.points))
    eta_x = sobrify(X).eta
    eta_z = sobrify(j.target).eta
    fbar = compose(inverse(eta_x), compose(lift_map(f), compose(inverse(lifted_j), eta_z)))
    if compose(fbar, j) != f:
        raise InternalConsistencyError("extension does not restrict to f", witness=list(fbar.points))
    if not fbar.flags.cp:
        raise InternalConsistencyError("extension is not convexity-preserving", witness=list(fbar.points))
    if check_unique:
        others = extensions(j, f, cap=cap)
        if others != [fbar]:
            raise InternalConsistencyError(
                f"{len(others)} cp extensions found by enumeration",
                witness=[list(g.points) for g in others])
    return fbar


def canonical_retractions(X: LConvexSpace, cap: int = DEFAULT_MAP_CAP) -> list[SpaceMap]:
    """Every cp ``g: S(X) -> X`` with ``g o eta_X = id``."""
    return factorizations(X, X, identity(X), cap=cap)


def injectivity_probe(X: LConvexSpace, pairs: Iterable[tuple[SpaceMap, SpaceMap]] = (),
                      cap: int = DEFAULT_MAP_CAP) -> TheoremReport:
    """Strict injectivity against ``(j, f)`` pairs plus the canonical probe.

    For sober ``X`` every pair must extend; otherwise the pair
    ``(eta_X, id_X)`` must admit no extension.
    """
    if not is_S0(X):
        raise NotS0("strict injectivity is tested among S0 spaces")
    sober = is_sober(X).sober
    if not is_strict_embedding(sobrify(X).eta):
        raise InternalConsistencyError("eta_X is not a strict embedding of an S0 space")
    witnesses: dict = {}
    retractions = canonical_retractions(X, cap=cap)
    witnesses["retractions"] = [list(g.points) for g in retractions]
    extends = bool(retractions)
    if sober:
        extended, enumerated, failed = [], [], []
        for j, f in pairs:
            if f.target != X:
                raise ValueError("pool maps must land in X")
            try:
                extended.append(list(extend_along(j, f, cap=cap).points))
            except NoCanonicalExtension as exc:
                # the formula does not apply; fall back to a direct search
                found = [list(g.points) for g in extensions(j, f, cap=cap)]
                entry = {"Z": j.target.to_document(), "j": list(j.points),
                         "f": list(f.points), "lifted_j": exc.witness, "extensions": found}
                (enumerated if found else failed).append(entry)
        witnesses["extensions"] = extended
        if enumerated:
            witnesses["enumerated"] = enumerated
        if failed:
            witnesses["unextended"] = failed
            extends = False
    return TheoremReport(
        "injectivity",
        {"sober": sober, "strictly_injective": extends},
        instance={"X": X.to_document(), "pairs": len(pairs) if sober else 0},
        witnesses=witnesses,
    )


def equalizer_sober(f: SpaceMap, g: SpaceMap) -> TheoremReport:
    X, Y = f.source, f.target
    if g.source != X or g.target != Y:
        raise ValueError("f and g must be parallel")
    _require_cp(f, g)
    if not hull_verdict(X).sober:
        raise NotSober("the domain must be sober")
    if not is_S0(Y):
        raise NotS0("the codomain must be S0")
    agree = [x for x in X.points if f.points[x] == g.points[x]]
    if not agree:
        raise EmptyEqualizer("f and g agree nowhere")
    Z = subspace(X, agree)
    verdict = is_sober(Z)
    return TheoremReport(
        "equalizer",
        {"equalizer_sober": verdict.sober},
        instance={"f": list(f.points), "g": list(g.points), "equalizer": agree},
        witnesses={"verdict": verdict.to_document()},
        predicted=True,
    )


def retraction_kernel_sober(r: SpaceMap, d: SpaceMap) -> TheoremReport:
    X, Y = r.source, r.target
    if d.source != Y or d.target != X:
        raise ValueError("r: X -> Y and d: Y -> X required")
    if compose(r, d) != identity(Y):
        raise NotARetraction("r o d is not the identity", witness=list(compose(r, d).points))
    _require_cp(r, d)
    if not hull_verdict(X).sober:
        raise NotSober("X must be sober")
    verdict = is_sober(Y)
    return TheoremReport(
        "retraction",
        {"kernel_sober": verdict.sober},
        instance={"r": list(r.points), "d": list(d.points)},
        witnesses={"verdict": verdict.to_document()},
        predicted=True,
    )
