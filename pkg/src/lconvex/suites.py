"""Seeded theorem suites.

A suite turns a :class:`SuiteConfig` into a list of :class:`TheoremReport`
objects plus a summary.  The output depends only on the config, so two runs
with the same seed serialize to identical bytes.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import permutations, product
from typing import Callable, Optional

from . import instances
from .cat import (
    TheoremReport,
    characterize_sobrification,
    equalizer_sober,
    injectivity_probe,
    is_strict_embedding,
    lift_is_homeo_iff_quasi,
    retraction_kernel_sober,
)
from .convex import (
    LConvexSpace,
    SpaceMap,
    count_maps,
    cp_maps,
    hull,
    identity,
    inclusion,
    is_S0,
)
from .errors import EmptyEqualizer
from .generate import random_cp_map, random_lset, random_space, trial_rng
from .lfuzz import LSet, all_lsets, sub, zadeh_backward, zadeh_forward
from .lorder import inclusion_order, inf_preserving, is_order_iso, sup_preserving
from .quantale import Quantale, build_chain_quantale
from .sober import eta_verdict, hull_verdict, sobrify


@dataclass
class SuiteConfig:
    trials: int = 20
    seed: int = 0
    max_convexes: Optional[int] = None
    inject_fault: bool = False


@dataclass
class SuiteResult:
    suite: str
    config: SuiteConfig
    reports: list[TheoremReport] = field(default_factory=list)
    decider_checks: int = 0
    decider_disagreements: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.decider_disagreements and all(r.agreement for r in self.reports)

    def to_document(self) -> dict:
        return {
            "suite": self.suite,
            "config": asdict(self.config),
            "reports": [r.to_document() for r in self.reports],
            "summary": {
                "reports": len(self.reports),
                "agreements": sum(r.agreement for r in self.reports),
                "exhaustive": all(r.exhaustive for r in self.reports),
                "decider_checks": self.decider_checks,
                "decider_disagreements": self.decider_disagreements,
                "passed": self.passed,
            },
        }


def _quantales(*names: str) -> list[Quantale]:
    out = []
    for name in names:
        flavor, n = name.rsplit("-", 1)
        out.append(build_chain_quantale(int(n), flavor))
    return out


# draws per requested instance before a suite gives up
MAX_DRAWS = 5


class _Run:
    def __init__(self, name: str, config: SuiteConfig):
        self.result = SuiteResult(name, config)
        self.config = config

    def rng(self, trial: int, stream: str = ""):
        return trial_rng(self.config.seed, trial, f"{self.result.suite}/{stream}")

    def add(self, report: TheoremReport) -> TheoremReport:
        self.result.reports.append(report)
        return report

    def sober(self, X: LConvexSpace) -> bool:
        """Decide sobriety with both deciders and tally their agreement."""
        by_hull = hull_verdict(X).sober
        by_eta = eta_verdict(X)
        self.result.decider_checks += 1
        if by_hull != by_eta:
            self.result.decider_disagreements.append(X.to_document())
        return by_hull

    def cap(self, default: int) -> int:
        return self.config.max_convexes or default


# adjunction and order preservation of the Zadeh extensions

def _adjunction_instance(q: Quantale, nx: int, ny: int, maps, pairs) -> dict:
    counts = {"adjunction": 0, "forward_monotone": 0, "backward_monotone": 0,
              "backward_meets_joins": 0}
    witness = {}
    for f in maps:
        for A, B in pairs(nx, ny):
            fa = zadeh_forward(f, A, ny)
            if sub(fa, B) != sub(A, zadeh_backward(f, B)):
                counts["adjunction"] += 1
                witness.setdefault("adjunction", [list(f), list(A.degrees), list(B.degrees)])
        for A, A2 in pairs(nx, nx):
            if not q.leq[sub(A, A2)][sub(zadeh_forward(f, A, ny), zadeh_forward(f, A2, ny))]:
                counts["forward_monotone"] += 1
        for B, B2 in pairs(ny, ny):
            fb, fb2 = zadeh_backward(f, B), zadeh_backward(f, B2)
            if not q.leq[sub(B, B2)][sub(fb, fb2)]:
                counts["backward_monotone"] += 1
            if zadeh_backward(f, B.meet(B2)) != fb.meet(fb2) or zadeh_backward(f, B.join(B2)) != fb.join(fb2):
                counts["backward_meets_joins"] += 1
    return counts, witness


def suite_adjunction(config: SuiteConfig) -> SuiteResult:
    run = _Run("adjunction", config)
    for q in _quantales("godel-3", "lukasiewicz-3"):
        for nx, ny in product(range(1, 4), repeat=2):
            maps = list(product(range(ny), repeat=nx))

            def every_pair(a, b):
                return product(list(all_lsets(q, a)), list(all_lsets(q, b)))

            counts, witness = _adjunction_instance(q, nx, ny, maps, every_pair)
            run.add(TheoremReport(
                "adjunction", {k: v == 0 for k, v in counts.items()},
                instance={"quantale": q.name, "X": nx, "Y": ny, "maps": len(maps)},
                witnesses=witness, predicted=True))
    q5 = build_chain_quantale(5, "lukasiewicz")
    for t in range(config.trials):
        rng = run.rng(t)
        nx, ny = rng.randint(1, 4), rng.randint(1, 4)
        f = tuple(rng.randrange(ny) for _ in range(nx))

        def sampled(a, b, rng=rng):
            return [(random_lset(rng, q5, a), random_lset(rng, q5, b)) for _ in range(40)]

        counts, witness = _adjunction_instance(q5, nx, ny, [f], sampled)
        run.add(TheoremReport(
            "adjunction", {k: v == 0 for k, v in counts.items()},
            instance={"quantale": q5.name, "X": nx, "Y": ny, "map": list(f), "trial": t},
            witnesses=witness, exhaustive=False, predicted=True))
    return run.result


# hull operator

def hull_lemma_report(X: LConvexSpace, label: str) -> TheoremReport:
    q = X.quantale
    checks = {"hull_convex": True, "extensive": True, "idempotent": True,
              "monotone": True, "sub_lemma": True}
    witnesses: dict = {}
    everything = list(all_lsets(q, X.size))
    hulls = {A: hull(X, A) for A in everything}

    def fail(name, data):
        checks[name] = False
        witnesses.setdefault(name, data)

    for A in everything:
        h = hulls[A]
        if h not in X:
            fail("hull_convex", list(A.degrees))
        if not A <= h:
            fail("extensive", list(A.degrees))
        if hull(X, h) != h:
            fail("idempotent", list(A.degrees))
        for B in X.convexes:
            if sub(A, B) != sub(h, B):
                fail("sub_lemma", [list(A.degrees), list(B.degrees)])
    for A, A2 in product(everything, repeat=2):
        if A <= A2 and not hulls[A] <= hulls[A2]:
            fail("monotone", [list(A.degrees), list(A2.degrees)])
    return TheoremReport("hull-lemma", checks,
                         instance={"label": label, "X": X.to_document()},
                         witnesses=witnesses, predicted=True)


def corrupted_space() -> LConvexSpace:
    """Four Goedel-3 sets that are not closed under meets (bypasses validation)."""
    q = instances.godel3()
    return LConvexSpace(q, 2, [LSet(q, (0, 0)), LSet(q, (2, 1)), LSet(q, (1, 2)), LSet(q, (2, 2))])


def suite_hull_lemma(config: SuiteConfig) -> SuiteResult:
    run = _Run("hull-lemma", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    for t in range(config.trials):
        X = random_space(run.rng(t), qs, sizes=(1, 3), generators=(0, 3),
                         max_convexes=config.max_convexes)
        if X is not None:
            run.add(hull_lemma_report(X, f"trial-{t}"))
    if config.inject_fault:
        run.add(hull_lemma_report(corrupted_space(), "injected-fault"))
    return run.result


# sobrification soundness

def sobrification_report(run: _Run, X: LConvexSpace, label: str) -> TheoremReport:
    S = sobrify(X)
    eta = S.eta
    phi_back = all(eta.backward(S.phi(C)) == C for C in X.convexes)
    back_phi = all(S.phi(eta.backward(D)) == D for D in S.space.convexes)
    run.sober(X)
    return TheoremReport(
        "sobrification",
        {
            "sobrification_sober": run.sober(S.space),
            "eta_quasihomeomorphism": eta.flags.cp and eta.flags.quasihomeomorphism,
            "eta_preimage_of_phi_is_identity": phi_back,
            "phi_of_eta_preimage_is_identity": back_phi,
            "eta_is_point_hull": all(S.irr_points[eta.points[x]] == X.point_hulls[x] for x in X.points),
        },
        instance={"label": label, "X": X.to_document()},
        witnesses={"irr": len(S.irr_points), "eta": list(eta.points)},
        predicted=True,
    )


def suite_sobrification(config: SuiteConfig) -> SuiteResult:
    run = _Run("sobrification", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    for t in range(config.trials):
        X = random_space(run.rng(t), qs, sizes=(1, 4), generators=(0, 4),
                         max_convexes=config.max_convexes)
        if X is not None:
            run.add(sobrification_report(run, X, f"trial-{t}"))
    return run.result


# characterization of sobrifications

def suite_char_sobrification(config: SuiteConfig) -> SuiteResult:
    run = _Run("char-sobrification", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    limit = run.cap(7)
    for t in range(config.trials):
        X = random_space(run.rng(t, "match"), qs, sizes=(1, 3), generators=(0, 3), max_convexes=limit)
        if X is None:
            continue
        Y = sobrify(X).space
        run.sober(X)
        run.sober(Y)
        report = characterize_sobrification(X, Y)
        report.predicted = True
        report.instance["kind"] = "matched"
        run.add(report)
    for t in range(config.trials):
        rng = run.rng(t, "mismatch")
        X = random_space(rng, qs, sizes=(1, 3), generators=(0, 3), max_convexes=limit)
        if X is None:
            continue
        Y = None
        for _ in range(50):
            W = random_space(rng, [X.quantale], sizes=(1, 3), generators=(0, 3), max_convexes=limit)
            if W is not None and len(W.convexes) != len(X.convexes):
                Y = sobrify(W).space
                break
        if Y is None:
            continue
        run.sober(Y)
        report = characterize_sobrification(X, Y)
        report.predicted = False
        report.instance["kind"] = "mismatched"
        run.add(report)
    return run.result


# lifting maps to sobrifications

def suite_lift_homeo(config: SuiteConfig) -> SuiteResult:
    run = _Run("lift-homeo", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    limit = run.cap(12)
    for t in range(config.trials):
        rng = run.rng(t)
        X = random_space(rng, qs, sizes=(1, 3), generators=(0, 3), max_convexes=limit)
        if X is None:
            continue
        run.sober(X)
        candidates = [("eta", sobrify(X).eta), ("identity", identity(X))]
        Y = random_space(rng, [X.quantale], sizes=(1, 3), generators=(0, 3), max_convexes=limit)
        if Y is not None:
            f = random_cp_map(rng, X, Y)
            if f is not None:
                candidates.append(("random", f))
        for kind, f in candidates:
            report = lift_is_homeo_iff_quasi(f)
            report.instance.update({"trial": t, "kind": kind})
            run.add(report)
    return run.result


# strict injectivity

def _random_sober(run: _Run, rng, qs, limit) -> Optional[LConvexSpace]:
    X = random_space(rng, qs, sizes=(1, 3), generators=(0, 3), max_convexes=limit)
    if X is None:
        return None
    S = sobrify(X).space
    if len(S.convexes) > limit:
        return None
    run.sober(S)
    return S


def _random_strict_embedding(rng, q, limit) -> Optional[SpaceMap]:
    """Either ``eta_V`` of a random S0 space or a strict subspace inclusion."""
    for _ in range(30):
        V = random_space(rng, [q], sizes=(1, 3), generators=(0, 3), max_convexes=limit)
        if V is None or not is_S0(V):
            continue
        if rng.random() < 0.5 and V.size > 1:
            pts = sorted(rng.sample(range(V.size), rng.randint(1, V.size - 1)))
            j = inclusion(V, pts)
        else:
            j = sobrify(V).eta
        if is_S0(j.source) and is_S0(j.target) and j.flags.cp and is_strict_embedding(j):
            return j
    return None


def suite_injectivity(config: SuiteConfig) -> SuiteResult:
    run = _Run("injectivity", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    limit = run.cap(8)
    for i, X in enumerate(instances.s0_non_sober_examples()):
        run.sober(X)
        report = injectivity_probe(X)
        report.instance["label"] = f"fixed-{i}"
        run.add(report)
    for t in range(config.trials):
        rng = run.rng(t)
        X = _random_sober(run, rng, qs, limit)
        if X is None:
            continue
        pairs = []
        for _ in range(6):
            j = _random_strict_embedding(rng, X.quantale, limit)
            if j is None:
                continue
            f = random_cp_map(rng, j.source, X)
            if f is not None:
                pairs.append((j, f))
            if len(pairs) == 2:
                break
        report = injectivity_probe(X, pairs)
        report.instance["label"] = f"sober-{t}"
        run.add(report)
        Y = random_space(rng, qs, sizes=(2, 3), generators=(1, 3), max_convexes=limit)
        if Y is not None and is_S0(Y) and not run.sober(Y):
            report = injectivity_probe(Y)
            report.instance["label"] = f"non-sober-{t}"
            run.add(report)
    return run.result


# equalizers and retraction kernels

def suite_equalizer(config: SuiteConfig) -> SuiteResult:
    run = _Run("equalizer", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    limit = run.cap(10)
    found = 0
    for t in range(config.trials * MAX_DRAWS):
        if found == config.trials:
            break
        rng = run.rng(t)
        X = _random_sober(run, rng, qs, limit)
        if X is None:
            continue
        Y = X if rng.random() < 0.4 else random_space(rng, [X.quantale], sizes=(1, 3),
                                                       generators=(0, 3), max_convexes=limit)
        if Y is None or not is_S0(Y) or count_maps(X, Y) > 50_000:
            continue
        maps = cp_maps(X, Y)
        if not maps:
            continue
        f, g = maps[rng.randrange(len(maps))], maps[rng.randrange(len(maps))]
        try:
            report = equalizer_sober(f, g)
        except EmptyEqualizer:
            run.add(TheoremReport("equalizer", {}, instance={
                "trial": t, "f": list(f.points), "g": list(g.points), "skipped": "EmptyEqualizer"}))
            continue
        report.instance["trial"] = t
        run.add(report)
        found += 1
    return run.result


def suite_retraction(config: SuiteConfig) -> SuiteResult:
    run = _Run("retraction", config)
    qs = _quantales("godel-2", "godel-3", "lukasiewicz-3")
    limit = run.cap(10)
    found = 0
    for t in range(config.trials * MAX_DRAWS):
        if found == config.trials:
            break
        rng = run.rng(t)
        X = _random_sober(run, rng, qs, limit)
        if X is None:
            continue
        pts = sorted(rng.sample(range(X.size), rng.randint(1, X.size)))
        d = inclusion(X, pts)
        Y = d.source
        fixed = {x: i for i, x in enumerate(pts)}
        if count_maps(X, Y) > 50_000:
            continue
        rs = cp_maps(X, Y, fixed=fixed)
        if not rs:
            continue
        r = rs[rng.randrange(len(rs))]
        report = retraction_kernel_sober(r, d)
        report.instance["trial"] = t
        run.add(report)
        found += 1
    return run.result


# bijections between complete L-ordered sets

def suite_order_iso_lemma(config: SuiteConfig) -> SuiteResult:
    run = _Run("order-iso-lemma", config)
    qs = _quantales("godel-3", "lukasiewicz-3")
    limit = min(run.cap(5), 5)
    spaces: list[LConvexSpace] = []
    for t in range(config.trials * MAX_DRAWS):
        if len(spaces) == config.trials:
            break
        X = random_space(run.rng(t), qs, sizes=(1, 4), generators=(0, 4), max_convexes=limit)
        if X is not None and X not in spaces:
            spaces.append(X)
    for i, X in enumerate(spaces):
        P = inclusion_order(X.quantale, X.convexes)
        # the space itself plus up to two others with a same-size family
        others = [Y for Y in spaces if Y != X and Y.quantale == X.quantale
                  and len(Y.convexes) == len(X.convexes)]
        partners = [X] + others[:2]
        for Y in partners:
            Q = inclusion_order(Y.quantale, Y.convexes)
            bad_sup = bad_inf = isos = 0
            witness = {}
            for perm in permutations(range(P.size)):
                iso = is_order_iso(perm, P, Q)
                isos += iso
                if sup_preserving(perm, P, Q) != iso:
                    bad_sup += 1
                    witness.setdefault("sup", list(perm))
                if inf_preserving(perm, P, Q) != iso:
                    bad_inf += 1
                    witness.setdefault("inf", list(perm))
            run.add(TheoremReport(
                "order-iso-lemma",
                {"sup_preserving_iff_iso": bad_sup == 0, "inf_preserving_iff_iso": bad_inf == 0},
                instance={"X": X.to_document(), "Y": Y.to_document(), "isomorphisms": isos},
                witnesses=witness, predicted=True))
    return run.result


SUITES: dict[str, Callable[[SuiteConfig], SuiteResult]] = {
    "adjunction": suite_adjunction,
    "hull-lemma": suite_hull_lemma,
    "sobrification": suite_sobrification,
    "char-sobrification": suite_char_sobrification,
    "lift-homeo": suite_lift_homeo,
    "injectivity": suite_injectivity,
    "equalizer": suite_equalizer,
    "retraction": suite_retraction,
    "order-iso-lemma": suite_order_iso_lemma,
}

FAULT_SUITES = {"hull-lemma"}


def run_suite(name: str, config: SuiteConfig) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if config.inject_fault and name not in FAULT_SUITES:
        raise ValueError(f"fault injection is only available for {sorted(FAULT_SUITES)}")
    return SUITES[name](config)
