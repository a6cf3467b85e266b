"""Randomized search for spaces (or map pairs) matching a target predicate."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .convex import LConvexSpace, all_maps, count_maps, generate_structure, is_S0
from .errors import BudgetExceeded
from .generate import random_lset, trial_rng
from .quantale import Quantale
from .sober import is_sober

log = logging.getLogger(__name__)

TARGETS = ("sober", "not-sober", "S0-not-sober", "not-S0", "quasi-pair")


@dataclass
class SearchConfig:
    quantales: list[Quantale]
    carrier_sizes: tuple[int, int] = (1, 3)
    generator_counts: tuple[int, int] = (0, 3)
    trials: int = 100
    seed: int = 0
    target: str = "sober"
    max_family: Optional[int] = None
    max_findings: Optional[int] = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}; choose from {TARGETS}")
        if not self.quantales:
            raise ValueError("at least one quantale is required")
        lo, hi = self.carrier_sizes
        if not 1 <= lo <= hi:
            raise ValueError(f"bad carrier size range {self.carrier_sizes}")
        lo, hi = self.generator_counts
        if not 0 <= lo <= hi:
            raise ValueError(f"bad generator count range {self.generator_counts}")


def _trial_space(config: SearchConfig, rng) -> LConvexSpace:
    qi = rng.randrange(len(config.quantales))
    q = config.quantales[qi]
    n = rng.randint(*config.carrier_sizes)
    gens = [random_lset(rng, q, n) for _ in range(rng.randint(*config.generator_counts))]
    return generate_structure(q, n, gens, cap=config.max_family)


def _matches(config: SearchConfig, X: LConvexSpace, rng) -> Optional[dict]:
    target = config.target
    if target == "quasi-pair":
        Y = _trial_space(config, rng)
        if Y.quantale != X.quantale or count_maps(X, Y) > 50_000:
            return None
        for f in all_maps(X, Y):
            if f.flags.cp and f.flags.quasihomeomorphism and not f.flags.homeomorphism:
                return {"space": X.to_document(), "target_space": Y.to_document(),
                        "map": list(f.points)}
        return None
    verdict = is_sober(X)
    s0 = is_S0(X)
    hit = {
        "sober": verdict.sober,
        "not-sober": not verdict.sober,
        "S0-not-sober": s0 and not verdict.sober,
        "not-S0": not s0,
    }[target]
    if hit:
        return {"space": X.to_document(), "verdict": verdict.to_document()}
    return None


def run_search(config: SearchConfig) -> list[dict]:
    """Findings in trial order; each carries the trial index for replay."""
    findings = []
    for t in range(config.trials):
        rng = trial_rng(config.seed, t, "search")
        try:
            X = _trial_space(config, rng)
            found = _matches(config, X, rng)
        except BudgetExceeded as exc:
            log.warning("trial %d skipped: %s", t, exc)
            continue
        if found is not None:
            found["trial"] = t
            found["seed"] = config.seed
            findings.append(found)
            if config.max_findings is not None and len(findings) >= config.max_findings:
                break
    return findings

