"""Learning rules as executable procedures.

Consistency rules return a uniformly random member (seeded) of the set of
hypotheses matching every training label; the CoT variant additionally
requires matching the CoT on every example that carries one, so examples
without a CoT impose only the output constraint in both modes (this is the
mixed-supervision rule). If a consistency set is empty (unrealizable data)
the rule falls back to the corresponding ERM set and flags it. ERM rules
pick uniformly among empirical-risk minimizers. The MDL rule returns the
maximum-prior CoT-consistent hypothesis, ties broken by lowest id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .classes import HypothesisClass
from .core import CotDataset, CotHypothesis, empirical_risks

RULE_NAMES = ("EtECons", "CoTCons", "EtEERM", "CoTERM", "MDL")

#: tolerance when validating that prior weights form a sub-probability
PRIOR_TOL = 1e-12


@dataclass(frozen=True)
class Prior:
    """Non-negative weights over a class, summing to at most 1 (Kraft-style)."""

    weights: tuple[float, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("prior weights must be non-negative")
        if math.fsum(self.weights) > 1.0 + PRIOR_TOL:
            raise ValueError("prior weights must sum to at most 1")

    @staticmethod
    def uniform(n: int) -> "Prior":
        return Prior(tuple([1.0 / n] * n))

    @staticmethod
    def from_description_lengths(bits: Sequence[int]) -> "Prior":
        """p(h) = 2^-|d(h)| for a prefix-free description language."""
        return Prior(tuple(2.0 ** -b for b in bits))


@dataclass(frozen=True)
class RuleOutput:
    chosen: CotHypothesis
    candidate_set_size: int
    rule_name: str
    rng_seed: int
    unrealizable: bool = False


def consistency_set(cls: HypothesisClass, s: CotDataset, mode: str) -> list[int]:
    """Ids of hypotheses consistent with the sample; mode "e2e" checks outputs
    only, mode "cot" also checks the CoT wherever present."""
    if mode not in ("e2e", "cot"):
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    for hid in range(len(cls)):
        h = cls[hid]
        ok = True
        for ex in s:
            res = h.eval(ex.x)
            if res.y != ex.y:
                ok = False
                break
            if mode == "cot" and ex.z is not None and res.z != ex.z:
                ok = False
                break
        if ok:
            out.append(hid)
    return out


def erm_set(cls: HypothesisClass, s: CotDataset, mode: str) -> list[int]:
    """Ids minimizing the empirical risk (e2e or cot component)."""
    col = 0 if mode == "e2e" else 1
    risks = [empirical_risks(cls[hid], s)[col] for hid in range(len(cls))]
    best = min(risks)
    return [hid for hid, r in enumerate(risks) if r == best]


def seeded_choice(ids: Sequence[int], seed: int) -> int:
    """Uniform pick from a sorted candidate list, reproducible from the seed."""
    rng = np.random.default_rng(seed)
    return int(ids[int(rng.integers(len(ids)))])


def pick(
    rule: str,
    cls: HypothesisClass,
    s: CotDataset,
    seed: int,
    prior: Optional[Prior] = None,
) -> RuleOutput:
    if len(cls) == 0:
        raise ValueError("class must be non-empty")
    unrealizable = False
    if rule in ("EtECons", "CoTCons"):
        mode = "e2e" if rule == "EtECons" else "cot"
        ids = consistency_set(cls, s, mode)
        if not ids:
            ids = erm_set(cls, s, mode)
            unrealizable = True
        chosen = seeded_choice(ids, seed)
    elif rule in ("EtEERM", "CoTERM"):
        mode = "e2e" if rule == "EtEERM" else "cot"
        ids = erm_set(cls, s, mode)
        chosen = seeded_choice(ids, seed)
    elif rule == "MDL":
        if prior is None:
            raise ValueError("MDL requires a prior")
        ids = consistency_set(cls, s, "cot")
        if not ids:
            ids = erm_set(cls, s, "cot")
            unrealizable = True
        # argmax of the prior; ties broken by lowest id (ids are sorted)
        chosen = max(ids, key=lambda hid: (prior.weights[hid], -hid))
    else:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULE_NAMES}")
    return RuleOutput(
        chosen=cls[chosen],
        candidate_set_size=len(ids),
        rule_name=rule,
        rng_seed=seed,
        unrealizable=unrealizable,
    )
