"""Hypothesis-class base type plus the dense tables the measure engine consumes.

A class is an ordered, deterministic enumeration of hypotheses with ids
``0..len-1``. Enumerable classes may override the table builders with
vectorized kernels; the generic fallbacks here evaluate hypotheses one by one
and are intended for small classes.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import CotHypothesis, FiniteDistribution
from .errors import BudgetExceededError

#: default cap on (class cardinality x support size) for exact-mode table builds
DEFAULT_EXACT_BUDGET = 1 << 30


@dataclass
class PairTable:
    """Per-hypothesis exact statistics against a fixed reference hypothesis.

    ``d_ete[i]``      P[ete(h_i) != ete(hstar)]
    ``agreement[i]``  P[h_i == hstar on both output and CoT]

    Either array may be None when the caller asked only for the other.
    """

    d_ete: Optional[np.ndarray]
    agreement: Optional[np.ndarray]


@dataclass
class BehaviorBits:
    """Packed per-(hypothesis, support-point) disagreement indicators.

    Bit j of row i (numpy ``packbits`` layout) is 1 iff hypothesis i disagrees
    with the reference on support input j. Used by the learning-experiment
    engine: a hypothesis is consistent with a realizable sample iff its
    disagreement bits are disjoint from the sampled-input mask.
    """

    e2e_disagree: np.ndarray  # (H, ceil(X/8)) uint8
    cot_disagree: np.ndarray  # (H, ceil(X/8)) uint8
    d_ete: np.ndarray  # (H,) float64, exact e2e disagreement probability
    support_size: int


def check_budget(cardinality: int, support: int, budget: int) -> None:
    if cardinality * support > budget:
        raise BudgetExceededError(
            f"exact mode needs {cardinality} x {support} evaluations, over the "
            f"budget of {budget}; use monte_carlo_info_curve / raise the budget"
        )


class HypothesisClass(ABC):
    """Ordered enumerable collection of CoT hypotheses."""

    kind: str = "generic"

    @abstractmethod
    def __len__(self) -> int:
        raise NotImplementedError

    @abstractmethod
    def __getitem__(self, hid: int) -> CotHypothesis:
        raise NotImplementedError

    def __iter__(self) -> Iterator[CotHypothesis]:
        for hid in range(len(self)):
            yield self[hid]

    def params(self) -> dict:
        return {}

    # -- dense tables (generic fallbacks; kernels override) -----------------

    def pair_table(
        self,
        hstar: CotHypothesis,
        d: FiniteDistribution,
        *,
        need_d_ete: bool = True,
        need_agreement: bool = True,
        budget: int = DEFAULT_EXACT_BUDGET,
        workers: int = 1,
    ) -> PairTable:
        check_budget(len(self), len(d), budget)
        support = list(d.items())
        star = [hstar.eval(x) for x, _ in support]
        n = len(self)
        d_ete = np.zeros(n, dtype=np.float64) if need_d_ete else None
        agreement = np.zeros(n, dtype=np.float64) if need_agreement else None
        for hid in range(n):
            h = self[hid]
            dis_terms = []
            agr_terms = []
            for (x, p), ref in zip(support, star):
                out = h.eval(x)
                if out.y != ref.y:
                    dis_terms.append(p)
                if out == ref:
                    agr_terms.append(p)
            if d_ete is not None:
                d_ete[hid] = math.fsum(dis_terms)
            if agreement is not None:
                agreement[hid] = math.fsum(agr_terms)
        return PairTable(d_ete, agreement)

    def behavior_bits(
        self,
        hstar: CotHypothesis,
        d: FiniteDistribution,
        *,
        budget: int = DEFAULT_EXACT_BUDGET,
        workers: int = 1,
    ) -> BehaviorBits:
        check_budget(len(self), len(d), budget)
        support = list(d.items())
        star = [hstar.eval(x) for x, _ in support]
        weights = np.array([p for _, p in support])
        n = len(self)
        e2e = np.zeros((n, len(support)), dtype=bool)
        cot = np.zeros((n, len(support)), dtype=bool)
        for hid in range(n):
            h = self[hid]
            for j, ((x, _), ref) in enumerate(zip(support, star)):
                out = h.eval(x)
                e2e[hid, j] = out.y != ref.y
                cot[hid, j] = out != ref
        d_ete = e2e @ weights
        return BehaviorBits(
            np.packbits(e2e, axis=1), np.packbits(cot, axis=1), d_ete, len(support)
        )


class SubClass(HypothesisClass):
    """A subset of another class, preserving the member hypotheses' ids."""

    kind = "subclass"

    def __init__(self, base: HypothesisClass, member_ids):
        self.base = base
        self.member_ids = tuple(int(i) for i in member_ids)

    def __len__(self) -> int:
        return len(self.member_ids)

    def __getitem__(self, hid: int) -> CotHypothesis:
        return self.base[self.member_ids[hid]]

    def params(self) -> dict:
        return {"base": self.base.params(), "size": len(self.member_ids)}
