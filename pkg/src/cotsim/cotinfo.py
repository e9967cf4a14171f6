"""The information-measure engine.

For a reference hypothesis hstar, a class H, and an input distribution D:

* pairwise: d_ete(h) = P[outputs disagree], joint agreement
  a(h) = P[both output and CoT agree], and the relative information
  -log a(h);
* the curve eps -> min{-log a(h) : d_ete(h) > eps} is an exact right-
  continuous step function over the finitely many distinct d_ete values
  (note the strict ">", as opposed to the non-strict ">=" in the agnostic
  variant below);
* gamma(eps) = inf{1 - a(h) : d_ete(h) > eps} satisfies the identity
  curve(eps) = -log(1 - gamma(eps)) by construction;
* the transfer variant scores disagreement under a test distribution while
  measuring agreement under the training distribution;
* Monte Carlo estimators cover supports too large to enumerate.
"""

from __future__ import annotations

import csv
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .classes import DEFAULT_EXACT_BUDGET, HypothesisClass, PairTable
from .core import (
    CotHypothesis,
    FiniteDistribution,
    JointDistribution,
    joint_risks,
)

INF = math.inf


def rel_info_from_agreement(agreement: float) -> float:
    """-log P[agree]; +inf when the agreement probability is 0."""
    return INF if agreement <= 0.0 else -math.log(agreement)


@dataclass(frozen=True)
class PairStats:
    """Exact pairwise statistics of one hypothesis against the reference."""

    hypothesis_id: int
    d_ete: float
    joint_agreement: float
    rel_info: float


@dataclass(frozen=True)
class MonteCarloPairStats:
    """Plug-in estimates of PairStats with binomial standard errors.

    When no agreeing sample is seen the relative information is +inf but only
    certified up to the resolution of the sample: ``censored`` is set and
    ``censor_level`` = log(num_samples) records the confidence ceiling.
    """

    hypothesis_id: int
    d_ete: float
    joint_agreement: float
    rel_info: float
    num_samples: int
    d_ete_se: float
    joint_agreement_se: float
    censored: bool
    censor_level: float


def pair_stats(
    hstar: CotHypothesis, h: CotHypothesis, d: FiniteDistribution
) -> PairStats:
    """Exact sums over the support of d."""
    dis_terms = []
    agr_terms = []
    for x, p in d.items():
        a = hstar.eval(x)
        b = h.eval(x)
        if a.y != b.y:
            dis_terms.append(p)
        if a == b:
            agr_terms.append(p)
    d_ete = math.fsum(dis_terms)
    agreement = math.fsum(agr_terms)
    return PairStats(h.id, d_ete, agreement, rel_info_from_agreement(agreement))


class SeededSampler:
    """Reproducible i.i.d. input sampler bound to a distribution and seed."""

    def __init__(self, d: FiniteDistribution, seed: int):
        self.dist = d
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def draw_indices(self, k: int) -> np.ndarray:
        return self.dist.sample_indices(self._rng, k)

    def draw(self, k: int) -> list:
        return [self.dist.input_at(int(i)) for i in self.draw_indices(k)]


def monte_carlo_pair_stats(
    hstar: CotHypothesis,
    h: CotHypothesis,
    sampler: SeededSampler,
    num_samples: int,
) -> MonteCarloPairStats:
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    dis = 0
    agr = 0
    for x in sampler.draw(num_samples):
        a = hstar.eval(x)
        b = h.eval(x)
        if a.y != b.y:
            dis += 1
        if a == b:
            agr += 1
    d_hat = dis / num_samples
    a_hat = agr / num_samples
    censored = agr == 0
    return MonteCarloPairStats(
        hypothesis_id=h.id,
        d_ete=d_hat,
        joint_agreement=a_hat,
        rel_info=rel_info_from_agreement(a_hat),
        num_samples=num_samples,
        d_ete_se=math.sqrt(d_hat * (1 - d_hat) / num_samples),
        joint_agreement_se=math.sqrt(a_hat * (1 - a_hat) / num_samples),
        censored=censored,
        censor_level=math.log(num_samples),
    )


# ---------------------------------------------------------------------------
# Information curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InfoCurve:
    """Exact step-function representation of eps -> information.

    ``breakpoints`` is a sorted tuple of (eps_k, info_k) where eps_k are the
    distinct positive d_ete values in the class and info_k is the curve's
    value on [eps_{k-1}, eps_k), i.e. the minimum relative information among
    hypotheses with d_ete >= eps_k. The curve at eps is info of the first
    breakpoint with eps_k > eps, and +inf beyond the last breakpoint.
    ``epsilon_star`` is the smallest positive d_ete (None for a class with no
    end-to-end disagreement at all); ``info_at_zero_plus`` is the value at
    eps = 0.
    """

    breakpoints: tuple[tuple[float, float], ...]
    epsilon_star: Optional[float]
    info_at_zero_plus: float

    def eval(self, eps: float) -> float:
        eps_list = [bp[0] for bp in self.breakpoints]
        k = bisect_right(eps_list, eps)
        return self.breakpoints[k][1] if k < len(self.breakpoints) else INF

    def eps_plus(self, eps: float) -> float:
        """eps clipped from below at the smallest positive disagreement."""
        if self.epsilon_star is None:
            return eps
        return max(eps, self.epsilon_star)

    def ratio_at(self, eps: float) -> float:
        """info(eps) / eps_plus; the per-example value of CoT supervision."""
        denom = self.eps_plus(eps)
        if denom == 0.0:
            return INF
        return self.eval(eps) / denom

    @property
    def max_breakpoint(self) -> Optional[float]:
        return self.breakpoints[-1][0] if self.breakpoints else None


def info_curve_from_arrays(d_ete: np.ndarray, agreement: np.ndarray) -> InfoCurve:
    """Assemble the exact curve from per-hypothesis (d_ete, agreement) columns.

    Hypotheses with d_ete == 0 (including the reference itself) never enter
    the constraint set and are ignored.
    """
    d_ete = np.asarray(d_ete, dtype=np.float64)
    agreement = np.asarray(agreement, dtype=np.float64)
    pos = d_ete > 0.0
    if not pos.any():
        return InfoCurve((), None, INF)
    dv = d_ete[pos]
    av = agreement[pos]
    order = np.argsort(dv, kind="stable")
    dv = dv[order]
    av = av[order]
    # best (max) agreement among hypotheses with d_ete >= each distinct value
    suffix_max = np.maximum.accumulate(av[::-1])[::-1]
    distinct_idx = np.flatnonzero(np.diff(dv, prepend=-1.0) > 0.0)
    breakpoints = tuple(
        (float(dv[i]), rel_info_from_agreement(float(suffix_max[i])))
        for i in distinct_idx
    )
    return InfoCurve(breakpoints, breakpoints[0][0], breakpoints[0][1])


def info_curve(
    hstar: CotHypothesis,
    cls: HypothesisClass,
    d: FiniteDistribution,
    *,
    budget: int = DEFAULT_EXACT_BUDGET,
    workers: int = 1,
) -> InfoCurve:
    """Exact curve by full enumeration of the class."""
    table = cls.pair_table(hstar, d, budget=budget, workers=workers)
    return info_curve_from_arrays(table.d_ete, table.agreement)


def transfer_info_curve(
    hstar: CotHypothesis,
    cls: HypothesisClass,
    d_train: FiniteDistribution,
    d_test: FiniteDistribution,
    *,
    budget: int = DEFAULT_EXACT_BUDGET,
    workers: int = 1,
) -> InfoCurve:
    """Disagreement scored under d_test, agreement measured under d_train.

    The info >= eps floor of the in-distribution curve does not hold here and
    is deliberately not asserted.
    """
    test = cls.pair_table(
        hstar, d_test, need_agreement=False, budget=budget, workers=workers
    )
    train = cls.pair_table(
        hstar, d_train, need_d_ete=False, budget=budget, workers=workers
    )
    return info_curve_from_arrays(test.d_ete, train.agreement)


def monte_carlo_info_curve(
    hstar: CotHypothesis,
    cls: HypothesisClass,
    sampler: SeededSampler,
    num_samples: int,
    *,
    workers: int = 1,
) -> InfoCurve:
    """Plug-in curve from an i.i.d. input sample (for supports too large to enumerate)."""
    from .core import ExplicitInputs

    idx = sampler.draw_indices(num_samples)
    idx_unique, counts = np.unique(idx, return_counts=True)
    pairs = [
        (sampler.dist.input_at(int(i)), c / num_samples)
        for i, c in zip(idx_unique, counts)
    ]
    empirical = ExplicitInputs(pairs)
    table = cls.pair_table(
        hstar, empirical, budget=DEFAULT_EXACT_BUDGET, workers=workers
    )
    return info_curve_from_arrays(table.d_ete, table.agreement)


# ---------------------------------------------------------------------------
# gamma and the agnostic variant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaValue:
    """Infimum CoT risk over the eps-disagreement set; empty flags an empty set."""

    value: float
    empty: bool = False


def gamma_from_arrays(d_ete: np.ndarray, agreement: np.ndarray, eps: float) -> GammaValue:
    sel = np.asarray(d_ete) > eps
    if not sel.any():
        return GammaValue(1.0, empty=True)
    return GammaValue(1.0 - float(np.max(np.asarray(agreement)[sel])), empty=False)


def gamma_of_epsilon(
    hstar: CotHypothesis,
    cls: HypothesisClass,
    d: FiniteDistribution,
    eps: float,
    *,
    budget: int = DEFAULT_EXACT_BUDGET,
    workers: int = 1,
) -> GammaValue:
    """gamma(eps) = inf{L_cot(h) : d_ete(h) > eps}; satisfies
    curve(eps) = -log(1 - gamma(eps)) exactly."""
    table = cls.pair_table(hstar, d, budget=budget, workers=workers)
    return gamma_from_arrays(table.d_ete, table.agreement, eps)


def agnostic_info(cls: HypothesisClass, d: JointDistribution, eps: float) -> float:
    """inf{L_cot(h) - L*_cot : h in H, L_ete(h) - L*_ete >= eps} (note ">=").

    +inf when no hypothesis has excess end-to-end risk >= eps.
    """
    risks = [joint_risks(h, d) for h in cls]
    l_ete_star = min(r[0] for r in risks)
    l_cot_star = min(r[1] for r in risks)
    candidates = [
        r[1] - l_cot_star for r in risks if r[0] - l_ete_star >= eps
    ]
    return min(candidates) if candidates else INF


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------


def write_pairwise_csv(path, d_ete: np.ndarray, agreement: np.ndarray) -> None:
    """pairwise.csv: one row per hypothesis id, including zero-disagreement rows."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["hypothesis_id", "d_ete", "joint_agreement", "rel_info"])
        for hid, (dv, av) in enumerate(zip(d_ete, agreement)):
            w.writerow(
                [hid, repr(float(dv)), repr(float(av)),
                 repr(rel_info_from_agreement(float(av)))]
            )


def write_info_curve_csv(path, curve: InfoCurve) -> None:
    """info_curve.csv rows sample the step function at 0 and at each breakpoint.

    Each row's info/ratio is the curve value at and to the right of that
    epsilon (the function is right-continuous), so a steps-post plot of the
    rows reproduces the curve exactly. Infinite values serialize as "inf".
    """
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["epsilon", "info", "ratio_to_eps_plus"])
        eps_grid = [0.0] + [bp[0] for bp in curve.breakpoints]
        for eps in eps_grid:
            w.writerow([repr(eps), repr(curve.eval(eps)), repr(curve.ratio_at(eps))])
