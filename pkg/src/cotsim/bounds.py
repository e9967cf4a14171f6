"""Closed-form sample-complexity calculators, packing, channel capacity, and
the total-variation identity check.

All big-O expressions are evaluated with constant 1 and should be read as
"up to constants"; ratios between two such expressions are constant-free.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .classes import HypothesisClass
from .core import CotHypothesis, FiniteDistribution
from .cotinfo import InfoCurve, pair_stats
from .errors import BudgetExceededError

INF = math.inf


@dataclass(frozen=True)
class BoundValue:
    value: float
    flag: Optional[str] = None


@dataclass(frozen=True)
class SymmetricChannel:
    """Q(.|z) = (1-e) point mass at z + e uniform over N outcomes."""

    error_rate: float
    outcome_count: int

    def __post_init__(self):
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValueError("error_rate must be in [0, 1]")
        if self.outcome_count < 2:
            raise ValueError("outcome_count must be >= 2")


@dataclass(frozen=True)
class PackingResult:
    members: tuple[int, ...]
    epsilon: float
    is_maximal: bool


# ---------------------------------------------------------------------------
# Upper bounds
# ---------------------------------------------------------------------------


def realizable_upper(
    log_card_or_vc: float, info_at_eps: float, delta: float, variant: str = "finite"
) -> BoundValue:
    """Realizable CoT sample complexity.

    finite:  (log|H| + log(1/delta)) / info
    general: (1/info + 1) * (VC * log(1/info + 1) + log(1/delta))

    Infinite information still charges one sample (needed to rule out every
    positively-disagreeing hypothesis); zero information is flagged infinite.
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must be in (0, 1]")
    if info_at_eps == 0.0:
        return BoundValue(INF, "information is 0: target unreachable at any m")
    if math.isinf(info_at_eps):
        return BoundValue(1.0)
    log_delta = math.log(1.0 / delta)
    if variant == "finite":
        return BoundValue((log_card_or_vc + log_delta) / info_at_eps)
    if variant == "general":
        blow = 1.0 / info_at_eps + 1.0
        return BoundValue(blow * (log_card_or_vc * math.log(blow) + log_delta))
    raise ValueError(f"unknown variant {variant!r}")


def agnostic_upper(vc: float, ag_info: float, delta: float) -> BoundValue:
    """(VC + log(1/delta)) / ag_info^2; flagged infinite when ag_info = 0."""
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must be in (0, 1]")
    if ag_info == 0.0:
        return BoundValue(INF, "CoT supervision uninformative")
    return BoundValue((vc + math.log(1.0 / delta)) / ag_info**2)


def mixed_upper(
    log_card: float, gamma_ratio: float, info_at_eps: float, epsilon: float, delta: float
) -> BoundValue:
    """CoT examples needed with gamma_ratio e2e examples per CoT example:
    (log|H| + log(1/delta)) / (gamma * eps + info)."""
    if gamma_ratio < 0:
        raise ValueError("gamma_ratio must be >= 0")
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must be in (0, 1]")
    denom = gamma_ratio * epsilon + info_at_eps
    if denom == 0.0:
        return BoundValue(INF, "denominator 0: target unreachable at any m")
    if math.isinf(denom):
        return BoundValue(1.0)
    return BoundValue((log_card + math.log(1.0 / delta)) / denom)


def mdl_upper(prior_mass_of_hstar: float, info_at_eps: float, delta: float) -> BoundValue:
    """(log(1/p(hstar)) + log(1/delta)) / info.

    The numerator is computed as log(1.0 / prior_mass), so a uniform prior
    1/|H| reproduces realizable_upper(log|H|, ...) bit-for-bit.
    """
    if not 0.0 < prior_mass_of_hstar <= 1.0:
        if prior_mass_of_hstar == 0.0:
            return BoundValue(INF, "hstar has prior mass 0")
        raise ValueError("prior mass must be in [0, 1]")
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must be in (0, 1]")
    if info_at_eps == 0.0:
        return BoundValue(INF, "information is 0: target unreachable at any m")
    if math.isinf(info_at_eps):
        return BoundValue(1.0)
    num = math.log(1.0 / prior_mass_of_hstar) + math.log(1.0 / delta)
    return BoundValue(num / info_at_eps)


def mdl_error_bound(curve: InfoCurve, prior_mass: float, m: int, delta: float) -> float:
    """Generalized inverse of the curve at (log(1/p) + log(1/delta)) / m.

    Returns the smallest eps with curve(eps) >= threshold: 0 when the curve
    already clears the threshold at 0+, otherwise the first breakpoint whose
    right-side value does.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    threshold = (math.log(1.0 / prior_mass) + math.log(1.0 / delta)) / m
    if curve.info_at_zero_plus >= threshold:
        return 0.0
    for eps_k, _ in curve.breakpoints:
        if curve.eval(eps_k) >= threshold:
            return eps_k
    # unreachable: beyond the last breakpoint the curve is +inf
    return curve.breakpoints[-1][0]


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------


def two_point_lower(info_at_eps: float, delta: float) -> float:
    """Sample sizes below log(1/delta)/info leave an eps-bad hypothesis
    indistinguishable with probability >= delta."""
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if math.isinf(info_at_eps):
        return 0.0
    if info_at_eps == 0.0:
        return INF
    return math.log(1.0 / delta) / info_at_eps


def expected_error_lower(curve: InfoCurve, m: int) -> float:
    """(1/2) sup_eps eps * exp(-m * curve(eps)), attained at a breakpoint.

    Each breakpoint (eps_k, info_k) stores the curve value just below eps_k,
    so the supremum over the half-open steps is max_k eps_k * exp(-m info_k).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    best = 0.0
    for eps_k, info_k in curve.breakpoints:
        weight = 1.0 if m == 0 else math.exp(-m * info_k)
        best = max(best, eps_k * weight)
    return 0.5 * best


def channel_capacity_factor(q: SymmetricChannel) -> float:
    """(1 - e) * log(1 + N (1 - e) / e); +inf at e = 0 and 0 at e = 1."""
    e = q.error_rate
    if e == 0.0:
        return INF
    if e == 1.0:
        return 0.0
    return (1.0 - e) * math.log(1.0 + q.outcome_count * (1.0 - e) / e)


def greedy_packing(
    cls: HypothesisClass,
    hstar: Optional[CotHypothesis],
    d: FiniteDistribution,
    epsilon: float,
) -> PackingResult:
    """Maximal eps-packing grown greedily in enumeration order.

    The result certifies a lower bound on the packing number M(eps). When
    hstar is given it seeds the packing.
    """
    support = list(d.items())
    weights = np.array([p for _, p in support])

    def y_row(h: CotHypothesis) -> np.ndarray:
        return np.array([h.eval(x).y for x, _ in support])

    members: list[int] = []
    rows: list[np.ndarray] = []
    if hstar is not None:
        members.append(int(hstar.id))
        rows.append(y_row(hstar))
    for hid in range(len(cls)):
        if hstar is not None and hid == hstar.id:
            continue
        row = y_row(cls[hid])
        ok = True
        for other in rows:
            if float(weights @ (row != other)) < epsilon:
                ok = False
                break
        if ok:
            members.append(hid)
            rows.append(row)
    return PackingResult(tuple(members), epsilon, is_maximal=True)


@dataclass(frozen=True)
class FanoBound:
    """Fano lower bound pieces; the prior-expectation term sup_pi E[I] is not
    solved exactly (a hard quadratic program) but bracketed:

    sup_proxy_low  = max pairwise I / 2   (achieved by a two-point prior)
    sup_proxy_high = max finite pairwise I (an expectation never exceeds it)

    ``mode`` selects which proxy enters m_threshold and the error bound.
    """

    m_threshold: float
    packing_size: int
    capacity: float
    sup_proxy_low: float
    sup_proxy_high: float
    mode: str
    flag: Optional[str]
    error_prob_bound: Callable[[int], float]


def fano_lower(
    cls: HypothesisClass,
    d: FiniteDistribution,
    q: SymmetricChannel,
    epsilon: float,
    pair_info_mode: str = "max_pair_half",
) -> FanoBound:
    if pair_info_mode not in ("max_pair_half", "max_entry"):
        raise ValueError("pair_info_mode must be max_pair_half or max_entry")
    packing = greedy_packing(cls, None, d, epsilon)
    members = packing.members
    m_count = len(members)
    cq = channel_capacity_factor(q)
    pair_infos = []
    for i, j in itertools.combinations(range(m_count), 2):
        ps = pair_stats(cls[members[i]], cls[members[j]], d)
        pair_infos.append(ps.rel_info)
    finite = [v for v in pair_infos if not math.isinf(v)]
    flag = None
    if not pair_infos:
        flag = "singleton packing: bound vacuous"
        low = high = 0.0
    else:
        low = max(pair_infos) / 2.0
        if finite:
            high = max(finite)
        else:
            high = INF
            flag = "all pairwise informations infinite: bound degenerate"
    sup_term = low if pair_info_mode == "max_pair_half" else high
    log_m = math.log(m_count) if m_count > 0 else 0.0

    def error_prob_bound(m: int) -> float:
        if log_m == 0.0 or math.isinf(sup_term):
            return 0.0
        return 1.0 - (m * cq * sup_term + math.log(2.0)) / log_m

    if log_m == 0.0 or math.isinf(sup_term) or math.isinf(cq):
        threshold = 0.0
    else:
        threshold = log_m / (2.0 * (cq * sup_term + math.log(2.0)))
    return FanoBound(
        m_threshold=threshold,
        packing_size=m_count,
        capacity=cq,
        sup_proxy_low=low,
        sup_proxy_high=high,
        mode=pair_info_mode,
        flag=flag,
        error_prob_bound=error_prob_bound,
    )


# ---------------------------------------------------------------------------
# Total-variation identity
# ---------------------------------------------------------------------------


def tv_distance_identity_check(
    h1: CotHypothesis,
    h2: CotHypothesis,
    d: FiniteDistribution,
    m: int,
    budget: int = 1_000_000,
) -> tuple[float, float]:
    """Exhaustive TV between the m-fold product label distributions of h1, h2.

    Returns (tv, |tv - (1 - exp(-m * I(h1, h2)))|); the residual numerically
    validates the testing identity behind the two-point lower bound.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = len(d)
    if n**m > budget:
        raise BudgetExceededError(
            f"product support of size {n}^{m} exceeds the budget {budget}"
        )
    support = list(d.items())
    match = [h1.eval(x) == h2.eval(x) for x, _ in support]
    terms = []
    for combo in itertools.product(range(n), repeat=m):
        if all(match[i] for i in combo):
            continue
        p = 1.0
        for i in combo:
            p *= support[i][1]
        terms.append(p)
    tv = math.fsum(terms)
    info = pair_stats(h1, h2, d).rel_info
    predicted = 1.0 if math.isinf(info) else 1.0 - math.exp(-m * info)
    return tv, abs(tv - predicted)
