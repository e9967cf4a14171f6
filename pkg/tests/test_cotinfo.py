import math

import numpy as np
import pytest

from cotsim import (
    DfaClass,
    DfaSpec,
    ExplicitInputs,
    JointDistribution,
    SubClass,
    UniformInputs,
    agnostic_info,
    build_fully_informative,
    build_product,
    figure4_target,
    gamma_of_epsilon,
    info_curve,
    info_curve_from_arrays,
    monte_carlo_info_curve,
    monte_carlo_pair_stats,
    pair_stats,
    transfer_info_curve,
)
from cotsim.core import CotOutput
from cotsim.cotinfo import SeededSampler, write_info_curve_csv, write_pairwise_csv
from cotsim.dfa import DfaHypothesis, table_to_id
from cotsim.errors import BudgetExceededError
from cotsim.synthetic import ListClass, TableHypothesis
from oracles import brute_gamma_at, brute_info_at, brute_pair_stats, neg_log_one_minus

SPEC3 = DfaSpec(3, 2, 0, frozenset({2}))
CLS3 = DfaClass(SPEC3)
D3 = UniformInputs(2, 4)
HSTAR3 = CLS3[241]


def test_pair_stats_identity():
    ps = pair_stats(HSTAR3, HSTAR3, D3)
    assert (ps.d_ete, ps.joint_agreement, ps.rel_info) == (0.0, 1.0, 0.0)


def test_pair_stats_fully_informative_pair():
    cls = build_fully_informative([(0,), (1,)], [[0, 1], [1, 0]])
    d = ExplicitInputs([((0,), 0.5), ((1,), 0.5)])
    ps = pair_stats(cls[0], cls[1], d)
    assert ps.joint_agreement == 0.0 and math.isinf(ps.rel_info)


def test_pair_stats_derived_figure4_redirect():
    h = figure4_target()
    t = list(h.table)
    t[1] = 2  # redirect delta(0, 1) from state 3 to state 2
    other = DfaHypothesis(h.spec, tuple(t), table_to_id(h.spec, tuple(t)))
    ps = pair_stats(h, other, UniformInputs(2, 3))
    assert ps.d_ete == 0.375
    assert ps.joint_agreement == 0.375
    assert abs(ps.rel_info - (-math.log(0.375))) < 1e-15


def test_pair_stats_matches_oracle_random_pairs():
    rng = np.random.default_rng(42)
    for _ in range(30):
        a, b = rng.integers(0, len(CLS3), size=2)
        ps = pair_stats(CLS3[int(a)], CLS3[int(b)], D3)
        d_ete, agree, rel = brute_pair_stats(CLS3[int(a)], CLS3[int(b)], D3)
        assert ps.d_ete == d_ete and ps.joint_agreement == agree
        assert ps.rel_info == rel


def test_info_curve_singleton_class():
    cls = ListClass("singleton", [TableHypothesis({(0,): CotOutput(0, (0,))}, 0)], {})
    d = ExplicitInputs([((0,), 1.0)])
    curve = info_curve(cls[0], cls, d)
    assert curve.breakpoints == ()
    assert curve.epsilon_star is None
    assert math.isinf(curve.eval(0.0)) and math.isinf(curve.info_at_zero_plus)


def test_info_curve_matches_definition_oracle():
    curve = info_curve(HSTAR3, CLS3, D3)
    for eps in [0.0, 0.1, 0.25, 0.4, 0.6, 0.9]:
        assert curve.eval(eps) == brute_info_at(HSTAR3, CLS3, D3, eps)


def test_info_curve_monotone_and_floor():
    curve = info_curve(HSTAR3, CLS3, D3)
    grid = np.linspace(0, 1, 201)
    vals = [curve.eval(float(e)) for e in grid]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
    for eps_k, info_k in curve.breakpoints:
        floor = neg_log_one_minus(eps_k)
        assert info_k >= (floor if math.isinf(floor) else floor - 1e-12)
        assert floor >= eps_k - 1e-12


def test_info_curve_subclass_anti_monotone():
    table = CLS3.pair_table(HSTAR3, D3)
    curve = info_curve_from_arrays(table.d_ete, table.agreement)
    rng = np.random.default_rng(7)
    for _ in range(20):
        keep = rng.random(len(CLS3)) < 0.4
        keep[HSTAR3.id] = True
        sub = info_curve_from_arrays(table.d_ete[keep], table.agreement[keep])
        for eps in np.linspace(0, 1, 41):
            assert sub.eval(float(eps)) >= curve.eval(float(eps)) - 1e-12


def test_subclass_wrapper_preserves_hypotheses():
    sub = SubClass(CLS3, [0, 5, HSTAR3.id])
    assert len(sub) == 3
    assert sub[2].table == HSTAR3.table


def test_pairwise_floor_all_pairs():
    table = CLS3.pair_table(HSTAR3, D3)
    for dv, av in zip(table.d_ete, table.agreement):
        rel = math.inf if av == 0 else -math.log(av)
        floor = neg_log_one_minus(dv)
        assert rel >= (floor if math.isinf(floor) else floor - 1e-9)
        assert floor >= dv - 1e-12


def test_budget_error_directs_to_monte_carlo():
    with pytest.raises(BudgetExceededError, match="monte_carlo"):
        info_curve(HSTAR3, CLS3, D3, budget=10)


def test_gamma_identity_and_bracket():
    table = CLS3.pair_table(HSTAR3, D3)
    curve = info_curve_from_arrays(table.d_ete, table.agreement)
    for eps_k, _ in curve.breakpoints:
        g = gamma_of_epsilon(HSTAR3, CLS3, D3, eps_k)
        info = curve.eval(eps_k)
        if g.empty:
            assert math.isinf(info)
            continue
        assert abs(info - (-math.log1p(-g.value))) <= 1e-12
        assert max(info / (1 + info), eps_k) <= g.value + 1e-12
        assert g.value <= min(info, 1.0) + 1e-12


def test_gamma_matches_definition_oracle():
    for eps in [0.0, 0.2, 0.5]:
        g = gamma_of_epsilon(HSTAR3, CLS3, D3, eps)
        ref = brute_gamma_at(HSTAR3, CLS3, D3, eps)
        if ref is None:
            assert g.empty
        else:
            assert abs(g.value - ref) < 1e-12


def test_gamma_empty_flag_singleton():
    cls = ListClass("singleton", [TableHypothesis({(0,): CotOutput(0, (0,))}, 0)], {})
    d = ExplicitInputs([((0,), 1.0)])
    g = gamma_of_epsilon(cls[0], cls, d, 0.0)
    assert g.empty and g.value == 1.0


def test_gamma_product_class_is_eps_plus():
    domain = [(0,), (1,), (2,), (3,)]
    d = ExplicitInputs([(x, 0.25) for x in domain])
    cls = build_product(domain, cot_maps=[[0, 1, 0, 1]],
                        ete_maps=[[0, 0, 0, 0], [0, 0, 0, 1], [1, 1, 0, 0]])
    curve = info_curve(cls[0], cls, d)
    for k, (eps_k, _) in enumerate(curve.breakpoints):
        prev = curve.breakpoints[k - 1][0] if k else 0.0
        g = gamma_of_epsilon(cls[0], cls, d, prev)
        assert abs(g.value - eps_k) < 1e-12  # eps_plus of any eps in [prev, eps_k)


# ---------------------------------------------------------------------------
# agnostic variant
# ---------------------------------------------------------------------------


def three_hypothesis_fixture():
    domain = [(0,), (1,)]
    h0 = TableHypothesis({(0,): CotOutput(0, (0,)), (1,): CotOutput(0, (1,))}, 0)
    h1 = TableHypothesis({(0,): CotOutput(0, (0,)), (1,): CotOutput(1, (1,))}, 1)
    h2 = TableHypothesis({(0,): CotOutput(1, (2,)), (1,): CotOutput(1, (2,))}, 2)
    return ListClass("toy", [h0, h1, h2], {}), domain


def test_agnostic_realizable_matches_weak_gamma():
    cls, domain = three_hypothesis_fixture()
    entries = []
    for x in domain:
        out = cls[0].eval(x)
        entries.append((x, out.y, out.z, 0.5))
    joint = JointDistribution(entries)
    # realizable: reduces to inf CoT risk over {excess e2e >= eps}
    from cotsim.core import cot_risk, e2e_risk
    d_inputs = ExplicitInputs([(x, 0.5) for x in domain])
    for eps in [0.0, 0.25, 0.5, 0.75, 1.01]:
        expected = min(
            (cot_risk(h, cls[0], d_inputs) for h in cls
             if e2e_risk(h, cls[0], d_inputs) >= eps),
            default=math.inf,
        )
        assert agnostic_info(cls, joint, eps) == expected


def test_agnostic_degenerate_cot_is_zero():
    # e2e realizable but every CoT fully wrong: excess CoT risk is 0 everywhere
    cls, domain = three_hypothesis_fixture()
    entries = []
    for x in domain:
        out = cls[0].eval(x)
        entries.append((x, out.y, (9,), 0.5))
    joint = JointDistribution(entries)
    # e2e diameter of the class w.r.t. h0 is 1.0
    for eps in [0.0, 0.5, 1.0]:
        assert agnostic_info(cls, joint, eps) == 0.0


def test_agnostic_empty_set_is_infinite():
    cls, domain = three_hypothesis_fixture()
    entries = []
    for x in domain:
        out = cls[0].eval(x)
        entries.append((x, out.y, out.z, 0.5))
    assert math.isinf(agnostic_info(cls, JointDistribution(entries), 1.5))


# ---------------------------------------------------------------------------
# transfer variant
# ---------------------------------------------------------------------------


def test_transfer_equals_plain_when_distributions_match():
    plain = info_curve(HSTAR3, CLS3, D3)
    trans = transfer_info_curve(HSTAR3, CLS3, D3, D3)
    assert trans.breakpoints == plain.breakpoints
    assert trans.epsilon_star == plain.epsilon_star


def test_transfer_disjoint_support_toy():
    # train distribution concentrated where the two hypotheses agree
    h0 = TableHypothesis({(0,): CotOutput(0, (0,)), (1,): CotOutput(0, (0,))}, 0)
    h1 = TableHypothesis({(0,): CotOutput(0, (0,)), (1,): CotOutput(1, (1,))}, 1)
    cls = ListClass("toy", [h0, h1], {})
    d_train = ExplicitInputs([((0,), 1.0)])
    d_test = ExplicitInputs([((1,), 1.0)])
    curve = transfer_info_curve(h0, cls, d_train, d_test)
    assert curve.eval(0.0) == 0.0  # no information despite test disagreement
    assert curve.eval(0.5) == 0.0


# ---------------------------------------------------------------------------
# Monte Carlo estimators
# ---------------------------------------------------------------------------


def test_mc_pair_stats_identity():
    sampler = SeededSampler(D3, 1)
    mc = monte_carlo_pair_stats(HSTAR3, HSTAR3, sampler, 100)
    assert mc.rel_info == 0.0 and not mc.censored


def test_mc_pair_stats_within_four_sigma():
    other = CLS3[100]
    exact = pair_stats(HSTAR3, other, D3)
    mc = monte_carlo_pair_stats(HSTAR3, other, SeededSampler(D3, 2), 100_000)
    assert abs(mc.d_ete - exact.d_ete) <= 4 * max(mc.d_ete_se, 1e-4)
    assert abs(mc.joint_agreement - exact.joint_agreement) <= 4 * max(mc.joint_agreement_se, 1e-4)


def test_mc_pair_stats_censoring():
    cls = build_fully_informative([(0,), (1,)], [[0, 1], [1, 0]])
    d = ExplicitInputs([((0,), 0.5), ((1,), 0.5)])
    mc = monte_carlo_pair_stats(cls[0], cls[1], SeededSampler(d, 3), 100)
    assert mc.censored and math.isinf(mc.rel_info)
    assert abs(mc.censor_level - math.log(100)) < 1e-12


def test_mc_info_curve_close_to_exact():
    exact = info_curve(HSTAR3, CLS3, D3)
    mc = monte_carlo_info_curve(HSTAR3, CLS3, SeededSampler(D3, 5), 50_000)
    assert abs(mc.info_at_zero_plus - exact.info_at_zero_plus) < 0.05


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------


def test_csv_serialization_of_infinities(tmp_path):
    cls = build_fully_informative([(0,), (1,)], [[0, 1], [1, 0]])
    d = ExplicitInputs([((0,), 0.5), ((1,), 0.5)])
    table = cls.pair_table(cls[0], d)
    curve = info_curve_from_arrays(table.d_ete, table.agreement)
    p1 = tmp_path / "pairwise.csv"
    p2 = tmp_path / "info_curve.csv"
    write_pairwise_csv(p1, table.d_ete, table.agreement)
    write_info_curve_csv(p2, curve)
    assert "inf" in p1.read_text()
    lines = p2.read_text().splitlines()
    assert lines[0] == "epsilon,info,ratio_to_eps_plus"
    assert any(row.split(",")[1] == "inf" for row in lines[1:])
