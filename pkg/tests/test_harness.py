import math

import numpy as np
import pytest

from cotsim import (
    DfaClass,
    DfaSpec,
    ExperimentConfig,
    SymmetricChannel,
    UniformInputs,
    build_fully_informative,
    corrupt_dataset,
    dataset_from_hypothesis,
    empirical_sample_complexity,
    run_learning_experiment,
    zero_error_probability,
)
from cotsim.core import ExplicitInputs
from cotsim.errors import ConfigError
from cotsim.harness import (
    ExperimentRecord,
    LabelSpace,
    label_space,
    mean_risks,
    read_learning_csv,
    write_learning_csv,
)
from cotsim.rules import pick
from cotsim.util import derive_seed


def small_cfg(**overrides):
    base = dict(
        class_kind="dfa",
        class_params={"num_states": 2, "alphabet_size": 2, "accept_states": [1]},
        target={"kind": "id", "id": 9},
        input_dist={"kind": "uniform", "n": 3},
        rules=["CoTCons", "EtECons"],
        m_grid=[0, 1, 2, 4, 8],
        trials=60,
        seed=17,
    )
    base.update(overrides)
    return ExperimentConfig.from_dict(base)


def test_m_zero_matches_uniform_random_pick():
    cfg = small_cfg(m_grid=[0], trials=400)
    cls = DfaClass(DfaSpec(2, 2, 0, frozenset({1})))
    dist = UniformInputs(2, 3)
    table = cls.pair_table(cls[9], dist)
    records = run_learning_experiment(cfg)
    mean0 = np.mean([r.risk for r in records if r.rule == "CoTCons"])
    expect = float(np.mean(table.d_ete))
    sigma = float(np.std(table.d_ete)) / math.sqrt(400)
    assert abs(mean0 - expect) <= 4 * sigma
    assert all(r.set_size == len(cls) for r in records if r.m == 0)


def test_learning_risk_decreases():
    cfg = small_cfg()
    mr = mean_risks(run_learning_experiment(cfg))
    for rule in ("CoTCons", "EtECons"):
        assert mr[rule][8] < mr[rule][0]


def test_cot_never_worse_than_e2e_paired():
    cfg = small_cfg(trials=200)
    records = run_learning_experiment(cfg)
    by = {}
    for r in records:
        by.setdefault((r.m, r.trial), {})[r.rule] = r.risk
    for m in cfg.m_grid:
        diffs = [by[(m, t)]["EtECons"] - by[(m, t)]["CoTCons"] for t in range(cfg.trials)]
        se = np.std(diffs) / math.sqrt(len(diffs)) if np.std(diffs) > 0 else 1e-9
        assert np.mean(diffs) >= -4 * se, f"m={m}"


def test_fast_path_matches_generic_rules_pick():
    # the bitset engine must reproduce rules.pick record-for-record
    cfg = small_cfg(trials=25, m_grid=[0, 1, 3])
    cls = DfaClass(DfaSpec(2, 2, 0, frozenset({1})))
    hstar = cls[9]
    dist = UniformInputs(2, 3)
    records = run_learning_experiment(cfg)
    table = cls.pair_table(hstar, dist)
    for r in records:
        rng = np.random.default_rng(derive_seed(cfg.seed, "data", r.m, r.trial))
        idx = dist.sample_indices(rng, r.m)
        s = dataset_from_hypothesis(hstar, [dist.input_at(int(i)) for i in idx])
        out = pick(r.rule, cls, s, derive_seed(cfg.seed, "rule", r.rule, r.m, r.trial))
        assert out.chosen.id is not None
        assert r.set_size == out.candidate_set_size
        assert r.risk == float(table.d_ete[out.chosen.id])


def test_records_deterministic_across_workers():
    cfg1 = small_cfg(trials=40)
    rec1 = run_learning_experiment(cfg1)
    cfg8 = small_cfg(trials=40, workers=8)
    rec8 = run_learning_experiment(cfg8)
    assert rec1 == rec8


def test_fully_informative_single_sample_suffices():
    domain = [(i,) for i in range(6)]
    maps = [[(i * j) % 3 for i in range(6)] for j in range(1, 5)]
    cls = build_fully_informative(domain, maps)
    dist = ExplicitInputs([(x, 1.0 / 6) for x in domain])
    cfg = small_cfg(rules=["CoTCons"], m_grid=[1, 2], trials=80)
    records = run_learning_experiment(cfg, cls=cls, hstar=cls[1], dist=dist)
    assert all(r.risk == 0.0 for r in records)


def test_sample_complexity_all_zero():
    records = [ExperimentRecord("CoTCons", m, t, 0.0, 1) for m in (1, 2, 4) for t in range(3)]
    rows = empirical_sample_complexity(records, [0.5, 0.0])
    assert rows == [("CoTCons", 0.5, 1), ("CoTCons", 0.0, 1)]


def test_sample_complexity_threshold_scan():
    records = []
    for m, risk in [(1, 0.5), (2, 0.2), (4, 0.05)]:
        records.append(ExperimentRecord("EtECons", m, 0, risk, 1))
    rows = dict(((r, e), m) for r, e, m in empirical_sample_complexity(records, [0.1]))
    assert rows[("EtECons", 0.1)] == 4


def test_sample_complexity_not_reached_sentinel():
    records = [ExperimentRecord("EtECons", 1, 0, 0.4, 1)]
    rows = empirical_sample_complexity(records, [0.1])
    assert rows == [("EtECons", 0.1, "not_reached")]


def test_zero_error_m_zero_base_rate():
    cfg = small_cfg(m_grid=[0], trials=500, rules=["EtECons"])
    cls = DfaClass(DfaSpec(2, 2, 0, frozenset({1})))
    table = cls.pair_table(cls[9], UniformInputs(2, 3))
    k = int(np.sum(table.d_ete == 0.0))
    p = k / len(cls)
    rows = zero_error_probability(run_learning_experiment(cfg))
    frac = dict(((r, m), f) for r, m, f in rows)[("EtECons", 0)]
    sigma = math.sqrt(p * (1 - p) / 500)
    assert abs(frac - p) <= 4 * sigma


def test_zero_error_monotone_in_m():
    cfg = small_cfg(trials=300, rules=["CoTCons"])
    rows = zero_error_probability(run_learning_experiment(cfg))
    fracs = [f for _, m, f in rows]
    noise = 4 * math.sqrt(0.25 / 300)
    assert all(b >= a - noise for a, b in zip(fracs, fracs[1:]))


def test_corrupt_dataset_identity_at_zero():
    cls = DfaClass(DfaSpec(2, 2, 0, frozenset({1})))
    dist = UniformInputs(2, 3)
    s = dataset_from_hypothesis(cls[9], [x for x, _ in dist.items()])
    space = label_space(cls, dist)
    q = SymmetricChannel(0.0, space.outcome_count)
    assert corrupt_dataset(s, q, 1, space) == s


@pytest.mark.parametrize("e", [1.0, 0.1])
def test_corrupt_dataset_fraction(e):
    cls = DfaClass(DfaSpec(2, 2, 0, frozenset({1})))
    dist = UniformInputs(2, 3)
    rng = np.random.default_rng(0)
    xs = [dist.input_at(int(i)) for i in dist.sample_indices(rng, 10_000)]
    s = dataset_from_hypothesis(cls[9], xs)
    space = label_space(cls, dist)
    q = SymmetricChannel(e, space.outcome_count)
    corrupted = corrupt_dataset(s, q, 2, space)
    changed = sum(1 for a, b in zip(s, corrupted) if (a.y, a.z) != (b.y, b.z))
    expect = e * (1 - 1 / space.outcome_count)
    sigma = math.sqrt(expect * (1 - expect) / len(s))
    assert abs(changed / len(s) - expect) <= 4 * sigma


def test_corrupt_dataset_outcome_count_checked():
    cls = DfaClass(DfaSpec(2, 2, 0, frozenset({1})))
    dist = UniformInputs(2, 3)
    s = dataset_from_hypothesis(cls[9], [(0, 0, 0)])
    with pytest.raises(ConfigError):
        corrupt_dataset(s, SymmetricChannel(0.5, 7), 1, label_space(cls, dist))


def test_corrupted_learning_uses_generic_path():
    cfg = small_cfg(trials=10, m_grid=[2], channel={"error_rate": 0.3})
    records = run_learning_experiment(cfg)
    assert len(records) == 20


def test_label_space_shapes():
    cls = DfaClass(DfaSpec(4, 2, 0, frozenset({3}), detail=2))
    dist = UniformInputs(2, 5)
    assert label_space(cls, dist) == LabelSpace(2, 4, 2)


def test_config_validation_messages():
    with pytest.raises(ConfigError, match="class_kind"):
        ExperimentConfig.from_dict({"class_kind": "nope", "class_params": {}})
    with pytest.raises(ConfigError, match="m_grid"):
        small_cfg(m_grid=[])
    with pytest.raises(ConfigError, match="rules"):
        small_cfg(rules=["Nope"])
    with pytest.raises(ConfigError, match="unknown config fields"):
        ExperimentConfig.from_dict({"class_kind": "dfa", "class_params": {}, "bogus": 1})


def test_learning_csv_round_trip(tmp_path):
    cfg = small_cfg(trials=5, m_grid=[1, 2])
    records = run_learning_experiment(cfg)
    path = tmp_path / "learning.csv"
    write_learning_csv(path, records)
    lines = path.read_text().splitlines()
    assert lines[0] == "rule,m,trial,risk,set_size"
    back = read_learning_csv(path)
    assert [(r.rule, r.m, r.trial, r.risk, r.set_size) for r in back] == [
        (r.rule, r.m, r.trial, r.risk, r.set_size) for r in records
    ]
