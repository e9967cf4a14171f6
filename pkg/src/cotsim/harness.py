"""Experiment driver: info-curve sweeps, learning-rule simulations, transfer
studies, dataset corruption, and CSV emission.

Determinism contract: every record's dataset seed is derived from
(master seed, m, trial) and every rule's selection seed from
(master seed, rule, m, trial), so outputs are byte-identical for any worker
count or scheduling. The dataset seed is shared by all rules within a
(m, trial) cell: rules are compared on common random inputs, which reduces
comparison variance without biasing per-rule means.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import bounds as bounds_mod
from .classes import DEFAULT_EXACT_BUDGET, BehaviorBits, HypothesisClass
from .core import (
    CotDataset,
    CotExample,
    CotHypothesis,
    ExplicitInputs,
    FiniteDistribution,
    UniformInputs,
    dataset_from_hypothesis,
)
from .cotinfo import (
    InfoCurve,
    SeededSampler,
    info_curve_from_arrays,
    monte_carlo_info_curve,
    write_info_curve_csv,
    write_pairwise_csv,
)
from .dfa import DfaClass, DfaHypothesis, DfaSpec, figure4_target
from .errors import ConfigError
from .linthresh import LinThreshClass, LinThreshSpec
from .rules import RULE_NAMES, Prior, pick, seeded_choice
from .util import derive_seed, parallel_map

NOT_REACHED = "not_reached"

#: fixed number of (m, trial) cells per parallel work item
TASK_BLOCK = 256


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    class_kind: str
    class_params: dict
    target: dict = field(default_factory=lambda: {"kind": "figure4"})
    input_dist: dict = field(default_factory=lambda: {"kind": "uniform", "n": 8})
    rules: list = field(default_factory=lambda: ["CoTCons", "EtECons"])
    m_grid: list = field(default_factory=lambda: [1, 2, 4, 8, 16])
    trials: int = 500
    seed: int = 0
    mode: str = "exact"
    mc_samples: int = 100_000
    workers: int = 1
    out_dir: str = "out"
    eps_targets: list = field(default_factory=list)
    budget: int = DEFAULT_EXACT_BUDGET
    sweep: Optional[dict] = None
    transfer: Optional[dict] = None
    channel: Optional[dict] = None
    bounds: Optional[dict] = None

    @staticmethod
    def from_dict(obj: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(ExperimentConfig)}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            cfg = ExperimentConfig(**obj)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        cfg.validate()
        return cfg

    @staticmethod
    def from_json_file(path: str) -> "ExperimentConfig":
        try:
            with open(path) as f:
                obj = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return ExperimentConfig.from_dict(obj)

    def validate(self) -> None:
        if self.class_kind not in ("dfa", "linthresh"):
            raise ConfigError(f"class_kind: unknown kind {self.class_kind!r}")
        if not isinstance(self.class_params, dict):
            raise ConfigError("class_params: must be an object")
        if self.mode not in ("exact", "mc"):
            raise ConfigError(f"mode: expected 'exact' or 'mc', got {self.mode!r}")
        if not self.m_grid:
            raise ConfigError("m_grid: must be non-empty")
        if any((not isinstance(m, int)) or m < 0 for m in self.m_grid):
            raise ConfigError("m_grid: entries must be non-negative ints")
        if self.trials < 1:
            raise ConfigError("trials: must be >= 1")
        for r in self.rules:
            if r not in RULE_NAMES:
                raise ConfigError(f"rules: unknown rule {r!r}")
        if self.input_dist.get("kind") not in ("uniform", "explicit"):
            raise ConfigError("input_dist.kind: expected 'uniform' or 'explicit'")
        if self.workers < 1:
            raise ConfigError("workers: must be >= 1")
        if self.mc_samples < 1:
            raise ConfigError("mc_samples: must be >= 1")


def build_class(cfg: ExperimentConfig) -> HypothesisClass:
    p = cfg.class_params
    try:
        if cfg.class_kind == "dfa":
            spec = DfaSpec(
                num_states=p["num_states"],
                alphabet_size=p["alphabet_size"],
                init_state=p.get("init_state", 0),
                accept_states=frozenset(p.get("accept_states", [p["num_states"] - 1])),
                detail=p.get("detail"),
            )
            return DfaClass(spec)
        spec = LinThreshSpec(window=p["d"], steps=p["T"], n=p.get("n", 8))
        return LinThreshClass(spec)
    except KeyError as exc:
        raise ConfigError(f"class_params: missing field {exc}") from exc


def build_target(cfg: ExperimentConfig, cls: HypothesisClass) -> CotHypothesis:
    t = cfg.target
    kind = t.get("kind")
    if kind == "figure4":
        if not isinstance(cls, DfaClass):
            raise ConfigError("target.kind figure4 requires a dfa class")
        ref = figure4_target()
        if (cls.spec.num_states, cls.spec.alphabet_size) != (4, 2) or \
                cls.spec.init_state != 0 or cls.spec.accept_states != frozenset({3}):
            raise ConfigError("target.kind figure4 requires the 4-state/{0,1} class "
                              "with init 0 and accept {3}")
        return DfaHypothesis(cls.spec, ref.table, cls_id_of(cls, ref.table))
    if kind == "id":
        return cls[int(t["id"])]
    if kind == "seeded":
        rng = np.random.default_rng(derive_seed(int(t["seed"]), "target"))
        return cls[int(rng.integers(len(cls)))]
    raise ConfigError(f"target.kind: unknown kind {kind!r}")


def cls_id_of(cls: DfaClass, table) -> int:
    from .dfa import table_to_id

    return table_to_id(cls.spec, table)


def build_dist(cfg: ExperimentConfig, n_override: Optional[int] = None) -> FiniteDistribution:
    d = cfg.input_dist
    if d["kind"] == "uniform":
        n = n_override if n_override is not None else d["n"]
        alphabet = d.get(
            "alphabet_size",
            cfg.class_params.get("alphabet_size", 2),
        )
        return UniformInputs(alphabet, n)
    path = d["path"]
    with open(path) as f:
        obj = json.load(f)
    return ExplicitInputs([(tuple(e["x"]), e["p"]) for e in obj["support"]])


# ---------------------------------------------------------------------------
# Learning experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentRecord:
    rule: str
    m: int
    trial: int
    risk: float
    set_size: int
    flags: str = ""


_LEARN_STATE: Optional[dict] = None


def _candidate_ids(bits: BehaviorBits, table: np.ndarray, packed_mask: np.ndarray) -> np.ndarray:
    conflicts = np.bitwise_and(table, packed_mask[None, :])
    return np.flatnonzero(~conflicts.any(axis=1))


def _learn_block(block) -> list:
    st = _LEARN_STATE
    records = []
    for m, trial in block:
        rng = np.random.default_rng(derive_seed(st["seed"], "data", m, trial))
        idx = st["dist"].sample_indices(rng, m)
        if st["fast"]:
            bits: BehaviorBits = st["bits"]
            sampled = np.zeros(bits.support_size, dtype=bool)
            sampled[idx] = True
            packed = np.packbits(sampled)
            cot_ids = None
            for rule in st["rules"]:
                sel_seed = derive_seed(st["seed"], "rule", rule, m, trial)
                if rule == "EtECons":
                    ids = _candidate_ids(bits, bits.e2e_disagree, packed)
                    chosen = seeded_choice(ids, sel_seed)
                elif rule == "CoTCons":
                    if cot_ids is None:
                        cot_ids = _candidate_ids(bits, bits.cot_disagree, packed)
                    ids = cot_ids
                    chosen = seeded_choice(ids, sel_seed)
                else:  # MDL
                    if cot_ids is None:
                        cot_ids = _candidate_ids(bits, bits.cot_disagree, packed)
                    ids = cot_ids
                    chosen = int(ids[int(np.argmax(st["prior"][ids]))])
                records.append(
                    ExperimentRecord(
                        rule, m, trial, float(bits.d_ete[chosen]), int(ids.size)
                    )
                )
        else:
            inputs = [st["dist"].input_at(int(i)) for i in idx]
            dataset = dataset_from_hypothesis(st["hstar"], inputs, with_cot=True)
            if st["channel"] is not None:
                dataset = corrupt_dataset(
                    dataset,
                    st["channel"],
                    derive_seed(st["seed"], "channel", m, trial),
                    st["label_space"],
                )
            for rule in st["rules"]:
                sel_seed = derive_seed(st["seed"], "rule", rule, m, trial)
                out = pick(rule, st["cls"], dataset, sel_seed, prior=st["prior_obj"])
                records.append(
                    ExperimentRecord(
                        rule,
                        m,
                        trial,
                        float(st["d_ete"][out.chosen.id]),
                        out.candidate_set_size,
                        "unrealizable" if out.unrealizable else "",
                    )
                )
    return records


def run_learning_experiment(
    cfg: ExperimentConfig,
    cls: Optional[HypothesisClass] = None,
    hstar: Optional[CotHypothesis] = None,
    dist: Optional[FiniteDistribution] = None,
) -> list[ExperimentRecord]:
    """Draw datasets, run each rule, and record the exact risk of its pick.

    Emits records in deterministic (rule, m, trial) order regardless of the
    worker count.
    """
    global _LEARN_STATE
    cls = cls if cls is not None else build_class(cfg)
    hstar = hstar if hstar is not None else build_target(cfg, cls)
    dist = dist if dist is not None else build_dist(cfg)
    fast = (
        cfg.channel is None
        and all(r in ("EtECons", "CoTCons", "MDL") for r in cfg.rules)
        and isinstance(cls, (DfaClass, LinThreshClass))
        and dist.fixed_length is not None
    )
    channel = None
    if cfg.channel is not None:
        channel = bounds_mod.SymmetricChannel(
            cfg.channel["error_rate"], label_space(cls, dist).outcome_count
        )
    prior_arr = np.full(len(cls), 1.0 / len(cls))
    state = {
        "seed": cfg.seed,
        "dist": dist,
        "rules": list(cfg.rules),
        "fast": fast,
        "cls": cls,
        "hstar": hstar,
        "prior": prior_arr,
        "prior_obj": Prior(tuple(prior_arr)) if "MDL" in cfg.rules else None,
        "channel": channel,
        "label_space": label_space(cls, dist) if channel is not None else None,
    }
    if fast:
        state["bits"] = cls.behavior_bits(
            hstar, dist, budget=cfg.budget, workers=cfg.workers
        )
    else:
        table = cls.pair_table(
            hstar, dist, need_agreement=False, budget=cfg.budget, workers=1
        )
        state["d_ete"] = table.d_ete
    tasks = [(m, t) for m in cfg.m_grid for t in range(cfg.trials)]
    blocks = [tasks[i : i + TASK_BLOCK] for i in range(0, len(tasks), TASK_BLOCK)]
    _LEARN_STATE = state
    try:
        parts = parallel_map(_learn_block, blocks, cfg.workers)
    finally:
        _LEARN_STATE = None
    records = [r for part in parts for r in part]
    rule_order = {r: i for i, r in enumerate(cfg.rules)}
    records.sort(key=lambda r: (rule_order[r.rule], r.m, r.trial))
    return records


def empirical_sample_complexity(
    records: Sequence[ExperimentRecord], eps_targets: Sequence[float]
) -> list[tuple[str, float, object]]:
    """(rule, eps, first grid m whose trial-mean risk <= eps) rows."""
    by_rule: dict[str, dict[int, list[float]]] = {}
    for r in records:
        by_rule.setdefault(r.rule, {}).setdefault(r.m, []).append(r.risk)
    rows = []
    for rule, per_m in by_rule.items():
        ms = sorted(per_m)
        means = {m: float(np.mean(per_m[m])) for m in ms}
        for eps in eps_targets:
            hit: object = NOT_REACHED
            for m in ms:
                if means[m] <= eps:
                    hit = m
                    break
            rows.append((rule, float(eps), hit))
    return rows


def zero_error_probability(
    records: Sequence[ExperimentRecord],
) -> list[tuple[str, int, float]]:
    """(rule, m, fraction of trials with exactly zero risk) rows."""
    by_key: dict[tuple[str, int], list[float]] = {}
    for r in records:
        by_key.setdefault((r.rule, r.m), []).append(r.risk)
    rows = []
    for (rule, m), risks in sorted(by_key.items()):
        rows.append((rule, m, sum(1 for v in risks if v == 0.0) / len(risks)))
    return rows


def mean_risks(records: Sequence[ExperimentRecord]) -> dict[str, dict[int, float]]:
    out: dict[str, dict[int, list[float]]] = {}
    for r in records:
        out.setdefault(r.rule, {}).setdefault(r.m, []).append(r.risk)
    return {
        rule: {m: float(np.mean(v)) for m, v in per_m.items()}
        for rule, per_m in out.items()
    }


# ---------------------------------------------------------------------------
# Label corruption through a symmetric channel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabelSpace:
    """Shape of the (y, z) code a class emits on a given support."""

    y_count: int
    z_token_count: int
    z_len: int

    @property
    def outcome_count(self) -> int:
        return self.y_count * self.z_token_count**self.z_len


def label_space(cls: HypothesisClass, dist: FiniteDistribution) -> LabelSpace:
    if dist.fixed_length is None:
        raise ConfigError("label corruption requires a fixed-length support")
    n = dist.fixed_length
    if isinstance(cls, DfaClass):
        return LabelSpace(2, cls.spec.num_states, cls.spec.detail_cut(n))
    if isinstance(cls, LinThreshClass):
        return LabelSpace(2, 2, cls.spec.steps)
    raise ConfigError(f"no label space known for class kind {cls.kind!r}")


def corrupt_dataset(
    s: CotDataset,
    q: bounds_mod.SymmetricChannel,
    seed: int,
    space: LabelSpace,
) -> CotDataset:
    """Pass each (y, z) label independently through the symmetric channel.

    Inputs are untouched. With probability e the label is resampled uniformly
    over the y x z product space; examples lacking a CoT only resample y.
    """
    if q.outcome_count != space.outcome_count:
        raise ConfigError(
            f"channel outcome count {q.outcome_count} does not match the "
            f"(y, z) code size {space.outcome_count}"
        )
    rng = np.random.default_rng(seed)
    out = []
    for ex in s:
        if rng.random() >= q.error_rate:
            out.append(ex)
            continue
        y = int(rng.integers(space.y_count))
        if ex.z is None:
            out.append(CotExample(ex.x, y, None))
        else:
            z = tuple(int(v) for v in rng.integers(space.z_token_count, size=space.z_len))
            out.append(CotExample(ex.x, y, z))
    return out


# ---------------------------------------------------------------------------
# Info sweeps
# ---------------------------------------------------------------------------


def compute_curve(
    cfg: ExperimentConfig,
    cls: HypothesisClass,
    hstar: CotHypothesis,
    dist: FiniteDistribution,
) -> tuple[InfoCurve, Optional[np.ndarray], Optional[np.ndarray]]:
    """Exact or Monte Carlo curve per cfg.mode; exact mode also returns the
    pairwise arrays for CSV emission."""
    if cfg.mode == "mc":
        sampler = SeededSampler(dist, derive_seed(cfg.seed, "mc-inputs"))
        return (
            monte_carlo_info_curve(
                hstar, cls, sampler, cfg.mc_samples, workers=cfg.workers
            ),
            None,
            None,
        )
    table = cls.pair_table(hstar, dist, budget=cfg.budget, workers=cfg.workers)
    curve = info_curve_from_arrays(table.d_ete, table.agreement)
    return curve, table.d_ete, table.agreement


def run_info_sweep(cfg: ExperimentConfig, out_dir: str) -> list[dict]:
    """Per sweep point, write the full exact curve and collect summary rows."""
    if cfg.sweep is None:
        raise ConfigError("sweep: missing sweep section")
    kind = cfg.sweep.get("kind")
    values = cfg.sweep.get("values")
    if kind not in ("length", "detail", "transfer"):
        raise ConfigError(f"sweep.kind: unknown kind {kind!r}")
    if not values:
        raise ConfigError("sweep.values: must be non-empty")
    os.makedirs(out_dir, exist_ok=True)
    cls = build_class(cfg)
    hstar = build_target(cfg, cls)
    rows = []
    if kind == "length":
        for n in values:
            dist = build_dist(cfg, n_override=int(n))
            curve, _, _ = compute_curve(cfg, cls, hstar, dist)
            write_info_curve_csv(
                os.path.join(out_dir, f"info_curve_length_{n}.csv"), curve
            )
            rows.append(_summary_row("length", n, curve))
    elif kind == "detail":
        if not isinstance(cls, DfaClass):
            raise ConfigError("sweep.kind detail requires a dfa class")
        dist = build_dist(cfg)
        d_ete, joints = cls.detail_pair_tables(
            hstar, dist, [int(v) for v in values],
            budget=cfg.budget, workers=cfg.workers,
        )
        for t in values:
            curve = info_curve_from_arrays(d_ete, joints[int(t)])
            write_info_curve_csv(
                os.path.join(out_dir, f"info_curve_detail_{t}.csv"), curve
            )
            rows.append(_summary_row("detail", t, curve))
    else:
        rows = run_transfer_sweep(cfg, out_dir)
        return rows
    _write_summary(os.path.join(out_dir, f"info_sweep_{kind}.csv"), rows)
    return rows


def run_transfer_sweep(cfg: ExperimentConfig, out_dir: str) -> list[dict]:
    """Transfer curves: agreement under the train distribution, disagreement
    under each test distribution (or vice versa when varying the train side)."""
    from .cotinfo import transfer_info_curve

    spec = cfg.transfer or {}
    vary = spec.get("vary", "test")
    fixed_n = int(spec.get("fixed_n", 5))
    values = spec.get("values") or (cfg.sweep or {}).get("values")
    if not values:
        raise ConfigError("transfer.values: must be non-empty")
    os.makedirs(out_dir, exist_ok=True)
    cls = build_class(cfg)
    hstar = build_target(cfg, cls)
    rows = []
    for n in values:
        if vary == "test":
            train_n, test_n = fixed_n, int(n)
        else:
            train_n, test_n = int(n), fixed_n
        d_train = build_dist(cfg, n_override=train_n)
        d_test = build_dist(cfg, n_override=test_n)
        curve = transfer_info_curve(
            hstar, cls, d_train, d_test, budget=cfg.budget, workers=cfg.workers
        )
        tag = f"train{train_n}_test{test_n}"
        write_info_curve_csv(os.path.join(out_dir, f"info_curve_{tag}.csv"), curve)
        row = _summary_row("transfer", n, curve)
        row["train_n"] = train_n
        row["test_n"] = test_n
        rows.append(row)
    _write_summary(os.path.join(out_dir, "info_sweep_transfer.csv"), rows)
    return rows


def _summary_row(kind: str, value, curve: InfoCurve) -> dict:
    eps_star = math.nan if curve.epsilon_star is None else curve.epsilon_star
    ratio = (
        math.nan
        if curve.epsilon_star is None
        else curve.info_at_zero_plus / curve.epsilon_star
    )
    return {
        "sweep": kind,
        "value": value,
        "epsilon_star": eps_star,
        "info_at_zero_plus": curve.info_at_zero_plus,
        "ratio_zero_plus": ratio,
    }


def _write_summary(path: str, rows: list[dict]) -> None:
    if not rows:
        return
    cols = list(rows[0].keys())
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in cols])


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


# ---------------------------------------------------------------------------
# CSV writers
# ---------------------------------------------------------------------------


def write_learning_csv(path: str, records: Sequence[ExperimentRecord]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["rule", "m", "trial", "risk", "set_size"])
        for r in records:
            w.writerow([r.rule, r.m, r.trial, repr(r.risk), r.set_size])


def read_learning_csv(path: str) -> list[ExperimentRecord]:
    out = []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            out.append(
                ExperimentRecord(
                    row["rule"], int(row["m"]), int(row["trial"]),
                    float(row["risk"]), int(row["set_size"]),
                )
            )
    return out


def write_sample_complexity_csv(path: str, rows) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["rule", "epsilon", "m_required"])
        for rule, eps, m_req in rows:
            w.writerow([rule, repr(eps), m_req])


def write_zero_error_csv(path: str, rows) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["rule", "m", "fraction_zero"])
        for rule, m, frac in rows:
            w.writerow([rule, m, repr(frac)])


def write_pairwise_for(cfg: ExperimentConfig, out_dir: str) -> InfoCurve:
    """info-curve entry point: write info_curve.csv (+ pairwise.csv in exact mode)."""
    os.makedirs(out_dir, exist_ok=True)
    cls = build_class(cfg)
    hstar = build_target(cfg, cls)
    dist = build_dist(cfg)
    curve, d_ete, agreement = compute_curve(cfg, cls, hstar, dist)
    write_info_curve_csv(os.path.join(out_dir, "info_curve.csv"), curve)
    if d_ete is not None:
        write_pairwise_csv(os.path.join(out_dir, "pairwise.csv"), d_ete, agreement)
    return curve


# ---------------------------------------------------------------------------
# Invariant suite (the `validate` subcommand)
# ---------------------------------------------------------------------------


def validate_invariants(workers: int = 1) -> list[tuple[str, bool, str]]:
    """Fast self-checks of the measure engine's defining properties."""
    results = []
    spec = DfaSpec(2, 2, 0, frozenset({1}))
    cls = DfaClass(spec)
    dist = UniformInputs(2, 3)
    hstar = cls[derive_seed("validate-target") % len(cls)]
    table = cls.pair_table(hstar, dist, workers=workers)
    curve = info_curve_from_arrays(table.d_ete, table.agreement)

    floor_ok = all(
        info >= (math.inf if eps >= 1.0 else -math.log1p(-eps) - 1e-12)
        for eps, info in curve.breakpoints
    )
    results.append(("pairwise information floor", floor_ok, f"{len(curve.breakpoints)} breakpoints"))

    grid = np.linspace(0, 1, 101)
    vals = [curve.eval(float(e)) for e in grid]
    mono_ok = all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
    results.append(("curve monotone in eps", mono_ok, ""))

    from .cotinfo import gamma_from_arrays

    ident_ok = True
    for eps, _ in curve.breakpoints:
        g = gamma_from_arrays(table.d_ete, table.agreement, eps)
        lhs = curve.eval(eps)
        rhs = math.inf if g.value >= 1.0 else -math.log1p(-g.value)
        if math.isinf(lhs) != math.isinf(rhs) or (
            not math.isinf(lhs) and abs(lhs - rhs) > 1e-12
        ):
            ident_ok = False
    results.append(("gamma identity", ident_ok, ""))

    rng = np.random.default_rng(derive_seed("validate-subclass"))
    sub_ok = True
    for _ in range(5):
        keep = rng.random(len(cls)) < 0.5
        keep[hstar.id] = True
        sub = info_curve_from_arrays(table.d_ete[keep], table.agreement[keep])
        for e in grid:
            if sub.eval(float(e)) < curve.eval(float(e)) - 1e-12:
                sub_ok = False
    results.append(("subclass anti-monotonicity", sub_ok, "5 random subclasses"))

    cfg = ExperimentConfig(
        class_kind="dfa",
        class_params={"num_states": 2, "alphabet_size": 2, "accept_states": [1]},
        target={"kind": "id", "id": int(hstar.id)},
        input_dist={"kind": "uniform", "n": 3},
        rules=["CoTCons", "EtECons"],
        m_grid=[0, 2, 4],
        trials=20,
        seed=7,
    )
    rec1 = run_learning_experiment(cfg)
    rec2 = run_learning_experiment(cfg)
    results.append(("learning records reproducible", rec1 == rec2, ""))
    return results
