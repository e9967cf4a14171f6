"""Command-line interface.

Subcommands: info-curve, info-sweep, learn, sample-complexity, transfer,
bounds, validate. Configuration comes from a JSON file (--config) with a few
common fields overridable by flags. Exit codes: 0 success, 2 config error,
3 exact-mode budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import bounds as bounds_mod
from .cotinfo import InfoCurve
from .errors import BudgetExceededError, ConfigError, CotSimError
from .harness import (
    ExperimentConfig,
    build_class,
    build_dist,
    build_target,
    compute_curve,
    empirical_sample_complexity,
    read_learning_csv,
    run_info_sweep,
    run_learning_experiment,
    run_transfer_sweep,
    validate_invariants,
    write_learning_csv,
    write_pairwise_for,
    write_sample_complexity_csv,
    write_zero_error_csv,
    zero_error_probability,
)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--seed", type=int, help="override master seed")
    p.add_argument("--trials", type=int, help="override trials per grid point")
    p.add_argument("--mode", choices=["exact", "mc"], help="override compute mode")
    p.add_argument("--out", help="override output directory")
    p.add_argument("--workers", type=int, help="override worker count")


def _load(args) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json_file(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.trials is not None:
        cfg.trials = args.trials
    if args.mode is not None:
        cfg.mode = args.mode
    if args.out is not None:
        cfg.out_dir = args.out
    if getattr(args, "workers", None) is not None:
        cfg.workers = args.workers
    cfg.validate()
    return cfg


def cmd_info_curve(args) -> int:
    cfg = _load(args)
    curve = write_pairwise_for(cfg, cfg.out_dir)
    star = "nan" if curve.epsilon_star is None else repr(curve.epsilon_star)
    print(f"info_curve: {len(curve.breakpoints)} breakpoints, "
          f"eps*={star}, info(0+)={curve.info_at_zero_plus!r}")
    return 0


def cmd_info_sweep(args) -> int:
    cfg = _load(args)
    rows = run_info_sweep(cfg, cfg.out_dir)
    for row in rows:
        print(f"sweep {row['sweep']}={row['value']}: "
              f"eps*={row['epsilon_star']!r} "
              f"info(0+)={row['info_at_zero_plus']!r} "
              f"ratio={row['ratio_zero_plus']!r}")
    return 0


def cmd_learn(args) -> int:
    cfg = _load(args)
    os.makedirs(cfg.out_dir, exist_ok=True)
    records = run_learning_experiment(cfg)
    path = os.path.join(cfg.out_dir, "learning.csv")
    write_learning_csv(path, records)
    print(f"wrote {len(records)} records to {path}")
    return 0


def cmd_sample_complexity(args) -> int:
    cfg = _load(args)
    os.makedirs(cfg.out_dir, exist_ok=True)
    src = args.learning or os.path.join(cfg.out_dir, "learning.csv")
    records = read_learning_csv(src)
    eps = cfg.eps_targets or [0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.0]
    write_sample_complexity_csv(
        os.path.join(cfg.out_dir, "sample_complexity.csv"),
        empirical_sample_complexity(records, eps),
    )
    write_zero_error_csv(
        os.path.join(cfg.out_dir, "zero_error.csv"), zero_error_probability(records)
    )
    print(f"wrote sample_complexity.csv and zero_error.csv to {cfg.out_dir}")
    return 0


def cmd_transfer(args) -> int:
    cfg = _load(args)
    rows = run_transfer_sweep(cfg, cfg.out_dir)
    for row in rows:
        print(f"transfer train_n={row['train_n']} test_n={row['test_n']}: "
              f"info(0+)={row['info_at_zero_plus']!r}")
    return 0


def cmd_bounds(args) -> int:
    cfg = _load(args)
    os.makedirs(cfg.out_dir, exist_ok=True)
    spec = cfg.bounds or {}
    delta = float(spec.get("delta", 0.05))
    cls = build_class(cfg)
    hstar = build_target(cfg, cls)
    dist = build_dist(cfg)
    curve, _, _ = compute_curve(cfg, cls, hstar, dist)
    log_card = math.log(len(cls))
    eps_list = spec.get("epsilons") or [0.0]
    rows = []

    def add(name: str, params: dict, value: float, flag=None):
        rows.append({"bound_name": name, "params": params, "value": value,
                     "flag": flag or ""})

    for eps in eps_list:
        info = curve.eval(float(eps))
        b = bounds_mod.realizable_upper(log_card, info, delta, "finite")
        add("realizable_upper_finite", {"epsilon": eps, "delta": delta}, b.value, b.flag)
        if "vc" in spec:
            b = bounds_mod.realizable_upper(float(spec["vc"]), info, delta, "general")
            add("realizable_upper_general", {"epsilon": eps, "delta": delta,
                                             "vc": spec["vc"]}, b.value, b.flag)
        add("two_point_lower", {"epsilon": eps, "delta": delta},
            bounds_mod.two_point_lower(info, delta))
        if "gamma_ratio" in spec:
            b = bounds_mod.mixed_upper(log_card, float(spec["gamma_ratio"]), info,
                                       float(eps), delta)
            add("mixed_upper", {"epsilon": eps, "delta": delta,
                                "gamma_ratio": spec["gamma_ratio"]}, b.value, b.flag)
        b = bounds_mod.mdl_upper(1.0 / len(cls), info, delta)
        add("mdl_upper_uniform", {"epsilon": eps, "delta": delta}, b.value, b.flag)
    for m in cfg.m_grid:
        add("expected_error_lower", {"m": m},
            bounds_mod.expected_error_lower(curve, m))
    if "channel" in spec:
        q = bounds_mod.SymmetricChannel(
            float(spec["channel"]["error_rate"]),
            int(spec["channel"]["outcome_count"]),
        )
        add("channel_capacity_factor",
            {"error_rate": q.error_rate, "outcome_count": q.outcome_count},
            bounds_mod.channel_capacity_factor(q))
        if "packing_epsilon" in spec:
            fano = bounds_mod.fano_lower(
                cls, dist, q, float(spec["packing_epsilon"]),
                spec.get("pair_info_mode", "max_pair_half"),
            )
            add("fano_m_threshold",
                {"packing_epsilon": spec["packing_epsilon"], "mode": fano.mode,
                 "packing_size": fano.packing_size,
                 "sup_proxy_low": fano.sup_proxy_low,
                 "sup_proxy_high": fano.sup_proxy_high},
                fano.m_threshold, fano.flag)
    _write_bounds(cfg.out_dir, rows)
    print(f"wrote {len(rows)} bound rows to {cfg.out_dir}/bounds.csv")
    return 0


def _write_bounds(out_dir: str, rows) -> None:
    import csv

    with open(os.path.join(out_dir, "bounds.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["bound_name", "params", "value"])
        for row in rows:
            params = ";".join(f"{k}={v}" for k, v in row["params"].items())
            w.writerow([row["bound_name"], params, repr(float(row["value"]))])
    with open(os.path.join(out_dir, "bounds.json"), "w") as f:
        json.dump(rows, f, indent=2, default=_json_default)
        f.write("\n")


def _json_default(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        if math.isnan(v):
            return "nan"
    raise TypeError(type(v))


def cmd_validate(args) -> int:
    workers = args.workers or 1
    results = validate_invariants(workers=workers)
    ok = True
    for name, passed, detail in results:
        status = "PASS" if passed else "FAIL"
        suffix = f" ({detail})" if detail else ""
        print(f"[{status}] {name}{suffix}")
        ok &= passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cotsim")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in [
        ("info-curve", cmd_info_curve),
        ("info-sweep", cmd_info_sweep),
        ("learn", cmd_learn),
        ("transfer", cmd_transfer),
        ("bounds", cmd_bounds),
    ]:
        sp = sub.add_parser(name)
        _add_common(sp)
        sp.set_defaults(fn=fn)
    sp = sub.add_parser("sample-complexity")
    _add_common(sp)
    sp.add_argument("--learning", help="path to learning.csv (default: OUT/learning.csv)")
    sp.set_defaults(fn=cmd_sample_complexity)
    sp = sub.add_parser("validate")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(fn=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except CotSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
