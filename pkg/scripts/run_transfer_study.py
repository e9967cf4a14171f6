#!/usr/bin/env python3
"""Transfer study: information measured across distribution pairs.

Under results/transfer/: curves with the training length fixed at 5 while
the test length varies (out-of-distribution generalization view), and with
the test length fixed at 5 while the training length varies. Target is the
fixed reference automaton, whose reachable states are all within 2 steps, so
every transfer curve stays above 2^-3 = 0.125 regardless of test length.
"""

import argparse
import json
import sys
from pathlib import Path

from cotsim.cli import main as cli

BASE = dict(
    class_kind="dfa",
    class_params={"num_states": 4, "alphabet_size": 2, "init_state": 0,
                  "accept_states": [3]},
    target={"kind": "figure4"},
    input_dist={"kind": "uniform", "n": 5},
    rules=["CoTCons"],
    m_grid=[1],
    trials=1,
    seed=0,
)


def run(cfg: dict, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    cfg_path = out / "config.json"
    cfg_path.write_text(json.dumps({**cfg, "out_dir": str(out)}, indent=2) + "\n")
    rc = cli(["transfer", "--config", str(cfg_path)])
    if rc != 0:
        sys.exit(rc)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/transfer")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    root = Path(args.out)
    common = {**BASE, "workers": args.workers}
    run({**common, "transfer": {"vary": "test", "fixed_n": 5,
                                "values": [3, 4, 5, 6, 8, 10, 12]}},
        root / "vary_test")
    run({**common, "transfer": {"vary": "train", "fixed_n": 5,
                                "values": [3, 4, 5, 6, 8]}},
        root / "vary_train")
    print(f"done; outputs under {root}")


if __name__ == "__main__":
    main()
