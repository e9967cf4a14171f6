#!/usr/bin/env python3
"""Render the paper-style figures from previously produced study CSVs.

Requires the cotsim-figures package (see figures/). Consumes only the CSV
files written by the run_*_study.py scripts; nothing is recomputed here.
"""

import argparse
import sys
from pathlib import Path

try:
    from cotfigs.cli import main as figs
except ImportError:
    sys.exit("cotsim-figures is not installed; run: pip install -e figures/")


def maybe(kind, inputs, out, *extra) -> None:
    inputs = [str(p) for p in inputs if Path(p).exists()]
    if not inputs:
        print(f"skip {out}: no inputs yet")
        return
    rc = figs(["render", "--kind", kind, "--in", *inputs, "--out", str(out), *extra])
    if rc != 0:
        sys.exit(rc)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--results", default="results")
    ap.add_argument("--out", default="results/figures")
    args = ap.parse_args()
    res = Path(args.results)
    out = Path(args.out)
    dfa = res / "dfa"
    maybe("ratio",
          sorted((dfa / "length_sweep").glob("info_curve_length_*.csv")),
          out / "dfa_ratio_by_length", "--logy")
    maybe("ratio",
          sorted((dfa / "detail_sweep").glob("info_curve_detail_*.csv")),
          out / "dfa_ratio_by_detail", "--logy")
    maybe("ratio-limit", [dfa / "length_sweep" / "info_sweep_length.csv"],
          out / "dfa_ratio_limit_by_length", "--logy")
    maybe("ratio-limit", [dfa / "detail_sweep" / "info_sweep_detail.csv"],
          out / "dfa_ratio_limit_by_detail")
    maybe("sample-complexity", [dfa / "learning" / "sample_complexity.csv"],
          out / "dfa_sample_complexity")
    maybe("zero-error", [dfa / "learning" / "zero_error.csv"],
          out / "dfa_zero_error")
    maybe("pairwise", [dfa / "curve_seeded" / "pairwise.csv"],
          out / "dfa_pairwise")
    lt = res / "linthresh"
    maybe("pairwise", [lt / "curve" / "pairwise.csv"], out / "linthresh_pairwise")
    maybe("pairwise-ratio", [lt / "curve" / "pairwise.csv"],
          out / "linthresh_pairwise_ratio")
    maybe("info-curve", [lt / "curve" / "info_curve.csv"],
          out / "linthresh_info_curve")
    maybe("sample-complexity", [lt / "learning" / "sample_complexity.csv"],
          out / "linthresh_sample_complexity")
    maybe("zero-error", [lt / "learning" / "zero_error.csv"],
          out / "linthresh_zero_error")
    tr = res / "transfer"
    maybe("transfer",
          sorted((tr / "vary_test").glob("info_curve_train*_test*.csv")),
          out / "transfer_vary_test")
    maybe("transfer",
          sorted((tr / "vary_train").glob("info_curve_train*_test*.csv")),
          out / "transfer_vary_train")
    print(f"figures under {out}")


if __name__ == "__main__":
    main()
