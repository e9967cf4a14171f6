"""Figure rendering over the experiment CSV schemas.

Strictly read-only over its inputs: every statistic is taken from the CSVs
as-is, never recomputed. Rendering is deterministic (fixed style, fixed DPI,
salted SVG ids, no timestamps) so repeated runs on identical inputs are
byte-identical.

Conventions in the input CSVs:
* infinite values appear as the literal ``inf`` and are drawn clipped at
  1.1x the largest finite value with a triangle marker and a legend note;
* ``m_required`` may hold the sentinel ``not_reached``, which renders as a
  gap rather than a zero.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

NOT_REACHED = "not_reached"

STYLE = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "cotfigs",
}

#: columns each figure kind requires from its input CSVs
SCHEMAS = {
    "info-curve": {"epsilon", "info"},
    "ratio": {"epsilon", "ratio_to_eps_plus"},
    "ratio-limit": {"value", "ratio_zero_plus"},
    "sample-complexity": {"rule", "epsilon", "m_required"},
    "zero-error": {"rule", "m", "fraction_zero"},
    "pairwise": {"d_ete", "rel_info"},
    "pairwise-ratio": {"d_ete", "rel_info"},
    "transfer": {"epsilon", "info"},
}

KINDS = tuple(SCHEMAS)


class SchemaError(ValueError):
    """Input CSV does not carry the columns the figure kind needs."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    out: str
    formats: tuple[str, ...] = ("png", "svg")
    logx: bool = False
    logy: bool = False
    title: Optional[str] = None

    def __post_init__(self):
        if self.kind not in SCHEMAS:
            raise SchemaError(f"unknown figure kind {self.kind!r}; expected {KINDS}")
        if not self.inputs:
            raise SchemaError("at least one input CSV is required")


def read_rows(path: str, kind: str) -> list[dict]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        columns = set(reader.fieldnames or [])
        missing = SCHEMAS[kind] - columns
        if missing:
            raise SchemaError(
                f"{path}: missing columns {sorted(missing)} for kind {kind!r} "
                f"(found {sorted(columns)})"
            )
        return list(reader)


def _to_float(text: str) -> float:
    return float(text)  # handles 'inf' and 'nan' literals


def _clip_infinities(values: Sequence[float]) -> tuple[list[float], list[bool], float]:
    """Replace +inf by 1.1x the max finite value; returns (clipped, mask, ceiling)."""
    finite = [v for v in values if math.isfinite(v)]
    ceiling = 1.1 * max(finite) if finite else 1.0
    clipped = []
    mask = []
    for v in values:
        if math.isinf(v):
            clipped.append(ceiling)
            mask.append(True)
        else:
            clipped.append(v)
            mask.append(False)
    return clipped, mask, ceiling


def _label(path: str) -> str:
    return Path(path).stem


def _plot_step_curves(ax, spec: FigureSpec, ycol: str) -> bool:
    any_clipped = False
    for path in spec.inputs:
        rows = read_rows(path, spec.kind)
        xs = [_to_float(r["epsilon"]) for r in rows]
        ys = [_to_float(r[ycol]) for r in rows]
        ys, mask, _ = _clip_infinities(ys)
        ax.step(xs, ys, where="post", label=_label(path))
        if any(mask):
            any_clipped = True
            ax.plot([x for x, m_ in zip(xs, mask) if m_],
                    [y for y, m_ in zip(ys, mask) if m_],
                    "^", color=ax.lines[-1].get_color(), markersize=6)
    ax.set_xlabel("epsilon")
    ax.set_ylabel(ycol.replace("_", " "))
    return any_clipped


def _plot_ratio_limit(ax, spec: FigureSpec) -> bool:
    any_clipped = False
    for path in spec.inputs:
        rows = read_rows(path, spec.kind)
        xs = [_to_float(r["value"]) for r in rows]
        ys = [_to_float(r["ratio_zero_plus"]) for r in rows]
        ys, mask, _ = _clip_infinities(ys)
        ax.plot(xs, ys, "o-", label=_label(path))
        if any(mask):
            any_clipped = True
    ax.set_xlabel("sweep value")
    ax.set_ylabel("information / clipped epsilon at zero error")
    return any_clipped


def sample_complexity_series(rows: Sequence[dict]) -> dict[str, list[tuple[float, float]]]:
    """Per-rule (epsilon, m_required) points; sentinel rows become gaps."""
    by_rule: dict[str, list[tuple[float, float]]] = {}
    for r in rows:
        if r["m_required"] == NOT_REACHED:
            continue  # a gap, never a zero
        by_rule.setdefault(r["rule"], []).append(
            (_to_float(r["epsilon"]), _to_float(r["m_required"]))
        )
    return by_rule


def _plot_sample_complexity(ax, spec: FigureSpec) -> bool:
    for path in spec.inputs:
        rows = read_rows(path, spec.kind)
        by_rule = sample_complexity_series(rows)
        for rule, pts in sorted(by_rule.items()):
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-",
                    label=f"{_label(path)}:{rule}" if len(spec.inputs) > 1 else rule)
    ax.set_xlabel("target error")
    ax.set_ylabel("first sample size reaching the target")
    return False


def _plot_zero_error(ax, spec: FigureSpec) -> bool:
    for path in spec.inputs:
        rows = read_rows(path, spec.kind)
        by_rule: dict[str, list[tuple[float, float]]] = {}
        for r in rows:
            by_rule.setdefault(r["rule"], []).append(
                (_to_float(r["m"]), _to_float(r["fraction_zero"]))
            )
        for rule, pts in sorted(by_rule.items()):
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-",
                    label=f"{_label(path)}:{rule}" if len(spec.inputs) > 1 else rule)
    ax.set_xlabel("sample size")
    ax.set_ylabel("fraction of trials with zero error")
    return False


def _plot_pairwise(ax, spec: FigureSpec, as_ratio: bool) -> bool:
    any_clipped = False
    for path in spec.inputs:
        rows = read_rows(path, spec.kind)
        xs, ys = [], []
        for r in rows:
            d = _to_float(r["d_ete"])
            v = _to_float(r["rel_info"])
            if as_ratio:
                if d <= 0:
                    continue
                v = v / d
            xs.append(d)
            ys.append(v)
        ys, mask, _ = _clip_infinities(ys)
        pts_ok = [(x, y) for x, y, m_ in zip(xs, ys, mask) if not m_]
        pts_inf = [(x, y) for x, y, m_ in zip(xs, ys, mask) if m_]
        ax.plot([p[0] for p in pts_ok], [p[1] for p in pts_ok], ".",
                markersize=3, label=_label(path))
        if pts_inf:
            any_clipped = True
            ax.plot([p[0] for p in pts_inf], [p[1] for p in pts_inf], "^",
                    markersize=4, color=ax.lines[-1].get_color())
    ax.set_xlabel("end-to-end disagreement")
    ax.set_ylabel("relative information / disagreement" if as_ratio
                  else "relative information")
    return any_clipped


def render(spec: FigureSpec) -> list[str]:
    """Render one figure; returns the written file paths."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        if spec.kind in ("info-curve", "transfer"):
            clipped = _plot_step_curves(ax, spec, "info")
        elif spec.kind == "ratio":
            clipped = _plot_step_curves(ax, spec, "ratio_to_eps_plus")
        elif spec.kind == "ratio-limit":
            clipped = _plot_ratio_limit(ax, spec)
        elif spec.kind == "sample-complexity":
            clipped = _plot_sample_complexity(ax, spec)
            ax.set_xscale("log")
            ax.set_yscale("log")
        elif spec.kind == "zero-error":
            clipped = _plot_zero_error(ax, spec)
            ax.set_xscale("symlog")
        elif spec.kind == "pairwise":
            clipped = _plot_pairwise(ax, spec, as_ratio=False)
        else:  # pairwise-ratio
            clipped = _plot_pairwise(ax, spec, as_ratio=True)
        if spec.logx:
            ax.set_xscale("log")
        if spec.logy:
            ax.set_yscale("log")
        if spec.title:
            ax.set_title(spec.title)
        handles, labels = ax.get_legend_handles_labels()
        if clipped:
            marker = plt.Line2D([], [], marker="^", linestyle="", color="black")
            handles.append(marker)
            labels.append("inf (clipped)")
        if handles:
            ax.legend(handles, labels, fontsize=8)
        written = []
        base = Path(spec.out)
        if base.suffix.lstrip(".") in ("png", "svg"):
            targets = [(base.suffix.lstrip("."), base)]
        else:
            targets = [(fmt, base.with_suffix("." + fmt)) for fmt in spec.formats]
        base.parent.mkdir(parents=True, exist_ok=True)
        for fmt, path in targets:
            metadata = {"Date": None} if fmt == "svg" else None
            fig.savefig(path, format=fmt, metadata=metadata)
            written.append(str(path))
        plt.close(fig)
    return written
