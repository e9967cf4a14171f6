"""Iterated linear-threshold autoregressive class.

A hypothesis is a weight vector w in {-1, 0, +1}^d. Starting from the input
sequence, it repeatedly appends z = 1{sum_i w_i * s_{last-i} >= 0} (window of
the d most recent symbols, zero-padded past the sequence start, ties mapping
to 1), for T steps. The CoT is (z_1..z_T) and the output is y = z_T, so for
this class agreement on the CoT implies agreement on the output.

Enumeration: id is the base-3 encoding of the digits (w_i + 1), with w_0 the
least significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classes import BehaviorBits, HypothesisClass, PairTable, check_budget
from .core import CotHypothesis, CotOutput, FiniteDistribution, InputSeq
from .errors import ClassConstructionError, ClassSizeError, DomainMismatchError
from .util import ID_CHUNK, INPUT_CHUNK, chunk_ranges, parallel_map


@dataclass(frozen=True)
class LinThreshSpec:
    """Window size d, iteration count T, and default experiment input length n."""

    window: int
    steps: int
    n: int

    def __post_init__(self):
        if self.window < 1:
            raise ClassConstructionError("window must be >= 1")
        if self.steps < 1:
            raise ClassConstructionError("steps must be >= 1")
        if self.n < 1:
            raise ClassConstructionError("n must be >= 1")


@dataclass(frozen=True)
class LinThreshHypothesis(CotHypothesis):
    spec: LinThreshSpec
    weights: tuple[int, ...]
    id: int = field(default=-1)

    def __post_init__(self):
        if len(self.weights) != self.spec.window:
            raise ClassConstructionError("weights length must equal the window size")
        if any(w not in (-1, 0, 1) for w in self.weights):
            raise ClassConstructionError("weights restricted to {-1, 0, +1}")

    def eval(self, x: InputSeq) -> CotOutput:
        if any(a not in (0, 1) for a in x):
            raise DomainMismatchError("inputs are binary sequences")
        s = list(x)
        z = []
        for _ in range(self.spec.steps):
            total = 0
            for i, w in enumerate(self.weights):
                j = len(s) - 1 - i
                total += w * (s[j] if j >= 0 else 0)
            bit = 1 if total >= 0 else 0
            z.append(bit)
            s.append(bit)
        return CotOutput(z[-1], tuple(z))

    def to_json_dict(self) -> dict:
        return {
            "d": self.spec.window,
            "T": self.spec.steps,
            "n": self.spec.n,
            "weights": list(self.weights),
        }


def weights_to_id(weights) -> int:
    return sum((w + 1) * 3**i for i, w in enumerate(weights))


def id_to_weights(window: int, hid: int) -> tuple[int, ...]:
    out = []
    for _ in range(window):
        out.append(hid % 3 - 1)
        hid //= 3
    return tuple(out)


class LinThreshClass(HypothesisClass):
    kind = "linthresh"

    def __init__(self, spec: LinThreshSpec):
        if 3**spec.window > 2**63 - 1:
            raise ClassSizeError("3^window exceeds 64-bit enumeration")
        self.spec = spec
        self._card = 3**spec.window

    def __len__(self) -> int:
        return self._card

    def __getitem__(self, hid: int) -> LinThreshHypothesis:
        if not 0 <= hid < self._card:
            raise IndexError(hid)
        return LinThreshHypothesis(self.spec, id_to_weights(self.spec.window, hid), hid)

    def params(self) -> dict:
        return {
            "kind": "linthresh",
            "d": self.spec.window,
            "T": self.spec.steps,
            "n": self.spec.n,
        }

    def pair_table(self, hstar, d, *, need_d_ete=True, need_agreement=True,
                   budget=1 << 30, workers=1) -> PairTable:
        check_budget(len(self), len(d), budget)
        acc = _run_kernel(self.spec, hstar, d, workers=workers)
        return PairTable(
            acc["d_ete"] if need_d_ete else None,
            acc["joint"] if need_agreement else None,
        )

    def behavior_bits(self, hstar, d, *, budget=1 << 30, workers=1) -> BehaviorBits:
        check_budget(len(self), len(d), budget)
        acc = _run_kernel(self.spec, hstar, d, workers=workers, bits=True)
        return BehaviorBits(acc["e2e_bits"], acc["cot_bits"], acc["d_ete"], len(d))


def enumerate_linthresh_class(spec: LinThreshSpec) -> LinThreshClass:
    """H = {h_w : w in {-1,0,1}^window}, cardinality 3^window."""
    return LinThreshClass(spec)


def _window_codes(X: np.ndarray, window: int) -> np.ndarray:
    """Pack the last `window` symbols of each row into an int (bit i = i steps back)."""
    n = X.shape[1]
    codes = np.zeros(X.shape[0], dtype=np.int32)
    for i in range(window):
        j = n - 1 - i
        if j >= 0:
            codes |= X[:, j].astype(np.int32) << i
    return codes


def _threshold_tables(spec: LinThreshSpec, lo: int, hi: int) -> np.ndarray:
    """Next-bit lookup (hi-lo, 2^d): entry [h, c] is the bit emitted on window code c."""
    d = spec.window
    ids = np.arange(lo, hi, dtype=np.int64)
    w = np.empty((hi - lo, d), dtype=np.int8)
    for i in range(d):
        w[:, i] = ids % 3 - 1
        ids //= 3
    bits = ((np.arange(1 << d, dtype=np.int32)[:, None] >> np.arange(d)[None, :]) & 1)
    dots = w.astype(np.int32) @ bits.T.astype(np.int32)
    return (dots >= 0).astype(np.int8)


def _star_table(spec: LinThreshSpec, weights) -> np.ndarray:
    d = spec.window
    bits = ((np.arange(1 << d, dtype=np.int32)[:, None] >> np.arange(d)[None, :]) & 1)
    dots = bits @ np.asarray(weights, dtype=np.int32)
    return (dots >= 0).astype(np.int8)


def _lin_chunk_task(args):
    (spec, hstar, d, id_lo, id_hi, bits) = args
    ztab = _threshold_tables(spec, id_lo, id_hi)
    star_tab = _star_table(spec, hstar.weights)
    C = id_hi - id_lo
    X_total = len(d)
    mask = (1 << spec.window) - 1
    d_ete = np.zeros(C, dtype=np.float64)
    joint = np.zeros(C, dtype=np.float64)
    e2e_bits = np.zeros((C, (X_total + 7) // 8), dtype=np.uint8) if bits else None
    cot_bits = np.zeros((C, (X_total + 7) // 8), dtype=np.uint8) if bits else None
    for in_lo, in_hi in chunk_ranges(X_total, INPUT_CHUNK):
        X = d.matrix(in_lo, in_hi)
        w = d.weights(in_lo, in_hi)
        code0 = _window_codes(X, spec.window)
        # reference pass
        scode = code0.copy()
        zstar = np.empty((spec.steps, X.shape[0]), dtype=np.int8)
        for t in range(spec.steps):
            zs = star_tab[scode]
            zstar[t] = zs
            scode = ((scode << 1) & mask) | zs
        # all hypotheses in the chunk at once
        code = np.broadcast_to(code0, (C, X.shape[0])).copy()
        agree = np.ones((C, X.shape[0]), dtype=bool)
        z = np.empty((C, X.shape[0]), dtype=np.int8)
        for t in range(spec.steps):
            z = np.take_along_axis(ztab, code, axis=1)
            agree &= z == zstar[t][None, :]
            code = ((code << 1) & mask) | z
        e2e_agree = z == zstar[-1][None, :]
        joint_agree = agree  # y = z_T is part of the CoT, so no extra term
        d_ete += (~e2e_agree) @ w
        joint += joint_agree @ w
        if bits:
            e2e_bits[:, in_lo // 8 : (in_lo + X.shape[0] + 7) // 8] = np.packbits(
                ~e2e_agree, axis=1
            )
            cot_bits[:, in_lo // 8 : (in_lo + X.shape[0] + 7) // 8] = np.packbits(
                ~joint_agree, axis=1
            )
    out = {"d_ete": d_ete, "joint": joint}
    if bits:
        out["e2e_bits"] = e2e_bits
        out["cot_bits"] = cot_bits
    return out


def _run_kernel(spec, hstar, d, *, workers=1, bits=False) -> dict:
    if d.fixed_length is None:
        raise ClassConstructionError(
            "linthresh kernels require a fixed-length support"
        )
    tasks = [
        (spec, hstar, d, lo, hi, bits)
        for lo, hi in chunk_ranges(3**spec.window, ID_CHUNK)
    ]
    parts = parallel_map(_lin_chunk_task, tasks, workers)
    acc = {
        "d_ete": np.concatenate([p["d_ete"] for p in parts]),
        "joint": np.concatenate([p["joint"] for p in parts]),
    }
    if bits:
        acc["e2e_bits"] = np.concatenate([p["e2e_bits"] for p in parts], axis=0)
        acc["cot_bits"] = np.concatenate([p["cot_bits"] for p in parts], axis=0)
    return acc
