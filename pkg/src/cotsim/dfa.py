"""DFA hypothesis class: all transition tables over a fixed state space.

A hypothesis is a transition table delta over (state, symbol). On input
x_1..x_n the state trajectory is z_t = delta(z_{t-1}, x_t) with z_0 = init
(z_0 is not emitted), the CoT is the first min(T, n) entries of z_1..z_n for
detail level T (full trajectory when T is None), and the output is
y = 1{z_n in accept_states}. The output is always computed from the full
trajectory, regardless of how much of it the CoT reveals.

Enumeration is by mixed-radix encoding of the table with entry
(state 0, symbol 0) as the most significant digit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import partial
from typing import Optional, Sequence

import numpy as np

from .classes import BehaviorBits, HypothesisClass, PairTable, check_budget
from .core import CotHypothesis, CotOutput, FiniteDistribution, InputSeq
from .errors import ClassConstructionError, ClassSizeError, DomainMismatchError
from .util import ID_CHUNK, INPUT_CHUNK, chunk_ranges, parallel_map


@dataclass(frozen=True)
class DfaSpec:
    """Shared structure of a DFA class: state space, alphabet, detail level."""

    num_states: int
    alphabet_size: int
    init_state: int = 0
    accept_states: frozenset[int] = frozenset()
    detail: Optional[int] = None  # None means the full trajectory is revealed

    def __post_init__(self):
        if self.num_states < 1 or self.alphabet_size < 1:
            raise ClassConstructionError("num_states and alphabet_size must be >= 1")
        if not 0 <= self.init_state < self.num_states:
            raise ClassConstructionError("init_state out of range")
        if any(not 0 <= s < self.num_states for s in self.accept_states):
            raise ClassConstructionError("accept state out of range")
        if self.detail is not None and self.detail < 0:
            raise ClassConstructionError("detail level must be >= 0")

    def detail_cut(self, n: int) -> int:
        """Number of trajectory entries revealed for inputs of length n."""
        return n if self.detail is None else min(self.detail, n)


@dataclass(frozen=True)
class DfaHypothesis(CotHypothesis):
    """One transition table; ``table[s * alphabet_size + a]`` is delta(s, a)."""

    spec: DfaSpec
    table: tuple[int, ...]
    id: int = field(default=-1)

    def __post_init__(self):
        S, A = self.spec.num_states, self.spec.alphabet_size
        if len(self.table) != S * A:
            raise ClassConstructionError(f"table must have {S * A} entries")
        if any(not 0 <= t < S for t in self.table):
            raise ClassConstructionError("table entry out of state range")

    def trajectory(self, x: InputSeq) -> tuple[int, ...]:
        """Full visited-state sequence z_1..z_n (z_0 = init not included)."""
        A = self.spec.alphabet_size
        s = self.spec.init_state
        out = []
        for a in x:
            if not 0 <= a < A:
                raise DomainMismatchError(f"symbol {a} outside alphabet of size {A}")
            s = self.table[s * A + a]
            out.append(s)
        return tuple(out)

    def eval(self, x: InputSeq) -> CotOutput:
        z = self.trajectory(x)
        final = z[-1] if z else self.spec.init_state
        y = 1 if final in self.spec.accept_states else 0
        return CotOutput(y, z[: self.spec.detail_cut(len(x))])

    def to_json(self) -> str:
        return json.dumps(
            {
                "num_states": self.spec.num_states,
                "alphabet_size": self.spec.alphabet_size,
                "init": self.spec.init_state,
                "accept": sorted(self.spec.accept_states),
                "table": list(self.table),
            }
        )


def dfa_from_json(text: str, detail: Optional[int] = None) -> DfaHypothesis:
    obj = json.loads(text)
    spec = DfaSpec(
        num_states=obj["num_states"],
        alphabet_size=obj["alphabet_size"],
        init_state=obj["init"],
        accept_states=frozenset(obj["accept"]),
        detail=detail,
    )
    table = tuple(obj["table"])
    return DfaHypothesis(spec, table, table_to_id(spec, table))


def table_to_id(spec: DfaSpec, table: Sequence[int]) -> int:
    hid = 0
    for entry in table:
        hid = hid * spec.num_states + entry
    return hid


def id_to_table(spec: DfaSpec, hid: int) -> tuple[int, ...]:
    S = spec.num_states
    size = S * spec.alphabet_size
    digits = [0] * size
    for pos in range(size - 1, -1, -1):
        digits[pos] = hid % S
        hid //= S
    return tuple(digits)


class DfaClass(HypothesisClass):
    """All ``num_states ** (num_states * alphabet_size)`` transition tables."""

    kind = "dfa"

    def __init__(self, spec: DfaSpec):
        self.spec = spec
        S, A = spec.num_states, spec.alphabet_size
        card = S ** (S * A)
        if card > 2**63 - 1:
            raise ClassSizeError(
                f"DFA class of size {S}^{S * A} exceeds 64-bit enumeration"
            )
        self._card = card

    def __len__(self) -> int:
        return self._card

    def __getitem__(self, hid: int) -> DfaHypothesis:
        if not 0 <= hid < self._card:
            raise IndexError(hid)
        return DfaHypothesis(self.spec, id_to_table(self.spec, hid), hid)

    def params(self) -> dict:
        return {
            "kind": "dfa",
            "num_states": self.spec.num_states,
            "alphabet_size": self.spec.alphabet_size,
            "init_state": self.spec.init_state,
            "accept_states": sorted(self.spec.accept_states),
            "detail": self.spec.detail,
        }

    # -- vectorized kernels --------------------------------------------------

    def pair_table(self, hstar, d, *, need_d_ete=True, need_agreement=True,
                   budget=1 << 30, workers=1) -> PairTable:
        check_budget(len(self), len(d), budget)
        cut = self.spec.detail_cut(_support_length(d))
        acc = _run_kernel(self.spec, hstar, d, detail_levels=(cut,), workers=workers)
        d_ete = acc["d_ete"] if need_d_ete else None
        agreement = acc["joint"][cut] if need_agreement else None
        return PairTable(d_ete, agreement)

    def detail_pair_tables(self, hstar, d, detail_levels, *, budget=1 << 30,
                           workers=1) -> tuple[np.ndarray, dict[int, np.ndarray]]:
        """One simulation pass serving a whole detail-level sweep.

        Returns (d_ete, {T: joint agreement array under detail level T}).
        """
        check_budget(len(self), len(d), budget)
        n = _support_length(d)
        cuts = sorted({min(T, n) for T in detail_levels})
        acc = _run_kernel(self.spec, hstar, d, detail_levels=tuple(cuts), workers=workers)
        joints = {T: acc["joint"][min(T, n)] for T in detail_levels}
        return acc["d_ete"], joints

    def behavior_bits(self, hstar, d, *, budget=1 << 30, workers=1) -> BehaviorBits:
        check_budget(len(self), len(d), budget)
        cut = self.spec.detail_cut(_support_length(d))
        acc = _run_kernel(
            self.spec, hstar, d, detail_levels=(cut,), workers=workers, bits=True
        )
        return BehaviorBits(
            acc["e2e_bits"], acc["cot_bits"], acc["d_ete"], len(d)
        )


def _support_length(d: FiniteDistribution) -> int:
    if d.fixed_length is None:
        raise ClassConstructionError(
            "DFA kernels require a fixed-length support; got mixed lengths"
        )
    return d.fixed_length


def _tables_for_ids(spec: DfaSpec, lo: int, hi: int) -> np.ndarray:
    """Decode transition tables for an id range, shape (hi-lo, S*A) int8."""
    S = spec.num_states
    size = S * spec.alphabet_size
    ids = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, size), dtype=np.int8)
    for pos in range(size - 1, -1, -1):
        out[:, pos] = ids % S
        ids //= S
    return out


def _star_run(hstar: DfaHypothesis, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reference trajectory (n, Xc) and outputs (Xc,) for an input block."""
    spec = hstar.spec
    A = spec.alphabet_size
    table = np.asarray(hstar.table, dtype=np.int8)
    n = X.shape[1]
    cur = np.full(X.shape[0], spec.init_state, dtype=np.int8)
    traj = np.empty((n, X.shape[0]), dtype=np.int8)
    for t in range(n):
        cur = table[cur.astype(np.int16) * A + X[:, t]]
        traj[t] = cur
    accept = np.zeros(spec.num_states, dtype=bool)
    for s in spec.accept_states:
        accept[s] = True
    ystar = accept[traj[-1]] if n else np.full(X.shape[0], accept[spec.init_state])
    return traj, ystar


def _dfa_chunk_task(args):
    (spec, hstar, d, id_lo, id_hi, detail_levels, bits) = args
    A = spec.alphabet_size
    tables = _tables_for_ids(spec, id_lo, id_hi)
    accept = np.zeros(spec.num_states, dtype=bool)
    for s in spec.accept_states:
        accept[s] = True
    C = id_hi - id_lo
    X_total = len(d)
    d_ete = np.zeros(C, dtype=np.float64)
    joint = {lvl: np.zeros(C, dtype=np.float64) for lvl in detail_levels}
    top = max(detail_levels) if detail_levels else 0
    e2e_bits = np.zeros((C, (X_total + 7) // 8), dtype=np.uint8) if bits else None
    cot_bits = np.zeros((C, (X_total + 7) // 8), dtype=np.uint8) if bits else None
    for in_lo, in_hi in chunk_ranges(X_total, INPUT_CHUNK):
        X = d.matrix(in_lo, in_hi)
        w = d.weights(in_lo, in_hi)
        zstar, ystar = _star_run(hstar, X)
        n = X.shape[1]
        cur = np.full((C, X.shape[0]), spec.init_state, dtype=np.int8)
        agree = np.ones((C, X.shape[0]), dtype=bool)
        snapshots = {}
        if 0 in joint:
            snapshots[0] = agree.copy()
        for t in range(n):
            idx = cur.astype(np.int16) * A
            idx += X[:, t][None, :]
            cur = np.take_along_axis(tables, idx, axis=1)
            if t < top:
                agree &= cur == zstar[t][None, :]
                if (t + 1) in joint and (t + 1) < top:
                    snapshots[t + 1] = agree.copy()
        snapshots[top] = agree
        yh = accept[cur]
        e2e_agree = yh == ystar[None, :]
        d_ete += (~e2e_agree) @ w
        for lvl in detail_levels:
            joint[lvl] += (snapshots[lvl] & e2e_agree) @ w
        if bits:
            # INPUT_CHUNK is a multiple of 8, so packbits blocks tile cleanly
            full = snapshots[max(detail_levels)] & e2e_agree
            e2e_bits[:, in_lo // 8 : (in_lo + X.shape[0] + 7) // 8] = np.packbits(
                ~e2e_agree, axis=1
            )
            cot_bits[:, in_lo // 8 : (in_lo + X.shape[0] + 7) // 8] = np.packbits(
                ~full, axis=1
            )
    out = {"d_ete": d_ete, "joint": joint}
    if bits:
        out["e2e_bits"] = e2e_bits
        out["cot_bits"] = cot_bits
    return out


def _run_kernel(spec, hstar, d, *, detail_levels, workers=1, bits=False) -> dict:
    tasks = [
        (spec, hstar, d, lo, hi, detail_levels, bits)
        for lo, hi in chunk_ranges(spec.num_states ** (spec.num_states * spec.alphabet_size), ID_CHUNK)
    ]
    parts = parallel_map(_dfa_chunk_task, tasks, workers)
    acc = {
        "d_ete": np.concatenate([p["d_ete"] for p in parts]),
        "joint": {
            lvl: np.concatenate([p["joint"][lvl] for p in parts])
            for lvl in detail_levels
        },
    }
    if bits:
        acc["e2e_bits"] = np.concatenate([p["e2e_bits"] for p in parts], axis=0)
        acc["cot_bits"] = np.concatenate([p["cot_bits"] for p in parts], axis=0)
    return acc


# ---------------------------------------------------------------------------
# Named constructions
# ---------------------------------------------------------------------------


def enumerate_dfa_class(spec: DfaSpec) -> DfaClass:
    """The set of all DFAs over the spec's state space and alphabet."""
    return DfaClass(spec)


#: transition table of the reference 4-state target used across experiments
_TARGET_TABLE = (1, 3, 0, 3, 3, 1, 3, 2)


def figure4_target(detail: Optional[int] = None) -> DfaHypothesis:
    """The fixed 4-state target DFA over {0,1}: init 0, accept {3}."""
    spec = DfaSpec(
        num_states=4,
        alphabet_size=2,
        init_state=0,
        accept_states=frozenset({3}),
        detail=detail,
    )
    return DfaHypothesis(spec, _TARGET_TABLE, table_to_id(spec, _TARGET_TABLE))


def shuffle_ideal_dfa(u: InputSeq, alphabet_size: int,
                      detail: Optional[int] = None) -> DfaHypothesis:
    """DFA accepting exactly the strings containing u as a subsequence.

    State s < |u| waits for symbol u_s and advances on seeing it; state |u|
    is absorbing and accepting.
    """
    u = tuple(u)
    if not u:
        raise ClassConstructionError("u must be non-empty")
    if any(not 0 <= a < alphabet_size for a in u):
        raise ClassConstructionError("u contains symbols outside the alphabet")
    num_states = len(u) + 1
    table = []
    for s in range(num_states):
        for a in range(alphabet_size):
            if s < len(u) and a == u[s]:
                table.append(s + 1)
            else:
                table.append(s)
    spec = DfaSpec(
        num_states=num_states,
        alphabet_size=alphabet_size,
        init_state=0,
        accept_states=frozenset({len(u)}),
        detail=detail,
    )
    return DfaHypothesis(spec, tuple(table), table_to_id(spec, tuple(table)))


def bfs_distances(h: DfaHypothesis) -> list[Optional[int]]:
    """Shortest input length reaching each state from init (None = unreachable)."""
    spec = h.spec
    dist: list[Optional[int]] = [None] * spec.num_states
    dist[spec.init_state] = 0
    frontier = [spec.init_state]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for s in frontier:
            for a in range(spec.alphabet_size):
                t = h.table[s * spec.alphabet_size + a]
                if dist[t] is None:
                    dist[t] = depth
                    nxt.append(t)
        frontier = nxt
    return dist


def connectivity_bound(hstar: DfaHypothesis, ell: int) -> float:
    """Lower bound |Sigma|^-(ell+1) on the information floor of an ell-connected DFA.

    Requires every reachable state of hstar to be reachable within ell steps
    from the initial state (checked by BFS).
    """
    dist = bfs_distances(hstar)
    for s, dd in enumerate(dist):
        if dd is not None and dd > ell:
            raise ClassConstructionError(
                f"state {s} is reachable only after {dd} steps (> ell = {ell})"
            )
    return float(hstar.spec.alphabet_size) ** -(ell + 1)


def min_connectivity(hstar: DfaHypothesis) -> int:
    """Smallest ell for which hstar's reachable graph is ell-connected."""
    return max(dd for dd in bfs_distances(hstar) if dd is not None)
