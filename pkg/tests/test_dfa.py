import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotsim import (
    DfaClass,
    DfaSpec,
    UniformInputs,
    connectivity_bound,
    enumerate_dfa_class,
    figure4_target,
    pair_stats,
    shuffle_ideal_dfa,
)
from cotsim.dfa import (
    DfaHypothesis,
    dfa_from_json,
    id_to_table,
    min_connectivity,
    table_to_id,
)
from cotsim.errors import ClassConstructionError, ClassSizeError
from oracles import brute_dfa_eval


def test_cardinality_figure2_setup():
    cls = enumerate_dfa_class(DfaSpec(4, 2, 0, frozenset({3})))
    assert len(cls) == 4**8 == 65536


def test_cardinality_single_state():
    assert len(enumerate_dfa_class(DfaSpec(1, 2, 0, frozenset({0})))) == 1


def test_cardinality_two_state_one_symbol():
    cls = enumerate_dfa_class(DfaSpec(2, 1, 0, frozenset({1})))
    assert len(cls) == 4
    # ids are the mixed-radix table encodings, msb = entry (state 0, symbol 0)
    assert [cls[i].table for i in range(4)] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_cardinality_overflow_refused():
    with pytest.raises(ClassSizeError):
        enumerate_dfa_class(DfaSpec(10, 3, 0, frozenset({0})))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 4**8 - 1))
def test_id_table_round_trip(hid):
    spec = DfaSpec(4, 2, 0, frozenset({3}))
    assert table_to_id(spec, id_to_table(spec, hid)) == hid


def test_figure4_target_examples():
    h = figure4_target()
    assert h.table == (1, 3, 0, 3, 3, 1, 3, 2)
    out = h.eval((1,))
    assert (out.y, out.z) == (1, (3,))
    out = h.eval((0, 0))
    assert (out.y, out.z) == (0, (1, 0))
    out = h.eval((1, 0, 0))
    assert (out.y, out.z) == (1, (3, 3, 3))


def test_figure4_matches_brute_eval():
    h = figure4_target()
    for x, _ in UniformInputs(2, 5).items():
        out = h.eval(x)
        assert (out.y, out.z) == brute_dfa_eval(h.table, 4, 2, 0, {3}, x)


def test_shuffle_ideal_single_symbol():
    h = shuffle_ideal_dfa((1,), 2)
    assert h.eval((0, 1, 0)).y == 1
    assert h.eval((0, 0, 0)).y == 0


def test_shuffle_ideal_trace():
    h = shuffle_ideal_dfa((0, 1), 2)
    out = h.eval((0, 0, 1))
    assert out.z == (1, 1, 2)
    assert out.y == 1
    assert h.eval((1, 0)).y == 0


def test_connectivity_bound_formula():
    h = shuffle_ideal_dfa((1,), 2)  # 2 states, both reachable in 1 step
    assert connectivity_bound(h, 1) == 0.25


def test_connectivity_bound_figure4():
    h = figure4_target()
    assert min_connectivity(h) == 2
    assert connectivity_bound(h, 2) == 0.125
    with pytest.raises(ClassConstructionError):
        connectivity_bound(h, 1)  # state 2 needs two steps


def test_connectivity_bound_single_state():
    spec = DfaSpec(1, 2, 0, frozenset({0}))
    h = DfaHypothesis(spec, (0, 0), 0)
    assert connectivity_bound(h, 0) == 0.5


def test_detail_level_truncation():
    spec = DfaSpec(4, 2, 0, frozenset({3}), detail=2)
    h = DfaHypothesis(spec, figure4_target().table, 0)
    out = h.eval((1, 0, 0, 1))
    assert len(out.z) == 2
    # output still reflects the full trajectory
    assert out.y == figure4_target().eval((1, 0, 0, 1)).y


def test_full_detail_output_is_last_token():
    h = figure4_target()
    for x, _ in UniformInputs(2, 4).items():
        out = h.eval(x)
        assert out.y == (1 if out.z[-1] in h.spec.accept_states else 0)


def test_json_round_trip():
    h = figure4_target()
    obj = json.loads(h.to_json())
    assert obj == {
        "num_states": 4,
        "alphabet_size": 2,
        "init": 0,
        "accept": [3],
        "table": [1, 3, 0, 3, 3, 1, 3, 2],
    }
    h2 = dfa_from_json(h.to_json())
    assert h2.table == h.table and h2.id == h.id


def test_kernel_matches_brute_force_exhaustively():
    spec = DfaSpec(2, 2, 0, frozenset({1}), detail=1)
    cls = DfaClass(spec)
    dist = UniformInputs(2, 3)
    hstar = cls[9]
    table = cls.pair_table(hstar, dist)
    for hid in range(len(cls)):
        d_ete = 0.0
        agree = 0.0
        for x, p in dist.items():
            ys, zs = brute_dfa_eval(hstar.table, 2, 2, 0, {1}, x, detail=1)
            yh, zh = brute_dfa_eval(cls[hid].table, 2, 2, 0, {1}, x, detail=1)
            if ys != yh:
                d_ete += p
            if (ys, zs) == (yh, zh):
                agree += p
        assert abs(table.d_ete[hid] - d_ete) < 1e-15
        assert abs(table.agreement[hid] - agree) < 1e-15


def test_detail_tables_match_per_level_runs():
    spec = DfaSpec(3, 2, 0, frozenset({2}))
    cls = DfaClass(spec)
    dist = UniformInputs(2, 4)
    hstar = cls[100]
    d_ete, joints = cls.detail_pair_tables(hstar, dist, [0, 1, 2, 4])
    for t in (0, 1, 2, 4):
        spec_t = DfaSpec(3, 2, 0, frozenset({2}), detail=t)
        cls_t = DfaClass(spec_t)
        hstar_t = cls_t[100]
        tab = cls_t.pair_table(hstar_t, dist)
        assert np.array_equal(tab.d_ete, d_ete)
        assert np.array_equal(tab.agreement, joints[t])


def test_connectivity_floor_exhaustive_three_state():
    # ell-connected target: min over all other tables of the relative
    # information is at least |Sigma|^-(ell+1)
    spec = DfaSpec(3, 2, 0, frozenset({2}))
    cls = DfaClass(spec)
    table = (1, 2, 0, 2, 0, 1)
    hstar = DfaHypothesis(spec, table, table_to_id(spec, table))
    ell = min_connectivity(hstar)
    bound = connectivity_bound(hstar, ell)
    tab = cls.pair_table(hstar, UniformInputs(2, 4))
    others = np.ones(len(cls), dtype=bool)
    others[hstar.id] = False
    max_agree = float(np.max(tab.agreement[others]))
    assert -np.log(max_agree) >= bound


def test_connectivity_floor_sampled_four_state():
    h = figure4_target()
    cls = DfaClass(h.spec)
    bound = connectivity_bound(h, min_connectivity(h))
    dist = UniformInputs(2, 4)
    rng = np.random.default_rng(3)
    for hid in rng.integers(0, len(cls), size=200):
        if int(hid) == h.id:
            continue
        ps = pair_stats(h, cls[int(hid)], dist)
        assert ps.rel_info >= bound
