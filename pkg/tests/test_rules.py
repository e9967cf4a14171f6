import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotsim import (
    CotExample,
    DfaClass,
    DfaSpec,
    Prior,
    UniformInputs,
    consistency_set,
    dataset_from_hypothesis,
    erm_set,
    pick,
)
from cotsim.core import CotOutput
from cotsim.synthetic import ListClass, TableHypothesis

SPEC21 = DfaSpec(2, 1, 0, frozenset({1}))
CLS21 = DfaClass(SPEC21)  # 4 transition tables over a single symbol

SPEC3 = DfaSpec(3, 2, 0, frozenset({2}))
CLS3 = DfaClass(SPEC3)
D3 = UniformInputs(2, 3)
HSTAR = CLS3[100]


def test_empty_dataset_gives_full_class():
    assert consistency_set(CLS21, [], "e2e") == [0, 1, 2, 3]
    assert consistency_set(CLS21, [], "cot") == [0, 1, 2, 3]


def test_realizable_contains_target():
    rng = np.random.default_rng(0)
    xs = [D3.input_at(int(i)) for i in D3.sample_indices(rng, 6)]
    s = dataset_from_hypothesis(HSTAR, xs)
    for mode in ("e2e", "cot"):
        assert HSTAR.id in consistency_set(CLS3, s, mode)
    assert HSTAR.id in erm_set(CLS3, s, "cot")


def test_one_example_member_list():
    # hand-enumerated: hstar = table (1, 0), example x = (0, 0) -> y=0, z=(1, 0)
    hstar = CLS21[2]
    s = dataset_from_hypothesis(hstar, [(0, 0)])
    assert consistency_set(CLS21, s, "cot") == [2]
    assert consistency_set(CLS21, s, "e2e") == [0, 1, 2]


def test_cot_set_subset_of_e2e_set():
    rng = np.random.default_rng(1)
    for trial in range(10):
        xs = [D3.input_at(int(i)) for i in D3.sample_indices(rng, 3)]
        s = dataset_from_hypothesis(HSTAR, xs)
        cot = set(consistency_set(CLS3, s, "cot"))
        e2e = set(consistency_set(CLS3, s, "e2e"))
        assert cot <= e2e


def test_examples_without_cot_constrain_outputs_only():
    hstar = CLS21[2]
    s = dataset_from_hypothesis(hstar, [(0, 0)], with_cot=False)
    assert consistency_set(CLS21, s, "cot") == [0, 1, 2]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=0, max_size=5))
def test_adding_examples_never_enlarges(idxs):
    xs = [D3.input_at(i) for i in idxs]
    s = dataset_from_hypothesis(HSTAR, xs)
    prev = set(consistency_set(CLS3, s, "cot"))
    grown = s + dataset_from_hypothesis(HSTAR, [D3.input_at(7)])
    assert set(consistency_set(CLS3, grown, "cot")) <= prev


def test_pick_reproducible():
    s = dataset_from_hypothesis(HSTAR, [(0, 1, 0)])
    a = pick("CoTCons", CLS3, s, seed=99)
    b = pick("CoTCons", CLS3, s, seed=99)
    assert a == b
    assert a.rule_name == "CoTCons" and a.rng_seed == 99
    assert not a.unrealizable


def test_pick_chooses_from_candidate_set():
    s = dataset_from_hypothesis(HSTAR, [(0, 1, 0), (1, 1, 1)])
    ids = consistency_set(CLS3, s, "cot")
    out = pick("CoTCons", CLS3, s, seed=3)
    assert out.chosen.id in ids
    assert out.candidate_set_size == len(ids)


def test_mdl_tie_break_lowest_id():
    s = []
    out = pick("MDL", CLS21, s, seed=0, prior=Prior.uniform(4))
    assert out.chosen.id == 0


def test_mdl_argmax_prior():
    prior = Prior((0.1, 0.9, 0.0, 0.0))
    out = pick("MDL", CLS21, [], seed=0, prior=prior)
    assert out.chosen.id == 1


def test_coterm_degenerate_distribution_keeps_whole_class():
    # CoT labels that no hypothesis can emit: every CoT risk equals 1
    domain = [(0,), (1,)]
    h0 = TableHypothesis({(0,): CotOutput(0, (0,)), (1,): CotOutput(1, (1,))}, 0)
    h1 = TableHypothesis({(0,): CotOutput(0, (1,)), (1,): CotOutput(1, (0,))}, 1)
    cls = ListClass("toy", [h0, h1], {})
    s = [CotExample((0,), 0, (9,)), CotExample((1,), 1, (9,))]
    assert erm_set(cls, s, "cot") == [0, 1]
    out = pick("CoTERM", cls, s, seed=1)
    assert out.candidate_set_size == 2


def test_unrealizable_consistency_falls_back_to_erm():
    s = [CotExample((0, 0), 1, (0, 0)), CotExample((0, 0), 0, (0, 0))]
    out = pick("CoTCons", CLS21, s, seed=4)
    assert out.unrealizable
    assert out.candidate_set_size >= 1


def test_erm_counts_multiplicity():
    # h0 wrong on the duplicated point, h1 wrong on the single point
    h0 = TableHypothesis({(0,): CotOutput(0, (0,)), (1,): CotOutput(0, (0,))}, 0)
    h1 = TableHypothesis({(0,): CotOutput(1, (0,)), (1,): CotOutput(1, (0,))}, 1)
    cls = ListClass("toy", [h0, h1], {})
    s = [CotExample((0,), 1, None), CotExample((0,), 1, None), CotExample((1,), 0, None)]
    assert erm_set(cls, s, "e2e") == [1]


def test_prior_validation():
    with pytest.raises(ValueError):
        Prior((0.5, 0.7))
    with pytest.raises(ValueError):
        Prior((-0.1, 0.5))
    kraft = Prior.from_description_lengths([1, 2, 3])
    assert sum(kraft.weights) <= 1.0
