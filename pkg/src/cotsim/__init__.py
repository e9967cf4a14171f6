"""cotsim: exact and Monte Carlo simulation of learning under chain-of-thought
supervision, with information curves, learning rules, and bound calculators."""

from .core import (
    CotDataset,
    CotExample,
    CotHypothesis,
    CotOutput,
    ExplicitInputs,
    FiniteDistribution,
    JointDistribution,
    UniformInputs,
    cot_risk,
    dataset_from_hypothesis,
    e2e_risk,
    empirical_risks,
    joint_risks,
)
from .classes import BehaviorBits, HypothesisClass, PairTable, SubClass
from .cotinfo import (
    GammaValue,
    InfoCurve,
    MonteCarloPairStats,
    PairStats,
    SeededSampler,
    agnostic_info,
    gamma_of_epsilon,
    info_curve,
    info_curve_from_arrays,
    monte_carlo_info_curve,
    monte_carlo_pair_stats,
    pair_stats,
    transfer_info_curve,
)
from .dfa import (
    DfaClass,
    DfaHypothesis,
    DfaSpec,
    connectivity_bound,
    enumerate_dfa_class,
    figure4_target,
    min_connectivity,
    shuffle_ideal_dfa,
)
from .linthresh import (
    LinThreshClass,
    LinThreshHypothesis,
    LinThreshSpec,
    enumerate_linthresh_class,
)
from .synthetic import (
    build_fully_informative,
    build_iid,
    build_product,
    iid_product_distribution,
)
from .rules import Prior, RuleOutput, consistency_set, erm_set, pick
from .bounds import (
    BoundValue,
    FanoBound,
    PackingResult,
    SymmetricChannel,
    agnostic_upper,
    channel_capacity_factor,
    expected_error_lower,
    fano_lower,
    greedy_packing,
    mdl_error_bound,
    mdl_upper,
    mixed_upper,
    realizable_upper,
    tv_distance_identity_check,
    two_point_lower,
)
from .harness import (
    ExperimentConfig,
    ExperimentRecord,
    corrupt_dataset,
    empirical_sample_complexity,
    run_info_sweep,
    run_learning_experiment,
    zero_error_probability,
)

__version__ = "0.1.0"
