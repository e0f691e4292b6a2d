"""Community-structure testing for sparse stochastic block models.

Library for goodness-of-fit and two-sample testing of community changes,
spectral recovery baselines, a Gaussian Markov random field adaptation,
closed-form theoretical bound evaluators, and a Monte Carlo harness for risk
phase diagrams. See the README for the command line interface.
"""

from .bounds import (
    BoundReport,
    gamma_entropy_upper,
    gof_bc_bound,
    gof_chi2_bound,
    nu,
    tst_converse,
)
from .cut_statistics import CutCounts, cut_counts, t_statistic
from .gmrf import (
    GmrfModel,
    LdaRule,
    NotPositiveDefiniteError,
    SampleMatrix,
    build_precision,
    correlation_matrix,
    cross_validated_risk,
    fit_lda_threshold,
    gmrf_naive_compare,
    gmrf_two_sample,
    recover_from_correlation,
    sample_gmrf,
    weighted_t_statistic,
)
from .gof import GofConfig, TestResult, gof_test, gof_threshold, naive_gof
from .graph_core import (
    Graph,
    Partition,
    SbmParams,
    balanced_partition,
    distortion,
    params_from_snr,
    perturb_partition,
    sample_sbm,
    snr,
    sparsify,
    subsample_edges,
)
from .harness import (
    LabeledGraph,
    RiskRow,
    estimate_params,
    estimate_risk,
    grid_sweep,
    largest_connected_component,
    load_edge_list,
    load_labeled_graph,
    load_labels,
    semi_synthetic_tst,
    snr_base,
)
from .recovery import (
    RecoverySettings,
    naive_tst,
    spectral_partition,
    spectral_partition_matrix,
)
from .seeding import derive_seed, make_rng
from .tst import TstConfig, expected_t_gap, two_sample_test

__version__ = "0.1.0"
