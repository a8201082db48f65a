"""k-means and k-POD clustering for incomplete data.

The partial-distance loss ignores unobserved coordinates, so k-POD runs
k-means directly on an incomplete matrix. Its population loss decomposes
over missingness patterns into a weighted sum of restricted k-means
losses, which is why its large-sample centers generally differ from the
k-means centers even under MCAR; the experiment harness in
:mod:`kpodlab.experiments` measures that gap.
"""

from ._validation import DimensionError
from .distances import masked_sq_dist, pairwise_sq_dists, masked_pairwise_sq_dists
from .kmeans import FitOptions, FitResult, KMeans, km_assign, km_fit, km_loss, km_update
from .kpod import (
    KPod,
    KpodFitResult,
    impute_completion,
    kpod_assign,
    kpod_fit,
    kpod_fit_imputed_form,
    kpod_loss,
    kpod_update,
)
from .metrics import (
    DecompositionReport,
    McLossEstimate,
    decomposition_check,
    mc_expected_loss,
    mse_centers,
    mse_centers_bijective,
)
from .missing import (
    McarSpec,
    all_missing_rows,
    complete_case_indices,
    complete_cases,
    gen_mask,
    group_patterns,
)
from .oracle import canonicalize_centers, estimate_reference
from .rng import derive_seed, rng_for
from .synthetic import GmmSpec, PresetBundle, PRESET_NAMES, preset, sample_gmm
from .experiments import (
    AggregateRow,
    ConfigError,
    ExperimentConfig,
    RunRecord,
    config_from_dict,
    load_config_file,
    run_experiments,
    run_table,
    run_trend,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateRow",
    "ConfigError",
    "DecompositionReport",
    "DimensionError",
    "ExperimentConfig",
    "FitOptions",
    "FitResult",
    "GmmSpec",
    "KMeans",
    "KPod",
    "KpodFitResult",
    "McLossEstimate",
    "McarSpec",
    "PRESET_NAMES",
    "PresetBundle",
    "RunRecord",
    "all_missing_rows",
    "canonicalize_centers",
    "complete_case_indices",
    "complete_cases",
    "config_from_dict",
    "decomposition_check",
    "derive_seed",
    "estimate_reference",
    "gen_mask",
    "group_patterns",
    "impute_completion",
    "km_assign",
    "km_fit",
    "km_loss",
    "km_update",
    "kpod_assign",
    "kpod_fit",
    "kpod_fit_imputed_form",
    "kpod_loss",
    "kpod_update",
    "load_config_file",
    "masked_pairwise_sq_dists",
    "masked_sq_dist",
    "mc_expected_loss",
    "mse_centers",
    "mse_centers_bijective",
    "pairwise_sq_dists",
    "preset",
    "rng_for",
    "run_experiments",
    "run_table",
    "run_trend",
    "sample_gmm",
]
