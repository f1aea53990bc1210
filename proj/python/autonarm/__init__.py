"""Automated construction of numerical association rule mining pipelines."""

import json as _json

from ._core import (
    AutonarmError,
    Database,
    OuterConfig,
    SearchConfig,
    apply_chain,
    decode_pipeline,
    decode_rule,
    evaluate_pipeline,
    kmeans_discretize,
    load_csv,
    map_hyperparam,
    map_scalar_to_pool,
    min_max,
    mine,
    optimize,
    remove_highly_correlated,
    rule_dimension,
    squash,
    wilcoxon_signed_rank,
    z_score,
)
from . import _core


def search(db, config, outer, run_index=0):
    """One outer pipeline search; returns the report as a dict."""
    return _json.loads(_core.search_json(db, config, outer, run_index))


def run_experiment(db, config, outer, name=""):
    """Multi-run experiment; returns the aggregate report as a dict."""
    return _json.loads(_core.run_experiment_json(db, config, outer, name))


__all__ = [
    "AutonarmError",
    "Database",
    "OuterConfig",
    "SearchConfig",
    "apply_chain",
    "decode_pipeline",
    "decode_rule",
    "evaluate_pipeline",
    "kmeans_discretize",
    "load_csv",
    "map_hyperparam",
    "map_scalar_to_pool",
    "min_max",
    "mine",
    "optimize",
    "remove_highly_correlated",
    "rule_dimension",
    "run_experiment",
    "search",
    "squash",
    "wilcoxon_signed_rank",
    "z_score",
]
