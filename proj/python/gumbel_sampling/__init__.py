"""Gumbel-max sampling, relaxations and gradient estimators."""

import json as _json

from . import _core
from ._core import (
    RngState,
    analytic_grad,
    categorical_probs,
    effective_gs_temperature,
    estimate,
    exponential_race,
    gs_sample,
    gumbel_max,
    gumbel_max_scaled,
    gumbel_topk,
    log_convexity_bound,
    perturb,
    plackett_luce_prob,
    sequential_wor,
    st_gs_sample,
    suite_names,
    top_down,
    unordered_set_prob,
)


def verify(suite="all", seed=0):
    """Run a verification suite and return its reports as plain dicts."""
    return _json.loads(_core._verify_json(suite, seed))


__all__ = [
    "RngState",
    "analytic_grad",
    "categorical_probs",
    "effective_gs_temperature",
    "estimate",
    "exponential_race",
    "gs_sample",
    "gumbel_max",
    "gumbel_max_scaled",
    "gumbel_topk",
    "log_convexity_bound",
    "perturb",
    "plackett_luce_prob",
    "sequential_wor",
    "st_gs_sample",
    "suite_names",
    "top_down",
    "unordered_set_prob",
    "verify",
]
