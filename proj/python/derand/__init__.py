"""Mechanisms whose randomness comes from a modular arithmetic game."""

import json as _json

from . import _core
from ._core import (
    Error,
    biased_min_work,
    compact_priority_order,
    derand_dictator,
    derand_lrm,
    derand_rp,
    derand_rse,
    expected_makespan_uniform,
    lehmer_decode,
    lehmer_encode,
    lrm_expected_ratio,
    optimal_makespan,
    outcome_distribution,
    outcome_sum,
    partition_winner,
    probabilistic_serial,
    rp_distribution_oracle,
    spe_winner_linear,
    spe_winner_oracle,
    suite_names,
)


def _text(instance):
    return instance if isinstance(instance, str) else _json.dumps(instance)


def verify_nash(utilities, profile):
    return _json.loads(_core.verify_nash(utilities, profile))


def run_instance(instance):
    """Run an instance (dict or JSON text); returns outcome and transcript."""
    return _json.loads(_core.run_instance(_text(instance)))


def exact_dist(instance):
    return _json.loads(_core.exact_dist(_text(instance)))


def simulate(instance, trials, seed, workers=1):
    return _json.loads(_core.simulate(_text(instance), trials, seed, workers))


def run_suite(name, n=None, samples=None, seed=0):
    return _json.loads(_core.run_suite(name, n, samples, seed))
