"""Hyperbolic Allen-Cahn metastability toolkit."""

import json as _json

from ._core import (
    BlowUp,
    ConfigError,
    HyperacError,
    __version__,
    compute_c0,
    config_hash,
    derive_params,
    energy,
    min_admissible_cells,
    psi,
    transition_count,
)
from . import _core


def run_example(n, epsilon=None, tau=None, horizon=None, cells=None):
    """Run preset example n and return the report as a dict."""
    return _json.loads(_core.run_example_json(n, epsilon, tau, horizon, cells))


def run_config(config):
    """Run an experiment from a config dict."""
    return _json.loads(_core.run_config_json(_json.dumps(config)))


def sweep(config, epsilons, k=1.0, m=1.0):
    return _core.sweep(_json.dumps(config), list(epsilons), k, m)


__all__ = [
    "BlowUp",
    "ConfigError",
    "HyperacError",
    "__version__",
    "compute_c0",
    "config_hash",
    "derive_params",
    "energy",
    "min_admissible_cells",
    "psi",
    "run_config",
    "run_example",
    "sweep",
    "transition_count",
]
