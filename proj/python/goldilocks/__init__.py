"""Kobayashi-geometry estimates on bounded domains in C^d.

Thin wrapper over the C++ core. Points are sequences of complex numbers; structured
results come back as plain dicts.
"""

import json as _json

from . import _core
from ._core import (
    DimensionMismatch,
    Domain,
    Error,
    InvalidArgument,
    OutsideDomain,
    SchemaError,
    distance,
    infinitesimal_metric,
)

__version__ = _core.__version__

__all__ = [
    "Domain",
    "Error",
    "InvalidArgument",
    "SchemaError",
    "OutsideDomain",
    "DimensionMismatch",
    "infinitesimal_metric",
    "distance",
    "estimate_M",
    "condition1",
    "psi_threshold",
    "run",
    "validate_config",
    "corpus",
]


def estimate_M(domain, r):
    return _json.loads(_core.estimate_M(domain, r))


def condition1(domain, r_min=1e-3, r_max=0.5, levels=16):
    return _json.loads(_core.condition1(domain, r_min, r_max, levels))


def psi_threshold(s):
    return _json.loads(_core.psi_threshold(s))


def _as_text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def run(config, out_dir=""):
    """Run an experiment config (dict or JSON text); returns the manifest."""
    return _json.loads(_core.run(_as_text(config), str(out_dir)))


def validate_config(config):
    _core.validate_config(_as_text(config))


def corpus():
    return _json.loads(_core.corpus())
