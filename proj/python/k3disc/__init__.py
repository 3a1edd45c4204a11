"""Python front end for the k3disc verification kernel."""

import json

from ._core import (
    DEFAULT_PRIME,
    PARAMETER_WEIGHTS,
    Error,
    InconsistentOrdersError,
    InvalidDiagramError,
    ParseError,
    UsageError,
    __version__,
    canonical_poly,
    check_names,
    classify,
    lattice_invariants,
    t237_edges,
)
from . import _core

__all__ = [
    "DEFAULT_PRIME",
    "PARAMETER_WEIGHTS",
    "Error",
    "InconsistentOrdersError",
    "InvalidDiagramError",
    "ParseError",
    "UsageError",
    "__version__",
    "canonical_poly",
    "check_names",
    "classify",
    "lattice_invariants",
    "run_checks",
    "scan",
    "t237_edges",
]


def run_checks(names=("all",), seed=20240601, prime=DEFAULT_PRIME, trials=None, slice=None, params=None, jobs=1):
    """Run verification checks; returns the report as a dict."""
    if isinstance(names, str):
        names = [names]
    text = _core.run_checks_json(list(names), seed, prime, trials, slice, dict(params or {}), jobs)
    return json.loads(text)


def scan(point, prime=0):
    """Kodaira fibers and the values k, r at a family point given as {"t4": 1, ...}."""
    return json.loads(_core.scan_json({k: str(v) for k, v in point.items()}, prime))
