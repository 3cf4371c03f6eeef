"""Exact verification of osp(N|M) Yang-Baxter identities."""

import json

from ._core import (
    ConfigError,
    DegenerateOmegaError,
    Report,
    Scalar,
    Space,
    Status,
    make_space,
    r_coefficients,
    suite_names,
    verify_braid_ybe,
    verify_brauer,
    verify_fusion,
    verify_graded_ybe,
    verify_intertwiner_identity,
    verify_spinor_R,
    verify_unitarity,
)
from . import _core


def default_config():
    """The acceptance matrix as a config dict."""
    return json.loads(_core._default_config())


def run_suite(config):
    """Run a config dict; returns the report document as a dict."""
    return json.loads(_core._run_suite(json.dumps(config)))


def diff_reports(before, after):
    """Regressions, newly passing entries and timing deltas between two report dicts."""
    return json.loads(_core._diff_reports(json.dumps(before), json.dumps(after)))


__all__ = [
    "ConfigError",
    "DegenerateOmegaError",
    "Report",
    "Scalar",
    "Space",
    "Status",
    "default_config",
    "diff_reports",
    "make_space",
    "r_coefficients",
    "run_suite",
    "suite_names",
    "verify_braid_ybe",
    "verify_brauer",
    "verify_fusion",
    "verify_graded_ybe",
    "verify_intertwiner_identity",
    "verify_spinor_R",
    "verify_unitarity",
]
