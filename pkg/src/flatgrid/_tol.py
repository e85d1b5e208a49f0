"""Shared numeric tolerance."""

import os

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    """Absolute tolerance, overridable through ``FLATGRID_TOL``."""
    raw = os.environ.get("FLATGRID_TOL")
    if not raw:
        return DEFAULT_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"FLATGRID_TOL must be positive, got {raw!r}")
    return value
