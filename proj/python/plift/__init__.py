"""Exact lifting of collinear point tuples to point-line configurations.

Configurations are dicts ``{"points": n, "lines": [[1, 2, 3], ...]}``.
Rationals are returned as ``fractions.Fraction`` and accepted as ints,
Fractions or strings such as ``"-3/4"``.
"""

from ._plift import (
    PliftError,
    analyze,
    check,
    collin_rank,
    config_of_realisation,
    emit,
    forest_lift,
    generators,
    grid3x3_config,
    grid3x4_config,
    grid_config,
    lift,
    lift_space_dimension,
    load_config,
    project,
    quadset_config,
    quasi_liftable,
    run_cli,
    sample,
    table1,
    validate,
    verify,
)

__all__ = [
    "PliftError",
    "analyze",
    "check",
    "collin_rank",
    "config_of_realisation",
    "emit",
    "forest_lift",
    "generators",
    "grid3x3_config",
    "grid3x4_config",
    "grid_config",
    "lift",
    "lift_space_dimension",
    "load_config",
    "project",
    "quadset_config",
    "quasi_liftable",
    "run_cli",
    "sample",
    "table1",
    "validate",
    "verify",
]
