"""Weakly admissible meshes, approximate Fekete points and polynomial fits on planar domains.

Domains are given as a builtin name ("disk", "simplex", ...), an inline JSON
object or a path to a JSON file.  Point sets are returned as (M, 2) arrays.
"""

from ._wamfek import (
    ConfigError,
    NumericalError,
    RankDeficientError,
    MeshTooLargeError,
    builtin_domains,
    domain_info,
    wam,
    uniform_am,
    control_mesh,
    afp,
    lebesgue_constant,
    fit,
    run_domain,
    table,
    format_table,
    test_function,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "RankDeficientError",
    "MeshTooLargeError",
    "builtin_domains",
    "domain_info",
    "wam",
    "uniform_am",
    "control_mesh",
    "afp",
    "lebesgue_constant",
    "fit",
    "run_domain",
    "table",
    "format_table",
    "test_function",
]
