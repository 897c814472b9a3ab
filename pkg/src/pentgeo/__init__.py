"""Pentagonal geometry toolkit.

A pentagonal geometry PENT(k, r, w) is a partial linear space with k points
per line and r lines per point in which the points not collinear with a
point x form the point set of a Steiner system S(2, k, w) whose blocks are
lines.  This package builds such geometries from base blocks or recursive
constructions, verifies the axioms, and classifies the deficiency graph.
"""

from .core import (
    BaseBlockFile,
    Geometry,
    PentParams,
    derive_params,
    develop,
    geometry,
    geometry_from_json,
    geometry_to_json,
    is_admissible,
    parse_pent_file,
    write_pent_file,
)
from .pent import VerificationReport, classify, deficiency_graph, line_split, verify

__version__ = "0.1.0"

__all__ = [
    "BaseBlockFile",
    "Geometry",
    "PentParams",
    "VerificationReport",
    "classify",
    "deficiency_graph",
    "derive_params",
    "develop",
    "geometry",
    "geometry_from_json",
    "geometry_to_json",
    "is_admissible",
    "line_split",
    "parse_pent_file",
    "verify",
    "write_pent_file",
    "__version__",
]
