"""Exact symbolic checks for Lie algebras, basis changes and gauge Lagrangians."""

from __future__ import annotations

from .gauge import TensorPoly, field_strength, lagrangian, poly_equal, rename_fields, vertex_table
from .liealg import (
    BasisTransform,
    Representation,
    StructureConstants,
    adjoint_action,
    adjoint_rep,
    jacobi_check,
    killing_form,
    rep_check,
    reps_equal,
    trace_table,
    transform_constants,
    transform_rep,
)
from .matrix import TrigMatrix
from .trigring import TrigScalar, ts_eval, ts_format, ts_parse

__version__ = "0.1.0"

__all__ = [
    "BasisTransform",
    "Representation",
    "StructureConstants",
    "TensorPoly",
    "TrigMatrix",
    "TrigScalar",
    "adjoint_action",
    "adjoint_rep",
    "field_strength",
    "jacobi_check",
    "killing_form",
    "lagrangian",
    "poly_equal",
    "rename_fields",
    "rep_check",
    "reps_equal",
    "trace_table",
    "transform_constants",
    "transform_rep",
    "ts_eval",
    "ts_format",
    "ts_parse",
    "vertex_table",
]
