"""Monotone wide-stencil finite differences for the 2-D extremal equation."""

from .experiments import (
    comparison_experiment,
    emp_experiment,
    removability_experiment,
    verify_profile,
)
from .grid import Annulus, Disk, Grid2D, GridField, Rectangle
from .scheme import (
    directional_second_diff,
    discrete_gradient_norm,
    discrete_pucci_plus,
    operator_value,
)
from .solve import SolveReport, operator_field, solve
from .stencil import Stencil

__all__ = [
    "Annulus",
    "Disk",
    "Grid2D",
    "GridField",
    "Rectangle",
    "SolveReport",
    "Stencil",
    "comparison_experiment",
    "directional_second_diff",
    "discrete_gradient_norm",
    "discrete_pucci_plus",
    "emp_experiment",
    "operator_field",
    "operator_value",
    "removability_experiment",
    "solve",
    "verify_profile",
]
