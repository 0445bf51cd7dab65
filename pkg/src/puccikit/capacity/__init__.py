"""Riesz kernels, equilibrium measures and potential-theoretic bounds."""

from .equilibrium import (
    EquilibriumResult,
    capacity_from_value,
    energy_matrix,
    equilibrium_measure,
    inner_capacity,
    outer_capacity,
    refinement_values,
)
from .kernels import KernelParams, KernelSingularity, kernel_value
from .measures import DiscreteMeasure, SetSpec, uniform_measure
from .potentials import (
    FSigmaPotential,
    per_atom_bound_check,
    potential,
    potential_gradient,
    potential_hessian,
    potential_supersolution_residual,
    rho_and_K,
    supersolution_residual_many,
)

__all__ = [
    "DiscreteMeasure",
    "EquilibriumResult",
    "FSigmaPotential",
    "KernelParams",
    "KernelSingularity",
    "SetSpec",
    "capacity_from_value",
    "energy_matrix",
    "equilibrium_measure",
    "inner_capacity",
    "kernel_value",
    "outer_capacity",
    "per_atom_bound_check",
    "potential",
    "potential_gradient",
    "potential_hessian",
    "potential_supersolution_residual",
    "refinement_values",
    "rho_and_K",
    "supersolution_residual_many",
    "uniform_measure",
]
