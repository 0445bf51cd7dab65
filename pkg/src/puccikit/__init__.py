"""Degenerate Pucci operators of order p, at desk scale.

Weighted partial sums of Hessian eigenvalues, their subspace restrictions
and representation oracles; closed-form radial maximum-principle checks;
Riesz capacity via equilibrium measures; and a monotone wide-stencil
finite-difference solver for the 2-D extremal equation.
"""

from ._backend import BACKEND
from .linalg import InputError, Spectrum, SymMat, eigen_sorted
from .operators import (
    Ellipticity,
    Frame,
    check_inclusions,
    grassmannian_inf_estimate,
    grassmannian_sup_estimate,
    linear_functional,
    maximizing_frame,
    nonuniform_ellipticity_witness,
    pos_neg_parts,
    project_subspace,
    pucci_minus_W,
    pucci_minus_p,
    pucci_plus_W,
    pucci_plus_p,
    sample_frame,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Ellipticity",
    "Frame",
    "InputError",
    "Spectrum",
    "SymMat",
    "check_inclusions",
    "eigen_sorted",
    "grassmannian_inf_estimate",
    "grassmannian_sup_estimate",
    "linear_functional",
    "maximizing_frame",
    "nonuniform_ellipticity_witness",
    "pos_neg_parts",
    "project_subspace",
    "pucci_minus_W",
    "pucci_minus_p",
    "pucci_plus_W",
    "pucci_plus_p",
    "sample_frame",
]
