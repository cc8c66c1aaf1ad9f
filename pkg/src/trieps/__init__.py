"""Exceptional-point structure of a ternary gain/loss coupled-cavity system.

Computes eigenvalue branches of the three-mode non-Hermitian model under
pseudo-Hermiticity constraints, classifies spectral degeneracies (EP2/EP3),
and traces third-order exceptional lines and the exceptional surface in
coupling space.
"""

from .errors import (InfeasibleError, NoRootError, NonConvergenceError,
                     PreconditionError, TriepsError, UnknownAxisError,
                     ValidationError)
from .exceptional import (ExceptionalPoint, ManifoldMesh, MeshPoint,
                          el3_axis_intercept, el3_footprint, el3_general,
                          el3_pt, ep3_residuals, es3_scan, find_ep_along_axis,
                          lambda_ep3, pt_el3_delta1, pt_el3_g23)
from .model import (ComplexMatrix3, SystemParams, build_matrix, detunings,
                    normalize)
from .pseudoherm import (ConstraintMode, ConstraintResiduals,
                         ConstraintSolution, constrain, embed_solution,
                         is_pseudo_hermitian, ph_residuals, pt_specialize,
                         solve_constraints, spectral_symmetry_check)
from .spectrum import (CubicCoeffs, DiscriminantSet, EigenTriple,
                       SpectralClass, SweepRow, char_poly_general,
                       cubic_coeffs_reduced, discriminants, eigensolve_oracle,
                       solve_cubic, solve_cubic_complex, spectrum_sweep,
                       with_axis_value)

__version__ = "0.1.0"

__all__ = [
    "ComplexMatrix3", "ConstraintMode", "ConstraintResiduals",
    "ConstraintSolution", "CubicCoeffs", "DiscriminantSet", "EigenTriple",
    "ExceptionalPoint", "InfeasibleError", "ManifoldMesh", "MeshPoint",
    "NoRootError", "NonConvergenceError", "PreconditionError",
    "SpectralClass", "SweepRow", "SystemParams", "TriepsError",
    "UnknownAxisError", "ValidationError", "build_matrix",
    "char_poly_general", "constrain", "cubic_coeffs_reduced", "detunings",
    "discriminants", "eigensolve_oracle", "el3_axis_intercept",
    "el3_footprint", "el3_general", "el3_pt", "embed_solution",
    "ep3_residuals", "es3_scan", "find_ep_along_axis", "is_pseudo_hermitian",
    "lambda_ep3", "normalize", "ph_residuals", "pt_el3_delta1", "pt_el3_g23",
    "pt_specialize", "solve_constraints", "solve_cubic",
    "solve_cubic_complex", "spectral_symmetry_check", "spectrum_sweep",
    "with_axis_value",
]
