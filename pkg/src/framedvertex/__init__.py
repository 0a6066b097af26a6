"""Exact bracket tables for the framed vertex.

The package generates the descendant bracket tables attached to the
framed mirror curve x = y^f (1 - y) by a spectral-curve recursion in
polynomial form, entirely over exact rational functions of the framing
parameter f, and verifies the result against an independent
differential-recursive identity (the symmetrized cut-and-join equation).
"""

from .curve import CurveSeries, build_curve_series
from .curvefun import (EtaFamily, PhiDecomposition, PhiTower,
                       build_eta_family, build_phi_tower, euler_field,
                       phi_prime_decompose, phi_prime_decompose_pair,
                       plus_part)
from .cutjoin import (CutJoinReport, CutJoinVerifier, cutjoin_lhs, cutjoin_T1,
                      cutjoin_T2_T3, cutjoin_T4, psi_oracle, verify_cutjoin)
from .engine import (BracketTable, assemble_H, budget_cells, recursion_step,
                     run_to_budget, seed_initial_data, support_bound)
from .kernels import (KernelWorkspace, kernel_I, kernel_I_via_involution,
                      kernel_II, kernel_II_symmetrized)
from .ratfunc import FPolynomial, FRational, Rational
from .tpoly import TPolynomial, exact_divide_difference
from .vseries import (VSeries, compose_polynomial, exp_of, log_unit, revert,
                      sqrt_unit)

__version__ = "0.1.0"

__all__ = [
    "BracketTable", "CurveSeries", "CutJoinReport", "CutJoinVerifier",
    "EtaFamily", "FPolynomial", "FRational", "KernelWorkspace",
    "PhiDecomposition", "PhiTower", "Rational", "TPolynomial", "VSeries",
    "assemble_H", "budget_cells", "build_curve_series", "build_eta_family",
    "build_phi_tower", "compose_polynomial", "cutjoin_T1", "cutjoin_T2_T3",
    "cutjoin_T4", "cutjoin_lhs", "euler_field", "exact_divide_difference",
    "exp_of", "kernel_I", "kernel_I_via_involution", "kernel_II",
    "kernel_II_symmetrized", "log_unit", "phi_prime_decompose",
    "phi_prime_decompose_pair", "plus_part", "psi_oracle", "revert",
    "recursion_step", "run_to_budget", "seed_initial_data", "sqrt_unit",
    "support_bound", "verify_cutjoin",
]
