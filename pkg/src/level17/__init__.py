"""Level 17 modular functions, their modular equations, and series for 1/pi."""

from .catalog import IdentityReport, ModularCatalog, build, verify_identity, verify_ode
from .modeq import BivarPoly, derive_psi2, diagonal, psi, verify_psi
from .pi_series import PiSeriesSpec, compute_BC, eval_series, verify_corollary53
from .recurrence import gen_A, radius, solve_A_by_composition
from .series import QSeries, pochhammer_block, rescale, sqrt, theta_q_log
from .singular import BQForm, certify_value, class_scan, eval_x, reduce_form, tau_of, verify_table2
from .surd import QuadSurd

__all__ = [
    "QSeries", "pochhammer_block", "theta_q_log", "sqrt", "rescale",
    "ModularCatalog", "IdentityReport", "build", "verify_identity", "verify_ode",
    "gen_A", "solve_A_by_composition", "radius",
    "BivarPoly", "psi", "verify_psi", "derive_psi2", "diagonal",
    "QuadSurd", "BQForm", "tau_of", "eval_x", "certify_value", "verify_table2", "reduce_form", "class_scan",
    "PiSeriesSpec", "compute_BC", "eval_series", "verify_corollary53",
]
