"""Exact computation and verification of the shuffle formula for nabla e_n.

Modules, from the bottom up:

* :mod:`qtnabla.ring`: Laurent polynomials and rational functions in q, t, u.
* :mod:`qtnabla.shapes`: partitions, skew shapes, tableaux and standardization.
* :mod:`qtnabla.symfun`: symmetric functions, plethysm, quasisymmetric assembly.
* :mod:`qtnabla.macdonald`: modified Macdonald polynomials, nabla, Delta, E_{n,k}.
* :mod:`qtnabla.shuffle`: dinv, area, D_n, parking functions, Catalan and Schroder sums.
* :mod:`qtnabla.llt`: cores, quotients, ribbon tableaux, spin and LLT polynomials.
* :mod:`qtnabla.verify`: named identity checks returning exact results.
* :mod:`qtnabla.cli`: the ``qtnabla`` command.
"""

from .llt import d_to_llt, llt_poly, n_core, n_quotient, quot_inverse, ribbon_tableaux, spin, tuple_inv
from .macdonald import delta_op, e_nk, expand_in_macdonald, modified_macdonald, nabla_power
from .ring import QtPoly, QtRat, q, q_binomial, q_multinomial, q_pochhammer, t, u
from .shapes import Filling, SkewShape, conjugate, enumerate_fillings, flag_strip, standardize, sub_staircase_iter
from .shuffle import (
    ParkingFunction,
    area,
    compute_D,
    d_component,
    dinv,
    fermionic_H,
    nabla_enk_rhs,
    qt_catalan,
    reduced_dinv,
    schroder_enum,
    super_D_coeff,
)
from .symfun import Alphabet, SymFunc, e, h, m, p, plethysm_eval, s, superize_coeffs
from .verify import CheckResult, check_main_conjecture, run_suite

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "CheckResult", "Filling", "ParkingFunction", "QtPoly", "QtRat", "SkewShape", "SymFunc",
    "area", "check_main_conjecture", "compute_D", "conjugate", "d_component", "d_to_llt", "delta_op",
    "dinv", "e", "e_nk", "enumerate_fillings", "expand_in_macdonald", "fermionic_H", "flag_strip", "h",
    "llt_poly", "m", "modified_macdonald", "n_core", "n_quotient", "nabla_enk_rhs", "nabla_power", "p",
    "plethysm_eval", "q", "q_binomial", "q_multinomial", "q_pochhammer", "qt_catalan", "quot_inverse",
    "reduced_dinv", "ribbon_tableaux", "run_suite", "s", "schroder_enum", "spin", "standardize",
    "sub_staircase_iter", "super_D_coeff", "superize_coeffs", "t", "tuple_inv", "u",
]
