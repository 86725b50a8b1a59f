"""Cubic Fermat equation over quadratic fields via ternary theta series.

The main entry points are :func:`decide` (the representation-count criterion),
:func:`central_value` (numerical ``L(E_d, 1)``) and :func:`burnside_search`
(explicit solutions).
"""

__version__ = "0.1.0"

from .arith import QuadChar, chi, factor, kronecker, squarefree_part
from .criterion import Status, Verdict, classify_range, cross_check, decide, normalize
from .curve import FermatSolution, QuadFieldElem, burnside_search, torsion_order, verify_solution
from .lfunction import LReport, central_value, root_number
from .qseries import QSeries, build_F
from .theta import FORMS, Q1, Q2, Q3, Q4, TernaryForm, batch_counts, count_reps, theta_series

__all__ = [
    "FORMS", "FermatSolution", "LReport", "Q1", "Q2", "Q3", "Q4", "QSeries", "QuadChar",
    "QuadFieldElem", "Status", "TernaryForm", "Verdict", "batch_counts", "build_F",
    "burnside_search", "central_value", "chi", "classify_range", "count_reps", "cross_check",
    "decide", "factor", "kronecker", "normalize", "root_number", "squarefree_part",
    "theta_series", "torsion_order", "verify_solution",
]
