"""Exact q-series toolkit for odd-rank congruences of odd Durfee symbols modulo powers of 5."""

from .errors import (
    BudgetError, CoverageError, DegeneratePrecisionError, DivergenceError, FractionalPowerError,
    IntegrityError, LevelError, NonInvertibleError, OddRankError, PoleError, ZeroFactorError,
)
from .series import QSeries
from .products import (
    EtaQuotient, ProductSpec, bracket_expand, check_modularity, cusp_orders, eta_quotient_expand,
    normalize_bracket, pochhammer_expand,
)
from .lambert import LambertSpec, lambert_expand, residue_split
from .durfee import enumerate_ranks, n0, rank_diff_series
from .uops import TRhoExpr, u5, u_ij
from .expr import evaluate

__version__ = "0.1.0"
