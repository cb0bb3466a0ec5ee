"""Exact symbolic engine for gauge fields on a trivialized principal bundle over R^m."""

from .algebra import LieAlgebra, abelian, builtin, so3
from .errors import AlgebraError, ConfigError, PolyParseError, ShapeError
from .forms import ALGEBRA, DUAL, GForm, Metric, ScalarForm
from .gauge import connection, cov_d, cov_d_star, curvature
from .poly import Poly

__version__ = "0.1.0"

__all__ = [
    "ALGEBRA", "DUAL", "AlgebraError", "ConfigError", "GForm", "LieAlgebra", "Metric",
    "Poly", "PolyParseError", "ScalarForm", "ShapeError", "abelian", "builtin",
    "connection", "cov_d", "cov_d_star", "curvature", "so3",
]
