"""Exact symbolic algebra of differential, integral and pseudo-forms on R^(m|n)."""

from .algebra import FormExpr, bidegree, delta, delta_series, dtheta, dx, normalize, one, theta, wedge
from .calculus import VectorField, apply_field, contract, d, graded_bracket, lie_derivative
from .charts import ChartMap, berezinian_reduced, compose, delta_transform, pullback
from .domain import SuperDomain

__all__ = [
    "ChartMap", "FormExpr", "SuperDomain", "VectorField", "apply_field", "berezinian_reduced",
    "bidegree", "compose", "contract", "d", "delta", "delta_series", "delta_transform", "dtheta",
    "dx", "graded_bracket", "lie_derivative", "normalize", "one", "pullback", "theta", "wedge",
]
