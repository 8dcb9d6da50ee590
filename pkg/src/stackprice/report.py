"""Solver results shared by all algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core.exact import ExactNumber, format_number
from .core.model import Instance, PriceAssignment
from .followers import Response, best_response


@dataclass(frozen=True)
class SolveReport:
    algorithm: str
    prices: dict[str, ExactNumber]
    revenue: Fraction
    per_follower: tuple[Response, ...]
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "prices": {k: format_number(v) for k, v in sorted(self.prices.items())},
            "revenue": format_number(self.revenue),
            "per_follower": [
                {"chosen": sorted(r.chosen), "weight": format_number(r.weight), "revenue": format_number(r.revenue)}
                for r in self.per_follower
            ],
            "diagnostics": {k: _jsonable(v) for k, v in self.diagnostics.items()},
        }


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    try:
        return format_number(v)
    except (TypeError, ValueError):
        return str(v)


def evaluate_prices(inst: Instance, prices: PriceAssignment) -> tuple[Fraction, tuple[Response, ...]]:
    """Leader revenue sum_j d_j r(S*_j(p)) and each follower's response."""
    responses = tuple(best_response(inst, j, prices) for j in range(inst.k))
    revenue = sum((f.demand * r.revenue for f, r in zip(inst.followers, responses)), Fraction(0))
    return revenue, responses
