"""Instance validation: every follower needs an all-fixed fallback."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import InfeasibleFollowerError, Instance, UnsupportedError


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    baselines: tuple[Fraction, ...]
    failed_follower: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(inst: Instance) -> ValidationReport:
    """Check that each follower can be served without any priceable item.

    On success ``baselines[i]`` is follower i's fallback cost c_0.
    """
    from ..followers import baseline_cost

    baselines = []
    for i in range(inst.k):
        try:
            baselines.append(baseline_cost(inst, i))
        except (InfeasibleFollowerError, UnsupportedError) as exc:
            return ValidationReport(False, tuple(baselines), i, str(exc))
    return ValidationReport(True, tuple(baselines))
