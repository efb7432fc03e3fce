"""Mobility dispersion and the three-part node weight."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass
class WeightParams:
    """Weighing factors for the three election criteria plus the 1/M cap.

    The factors weigh strong degree, mobility and residual energy and must
    sum to one. A perfectly stationary neighborhood has zero mobility
    dispersion, whose reciprocal is capped so that it cannot drown the other
    two criteria.
    """

    alpha_degree: float = 1.0 / 3.0
    alpha_mobility: float = 1.0 / 3.0
    alpha_energy: float = 1.0 / 3.0
    inv_mobility_cap: float = 10.0
    denominator_mode: str = "included"  # or "deg"

    def __post_init__(self):
        if min(self.alpha_degree, self.alpha_mobility, self.alpha_energy) < 0:
            raise ValueError("weighing factors must be non-negative")
        total = self.alpha_degree + self.alpha_mobility + self.alpha_energy
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weighing factors must sum to 1, got {total}")
        if self.inv_mobility_cap <= 0:
            raise ValueError("inv_mobility_cap must be positive")
        if self.denominator_mode not in ("included", "deg"):
            raise ValueError(f"unknown denominator_mode {self.denominator_mode!r}")


def mobility_metric(
    ratios: Sequence[float], denominator: Optional[int] = None
) -> Optional[float]:
    """Root mean square deviation of the relative-mobility ratios from 1.

    By default the divisor is the number of contributing ratios; a caller
    may pass the full neighbor degree instead to keep excluded neighbors in
    the denominator. Returns None when there are no ratios at all, which
    downstream treats like a perfectly stationary neighborhood.
    """
    if not ratios:
        return None
    denom = denominator if denominator is not None else len(ratios)
    if denom < 1:
        raise ValueError(f"denominator must be at least 1, got {denom}")
    return math.sqrt(sum((r - 1.0) ** 2 for r in ratios) / denom)


def node_weight(
    strong_degree: int,
    mobility: Optional[float],
    residual_energy: float,
    params: WeightParams,
) -> float:
    """Combine strong degree, inverse mobility and residual energy.

    A missing or zero mobility value engages the cap, so stationary nodes
    get a large but finite mobility credit.
    """
    if strong_degree < 0:
        raise ValueError(f"strong_degree must be non-negative, got {strong_degree}")
    if residual_energy < 0:
        raise ValueError(f"residual_energy must be non-negative, got {residual_energy}")
    if mobility is None or mobility <= 0:
        inv_term = params.inv_mobility_cap
    else:
        inv_term = min(1.0 / mobility, params.inv_mobility_cap)
    return (
        params.alpha_degree * strong_degree
        + params.alpha_mobility * inv_term
        + params.alpha_energy * residual_energy
    )
