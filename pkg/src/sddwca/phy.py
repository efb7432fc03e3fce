"""Received-signal-strength model, relative mobility ratios, per-node energy book."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# Two co-located nodes would see an infinite signal; clamp the distance instead.
MIN_DISTANCE = 0.1

# Summed float message costs never land exactly on the initial energy, so
# depletion is detected with a small slack.
_DEPLETION_EPS = 1e-9


@dataclass
class PhyModel:
    """Power-law signal model: strength = reference_power / distance**exponent.

    With noise_sigma > 0 a multiplicative log-normal factor is applied, which
    requires an rng; the default is noiseless and fully deterministic.
    """

    reference_power: float = 1.0
    path_loss_exponent: float = 2.0
    noise_sigma: float = 0.0

    def __post_init__(self):
        if self.reference_power <= 0:
            raise ValueError(f"reference_power must be positive, got {self.reference_power}")
        if self.path_loss_exponent <= 0:
            raise ValueError(f"path_loss_exponent must be positive, got {self.path_loss_exponent}")


def received_strength(
    model: PhyModel, distance: float, rng: Optional[np.random.Generator] = None
) -> float:
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance}")
    d = max(distance, MIN_DISTANCE)
    strength = model.reference_power / d**model.path_loss_exponent
    if model.noise_sigma > 0:
        if rng is None:
            raise ValueError("noise enabled but no rng supplied")
        strength *= math.exp(rng.normal(0.0, model.noise_sigma))
    return strength


@dataclass(frozen=True)
class RssPair:
    """Two successive signal strengths heard from one neighbor.

    `consecutive` is False when the two samples did not come from
    back-to-back broadcasts; such pairs are excluded from weighting.
    """

    first: float
    second: float
    consecutive: bool = True


def relative_mobility(pair: RssPair) -> float:
    """Ratio of the earlier to the later strength.

    Below 1 the pair is approaching, above 1 receding, exactly 1 means no
    relative motion. Pairs flagged non-consecutive are rejected.
    """
    if not pair.consecutive:
        raise ValueError("pair excluded: samples are not from successive broadcasts")
    if pair.first <= 0 or pair.second <= 0:
        raise ValueError(f"signal strengths must be positive, got {pair.first}, {pair.second}")
    return pair.first / pair.second


@dataclass
class EnergyBook:
    """Battery ledger for one node: consumption only ever grows.

    A node whose residual reaches zero is depleted; the transmission that
    empties the book still goes out, but nothing is received afterwards.
    """

    initial: float
    tx_cost: float
    rx_cost: float
    threshold: float
    consumed: float = 0.0

    def __post_init__(self):
        if self.initial < 0 or self.tx_cost < 0 or self.rx_cost < 0:
            raise ValueError("energy quantities must be non-negative")

    @property
    def residual(self) -> float:
        return self.initial - self.consumed

    @property
    def depleted(self) -> bool:
        return self.residual <= 0.0

    def debit(self, kind: str) -> bool:
        """Charge one message in the given direction ("tx" or "rx").

        Returns True while the node still has energy left afterwards.
        """
        if kind == "tx":
            cost = self.tx_cost
        elif kind == "rx":
            cost = self.rx_cost
        else:
            raise ValueError(f"unknown debit kind {kind!r}")
        self.consumed += cost
        if self.initial - self.consumed <= _DEPLETION_EPS:
            self.consumed = self.initial
        return not self.depleted
