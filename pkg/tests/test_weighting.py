"""Mobility dispersion and node weight arithmetic."""

import math

import numpy as np
import pytest

from sddwca.weighting import WeightParams, mobility_metric, node_weight

THIRDS = WeightParams()


def test_metric_all_stationary():
    assert mobility_metric([1.0]) == 0.0
    assert mobility_metric([1.0, 1.0, 1.0]) == 0.0


def test_metric_hand_computed_cases():
    # sqrt((0.25 + 0.25) / 2)
    assert mobility_metric([0.5, 1.5]) == pytest.approx(0.5)
    # sqrt((0 + 0 + 0 + 4) / 4)
    assert mobility_metric([1.0, 1.0, 1.0, 3.0]) == pytest.approx(1.0)


def test_metric_empty_is_undefined():
    assert mobility_metric([]) is None


def test_metric_custom_denominator():
    # Two ratios but a neighborhood of four: excluded neighbors kept in the
    # divisor shrink the dispersion.
    included = mobility_metric([0.5, 1.5])
    literal = mobility_metric([0.5, 1.5], denominator=4)
    assert literal == pytest.approx(included / math.sqrt(2))


def test_weight_hand_computed():
    # (1/3)*3 + (1/3)*(1/0.5) + (1/3)*100
    assert node_weight(3, 0.5, 100.0, THIRDS) == pytest.approx(35.0)


def test_weight_floor_case():
    assert node_weight(0, None, 0.0, THIRDS) == pytest.approx(10.0 / 3.0)
    assert node_weight(0, 0.0, 0.0, THIRDS) == pytest.approx(10.0 / 3.0)


def test_weight_cap_engages_for_tiny_mobility():
    w_tiny = node_weight(0, 1e-9, 0.0, THIRDS)
    w_zero = node_weight(0, 0.0, 0.0, THIRDS)
    assert math.isfinite(w_tiny)
    assert w_tiny == w_zero


def test_weight_monotone_in_strong_degree():
    a = node_weight(5, 0.8, 50.0, THIRDS)
    b = node_weight(3, 0.8, 50.0, THIRDS)
    assert a > b


def test_weight_monotonicity_randomized():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        degree = int(rng.integers(0, 20))
        mobility = float(rng.uniform(0.05, 5.0))
        energy = float(rng.uniform(0, 100))
        base = node_weight(degree, mobility, energy, THIRDS)
        assert node_weight(degree + 1, mobility, energy, THIRDS) >= base
        assert node_weight(degree, mobility, energy + 1.0, THIRDS) >= base
        assert node_weight(degree, mobility * 1.5, energy, THIRDS) <= base


def test_weight_rejects_negative_inputs():
    with pytest.raises(ValueError):
        node_weight(-1, 0.5, 10.0, THIRDS)
    with pytest.raises(ValueError):
        node_weight(1, 0.5, -10.0, THIRDS)


def test_params_validation():
    with pytest.raises(ValueError):
        WeightParams(alpha_degree=0.5, alpha_mobility=0.5, alpha_energy=0.5)
    with pytest.raises(ValueError):
        WeightParams(inv_mobility_cap=0.0)
    with pytest.raises(ValueError):
        WeightParams(denominator_mode="nope")
    custom = WeightParams(alpha_degree=0.7, alpha_mobility=0.2, alpha_energy=0.1)
    assert node_weight(10, None, 0.0, custom) == pytest.approx(0.7 * 10 + 0.2 * 10.0)
