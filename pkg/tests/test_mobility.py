"""Random waypoint motion: determinism, bounds, kinematics."""

import math

import numpy as np
import pytest

from sddwca.geometry import Position
from sddwca.mobility import WaypointState, advance, init_positions, init_waypoint

TERRAIN = (750.0, 750.0)


def test_init_positions_deterministic():
    a = init_positions(1, TERRAIN, np.random.default_rng(42))
    b = init_positions(1, TERRAIN, np.random.default_rng(42))
    assert a == b
    assert 0 <= a[0].x <= 750 and 0 <= a[0].y <= 750


def test_init_positions_in_bounds():
    positions = init_positions(200, TERRAIN, np.random.default_rng(1))
    assert len(positions) == 200
    for p in positions:
        assert 0 <= p.x <= 750 and 0 <= p.y <= 750


def test_init_positions_rejects_zero_nodes():
    with pytest.raises(ValueError):
        init_positions(0, TERRAIN, np.random.default_rng(1))


def test_init_positions_quadrant_balance():
    # 10000 draws should land close to uniformly in the four quadrants.
    positions = init_positions(10000, TERRAIN, np.random.default_rng(123))
    counts = [0, 0, 0, 0]
    for p in positions:
        counts[(p.x >= 375) + 2 * (p.y >= 375)] += 1
    for c in counts:
        assert abs(c - 2500) <= 125  # within 5%


def test_advance_straight_line_kinematics():
    state = WaypointState(
        current=Position(0, 0), target=Position(100, 0), speed=10.0, pause_left=0.0
    )
    rng = np.random.default_rng(0)
    moved = advance(state, 1.0, TERRAIN, 0.1, 10.0, 30.0, rng)
    assert moved.current == Position(10.0, 0.0)
    assert moved.target == state.target


def test_advance_pause_countdown():
    state = WaypointState(
        current=Position(50, 50), target=Position(50, 50), speed=5.0, pause_left=30.0
    )
    moved = advance(state, 1.0, TERRAIN, 0.1, 10.0, 30.0, np.random.default_rng(0))
    assert moved.pause_left == 29.0
    assert moved.current == state.current


def test_advance_arrival_starts_pause():
    state = WaypointState(
        current=Position(95, 0), target=Position(100, 0), speed=10.0, pause_left=0.0
    )
    moved = advance(state, 1.0, TERRAIN, 0.1, 10.0, 30.0, np.random.default_rng(0))
    assert moved.current == Position(100.0, 0.0)
    assert moved.pause_left == 30.0


def test_long_trace_stays_in_bounds_and_bounded_speed():
    rng = np.random.default_rng(77)
    vmax = 20.0
    state = init_waypoint(Position(10, 10), TERRAIN, 0.1, vmax, rng)
    prev = state.current
    for _ in range(1000):
        state = advance(state, 1.0, TERRAIN, 0.1, vmax, 5.0, rng)
        assert 0 <= state.current.x <= 750 and 0 <= state.current.y <= 750
        displacement = math.hypot(state.current.x - prev.x, state.current.y - prev.y)
        assert displacement <= vmax * 1.0 + 1e-9
        assert 0.1 <= state.speed <= vmax or state.speed == 0.0
        prev = state.current


def test_stationary_when_vmax_zero():
    rng = np.random.default_rng(5)
    state = init_waypoint(Position(100, 200), TERRAIN, 0.1, 0.0, rng)
    for _ in range(50):
        state = advance(state, 1.0, TERRAIN, 0.1, 0.0, 30.0, rng)
        assert state.current == Position(100, 200)


def test_trajectories_deterministic_per_seed():
    def trajectory(seed):
        rng = np.random.default_rng(seed)
        state = init_waypoint(Position(0, 0), TERRAIN, 0.1, 15.0, rng)
        points = []
        for _ in range(200):
            state = advance(state, 1.0, TERRAIN, 0.1, 15.0, 10.0, rng)
            points.append(state.current)
        return points

    assert trajectory(9) == trajectory(9)
    assert trajectory(9) != trajectory(10)


def test_advance_rejects_nonpositive_dt():
    state = init_waypoint(Position(0, 0), TERRAIN, 0.1, 5.0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        advance(state, 0.0, TERRAIN, 0.1, 5.0, 30.0, np.random.default_rng(0))
