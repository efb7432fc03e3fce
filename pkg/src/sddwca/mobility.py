"""Random waypoint motion on a rectangular terrain."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .geometry import Position


@dataclass
class WaypointState:
    current: Position
    target: Position
    speed: float
    pause_left: float


def init_positions(
    n: int, terrain: tuple[float, float], rng: np.random.Generator
) -> list[Position]:
    """Draw n independent uniform positions on the terrain."""
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    width, height = terrain
    if width <= 0 or height <= 0:
        raise ValueError(f"terrain sides must be positive, got {terrain}")
    xs = rng.uniform(0.0, width, size=n)
    ys = rng.uniform(0.0, height, size=n)
    return [Position(float(x), float(y)) for x, y in zip(xs, ys)]


def _draw_target(terrain: tuple[float, float], rng: np.random.Generator) -> Position:
    return Position(float(rng.uniform(0.0, terrain[0])), float(rng.uniform(0.0, terrain[1])))


def _draw_speed(vmin: float, vmax: float, rng: np.random.Generator) -> float:
    return float(rng.uniform(vmin, vmax))


def init_waypoint(
    position: Position,
    terrain: tuple[float, float],
    vmin: float,
    vmax: float,
    rng: np.random.Generator,
) -> WaypointState:
    """Start a node at `position` already heading toward a fresh waypoint."""
    if vmax <= 0:
        return WaypointState(current=position, target=position, speed=0.0, pause_left=0.0)
    return WaypointState(
        current=position,
        target=_draw_target(terrain, rng),
        speed=_draw_speed(vmin, vmax, rng),
        pause_left=0.0,
    )


def advance(
    state: WaypointState,
    dt: float,
    terrain: tuple[float, float],
    vmin: float,
    vmax: float,
    pause_time: float,
    rng: np.random.Generator,
) -> WaypointState:
    """One motion step: walk toward the target, pause on arrival, then re-draw.

    Motion is quantized to whole steps: an arrival consumes the rest of the
    step, and a pause expiring mid-step holds the node in place until the
    next call. Per-step displacement therefore never exceeds speed * dt, and
    the node never leaves the terrain because targets are drawn inside it.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if vmax <= 0:
        # Stationary scenario: nothing ever moves.
        return replace(state)

    if state.pause_left > 0:
        pause_left = state.pause_left - dt
        if pause_left > 0:
            return replace(state, pause_left=pause_left)
        return WaypointState(
            current=state.current,
            target=_draw_target(terrain, rng),
            speed=_draw_speed(vmin, vmax, rng),
            pause_left=0.0,
        )

    dx = state.target.x - state.current.x
    dy = state.target.y - state.current.y
    dist = math.hypot(dx, dy)
    step = state.speed * dt
    if step >= dist:
        # Arrived: sit at the waypoint for the configured pause.
        arrived = replace(state, current=state.target, pause_left=pause_time)
        if pause_time > 0:
            return arrived
        return WaypointState(
            current=state.target,
            target=_draw_target(terrain, rng),
            speed=_draw_speed(vmin, vmax, rng),
            pause_left=0.0,
        )
    frac = step / dist
    moved = Position(state.current.x + dx * frac, state.current.y + dy * frac)
    return replace(state, current=moved)
