"""Unit-disk topology snapshots and the neighbor band / degree / distance toolkit."""

from __future__ import annotations

import math
from collections import deque
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Optional

import numpy as np


class Position(NamedTuple):
    x: float
    y: float


class NeighborClass(Enum):
    STRONG = "strong"
    MEDIUM = "medium"
    WEAK = "weak"
    OUT_OF_RANGE = "out_of_range"


class DegreeVector(NamedTuple):
    strong: int
    medium: int
    weak: int
    total: int


def classify_neighbor(distance: float, range_m: float) -> NeighborClass:
    """Band a link by its length.

    Strong within half the transmission range, medium up to three quarters,
    weak up to the full range, out of range beyond it. Every band edge is
    inclusive on its upper end, so a link of exactly range_m/2 is still
    strong and a link of exactly range_m is still a (weak) neighbor.
    """
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance}")
    if range_m <= 0:
        raise ValueError(f"range must be positive, got {range_m}")
    if distance <= range_m / 2:
        return NeighborClass.STRONG
    if distance <= 0.75 * range_m:
        return NeighborClass.MEDIUM
    if distance <= range_m:
        return NeighborClass.WEAK
    return NeighborClass.OUT_OF_RANGE


class TopologySnapshot:
    """Node positions plus a uniform transmission range at one instant.

    Adjacency is recomputed eagerly from the positions: two distinct nodes
    are neighbors iff their Euclidean distance is at most the range. The
    snapshot is treated as immutable after construction.
    """

    def __init__(self, positions: Mapping[int, Position], range_m: float):
        if range_m <= 0:
            raise ValueError(f"range must be positive, got {range_m}")
        self.positions: dict[int, Position] = {
            nid: Position(float(p[0]), float(p[1])) for nid, p in positions.items()
        }
        self.range_m = float(range_m)
        self.ids: tuple[int, ...] = tuple(sorted(self.positions))
        self._adj: dict[int, frozenset[int]] = self._build_adjacency()

    def _build_adjacency(self) -> dict[int, frozenset[int]]:
        ids = self.ids
        if len(ids) <= 1:
            return {nid: frozenset() for nid in ids}
        coords = np.array([self.positions[nid] for nid in ids])
        diff = coords[:, None, :] - coords[None, :, :]
        dist = np.hypot(diff[..., 0], diff[..., 1])
        within = dist <= self.range_m
        np.fill_diagonal(within, False)
        return {
            nid: frozenset(ids[j] for j in np.nonzero(within[i])[0])
            for i, nid in enumerate(ids)
        }

    def __contains__(self, node_id: int) -> bool:
        return node_id in self.positions

    def __len__(self) -> int:
        return len(self.positions)

    def neighbors(self, u: int) -> frozenset[int]:
        if u not in self._adj:
            raise KeyError(f"unknown node id {u}")
        return self._adj[u]

    def distance(self, u: int, v: int) -> float:
        pu, pv = self.positions[u], self.positions[v]
        return math.hypot(pu.x - pv.x, pu.y - pv.y)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.ids for v in self._adj[u] if u < v]


def neighbor_partition(
    snapshot: TopologySnapshot, u: int
) -> tuple[set[int], set[int], set[int]]:
    """Split u's neighborhood into its strong, medium and weak parts.

    The three sets are pairwise disjoint and their union is exactly the
    neighbor set of u; u never appears in any of them.
    """
    if u not in snapshot:
        raise KeyError(f"unknown node id {u}")
    strong: set[int] = set()
    medium: set[int] = set()
    weak: set[int] = set()
    for v in snapshot.neighbors(u):
        klass = classify_neighbor(snapshot.distance(u, v), snapshot.range_m)
        if klass is NeighborClass.STRONG:
            strong.add(v)
        elif klass is NeighborClass.MEDIUM:
            medium.add(v)
        else:
            weak.add(v)
    return strong, medium, weak


def degree_vector(snapshot: TopologySnapshot, u: int) -> DegreeVector:
    strong, medium, weak = neighbor_partition(snapshot, u)
    return DegreeVector(len(strong), len(medium), len(weak), len(strong) + len(medium) + len(weak))


def hop_distance(snapshot: TopologySnapshot, u: int, v: int) -> Optional[int]:
    """Least number of hops between u and v, or None if unreachable."""
    if u not in snapshot or v not in snapshot:
        raise KeyError(f"unknown node id {u if u not in snapshot else v}")
    if u == v:
        return 0
    seen = {u: 0}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        for nxt in snapshot.neighbors(cur):
            if nxt not in seen:
                seen[nxt] = seen[cur] + 1
                if nxt == v:
                    return seen[nxt]
                queue.append(nxt)
    return None


def eccentricity(snapshot: TopologySnapshot, u: int) -> Optional[int]:
    """Hop distance from u to its farthest node; None when some node is unreachable."""
    if u not in snapshot:
        raise KeyError(f"unknown node id {u}")
    seen = {u: 0}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        for nxt in snapshot.neighbors(cur):
            if nxt not in seen:
                seen[nxt] = seen[cur] + 1
                queue.append(nxt)
    if len(seen) != len(snapshot):
        return None
    return max(seen.values())


def radius_diameter(snapshot: TopologySnapshot) -> Optional[tuple[int, int]]:
    """(min eccentricity, max eccentricity), or None for a disconnected snapshot."""
    eccs = []
    for u in snapshot.ids:
        e = eccentricity(snapshot, u)
        if e is None:
            return None
        eccs.append(e)
    return min(eccs), max(eccs)


def is_dominating_set(snapshot: TopologySnapshot, candidate: Iterable[int]) -> bool:
    """True iff every node is in the candidate set or adjacent to one of its members."""
    chosen = set(candidate)
    unknown = chosen - set(snapshot.positions)
    if unknown:
        raise KeyError(f"unknown node ids {sorted(unknown)}")
    for u in snapshot.ids:
        if u in chosen:
            continue
        if not snapshot.neighbors(u) & chosen:
            return False
    return True
