#!/usr/bin/env python3
"""Tour of the geometric toolkit: bands, degrees, hop distances, domination.

Places a handful of nodes on a small terrain and shows how each neighbor of
a node is banded by distance, how the banded degrees add up, and what the
hop-distance machinery says about the layout.
"""

import numpy as np

from sddwca import (
    Position,
    TopologySnapshot,
    classify_neighbor,
    degree_vector,
    hop_distance,
    is_dominating_set,
    neighbor_partition,
    radius_diameter,
)

RANGE = 100.0


def main():
    print("Band edges for a transmission range of", RANGE)
    for d in (25, 50, 62, 75, 88, 100, 101):
        print(f"  distance {d:5.1f} m -> {classify_neighbor(d, RANGE).value}")

    rng = np.random.default_rng(7)
    positions = {
        i: Position(float(rng.uniform(0, 260)), float(rng.uniform(0, 260)))
        for i in range(9)
    }
    snap = TopologySnapshot(positions, RANGE)

    print("\nPer-node banded degrees (strong/medium/weak = total):")
    for nid in snap.ids:
        vec = degree_vector(snap, nid)
        strong, medium, weak = neighbor_partition(snap, nid)
        print(
            f"  node {nid}: {vec.strong}/{vec.medium}/{vec.weak} = {vec.total}"
            f"   strong set {sorted(strong)}"
        )

    print("\nHop distances from node 0:")
    for nid in snap.ids[1:]:
        d = hop_distance(snap, 0, nid)
        print(f"  0 -> {nid}: {'unreachable' if d is None else d}")

    rd = radius_diameter(snap)
    if rd is None:
        print("\nLayout is disconnected; radius/diameter undefined.")
    else:
        print(f"\nradius {rd[0]}, diameter {rd[1]}")

    # The set of all nodes trivially dominates; try trimming it greedily.
    chosen = set(snap.ids)
    for nid in sorted(snap.ids, key=lambda u: len(snap.neighbors(u))):
        if is_dominating_set(snap, chosen - {nid}):
            chosen.discard(nid)
    print(f"a dominating set found greedily: {sorted(chosen)}")


if __name__ == "__main__":
    main()
