#!/usr/bin/env python3
"""Cluster formation, round by round, on a 12-node static layout.

Shows the whole election pipeline: hello warm-up filling neighbor tables,
the weight broadcast, local-maximum head election, members attaching to the
strongest head in earshot, and the adjustment pass that groups whatever the
election left uncovered.
"""

import numpy as np

from sddwca import Role, ScenarioConfig, Simulation

STAGES = {
    "weight broadcast": "every node announces its weight",
    "election": "local weight maxima declare themselves heads",
    "announcements": "members announce their head; leftovers get adjusted",
    "adjustment announcements": "heads and members from the adjustment speak up",
}


def main():
    rng = np.random.default_rng(3)
    positions = [(float(rng.uniform(0, 280)), float(rng.uniform(0, 280))) for _ in range(12)]
    cfg = ScenarioConfig(
        n=12, terrain=(280.0, 280.0), vmax=0.0, range_m=100.0, sim_time=8,
        positions=positions,
    )
    sim = Simulation(cfg)
    stage_names = dict(
        zip(
            range(sim.weight_round, sim.formation_end + 1),
            STAGES.items(),
        )
    )
    for _ in range(cfg.sim_time):
        sim.run_round()
        rnd = sim.clock.round
        broadcasts = [r for r in sim.trace.records if r.round == rnd and r.event != "hello"]
        if rnd < sim.weight_round:
            print(f"round {rnd}: hello warm-up")
            continue
        if rnd in stage_names:
            name, blurb = stage_names[rnd]
            print(f"round {rnd}: {name} ({blurb})")
        else:
            print(f"round {rnd}: maintenance watch")
        for rec in broadcasts:
            print(f"    node {rec.node:2d}  {rec.event}  {rec.detail}")

    print("\nfinal clusters:")
    for node in sim.nodes.values():
        if node.role is Role.CLUSTER_HEAD:
            tag = "adjusted" if node.id in sim.adjusted_clusters else "elected"
            print(
                f"  head {node.id:2d} ({tag}, w={node.weight:.2f}) "
                f"members {sorted(node.members)}"
            )
    print(f"criticals before adjustment: {sorted(sim.critical_ids)}")
    print(f"outcome: {sim.outcome.value}")


if __name__ == "__main__":
    main()
