"""Structural invariant checks shared by the acceptance tests."""

from __future__ import annotations

from sddwca.geometry import is_dominating_set
from sddwca.protocol import Role

_ENERGY_SLACK = 1e-12


def check_formation_state(sim) -> None:
    """Invariants that must hold the moment formation completes.

    Membership and domination are checked against the topology snapshot of
    the round each node joined in, which is the graph its join decision was
    actually made on; in a static world all these snapshots coincide.
    """
    alive = [n for n in sim.nodes.values() if n.alive]
    snap_election = sim.formation_snapshots["election"]
    snap_adjust = sim.formation_snapshots.get("adjustment", snap_election)
    snap_of_round = {sim.election_round: snap_election, sim.announce_round: snap_adjust}

    for node in alive:
        assert node.role in (Role.CLUSTER_HEAD, Role.MEMBER), (
            f"node {node.id} left in role {node.role} after formation"
        )

    heads = sorted(sim.initial_ch_ids)
    for i, u in enumerate(heads):
        for v in heads[i + 1 :]:
            if u in snap_election.positions and v in snap_election.positions:
                assert v not in snap_election.neighbors(u), (
                    f"initial heads {u} and {v} are adjacent"
                )

    for node in alive:
        if node.role is Role.MEMBER:
            assert node.ch_id is not None
            snap = snap_of_round.get(sim.join_snapshot_round.get(node.id), snap_election)
            assert node.ch_id in snap.neighbors(node.id), (
                f"member {node.id} joined head {node.ch_id} outside its range"
            )

    # Adjusted heads arose precisely because no initial head covered them.
    for u in sim.adjusted_clusters:
        if u in snap_election.positions:
            assert not (snap_election.neighbors(u) & sim.initial_ch_ids), (
                f"adjusted head {u} had an initial head in range"
            )


def check_static_final(sim) -> None:
    """Extra end-of-run checks valid when nothing moves after formation."""
    alive = [n for n in sim.nodes.values() if n.alive]
    heads = {n.id for n in alive if n.role is Role.CLUSTER_HEAD}
    assert is_dominating_set(sim.snapshot, heads)
    for node in alive:
        if node.role is Role.MEMBER:
            assert node.ch_id in sim.in_range[node.id]
            assert sim.nodes[node.ch_id].role is Role.CLUSTER_HEAD


def make_invariant_hook():
    """Round hook asserting energy monotonicity, role sanity and the
    formation-time structure; usable on any scenario without arrivals."""
    watermarks: dict[int, float] = {}

    def hook(sim, rnd: int) -> None:
        for nid, node in sim.nodes.items():
            residual = node.energy.residual
            if nid in watermarks:
                assert residual <= watermarks[nid] + _ENERGY_SLACK, (
                    f"node {nid} regained energy in round {rnd}"
                )
            watermarks[nid] = residual
        if rnd == sim.formation_end:
            check_formation_state(sim)
        if rnd > sim.formation_end:
            for node in sim.nodes.values():
                if node.alive and node.arrival_round == 0:
                    assert node.role is not Role.UNKNOWN, (
                        f"node {node.id} reverted to unknown in round {rnd}"
                    )

    return hook
