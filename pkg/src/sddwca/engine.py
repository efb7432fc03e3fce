"""Deterministic synchronous round scheduler binding mobility, phy and protocol.

Each round runs a fixed phase order: scripted events, mobility, adjacency
rebuild, emissions, delivery with energy debits, per-node transitions in
ascending id order, then metrics sampling. Messages queued by a transition
go out at the next round's emission phase; everything a node broadcasts in a
round is received and processed by every in-range recipient in that same
round.

Formation follows a fixed schedule measured in broadcast intervals: three
intervals of hello warm-up, then a weight broadcast round, an election
round, a membership announcement round, and a trailing round carrying the
adjustment announcements. Maintenance checks start after that.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import protocol
from .config import ScenarioConfig
from .geometry import Position, TopologySnapshot, radius_diameter
from .messages import (
    ChAck,
    ChResign,
    ClusterId,
    ClusterInfo,
    FindCh,
    Hello,
    Message,
    WeightInfo,
)
from .mobility import WaypointState, advance, init_positions, init_waypoint
from .phy import EnergyBook, received_strength
from .protocol import NodeState, Outcome, Role
from .reporting import (
    ClusterRank,
    MetricsReport,
    MetricsSampler,
    OverheadLedger,
    rank_cluster,
)

_DIAMETER_ATTEMPTS = 1000


@dataclass
class SimClock:
    round: int = 0
    seconds_per_round: float = 1.0

    @property
    def seconds(self) -> float:
        return self.round * self.seconds_per_round


@dataclass(frozen=True)
class TraceRecord:
    round: int
    node: int
    event: str
    detail: str = ""


class EventTrace:
    """Append-only run log: one record per broadcast plus state events."""

    def __init__(self):
        self.records: list[TraceRecord] = []
        self._broadcasts = 0

    def add(self, rnd: int, node: int, event: str, detail: str = "") -> None:
        self.records.append(TraceRecord(rnd, node, event, detail))

    def add_broadcast(self, rnd: int, node: int, kind: str, detail: str = "") -> None:
        self._broadcasts += 1
        self.add(rnd, node, kind, detail)

    def count(self, event: str, first: Optional[int] = None, last: Optional[int] = None) -> int:
        return sum(
            1
            for rec in self.records
            if rec.event == event
            and (first is None or rec.round >= first)
            and (last is None or rec.round <= last)
        )

    def broadcast_count(self) -> int:
        return self._broadcasts

    def lines(self) -> list[str]:
        return [
            f"{rec.round},{rec.node},{rec.event},{rec.detail}" for rec in self.records
        ]

    def write(self, path: str) -> None:
        with open(path, "w") as handle:
            handle.write("round,node,event,detail\n")
            for line in self.lines():
                handle.write(line + "\n")


@dataclass
class SimulationResult:
    config: ScenarioConfig
    trace: EventTrace
    report: MetricsReport
    world: "Simulation"


class Simulation:
    """One world; strictly single threaded, fully determined by the config."""

    def __init__(self, config: ScenarioConfig, round_hook: Optional[Callable] = None):
        config.validate()
        self.config = config
        self.round_hook = round_hook
        self.rng = np.random.default_rng(config.seed)
        self.clock = SimClock()
        self.trace = EventTrace()
        self.ledger = OverheadLedger()
        self.sampler = MetricsSampler(config.formation_end)

        self.nodes: dict[int, NodeState] = {}
        self.waypoints: dict[int, WaypointState] = {}
        self.snapshot: Optional[TopologySnapshot] = None
        self.in_range: dict[int, frozenset[int]] = {}
        self.prev_in_range: dict[int, frozenset[int]] = {}
        self._inbox: dict[int, list[Message]] = defaultdict(list)
        self._broadcasts: list[tuple[int, Message]] = []
        self._reaffs_this_round = 0
        self._msg_counts_round = {"hello": 0, "formation": 0, "maintenance": 0}

        # Formation bookkeeping.
        bi = config.bi
        self.weight_round = config.warmup_intervals * bi + 1
        self.election_round = self.weight_round + 1
        self.announce_round = self.weight_round + 2
        self.formation_end = self.weight_round + 3
        self.initial_ch_ids: set[int] = set()
        self.critical_ids: set[int] = set()
        self.adjusted_clusters: dict[int, set[int]] = {}
        self.formation_snapshots: dict[str, TopologySnapshot] = {}
        self.join_snapshot_round: dict[int, int] = {}
        self.outcome: Optional[Outcome] = None

        self._next_arrival_id = config.n
        self._spawn_initial_nodes()

    # ------------------------------------------------------------------
    # Setup

    def _initial_positions(self) -> list[Position]:
        cfg = self.config
        if cfg.positions is not None:
            return [Position(float(x), float(y)) for x, y in cfg.positions]
        if cfg.diameter_cap is None:
            return init_positions(cfg.n, cfg.terrain, self.rng)
        for _ in range(_DIAMETER_ATTEMPTS):
            candidate = init_positions(cfg.n, cfg.terrain, self.rng)
            snap = TopologySnapshot(dict(enumerate(candidate)), cfg.range_m)
            rd = radius_diameter(snap)
            if rd is not None and rd[1] <= cfg.diameter_cap:
                return candidate
        raise RuntimeError(
            f"could not draw a connected layout with diameter <= {cfg.diameter_cap} "
            f"in {_DIAMETER_ATTEMPTS} attempts"
        )

    def _make_energy(self, node_id: int) -> EnergyBook:
        cfg = self.config
        initial = cfg.initial_energy_overrides.get(node_id, cfg.initial_energy)
        return EnergyBook(
            initial=initial,
            tx_cost=cfg.energy.tx_cost,
            rx_cost=cfg.energy.rx_cost,
            threshold=cfg.energy.resign_threshold,
        )

    def _spawn_initial_nodes(self) -> None:
        cfg = self.config
        positions = self._initial_positions()
        for nid, pos in enumerate(positions):
            self.nodes[nid] = NodeState(id=nid, pos=pos, energy=self._make_energy(nid))
            self.waypoints[nid] = init_waypoint(
                pos, cfg.terrain, cfg.vmin, cfg.vmax, self.rng
            )

    def _spawn_arrival(self, rnd: int, pos: Position) -> None:
        nid = self._next_arrival_id
        self._next_arrival_id += 1
        node = NodeState(id=nid, pos=pos, energy=self._make_energy(nid))
        node.arrival_round = rnd
        self.nodes[nid] = node
        self.waypoints[nid] = init_waypoint(
            pos, self.config.terrain, self.config.vmin, self.config.vmax, self.rng
        )
        self.ledger.n_a += 1
        self.trace.add(rnd, nid, "arrived", f"x={pos.x:.1f};y={pos.y:.1f}")

    # ------------------------------------------------------------------
    # Helpers

    def alive_ids(self) -> list[int]:
        return sorted(nid for nid, node in self.nodes.items() if node.alive)

    def _mark_dead(self, node: NodeState, rnd: int) -> None:
        if node.role is Role.DEAD:
            return
        node.role = Role.DEAD
        node.ch_id = None
        node.members = set()
        self.trace.add(rnd, node.id, "died")

    def _debit_tx(self, node: NodeState, rnd: int) -> None:
        if not node.energy.debit("tx"):
            self._mark_dead(node, rnd)

    def _broadcast(self, node: NodeState, msg: Message, rnd: int, detail: str = "") -> None:
        """Send: debit the sender, log, and stage for same-round delivery."""
        formation_phase = rnd <= self.formation_end
        self.ledger.record_broadcast(msg.kind, formation_phase)
        if msg.kind == "hello":
            self._msg_counts_round["hello"] += 1
        elif formation_phase and msg.kind in ("weight_info", "cluster_info", "cluster_id"):
            self._msg_counts_round["formation"] += 1
        else:
            self._msg_counts_round["maintenance"] += 1
        self.trace.add_broadcast(rnd, node.id, msg.kind, detail)
        self._broadcasts.append((node.id, msg))
        self._debit_tx(node, rnd)

    def _count_reaffiliation(self, node: NodeState, rnd: int, new_ch: int, via: str) -> None:
        self._reaffs_this_round += 1
        self.trace.add(rnd, node.id, "reaffiliated", f"ch={new_ch};via={via}")

    def _heads_in_range(self, node: NodeState) -> list[NodeState]:
        out = []
        for vid in sorted(self.in_range.get(node.id, frozenset())):
            other = self.nodes[vid]
            if other.alive and other.role is Role.CLUSTER_HEAD and not other.has_resigned:
                out.append(other)
        return out

    # ------------------------------------------------------------------
    # Round phases

    def _phase_scripted_events(self, rnd: int) -> None:
        for arrival_rnd, x, y in self.config.node_arrivals:
            if arrival_rnd == rnd:
                self._spawn_arrival(rnd, Position(x, y))
        for move_rnd, nid, x, y in self.config.scripted_moves:
            if move_rnd == rnd and nid in self.nodes:
                pos = Position(x, y)
                self.nodes[nid].pos = pos
                self.waypoints[nid] = replace(self.waypoints[nid], current=pos)
                self.trace.add(rnd, nid, "moved", f"x={x:.1f};y={y:.1f}")

    def _phase_mobility(self, rnd: int) -> None:
        cfg = self.config
        for nid in self.alive_ids():
            wp = advance(
                self.waypoints[nid],
                self.clock.seconds_per_round,
                cfg.terrain,
                cfg.vmin,
                cfg.vmax,
                cfg.pause,
                self.rng,
            )
            self.waypoints[nid] = wp
            self.nodes[nid].pos = wp.current

    def _phase_adjacency(self, rnd: int) -> None:
        positions = {nid: self.nodes[nid].pos for nid in self.alive_ids()}
        self.snapshot = TopologySnapshot(positions, self.config.range_m)
        self.in_range = {nid: self.snapshot.neighbors(nid) for nid in positions}
        if positions:
            self.ledger.delta_max = max(
                self.ledger.delta_max, max(len(v) for v in self.in_range.values())
            )

    def _phase_link_failures(self, rnd: int) -> None:
        """A scripted link failure detaches both nodes joined by the link."""
        for fail_rnd, u, v in self.config.link_failures:
            if fail_rnd != rnd:
                continue
            self.ledger.l_f += 1
            for nid in (u, v):
                node = self.nodes.get(nid)
                if node is None or not node.alive:
                    continue
                if node.role is Role.MEMBER and node.ch_id is not None:
                    head = self.nodes.get(node.ch_id)
                    if head is not None:
                        head.members.discard(nid)
                    protocol.detach(node)
                    node.outbox.append(FindCh(sender=nid))
                    self.trace.add(rnd, nid, "orphaned", "via=link_failure")

    def _phase_emissions(self, rnd: int) -> None:
        cfg = self.config
        maintenance = rnd > self.formation_end
        for nid in self.alive_ids():
            node = self.nodes[nid]
            hello = protocol.emit_hello(node, rnd, cfg.bi)
            if hello is not None:
                self._broadcast(node, hello, rnd, f"seq={hello.seq}")
            if not node.alive:
                continue
            if rnd == self.weight_round:
                self._emit_weight(node, rnd)
            elif rnd == self.election_round:
                self._emit_election(node, rnd)
            if node.alive and node.outbox:
                pending, node.outbox = node.outbox, []
                for msg in pending:
                    if not node.alive:
                        break
                    if isinstance(msg, FindCh):
                        node.seeking_since = rnd
                    self._broadcast(node, msg, rnd)
            if maintenance and node.alive:
                self._check_resignation(node, rnd)

    def _emit_weight(self, node: NodeState, rnd: int) -> None:
        cfg = self.config
        override = cfg.weight_override or {}
        if node.id in override:
            node.weight = override[node.id]
        else:
            protocol.compute_weight(node, cfg.range_m, cfg.weight_params, rnd, cfg.bi)
        self._broadcast(node, protocol.make_weight_info(node), rnd, f"w={node.weight:.6g}")

    def _emit_election(self, node: NodeState, rnd: int) -> None:
        msg = protocol.elect(node, self.in_range.get(node.id, frozenset()))
        if msg is not None:
            self.initial_ch_ids.add(node.id)
            self.join_snapshot_round[node.id] = rnd
            self.trace.add(rnd, node.id, "ch_elected", f"w={node.weight:.6g}")
            self._broadcast(node, msg, rnd, f"w={msg.weight:.6g}")

    def _check_resignation(self, node: NodeState, rnd: int) -> None:
        if (
            node.role is not Role.CLUSTER_HEAD
            or node.has_resigned
            or node.energy.residual >= node.energy.threshold
        ):
            return
        node.has_resigned = True
        flock = sorted(
            m for m in node.members if m in self.nodes and self.nodes[m].alive
        )
        self.ledger.m += len(flock)
        self.trace.add(rnd, node.id, "resigned", f"members={len(flock)}")
        self._broadcast(node, ChResign(sender=node.id), rnd)
        node.members = set()
        if not node.alive:
            return
        heads = self._heads_in_range(node)
        if heads:
            best = max(heads, key=lambda h: (h.weight, -h.id))
            node.role = Role.MEMBER
            node.ch_id = best.id
            node.ch_weight = best.weight
            best.members.add(node.id)
            self.join_snapshot_round[node.id] = rnd
            self.trace.add(rnd, node.id, "resign_joined", f"ch={best.id}")
        # With no head in earshot the node stays a standalone head; it no
        # longer recruits, so its old members will fall back on their own.

    def _phase_delivery(self, rnd: int) -> None:
        for sender_id, msg in self._broadcasts:
            recipients = self.in_range.get(sender_id, frozenset())
            for rid in sorted(recipients):
                node = self.nodes[rid]
                if not node.alive:
                    continue
                if not node.energy.debit("rx"):
                    self._mark_dead(node, rnd)
                    continue
                self._inbox[rid].append(msg)
        self._broadcasts = []

    def _phase_transitions(self, rnd: int) -> None:
        maintenance = rnd > self.formation_end
        for nid in self.alive_ids():
            node = self.nodes[nid]
            inbox = self._inbox.pop(nid, [])
            self._process_inbox(node, inbox, rnd)
        if maintenance:
            # Takeovers first, so a strong node that just walked into a
            # cluster is adopted rather than probing for a head it outranks.
            self._link_establishment_scan(rnd)
            for nid in self.alive_ids():
                self._maintenance_checks(self.nodes[nid], rnd)
        if rnd == self.election_round:
            self.formation_snapshots["election"] = self.snapshot
        if rnd == self.announce_round:
            self._run_adjustment(rnd)

    def _process_inbox(self, node: NodeState, inbox: list[Message], rnd: int) -> None:
        cfg = self.config
        hellos = sorted(
            (m for m in inbox if isinstance(m, Hello)), key=lambda m: m.sender
        )
        for msg in hellos:
            dist = self.snapshot.distance(node.id, msg.sender)
            rss = received_strength(cfg.phy, dist, self.rng if cfg.phy.noise_sigma else None)
            protocol.ingest_hello(node, msg, rss, dist, cfg.range_m, rnd)
        for msg in sorted(
            (m for m in inbox if isinstance(m, WeightInfo)), key=lambda m: m.sender
        ):
            protocol.handle_weight_info(node, msg)
        infos = sorted(
            (m for m in inbox if isinstance(m, ClusterInfo)), key=lambda m: m.sender
        )
        if rnd == self.election_round:
            prior_ch = node.ch_id
            changed = False
            for msg in infos:
                changed = protocol.handle_cluster_info(node, msg) or changed
            if changed:
                # Collapse the fold into a single join or switch event.
                node.outbox = [
                    m for m in node.outbox if not isinstance(m, ClusterId)
                ] + [ClusterId(sender=node.id, ch_id=node.ch_id)]
                self.join_snapshot_round[node.id] = rnd
                if prior_ch is None:
                    self.trace.add(rnd, node.id, "joined", f"ch={node.ch_id}")
                elif prior_ch != node.ch_id:
                    self._count_reaffiliation(node, rnd, node.ch_id, "override")
        else:
            for msg in infos:
                # Post-formation announcements refresh tables only; membership
                # changes ride on the probe/ack flow instead.
                protocol.handle_weight_info(
                    node, WeightInfo(sender=msg.sender, weight=msg.weight)
                )
                rec = node.table.get(msg.sender)
                if rec is not None:
                    rec.advertised_ch = msg.sender
        for msg in sorted(
            (m for m in inbox if isinstance(m, ClusterId)), key=lambda m: m.sender
        ):
            protocol.handle_cluster_id(node, msg)
        for msg in sorted(
            (m for m in inbox if isinstance(m, ChResign)), key=lambda m: m.sender
        ):
            if node.role is Role.MEMBER and node.ch_id == msg.sender:
                protocol.detach(node)
                node.outbox.append(FindCh(sender=node.id))
                self.trace.add(rnd, node.id, "orphaned", "via=resignation")
        if any(isinstance(m, FindCh) for m in inbox):
            ack = protocol.handle_find_ch(node)
            if ack is not None and not any(
                isinstance(m, ChAck) for m in node.outbox
            ):
                node.outbox.append(ack)
        acks = sorted(
            (m for m in inbox if isinstance(m, ChAck)), key=lambda m: m.sender
        )
        if node.seeking_since is not None and rnd == node.seeking_since + 1:
            chosen = protocol.choose_cluster_head(node, acks)
            if chosen is None:
                protocol.become_self_head(node)
                self.trace.add(rnd, node.id, "self_ch")
            else:
                self.join_snapshot_round[node.id] = rnd
                if node.last_ch_id is not None and node.last_ch_id != chosen:
                    self._count_reaffiliation(node, rnd, chosen, "find_ch")
                else:
                    self.trace.add(rnd, node.id, "joined", f"ch={chosen}")
                node.last_ch_id = None

    def _maintenance_checks(self, node: NodeState, rnd: int) -> None:
        """Per-node upkeep: unattached nodes probe, members track their head,
        heads prune members that left or moved on."""
        pending_probe = any(isinstance(m, FindCh) for m in node.outbox)
        if node.role is Role.UNKNOWN:
            if node.seeking_since is None and not pending_probe:
                if node.weight is None:
                    protocol.compute_weight(
                        node, self.config.range_m, self.config.weight_params, rnd, self.config.bi
                    )
                node.outbox.append(FindCh(sender=node.id))
                self.trace.add(rnd, node.id, "seek", "via=arrival")
            return
        if node.role is Role.MEMBER:
            if node.ch_id is not None:
                head = self.nodes.get(node.ch_id)
                lost = (
                    head is None
                    or not head.alive
                    or head.role is not Role.CLUSTER_HEAD
                    or node.ch_id not in self.in_range.get(node.id, frozenset())
                )
                if lost:
                    if head is not None:
                        head.members.discard(node.id)
                    protocol.detach(node)
                    node.outbox.append(FindCh(sender=node.id))
                    self.trace.add(rnd, node.id, "orphaned", "via=range")
            elif node.seeking_since is None and not pending_probe:
                node.outbox.append(FindCh(sender=node.id))
                self.trace.add(rnd, node.id, "seek", "via=detached")
            return
        if node.role is Role.CLUSTER_HEAD:
            keep = set()
            for mid in node.members:
                other = self.nodes.get(mid)
                if (
                    other is not None
                    and other.alive
                    and other.role is Role.MEMBER
                    and other.ch_id == node.id
                    and mid in self.in_range.get(node.id, frozenset())
                ):
                    keep.add(mid)
            node.members = keep

    def _link_establishment_scan(self, rnd: int) -> None:
        """Heads examine nodes that newly entered their range.

        A stronger newcomer with at least two common neighbors takes over the
        cluster; the old head becomes its member, members in the newcomer's
        range are handed over, the rest probe for a new cluster. A weaker
        newcomer that heads an empty cluster is absorbed as a plain member.
        """
        for nid in self.alive_ids():
            node = self.nodes[nid]
            if node.role is not Role.CLUSTER_HEAD or not node.alive:
                continue
            current = self.in_range.get(nid, frozenset())
            fresh = current - self.prev_in_range.get(nid, frozenset())
            candidates = []
            for vid in fresh:
                other = self.nodes[vid]
                if not other.alive or other.weight is None:
                    continue
                if other.seeking_since is not None or any(
                    isinstance(m, FindCh) for m in other.outbox
                ):
                    continue
                if other.role is Role.MEMBER and other.ch_id is not None:
                    candidates.append(other)
                elif other.role is Role.CLUSTER_HEAD and not other.members:
                    candidates.append(other)
            candidates.sort(key=lambda o: (-o.weight, o.id))
            for other in candidates:
                common = len(current & self.in_range.get(other.id, frozenset()))
                if protocol.beats(other.weight, other.id, node.weight, node.id):
                    if common >= 2:
                        self._swap_roles(node, other, rnd)
                        break
                elif other.role is Role.CLUSTER_HEAD and not other.members:
                    self._absorb_head(node, other, rnd)

    def _swap_roles(self, head: NodeState, newcomer: NodeState, rnd: int) -> None:
        self.ledger.l_a += 1
        if newcomer.ch_id is not None:
            old_head = self.nodes.get(newcomer.ch_id)
            if old_head is not None:
                old_head.members.discard(newcomer.id)
        newcomer_range = self.in_range.get(newcomer.id, frozenset())
        transferred = sorted(m for m in head.members if m in newcomer_range)
        strays = sorted(m for m in head.members if m not in newcomer_range)
        newcomer.role = Role.CLUSTER_HEAD
        newcomer.ch_id = None
        newcomer.ch_weight = None
        newcomer.seeking_since = None
        newcomer.members = set(transferred) | {head.id}
        head.role = Role.MEMBER
        head.ch_id = newcomer.id
        head.ch_weight = newcomer.weight
        head.members = set()
        self.join_snapshot_round[head.id] = rnd
        self.trace.add(rnd, newcomer.id, "role_swap", f"took_over={head.id}")
        for mid in transferred:
            member = self.nodes[mid]
            member.ch_id = newcomer.id
            member.ch_weight = newcomer.weight
            self.join_snapshot_round[mid] = rnd
            self._count_reaffiliation(member, rnd, newcomer.id, "handoff")
        for mid in strays:
            member = self.nodes[mid]
            protocol.detach(member)
            member.outbox.append(FindCh(sender=mid))
            self.trace.add(rnd, mid, "orphaned", "via=role_swap")

    def _absorb_head(self, head: NodeState, singleton: NodeState, rnd: int) -> None:
        singleton.role = Role.MEMBER
        singleton.ch_id = head.id
        singleton.ch_weight = head.weight
        singleton.members = set()
        head.members.add(singleton.id)
        self.join_snapshot_round[singleton.id] = rnd
        self.trace.add(rnd, singleton.id, "absorbed", f"ch={head.id}")

    def _run_adjustment(self, rnd: int) -> None:
        self.critical_ids = protocol.collect_critical(self.nodes)
        self.ledger.c_r = len(self.critical_ids)
        self.ledger.n_c_initial = len(self.initial_ch_ids)
        self.formation_snapshots["adjustment"] = self.snapshot
        if not self.critical_ids:
            self.outcome = protocol.classify_outcome(0)
            return
        weights = {}
        for nid in self.critical_ids:
            node = self.nodes[nid]
            node.role = Role.CRITICAL
            self.trace.add(rnd, nid, "critical")
            weights[nid] = node.weight if node.weight is not None else 0.0
        adjacency = {
            nid: self.in_range.get(nid, frozenset()) for nid in self.critical_ids
        }
        clusters = protocol.adjust_clusters(self.critical_ids, weights, adjacency)
        self.adjusted_clusters = clusters
        for head_id, member_ids in clusters.items():
            head = self.nodes[head_id]
            head.role = Role.CLUSTER_HEAD
            head.ch_id = None
            head.members = set(member_ids)
            head.outbox.append(ClusterInfo(sender=head_id, weight=head.weight))
            self.join_snapshot_round[head_id] = rnd
            self.trace.add(rnd, head_id, "adjusted_ch", f"members={len(member_ids)}")
            for mid in sorted(member_ids):
                member = self.nodes[mid]
                member.role = Role.MEMBER
                member.ch_id = head_id
                member.ch_weight = head.weight
                member.outbox.append(ClusterId(sender=mid, ch_id=head_id))
                self.join_snapshot_round[mid] = rnd
                self.trace.add(rnd, mid, "adjusted_member", f"ch={head_id}")
        self.outcome = protocol.classify_outcome(len(self.critical_ids))

    def _phase_sample(self, rnd: int) -> None:
        heads = [n for n in self.nodes.values() if n.alive and n.role is Role.CLUSTER_HEAD]
        ranks: dict[ClusterRank, int] = {}
        for head in heads:
            visible = [
                m
                for m in head.members
                if m in self.in_range.get(head.id, frozenset())
            ]
            rank = rank_cluster(head.id, visible, self.snapshot)
            ranks[rank] = ranks.get(rank, 0) + 1
        self.sampler.sample(
            rnd,
            len(heads),
            self._reaffs_this_round,
            ranks,
            self._msg_counts_round["hello"],
            self._msg_counts_round["formation"],
            self._msg_counts_round["maintenance"],
        )
        self._reaffs_this_round = 0
        self._msg_counts_round = {"hello": 0, "formation": 0, "maintenance": 0}

    def _finalize_formation(self) -> None:
        alive = [n for n in self.nodes.values() if n.alive]
        self.ledger.n_c = sum(1 for n in alive if n.role is Role.CLUSTER_HEAD)
        self.ledger.members_formation = sum(1 for n in alive if n.role is Role.MEMBER)
        if self.outcome is None:
            self.outcome = protocol.classify_outcome(self.ledger.c_r)

    # ------------------------------------------------------------------

    def run_round(self) -> None:
        self.clock.round += 1
        rnd = self.clock.round
        self._phase_scripted_events(rnd)
        self._phase_mobility(rnd)
        self._phase_adjacency(rnd)
        self._phase_link_failures(rnd)
        self._phase_emissions(rnd)
        self._phase_delivery(rnd)
        self._phase_transitions(rnd)
        if rnd == self.formation_end:
            self._finalize_formation()
        self._phase_sample(rnd)
        self.prev_in_range = dict(self.in_range)
        if self.round_hook is not None:
            self.round_hook(self, rnd)

    def run(self) -> SimulationResult:
        for _ in range(self.config.sim_time):
            self.run_round()
        report = self.sampler.finalize(
            self.config, self.ledger, self.outcome or Outcome.PERFECT
        )
        return SimulationResult(
            config=self.config, trace=self.trace, report=report, world=self
        )


def run_scenario(
    config: ScenarioConfig, round_hook: Optional[Callable] = None
) -> SimulationResult:
    """Execute one scenario start to finish; same config and seed, same bytes."""
    return Simulation(config, round_hook=round_hook).run()
