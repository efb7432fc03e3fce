"""Per-node clustering state machine: hello bookkeeping, election, joins, adjustment.

The engine drives these transitions in ascending node-id order each round;
nothing here touches shared state, so a transition only ever mutates the
node it is given (plus the messages it returns or queues on that node).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional

from .geometry import NeighborClass, Position, classify_neighbor
from .messages import ChAck, ClusterId, ClusterInfo, Hello, Message, WeightInfo
from .phy import EnergyBook
from .weighting import WeightParams, mobility_metric, node_weight

# A neighbor record older than this many broadcast intervals no longer
# counts toward degrees or mobility samples.
FRESHNESS_INTERVALS = 2


class Role(Enum):
    UNKNOWN = "unknown"
    CLUSTER_HEAD = "cluster_head"
    MEMBER = "member"
    CRITICAL = "critical"
    DEAD = "dead"


class Outcome(Enum):
    PERFECT = "perfect"
    FAIRLY_PERFECT = "fairly_perfect"


@dataclass
class NeighborRecord:
    id: int
    last_position: Position
    klass: NeighborClass
    last_rss: float
    last_seq: int
    last_seen: int
    prev_rss: Optional[float] = None
    prev_seq: Optional[int] = None
    advertised_weight: Optional[float] = None
    advertised_ch: Optional[int] = None

    @property
    def pair_consecutive(self) -> bool:
        return self.prev_seq is not None and self.last_seq == self.prev_seq + 1


@dataclass
class NodeState:
    id: int
    pos: Position
    energy: EnergyBook
    role: Role = Role.UNKNOWN
    ch_id: Optional[int] = None
    ch_weight: Optional[float] = None
    weight: Optional[float] = None
    members: set[int] = field(default_factory=set)
    table: dict[int, NeighborRecord] = field(default_factory=dict)
    hello_seq: int = 0
    outbox: list[Message] = field(default_factory=list)
    has_resigned: bool = False
    seeking_since: Optional[int] = None  # round the find_ch probe went out
    last_ch_id: Optional[int] = None  # affiliation held before a detach
    arrival_round: int = 0

    @property
    def alive(self) -> bool:
        return self.role is not Role.DEAD and not self.energy.depleted


def beats(weight_a: float, id_a: int, weight_b: float, id_b: int) -> bool:
    """Strict total order used everywhere a winner is picked: weight first,
    lower node id on ties."""
    if weight_a != weight_b:
        return weight_a > weight_b
    return id_a < id_b


def emit_hello(node: NodeState, rnd: int, bi: int) -> Optional[Hello]:
    """Periodic hello at each broadcast-interval boundary; dead nodes are silent."""
    if not node.alive or rnd % bi != 0:
        return None
    node.hello_seq += 1
    return Hello(sender=node.id, pos=node.pos, seq=node.hello_seq)


def ingest_hello(
    node: NodeState, msg: Hello, rss: float, distance: float, range_m: float, rnd: int
) -> None:
    """Record a received hello: position, banded class, shifted rss pair.

    The rss pair formed by the previous and the current sample is usable for
    weighting only when the two sequence numbers are consecutive; a gap means
    the node missed broadcasts from this neighbor in between.
    """
    klass = classify_neighbor(distance, range_m)
    rec = node.table.get(msg.sender)
    if rec is None:
        node.table[msg.sender] = NeighborRecord(
            id=msg.sender,
            last_position=msg.pos,
            klass=klass,
            last_rss=rss,
            last_seq=msg.seq,
            last_seen=rnd,
        )
        return
    rec.prev_rss = rec.last_rss
    rec.prev_seq = rec.last_seq
    rec.last_rss = rss
    rec.last_seq = msg.seq
    rec.last_position = msg.pos
    rec.klass = klass
    rec.last_seen = rnd


def fresh_records(node: NodeState, rnd: int, bi: int) -> list[NeighborRecord]:
    horizon = rnd - FRESHNESS_INTERVALS * bi
    return [rec for rec in node.table.values() if rec.last_seen >= horizon]


def compute_weight(
    node: NodeState, range_m: float, params: WeightParams, rnd: int, bi: int
) -> float:
    """Evaluate the node's weight from its current neighbor table.

    Strong degree counts fresh neighbors within half the range of the node's
    current position. Mobility ratios come only from neighbors whose last two
    samples were consecutive; the rest are excluded, and under the default
    denominator mode they do not shrink the dispersion either.
    """
    recs = fresh_records(node, rnd, bi)
    strong = 0
    ratios: list[float] = []
    for rec in recs:
        d = _dist(node.pos, rec.last_position)
        if classify_neighbor(d, range_m) is NeighborClass.STRONG:
            strong += 1
        if rec.pair_consecutive and rec.prev_rss is not None:
            ratios.append(rec.prev_rss / rec.last_rss)
    denominator = len(recs) if params.denominator_mode == "deg" else None
    if denominator == 0:
        denominator = None
    metric = mobility_metric(ratios, denominator)
    node.weight = node_weight(strong, metric, node.energy.residual, params)
    return node.weight


def _dist(a: Position, b: Position) -> float:
    return ((a.x - b.x) ** 2 + (a.y - b.y) ** 2) ** 0.5


def make_weight_info(node: NodeState) -> WeightInfo:
    assert node.weight is not None, "weight must be computed before broadcasting"
    return WeightInfo(sender=node.id, weight=node.weight)


def elect(node: NodeState, in_range: Iterable[int]) -> Optional[ClusterInfo]:
    """Declare cluster head iff this node beats every current neighbor.

    The comparison uses the weights learned from the weight broadcast; a
    neighbor whose weight is not yet known blocks the declaration, which can
    only happen when topology shifted between the broadcast and the election
    (the adjustment pass then covers the neighborhood).
    """
    if not node.alive or node.weight is None:
        return None
    for v in in_range:
        rec = node.table.get(v)
        if rec is None or rec.advertised_weight is None:
            return None
        if not beats(node.weight, node.id, rec.advertised_weight, v):
            return None
    node.role = Role.CLUSTER_HEAD
    node.ch_id = None
    node.members = set()
    return ClusterInfo(sender=node.id, weight=node.weight)


def handle_weight_info(node: NodeState, msg: WeightInfo) -> None:
    rec = node.table.get(msg.sender)
    if rec is not None:
        rec.advertised_weight = msg.weight


def handle_cluster_info(node: NodeState, msg: ClusterInfo) -> bool:
    """Join or re-affiliate on hearing a head's announcement.

    An unattached node joins the sender. An existing member switches only
    when the sender outranks its current head. Returns True when the node's
    affiliation changed; the caller queues the membership announcement.
    """
    rec = node.table.get(msg.sender)
    if rec is not None:
        rec.advertised_weight = msg.weight
        rec.advertised_ch = msg.sender
    if not node.alive or node.role is Role.CLUSTER_HEAD:
        return False
    if node.role in (Role.UNKNOWN, Role.CRITICAL) or node.ch_id is None:
        node.role = Role.MEMBER
        node.ch_id = msg.sender
        node.ch_weight = msg.weight
        node.outbox.append(ClusterId(sender=node.id, ch_id=msg.sender))
        return True
    assert node.ch_weight is not None
    if beats(msg.weight, msg.sender, node.ch_weight, node.ch_id):
        node.ch_id = msg.sender
        node.ch_weight = msg.weight
        node.outbox.append(ClusterId(sender=node.id, ch_id=msg.sender))
        return True
    return False


def handle_cluster_id(node: NodeState, msg: ClusterId) -> None:
    rec = node.table.get(msg.sender)
    if rec is not None:
        rec.advertised_ch = msg.ch_id
    if node.role is Role.CLUSTER_HEAD:
        if msg.ch_id == node.id:
            node.members.add(msg.sender)
        else:
            node.members.discard(msg.sender)


def handle_find_ch(node: NodeState) -> Optional[ChAck]:
    """Heads answer seekers with their id and weight; resigned heads do not recruit."""
    if node.role is not Role.CLUSTER_HEAD or not node.alive or node.has_resigned:
        return None
    assert node.weight is not None
    return ChAck(sender=node.id, weight=node.weight)


def choose_cluster_head(node: NodeState, acks: list[ChAck]) -> Optional[int]:
    """Attach to the strongest responding head; None if nobody answered."""
    if not acks:
        return None
    best = acks[0]
    for ack in acks[1:]:
        if beats(ack.weight, ack.sender, best.weight, best.sender):
            best = ack
    node.role = Role.MEMBER
    node.ch_id = best.sender
    node.ch_weight = best.weight
    node.seeking_since = None
    node.outbox.append(ClusterId(sender=node.id, ch_id=best.sender))
    return best.sender


def become_self_head(node: NodeState) -> None:
    """Fallback for a seeker no head answered: a cluster of one."""
    node.role = Role.CLUSTER_HEAD
    node.ch_id = None
    node.ch_weight = None
    node.members = set()
    node.seeking_since = None


def detach(node: NodeState) -> None:
    """Drop the current affiliation, remembering it for re-affiliation counting."""
    node.last_ch_id = node.ch_id
    node.ch_id = None
    node.ch_weight = None


def collect_critical(nodes: Mapping[int, NodeState]) -> set[int]:
    """Nodes the initial formation left unattached: no head in earshot, not heads."""
    return {nid for nid, node in nodes.items() if node.alive and node.role is Role.UNKNOWN}


def adjust_clusters(
    critical: set[int],
    weights: Mapping[int, float],
    adjacency: Mapping[int, frozenset[int]],
) -> dict[int, set[int]]:
    """Group leftover nodes among themselves.

    Repeatedly the heaviest remaining node becomes a head and absorbs its
    remaining neighbors as members; isolated leftovers end up as heads of
    singleton clusters. Returns head id -> member ids.
    """
    remaining = set(critical)
    clusters: dict[int, set[int]] = {}
    while remaining:
        head = max(remaining, key=lambda nid: (weights[nid], -nid))
        mems = (adjacency.get(head, frozenset()) & remaining) - {head}
        clusters[head] = set(mems)
        remaining -= mems | {head}
    return clusters


def classify_outcome(critical_count: int) -> Outcome:
    """Perfect when the adjustment pass had nothing to do."""
    return Outcome.PERFECT if critical_count == 0 else Outcome.FAIRLY_PERFECT
