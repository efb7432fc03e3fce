"""Wire formats broadcast by nodes. Every message carries its sender id."""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

from .geometry import Position


@dataclass(frozen=True)
class Hello:
    kind: ClassVar[str] = "hello"
    sender: int
    pos: Position
    seq: int


@dataclass(frozen=True)
class WeightInfo:
    kind: ClassVar[str] = "weight_info"
    sender: int
    weight: float


@dataclass(frozen=True)
class ClusterInfo:
    """Sent only by nodes that hold the cluster-head role."""

    kind: ClassVar[str] = "cluster_info"
    sender: int
    weight: float


@dataclass(frozen=True)
class ClusterId:
    """A member announcing which cluster head it attached to."""

    kind: ClassVar[str] = "cluster_id"
    sender: int
    ch_id: int


@dataclass(frozen=True)
class FindCh:
    kind: ClassVar[str] = "find_ch"
    sender: int


@dataclass(frozen=True)
class ChAck:
    """A cluster head answering a find_ch probe; sender is the head itself."""

    kind: ClassVar[str] = "ch_ack"
    sender: int
    weight: float


@dataclass(frozen=True)
class ChResign:
    kind: ClassVar[str] = "ch_resign"
    sender: int


Message = Union[Hello, WeightInfo, ClusterInfo, ClusterId, FindCh, ChAck, ChResign]

ALL_KINDS = (
    Hello.kind,
    WeightInfo.kind,
    ClusterInfo.kind,
    ClusterId.kind,
    FindCh.kind,
    ChAck.kind,
    ChResign.kind,
)
