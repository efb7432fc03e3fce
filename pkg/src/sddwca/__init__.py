"""sddwca: a deterministic simulator for strong-degree weighted clustering of
mobile ad hoc networks.

The library models a homogeneous ad hoc network as a unit-disk graph over
mobile nodes, runs the SD-DWCA cluster formation and maintenance protocol in
synchronous rounds, and reports cluster counts, re-affiliation rates,
message-overhead ledgers and cluster ranks.
"""

from .config import ConfigError, EnergyParams, ScenarioConfig, config_from_mapping, load_config
from .engine import EventTrace, SimClock, Simulation, SimulationResult, run_scenario
from .geometry import (
    DegreeVector,
    NeighborClass,
    Position,
    TopologySnapshot,
    classify_neighbor,
    degree_vector,
    eccentricity,
    hop_distance,
    is_dominating_set,
    neighbor_partition,
    radius_diameter,
)
from .mobility import WaypointState, advance, init_positions, init_waypoint
from .phy import EnergyBook, PhyModel, RssPair, received_strength, relative_mobility
from .protocol import NodeState, Outcome, Role
from .reporting import (
    AuditResult,
    ClusterRank,
    MetricsReport,
    OverheadLedger,
    audit_overhead,
    rank_cluster,
)
from .weighting import WeightParams, mobility_metric, node_weight

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "EnergyParams",
    "ScenarioConfig",
    "config_from_mapping",
    "load_config",
    "EventTrace",
    "SimClock",
    "Simulation",
    "SimulationResult",
    "run_scenario",
    "DegreeVector",
    "NeighborClass",
    "Position",
    "TopologySnapshot",
    "classify_neighbor",
    "degree_vector",
    "eccentricity",
    "hop_distance",
    "is_dominating_set",
    "neighbor_partition",
    "radius_diameter",
    "WaypointState",
    "advance",
    "init_positions",
    "init_waypoint",
    "EnergyBook",
    "PhyModel",
    "RssPair",
    "received_strength",
    "relative_mobility",
    "NodeState",
    "Outcome",
    "Role",
    "AuditResult",
    "ClusterRank",
    "MetricsReport",
    "OverheadLedger",
    "audit_overhead",
    "rank_cluster",
    "WeightParams",
    "mobility_metric",
    "node_weight",
]
