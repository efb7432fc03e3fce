"""Canned audit scenarios: static formation counting and scripted maintenance events.

Each builder returns a fully scripted, deterministic scenario whose message
counts have closed-form expectations. The maintenance scenarios exercise one
event each: a head resignation (one probe per orphaned member), a node
arrival (one probe), a link failure (one probe per detached endpoint) and a
link establishment that hands a cluster to a stronger newcomer (one probe
per stranded member, arranged to be exactly two).
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import ScenarioConfig
from .engine import SimulationResult, run_scenario
from .reporting import AuditCheck, AuditResult, audit_overhead


def build_static_audit(n: int, sim_time: int = 10, seed: int = 1) -> ScenarioConfig:
    """Random static layout: every broadcast count is exactly predictable."""
    return ScenarioConfig(n=n, vmax=0.0, sim_time=sim_time, seed=seed)


def build_resignation_audit(member_count: int = 3) -> ScenarioConfig:
    """A single star cluster whose head starts just above the resignation line.

    The head drains below threshold a few rounds after formation, resigns,
    and each member broadcasts one probe; with no other head around they all
    end up heading singleton clusters.
    """
    center = (200.0, 200.0)
    offsets = [(30.0, 0.0), (0.0, 30.0), (-30.0, 0.0), (0.0, -30.0), (20.0, 20.0)]
    if member_count > len(offsets):
        raise ValueError(f"at most {len(offsets)} members supported")
    positions = [center] + [
        (center[0] + dx, center[1] + dy) for dx, dy in offsets[:member_count]
    ]
    weights = {0: 100.0}
    weights.update({i: 10.0 + i for i in range(1, member_count + 1)})
    return ScenarioConfig(
        n=member_count + 1,
        vmax=0.0,
        sim_time=16,
        positions=positions,
        weight_override=weights,
        initial_energy_overrides={0: 20.5},
    )


def build_arrival_audit() -> ScenarioConfig:
    """A static cluster plus one scripted newcomer that probes once and joins."""
    positions = [(200.0, 200.0), (230.0, 200.0), (200.0, 230.0)]
    return ScenarioConfig(
        n=3,
        vmax=0.0,
        sim_time=16,
        positions=positions,
        weight_override={0: 100.0, 1: 10.0, 2: 11.0},
        node_arrivals=[(10, 220.0, 200.0)],
    )


def build_link_failure_audit() -> ScenarioConfig:
    """One scripted link failure detaching two members; both probe and rejoin."""
    positions = [(200.0, 200.0), (230.0, 200.0), (200.0, 230.0)]
    return ScenarioConfig(
        n=3,
        vmax=0.0,
        sim_time=16,
        positions=positions,
        weight_override={0: 100.0, 1: 10.0, 2: 11.0},
        link_failures=[(10, 1, 2)],
    )


def build_link_establishment_audit() -> ScenarioConfig:
    """A strong member walks into a cluster and takes it over.

    The newcomer shares two members with the old head and strands the other
    two, so the takeover costs exactly two probes. Node ids put the old head
    before the newcomer, which fixes the scan order.
    """
    positions = [
        (200.0, 200.0),  # 0: head of the target cluster
        (210.0, 200.0),  # 1: member, will be handed over
        (190.0, 200.0),  # 2: member, will be handed over
        (140.0, 275.0),  # 3: member, stranded by the takeover
        (140.0, 125.0),  # 4: member, stranded by the takeover
        (480.0, 500.0),  # 5: the strong newcomer, initially far away
        (500.0, 500.0),  # 6: its original head
    ]
    return ScenarioConfig(
        n=7,
        vmax=0.0,
        sim_time=16,
        positions=positions,
        weight_override={
            0: 50.0,
            1: 10.0,
            2: 11.0,
            3: 12.0,
            4: 13.0,
            5: 55.0,
            6: 60.0,
        },
        scripted_moves=[(10, 5, 230.0, 200.0)],
    )


@dataclass
class NamedAudit:
    name: str
    result: AuditResult
    sim: SimulationResult

    @property
    def ok(self) -> bool:
        return self.result.ok


def run_formation_audits(
    sizes: tuple[int, ...] = (5, 20, 50), sim_time: int = 10, seed: int = 1
) -> list[NamedAudit]:
    out = []
    for n in sizes:
        cfg = build_static_audit(n, sim_time=sim_time, seed=seed)
        sim = run_scenario(cfg)
        result = audit_overhead(sim.report.overhead, cfg, sim.trace)
        out.append(NamedAudit(f"static_n{n}", result, sim))
    return out


def run_maintenance_audits() -> list[NamedAudit]:
    """Run the four scripted event scenarios and check their probe budgets."""
    cases = [
        ("resignation", build_resignation_audit(), 3),
        ("arrival", build_arrival_audit(), 1),
        ("link_failure", build_link_failure_audit(), 2),
        ("link_establishment", build_link_establishment_audit(), 2),
    ]
    out = []
    for name, cfg, expected_probes in cases:
        sim = run_scenario(cfg)
        result = audit_overhead(sim.report.overhead, cfg, sim.trace)
        observed = sim.report.overhead.kind_total("find_ch")
        result.checks.append(AuditCheck("scripted_find_ch", expected_probes, observed))
        out.append(NamedAudit(name, result, sim))
    return out
