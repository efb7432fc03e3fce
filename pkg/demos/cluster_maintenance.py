#!/usr/bin/env python3
"""The four maintenance flows, one scripted scenario each.

Each scenario triggers exactly one event and prints the resulting message
pattern next to its budget: a head resignation costs one probe per orphaned
member, an arrival one probe, a link failure one probe per detached
endpoint, and a takeover one probe per stranded member.
"""

from sddwca.audit import (
    build_arrival_audit,
    build_link_establishment_audit,
    build_link_failure_audit,
    build_resignation_audit,
)
from sddwca.engine import run_scenario

SCENARIOS = [
    ("head resignation (3 members)", build_resignation_audit(3)),
    ("node arrival", build_arrival_audit()),
    ("link failure", build_link_failure_audit()),
    ("link establishment takeover", build_link_establishment_audit()),
]

INTERESTING = {
    "ch_resign",
    "find_ch",
    "ch_ack",
    "resigned",
    "orphaned",
    "arrived",
    "seek",
    "joined",
    "self_ch",
    "role_swap",
    "reaffiliated",
    "absorbed",
}


def main():
    for title, cfg in SCENARIOS:
        result = run_scenario(cfg)
        led = result.report.overhead
        print(f"--- {title} ---")
        for rec in result.trace.records:
            if rec.event in INTERESTING and rec.round > cfg.formation_end:
                detail = f"  {rec.detail}" if rec.detail else ""
                print(f"  round {rec.round:2d}  node {rec.node}  {rec.event}{detail}")
        print(
            f"  probes sent: {led.kind_total('find_ch')}  "
            f"budget m + n_a + 2*l_f + 2*l_a = "
            f"{led.m} + {led.n_a} + 2*{led.l_f} + 2*{led.l_a} = {led.find_ch_budget}"
        )
        print(f"  re-affiliations: {result.report.reaffiliations}\n")


if __name__ == "__main__":
    main()
