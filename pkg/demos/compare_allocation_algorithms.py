"""Reproduce the allocation-algorithm comparison on the assisted-living flows.

Three networks are available: Wi-Fi at 64000 bps, LoRa SF9 at 1760 bps and
Sigfox at 48 bps. Demands are compared in bits per second (factor 8). The
twelve classic baselines either serve only 75% of the flows (low-side) or
serve everything at badly degraded levels (high-side); the criticality-aware
pair and the exact solver all reach the optimal objective of 22 with an
average criticality of 1.25.

Run:  python demos/compare_allocation_algorithms.py
"""

from pathlib import Path

from resilient_alloc import (
    ALGORITHM_NAMES,
    AllocatorConfig,
    builtin_profile,
    load_flow_set,
    report,
    run_algorithm,
)
from resilient_alloc.metrics import render_comparison_table


def main() -> None:
    flow_set = load_flow_set(Path(__file__).parent / "assisted_living.json")
    flows = list(flow_set.flows)
    networks = [
        builtin_profile("wifi_table2"),
        builtin_profile("lora_sf9_table2"),
        builtin_profile("sigfox_table2"),
    ]
    cfg = AllocatorConfig(l_max=flow_set.l_max, factor=8)

    rows = []
    for name in ALGORITHM_NAMES:
        table = run_algorithm(name, flows, networks, cfg)
        rows.append((name, report(table, flows, networks, cfg.l_max)))

    print(render_comparison_table(rows, flows, networks, factor=cfg.factor))
    best = max(rep.objective for _, rep in rows)
    winners = [name for name, rep in rows if rep.objective == best]
    print(f"best objective {best}, reached by: {', '.join(winners)}")


if __name__ == "__main__":
    main()
