"""Algorithm name registry shared by the CLI and the simulator."""

from __future__ import annotations

from .allocators import AllocationTable, AllocatorConfig, HEURISTIC_NAMES, run_heuristic
from .flows import FlowSpec
from .networks import NetworkProfile
from .solver import IlpInstance, exact_solve

ALGORITHM_NAMES = HEURISTIC_NAMES + ("exact",)


def run_algorithm(
    name: str,
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
    cfg: AllocatorConfig,
    require_all: bool = False,
) -> AllocationTable:
    """Run any allocator (heuristic or exact) by its CLI name."""
    if name == "exact":
        instance = IlpInstance(
            flows=tuple(flows),
            networks=tuple(networks),
            l_max=cfg.l_max,
            factor=cfg.factor,
            require_all=require_all,
        )
        return exact_solve(instance)
    if require_all:
        raise ValueError("require_all is only supported by the exact solver")
    return run_heuristic(name, flows, networks, cfg)
