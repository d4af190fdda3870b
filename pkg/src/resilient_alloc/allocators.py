"""Heuristic allocation of message flows to network capacity bins.

The criticality-aware best-fit allocator walks criticality levels from the
highest down to 1. At each level it does two things: it tries to relax flows
that are already allocated at a stricter (numerically higher) level down to
the current one, and it best-fit-allocates flows that declare the current
level but hold no allocation yet. Running relaxation first favours the flows
that declared high-criticality service; running new allocations first (the
inverted variant) favours serving as many flows as possible.

Twelve classic baselines are provided for comparison: first/best/worst fit,
each in a plain and a decreasing variant, each run with every flow pinned to
either its lowest or its highest defined criticality level.

Determinism rules used throughout (ties are never broken randomly):

* flows are visited in their input order;
* networks are scanned in their declaration order, and equal best/worst-fit
  residuals resolve to the earlier network;
* decreasing variants sort by utilization, stable on input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .flows import FlowSpec, utilization
from .networks import NetworkProfile


class FitRule(Enum):
    FIRST_FIT = "ff"
    BEST_FIT = "bf"
    WORST_FIT = "wf"


class LevelSide(Enum):
    LOWEST_DEFINED = "l"
    HIGHEST_DEFINED = "h"


@dataclass(frozen=True)
class HeuristicKind:
    """One of the twelve classic baselines."""

    fit: FitRule
    decreasing: bool
    side: LevelSide

    @property
    def name(self) -> str:
        return f"{self.side.value}-{self.fit.value}{'d' if self.decreasing else ''}"


@dataclass(frozen=True)
class Allocation:
    """A flow served by one network at one criticality level."""

    flow_id: str
    network_id: str
    level: int


@dataclass(frozen=True)
class AllocatorConfig:
    """Shared allocator parameters.

    ``factor`` scales the C/T quotient into the capacity unit (see
    :func:`resilient_alloc.flows.utilization`).
    """

    l_max: int
    factor: int = 8

    def __post_init__(self) -> None:
        if self.l_max < 1:
            raise ValueError(f"l_max must be >= 1, got {self.l_max}")
        if self.factor < 1:
            raise ValueError(f"factor must be >= 1, got {self.factor}")


class AllocationTable:
    """Set of allocations plus residual capacity per network.

    At most one entry exists per flow, and the residual of every network
    stays non-negative; ``place`` refuses an entry that would overload its
    network.
    """

    def __init__(self, networks: list[NetworkProfile]) -> None:
        self.entries: dict[str, Allocation] = {}
        self.residual: dict[str, int] = {p.id: p.capacity_micro_bps for p in networks}
        self._load: dict[str, int] = {}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AllocationTable):
            return NotImplemented
        return self.entries == other.entries and self.residual == other.residual

    def __repr__(self) -> str:
        return f"AllocationTable(entries={self.entries!r})"

    def place(self, allocation: Allocation, demand_micro_bps: int) -> None:
        if allocation.flow_id in self.entries:
            raise ValueError(f"flow {allocation.flow_id!r} is already allocated")
        remaining = self.residual[allocation.network_id] - demand_micro_bps
        if remaining < 0:
            raise ValueError(
                f"network {allocation.network_id!r} cannot take {demand_micro_bps} micro-bps"
            )
        self.entries[allocation.flow_id] = allocation
        self.residual[allocation.network_id] = remaining
        self._load[allocation.flow_id] = demand_micro_bps

    def remove(self, flow_id: str) -> tuple[Allocation, int]:
        """Drop the entry for ``flow_id``, returning it with its demand."""
        allocation = self.entries.pop(flow_id)
        demand = self._load.pop(flow_id)
        self.residual[allocation.network_id] += demand
        return allocation, demand


def _pick_network(
    fit: FitRule, demand: int, networks: list[NetworkProfile], residual: dict[str, int]
) -> str | None:
    """Network id chosen by the fit rule, or None when nothing fits."""
    best_id: str | None = None
    best_after = 0
    for profile in networks:
        after = residual[profile.id] - demand
        if after < 0:
            continue
        if fit is FitRule.FIRST_FIT:
            return profile.id
        if best_id is None:
            best_id, best_after = profile.id, after
        elif fit is FitRule.BEST_FIT and after < best_after:
            best_id, best_after = profile.id, after
        elif fit is FitRule.WORST_FIT and after > best_after:
            best_id, best_after = profile.id, after
    return best_id


def best_fit_network(
    flow: FlowSpec,
    level: int,
    networks: list[NetworkProfile],
    table: AllocationTable,
    factor: int,
) -> str | None:
    """Tightest network that can still take ``flow`` at ``level``.

    Among networks whose residual covers the flow's utilization, returns the
    one with the smallest residual after placement (earlier declaration wins
    ties); None when the flow fits nowhere.
    """
    demand = utilization(flow, level, factor)
    if demand is None:
        raise ValueError(f"flow {flow.id!r} declares no QoS at level {level}")
    return _pick_network(FitRule.BEST_FIT, demand, networks, table.residual)


def _flows_by_level(flows: list[FlowSpec], l_max: int) -> dict[int, list[FlowSpec]]:
    by_level: dict[int, list[FlowSpec]] = {level: [] for level in range(1, l_max + 1)}
    for flow in flows:
        for level in flow.qos:
            by_level[level].append(flow)
    return by_level


def _relax_allocated(
    table: AllocationTable,
    declared_here: list[FlowSpec],
    level: int,
    networks: list[NetworkProfile],
    factor: int,
) -> None:
    # Move flows sitting at a stricter level down to this one when capacity
    # allows; on failure the original entry is restored unchanged.
    for flow in declared_here:
        current = table.entries.get(flow.id)
        if current is None or current.level <= level:
            continue
        original, demand = table.remove(flow.id)
        target = best_fit_network(flow, level, networks, table, factor)
        if target is None:
            table.place(original, demand)
        else:
            relaxed = utilization(flow, level, factor)
            assert relaxed is not None
            table.place(Allocation(flow.id, target, level), relaxed)


def _allocate_new(
    table: AllocationTable,
    declared_here: list[FlowSpec],
    level: int,
    networks: list[NetworkProfile],
    factor: int,
) -> None:
    for flow in declared_here:
        if flow.id in table.entries:
            continue
        target = best_fit_network(flow, level, networks, table, factor)
        if target is not None:
            demand = utilization(flow, level, factor)
            assert demand is not None
            table.place(Allocation(flow.id, target, level), demand)


def cabf(
    flows: list[FlowSpec], networks: list[NetworkProfile], cfg: AllocatorConfig
) -> AllocationTable:
    """Criticality-aware best fit: relax existing entries, then admit new ones."""
    table = AllocationTable(networks)
    by_level = _flows_by_level(flows, cfg.l_max)
    for level in range(cfg.l_max, 0, -1):
        declared = by_level[level]
        _relax_allocated(table, declared, level, networks, cfg.factor)
        _allocate_new(table, declared, level, networks, cfg.factor)
    return table


def cabf_inv(
    flows: list[FlowSpec], networks: list[NetworkProfile], cfg: AllocatorConfig
) -> AllocationTable:
    """Inverted variant: admit new flows at each level before relaxing."""
    table = AllocationTable(networks)
    by_level = _flows_by_level(flows, cfg.l_max)
    for level in range(cfg.l_max, 0, -1):
        declared = by_level[level]
        _allocate_new(table, declared, level, networks, cfg.factor)
        _relax_allocated(table, declared, level, networks, cfg.factor)
    return table


def heuristic(
    kind: HeuristicKind,
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
    cfg: AllocatorConfig,
) -> AllocationTable:
    """Run one classic baseline; flows that fit nowhere are skipped."""
    chosen: list[tuple[FlowSpec, int, int]] = []
    for flow in flows:
        level = (
            flow.lowest_defined_level()
            if kind.side is LevelSide.LOWEST_DEFINED
            else flow.highest_defined_level()
        )
        demand = utilization(flow, level, cfg.factor)
        assert demand is not None
        chosen.append((flow, level, demand))
    if kind.decreasing:
        chosen.sort(key=lambda item: item[2], reverse=True)

    table = AllocationTable(networks)
    for flow, level, demand in chosen:
        target = _pick_network(kind.fit, demand, networks, table.residual)
        if target is not None:
            table.place(Allocation(flow.id, target, level), demand)
    return table


def _baseline_kinds() -> dict[str, HeuristicKind]:
    kinds: dict[str, HeuristicKind] = {}
    for side in (LevelSide.LOWEST_DEFINED, LevelSide.HIGHEST_DEFINED):
        for fit in (FitRule.FIRST_FIT, FitRule.WORST_FIT, FitRule.BEST_FIT):
            for decreasing in (False, True):
                kind = HeuristicKind(fit=fit, decreasing=decreasing, side=side)
                kinds[kind.name] = kind
    return kinds


BASELINE_KINDS = _baseline_kinds()

#: Row order used by the comparison table: first/worst/best-fit blocks with
#: their decreasing and low/high-side variants, then the criticality-aware
#: pair; callers append "exact" for the optimal solver.
HEURISTIC_NAMES = (
    "l-ff",
    "l-ffd",
    "h-ff",
    "h-ffd",
    "l-wf",
    "l-wfd",
    "h-wf",
    "h-wfd",
    "l-bf",
    "l-bfd",
    "h-bf",
    "h-bfd",
    "cabf",
    "cabf-inv",
)


def run_heuristic(
    name: str,
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
    cfg: AllocatorConfig,
) -> AllocationTable:
    """Dispatch one of the fourteen heuristics by CLI name."""
    if name == "cabf":
        return cabf(flows, networks, cfg)
    if name == "cabf-inv":
        return cabf_inv(flows, networks, cfg)
    kind = BASELINE_KINDS.get(name)
    if kind is None:
        raise ValueError(f"unknown heuristic {name!r}; known: {', '.join(HEURISTIC_NAMES)}")
    return heuristic(kind, flows, networks, cfg)


def verify_allocation_table(
    table: AllocationTable,
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
    cfg: AllocatorConfig,
) -> None:
    """Raise ValueError unless the table satisfies all structural invariants."""
    flows_by_id = {flow.id: flow for flow in flows}
    load: dict[str, int] = {p.id: 0 for p in networks}
    for flow_id, allocation in table.entries.items():
        if flow_id != allocation.flow_id:
            raise ValueError(f"entry key {flow_id!r} does not match {allocation!r}")
        flow = flows_by_id.get(flow_id)
        if flow is None:
            raise ValueError(f"allocation for unknown flow {flow_id!r}")
        if allocation.network_id not in load:
            raise ValueError(f"allocation on unknown network {allocation.network_id!r}")
        demand = utilization(flow, allocation.level, cfg.factor)
        if demand is None:
            raise ValueError(f"flow {flow_id!r} has no QoS at level {allocation.level}")
        load[allocation.network_id] += demand
    for profile in networks:
        used = load[profile.id]
        if used > profile.capacity_micro_bps:
            raise ValueError(f"network {profile.id!r} overloaded: {used} micro-bps")
        expected_residual = profile.capacity_micro_bps - used
        if table.residual.get(profile.id) != expected_residual:
            raise ValueError(
                f"residual mismatch on {profile.id!r}: "
                f"{table.residual.get(profile.id)} != {expected_residual}"
            )
