"""Exact maximizer for the allocation problem via branch-and-bound.

Each flow either stays unallocated or is assigned one (network, level) pair
with its level-specific bandwidth demand; no network may be driven past its
capacity, and the score of an assignment at level L is ``1 + l_max - L`` (the
extra unit makes serving a flow at the strictest level better than not
serving it at all). Depth-first search walks flows in input order; per flow
it tries levels in ascending order, networks in declaration order, and
"unallocated" last. Branches whose optimistic bound cannot beat the
incumbent are pruned, and the incumbent is only replaced on a strict
improvement, so the returned table is the lexicographically first optimum
under that exploration order.

A purpose-built search keeps the package dependency-free; desk-scale
instances (a dozen flows, a few networks) solve in well under a second.
"""

from __future__ import annotations

from dataclasses import dataclass

from .allocators import Allocation, AllocationTable
from .flows import FlowSpec, utilization
from .networks import NetworkProfile


class Infeasible(Exception):
    """No assignment serves every flow (raised only with require_all)."""


@dataclass(frozen=True)
class IlpInstance:
    """One problem instance for the exact solver.

    With ``require_all`` the optional constraint that every flow must be
    served is enforced; the default leaves flows free to stay unallocated.
    """

    flows: tuple[FlowSpec, ...]
    networks: tuple[NetworkProfile, ...]
    l_max: int
    factor: int = 8
    require_all: bool = False


def objective_upper_bound(partial_objective: int, flows_remaining: int, l_max: int) -> int:
    """Admissible bound: every remaining flow scores at most ``l_max``."""
    return partial_objective + flows_remaining * l_max


@dataclass
class _Best:
    objective: int = -1
    choice: list[tuple[int, int] | None] | None = None


def exact_solve(instance: IlpInstance, prune: bool = True) -> AllocationTable:
    """Optimal allocation table for ``instance``.

    ``prune=False`` disables the bound (exhaustive search); it exists so the
    bound's admissibility can be checked against unpruned search.
    """
    flows = list(instance.flows)
    networks = list(instance.networks)
    n = len(flows)
    options: list[list[tuple[int, int, int]]] = []  # (level, score, demand)
    for flow in flows:
        per_flow = []
        for level in sorted(flow.qos):
            if level > instance.l_max:
                continue
            demand = utilization(flow, level, instance.factor)
            assert demand is not None
            per_flow.append((level, 1 + instance.l_max - level, demand))
        options.append(per_flow)

    residual = [p.capacity_micro_bps for p in networks]
    choice: list[tuple[int, int] | None] = [None] * n
    best = _Best()

    def search(i: int, objective: int) -> None:
        if i == n:
            if objective > best.objective:
                best.objective = objective
                best.choice = list(choice)
            return
        if prune and objective_upper_bound(objective, n - i, instance.l_max) <= best.objective:
            return
        for level, score, demand in options[i]:
            for j in range(len(networks)):
                if residual[j] >= demand:
                    residual[j] -= demand
                    choice[i] = (level, j)
                    search(i + 1, objective + score)
                    residual[j] += demand
        choice[i] = None
        if not instance.require_all:
            search(i + 1, objective)

    search(0, 0)

    if best.choice is None:
        raise Infeasible("no assignment serves every flow")

    table = AllocationTable(networks)
    for i, picked in enumerate(best.choice):
        if picked is None:
            continue
        level, j = picked
        demand = utilization(flows[i], level, instance.factor)
        assert demand is not None
        table.place(Allocation(flows[i].id, networks[j].id, level), demand)
    return table
