"""Criticality-aware multi-network QoS allocation and edge-node simulation.

The library treats each network interface of a multi-radio edge device as a
capacity bin and chooses, for every declared message flow, a serving network
and a criticality level (its service tier). It ships an exact
branch-and-bound solver, a criticality-aware best-fit allocator with an
inverted variant, twelve classic bin-packing baselines, the framed wire
protocol spoken between the application host and the allocating node, and a
deterministic discrete-event simulator of the pair.
"""

from .allocators import (
    Allocation,
    AllocationTable,
    AllocatorConfig,
    HeuristicKind,
    best_fit_network,
    cabf,
    cabf_inv,
    heuristic,
    run_heuristic,
    verify_allocation_table,
)
from .catalog import ALGORITHM_NAMES, run_algorithm
from .flows import (
    FlowSet,
    FlowSpec,
    QosRequirement,
    ValidationError,
    load_flow_set,
    utilization,
    validate_flow_set,
)
from .metrics import AllocationReport, objective, report
from .networks import (
    BUILTIN_KINDS,
    FixedLatency,
    NetworkProfile,
    UniformLatency,
    builtin_profile,
    load_networks,
    lora_profile,
)
from .simulator import (
    FixedDuration,
    Handshake,
    InvalidScenario,
    NetworkEvent,
    Scenario,
    SimReport,
    UniformDuration,
    handshake_duration,
    load_scenario,
    run,
)
from .solver import IlpInstance, Infeasible, exact_solve, objective_upper_bound

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "Allocation",
    "AllocationReport",
    "AllocationTable",
    "AllocatorConfig",
    "BUILTIN_KINDS",
    "FixedDuration",
    "FixedLatency",
    "FlowSet",
    "FlowSpec",
    "Handshake",
    "HeuristicKind",
    "IlpInstance",
    "Infeasible",
    "InvalidScenario",
    "NetworkEvent",
    "NetworkProfile",
    "QosRequirement",
    "Scenario",
    "SimReport",
    "UniformDuration",
    "UniformLatency",
    "ValidationError",
    "best_fit_network",
    "builtin_profile",
    "cabf",
    "cabf_inv",
    "exact_solve",
    "handshake_duration",
    "heuristic",
    "load_flow_set",
    "load_networks",
    "load_scenario",
    "lora_profile",
    "objective",
    "objective_upper_bound",
    "report",
    "run",
    "run_algorithm",
    "run_heuristic",
    "utilization",
    "validate_flow_set",
    "verify_allocation_table",
]
