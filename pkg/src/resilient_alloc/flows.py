"""Mixed-criticality message flows and their bandwidth utilization.

A message flow declares, per criticality level, the largest message it will
send (C, bytes) and the minimum interval between consecutive messages
(T, seconds). Level 1 is normal operation with the most generous service;
higher levels describe progressively degraded service. A level with no
declared requirement means the flow requests no service at that level.

Utilization is the bandwidth demand ``factor * C / T`` expressed as an
integer number of micro-bits-per-second. Fixed-point integers (never floats)
keep capacity comparisons and tie-breaking reproducible across runs and
platforms. ``factor`` converts the byte-based C/T quotient into the unit the
network capacities are quoted in: 8 treats capacities as bits per second,
1 compares the raw quotient directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .rational import as_fraction

MICRO = 10**6

#: Characters that may not appear in flow names; the wire protocol uses
#: commas, colons, angle brackets and newlines as delimiters.
FORBIDDEN_NAME_CHARS = frozenset(",:<>\n")


class ValidationError(ValueError):
    """A flow set violates one of its structural rules."""

    def __init__(self, flow_id: str | None, rule: str, detail: str) -> None:
        super().__init__(f"[{rule}] flow {flow_id!r}: {detail}")
        self.flow_id = flow_id
        self.rule = rule


@dataclass(frozen=True)
class QosRequirement:
    """Service requirement of one flow at one criticality level.

    message_size_bytes is the maximum message size C; min_interval_seconds
    is the minimum spacing T between consecutive messages.
    """

    message_size_bytes: int
    min_interval_seconds: Fraction

    def __post_init__(self) -> None:
        if self.message_size_bytes < 1:
            raise ValueError(f"message size must be >= 1, got {self.message_size_bytes}")
        if self.min_interval_seconds <= 0:
            raise ValueError(f"interval must be > 0, got {self.min_interval_seconds}")


@dataclass(frozen=True)
class FlowSpec:
    """A declared message flow with per-level QoS requirements.

    ``qos`` maps criticality level (int, 1-based) to the requirement at that
    level. Absent levels mean no service is requested there.
    """

    id: str
    app: str
    name: str
    qos: dict[int, QosRequirement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        bad = FORBIDDEN_NAME_CHARS.intersection(self.name)
        if bad:
            raise ValueError(f"flow name {self.name!r} contains forbidden characters {sorted(bad)}")
        if not self.name:
            raise ValueError("flow name must be non-empty")

    def defined_levels(self) -> list[int]:
        return sorted(self.qos)

    def lowest_defined_level(self) -> int:
        return min(self.qos)

    def highest_defined_level(self) -> int:
        return max(self.qos)


@dataclass(frozen=True)
class FlowSet:
    """A flow catalogue with the number of criticality levels it assumes."""

    flows: tuple[FlowSpec, ...]
    l_max: int


def _round_half_up(num: int, den: int) -> int:
    # floor(num/den + 1/2) for positive den
    return (2 * num + den) // (2 * den)


def utilization(flow: FlowSpec, level: int, factor: int = 8) -> int | None:
    """Bandwidth demand of ``flow`` at ``level`` in integer micro-bps.

    Returns None when the flow declares no service at that level. The C/T
    quotient is rounded half-up at micro-bps resolution and then multiplied
    by ``factor``, so ``utilization(f, L, 8) == 8 * utilization(f, L, 1)``
    holds exactly for every input.
    """
    qos = flow.qos.get(level)
    if qos is None:
        return None
    t = qos.min_interval_seconds
    num = qos.message_size_bytes * MICRO * t.denominator
    return factor * _round_half_up(num, t.numerator)


def validate_flow_set(flows: list[FlowSpec] | tuple[FlowSpec, ...], l_max: int) -> None:
    """Check set-level rules; raise ValidationError naming flow and rule."""
    if l_max < 1:
        raise ValidationError(None, "bad-l-max", f"l_max must be >= 1, got {l_max}")
    seen: set[str] = set()
    for flow in flows:
        if flow.id in seen:
            raise ValidationError(flow.id, "duplicate-id", "flow id appears more than once")
        seen.add(flow.id)
        if not flow.qos:
            raise ValidationError(flow.id, "no-levels", "flow declares no QoS level")
        for level in flow.qos:
            if not 1 <= level <= l_max:
                raise ValidationError(
                    flow.id, "bad-level", f"level {level} outside 1..{l_max}"
                )


def flow_from_dict(obj: dict) -> FlowSpec:
    qos: dict[int, QosRequirement] = {}
    for key, entry in obj.get("qos", {}).items():
        level = int(key)
        qos[level] = QosRequirement(
            message_size_bytes=int(entry["c"]),
            min_interval_seconds=as_fraction(entry["t"]),
        )
    return FlowSpec(id=str(obj["id"]), app=str(obj.get("app", "")), name=str(obj["name"]), qos=qos)


def flow_set_from_dict(obj: dict) -> FlowSet:
    flows = tuple(flow_from_dict(entry) for entry in obj["flows"])
    l_max = int(obj["l_max"])
    validate_flow_set(flows, l_max)
    return FlowSet(flows=flows, l_max=l_max)


def load_flow_set(path: str | Path) -> FlowSet:
    """Read a ``{"l_max": .., "flows": [..]}`` document from disk."""
    with open(path, encoding="utf-8") as handle:
        return flow_set_from_dict(json.load(handle))
