"""Deterministic discrete-event simulation of the host/node pair.

The host side plays the applications: one generator per flow emits a message
of the configured payload size every T seconds (first emission at t = T) and
keeps delivery statistics. The node side runs the allocator, announces the
resulting table over the framed wire protocol, and forwards application
messages to their assigned network subject to that network's delivery
constraints. Host and node are separate state machines that exchange real
protocol frames through an in-memory channel (encoded on one side, decoded
on the other), so codec regressions surface as simulation failures.

Virtual time replaces a thread-and-sleep implementation style: events are
processed in non-decreasing time order with deterministic tie-breaking
(network change < re-allocation start < re-allocation complete < message
emission < delivery, then flow input order, then insertion order). All
randomness (latency samples, handshake durations) comes from one named,
seeded generator, so a scenario replays to a byte-identical report.

Delivery rules enforced per network, in this order: a message larger than
the payload cap, over the daily message allowance (which resets at every
simulated midnight, t mod 86400 = 0), or arriving sooner than the minimum
inter-message gap after the previous successful send is rejected and
reported as not delivered; the gap clock only advances on successful sends.
Messages still in flight on a network when it goes down are also counted as
not delivered; there is no retry.

Availability changes trigger a re-allocation handshake: the node announces
re-allocation, the host pauses every generator immediately, and after the
configured context-switch duration (default: uniform between 1.3 s and
1.5 s) the node publishes the new table, the host acknowledges, and
generators restart with a full period. During the window the node keeps the
previous table active except for entries on networks that are down. A
second availability change inside an open window extends it: the completion
is re-sampled from the later change and a single merged handshake is
recorded.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import wire
from .allocators import AllocatorConfig
from .catalog import ALGORITHM_NAMES, run_algorithm
from .flows import FlowSpec, flow_from_dict, validate_flow_set
from .networks import NetworkProfile, network_from_dict
from .rational import as_fraction
from .rng import RNG_NAME, SplitMix64

SIM_SCHEMA_VERSION = 1

_SECONDS_PER_DAY = 86400

# Tie-break priorities for events sharing a timestamp.
_P_NETWORK_CHANGE = 0
_P_REALLOC_START = 1
_P_REALLOC_COMPLETE = 2
_P_EMIT = 3
_P_DELIVER = 4


class InvalidScenario(ValueError):
    """The scenario violates a structural rule."""


@dataclass(frozen=True)
class FixedDuration:
    """Constant re-allocation context-switch time in seconds."""

    seconds: Fraction

    def sample(self, rng: SplitMix64) -> Fraction:
        return Fraction(self.seconds)


@dataclass(frozen=True)
class UniformDuration:
    """Context-switch time drawn uniformly from [min, max) seconds."""

    min_seconds: Fraction
    max_seconds: Fraction

    def sample(self, rng: SplitMix64) -> Fraction:
        return rng.uniform(Fraction(self.min_seconds), Fraction(self.max_seconds))


DurationModel = FixedDuration | UniformDuration

DEFAULT_HANDSHAKE = UniformDuration(Fraction("1.3"), Fraction("1.5"))


def handshake_duration(model: DurationModel, rng: SplitMix64) -> Fraction:
    """One context-switch duration sample in seconds."""
    return model.sample(rng)


@dataclass(frozen=True)
class NetworkEvent:
    """Availability change: a network goes up or down at ``time``."""

    time: Fraction
    network_id: str
    up: bool


@dataclass(frozen=True)
class Scenario:
    """Complete simulation input; see the module docstring for semantics."""

    flows: tuple[FlowSpec, ...]
    networks: tuple[NetworkProfile, ...]
    l_max: int
    factor: int
    algorithm: str
    duration_seconds: Fraction
    seed: int
    events: tuple[NetworkEvent, ...] = ()
    handshake: DurationModel = DEFAULT_HANDSHAKE
    initially_available: tuple[str, ...] | None = None

    def validate(self) -> None:
        try:
            validate_flow_set(self.flows, self.l_max)
        except ValueError as exc:
            raise InvalidScenario(str(exc)) from None
        if self.duration_seconds <= 0:
            raise InvalidScenario(f"duration must be > 0, got {self.duration_seconds}")
        if self.algorithm not in ALGORITHM_NAMES:
            raise InvalidScenario(f"unknown algorithm {self.algorithm!r}")
        if self.factor < 1:
            raise InvalidScenario(f"factor must be >= 1, got {self.factor}")
        if not 0 <= self.seed < (1 << 64):
            raise InvalidScenario("seed must fit in 64 bits")
        names = [flow.name for flow in self.flows]
        if len(set(names)) != len(names):
            raise InvalidScenario("flow names must be unique (the wire protocol addresses flows by name)")
        ids = {profile.id for profile in self.networks}
        if len(ids) != len(self.networks):
            raise InvalidScenario("network ids must be unique")
        for event in self.events:
            if event.network_id not in ids:
                raise InvalidScenario(f"event references unknown network {event.network_id!r}")
            if not 0 <= event.time <= self.duration_seconds:
                raise InvalidScenario(f"event time {event.time} outside [0, duration]")
        if self.initially_available is not None:
            unknown = set(self.initially_available) - ids
            if unknown:
                raise InvalidScenario(f"initially_available references unknown networks {sorted(unknown)}")


@dataclass
class FlowLevelCounts:
    sent: int = 0
    delivered: int = 0
    err_not_allocated: int = 0
    err_not_delivered: int = 0

    def merged_with(self, other: "FlowLevelCounts") -> "FlowLevelCounts":
        return FlowLevelCounts(
            sent=self.sent + other.sent,
            delivered=self.delivered + other.delivered,
            err_not_allocated=self.err_not_allocated + other.err_not_allocated,
            err_not_delivered=self.err_not_delivered + other.err_not_delivered,
        )


@dataclass
class NetworkCounts:
    messages: int = 0
    bytes: int = 0
    budget_violations_avoided: int = 0


@dataclass(frozen=True)
class Handshake:
    start: Fraction
    accepted: Fraction

    @property
    def duration(self) -> Fraction:
        return self.accepted - self.start


@dataclass
class SimReport:
    """Everything the simulation measured; JSON rendering is deterministic."""

    algorithm: str
    seed: int
    rng_name: str
    factor: int
    l_max: int
    duration_seconds: Fraction
    per_flow_level: dict[str, dict[int, FlowLevelCounts]]
    per_network: dict[str, NetworkCounts]
    handshakes: list[Handshake]
    final_allocation: dict[str, tuple[str, int] | None]

    def flow_totals(self, flow_id: str) -> FlowLevelCounts:
        total = FlowLevelCounts()
        for counts in self.per_flow_level[flow_id].values():
            total = total.merged_with(counts)
        return total

    def delivered_fraction(self, flow_id: str) -> Fraction | None:
        total = self.flow_totals(flow_id)
        if total.sent == 0:
            return None
        return Fraction(total.delivered, total.sent)

    def delivered_fraction_by_level(self, level: int) -> Fraction | None:
        sent = delivered = 0
        for levels in self.per_flow_level.values():
            counts = levels.get(level)
            if counts is not None:
                sent += counts.sent
                delivered += counts.delivered
        if sent == 0:
            return None
        return Fraction(delivered, sent)

    def to_json_dict(self) -> dict:
        per_flow = {}
        for flow_id, levels in self.per_flow_level.items():
            total = self.flow_totals(flow_id)
            fraction = self.delivered_fraction(flow_id)
            per_flow[flow_id] = {
                "levels": {
                    str(level): {
                        "sent": counts.sent,
                        "delivered": counts.delivered,
                        "err_not_allocated": counts.err_not_allocated,
                        "err_not_delivered": counts.err_not_delivered,
                    }
                    for level, counts in sorted(levels.items())
                },
                "sent": total.sent,
                "delivered": total.delivered,
                "err_not_allocated": total.err_not_allocated,
                "err_not_delivered": total.err_not_delivered,
                "delivered_fraction": None if fraction is None else float(fraction),
            }
        by_level = {}
        for level in range(1, self.l_max + 1):
            fraction = self.delivered_fraction_by_level(level)
            by_level[str(level)] = None if fraction is None else float(fraction)
        return {
            "schema_version": SIM_SCHEMA_VERSION,
            "algorithm": self.algorithm,
            "seed": self.seed,
            "rng": self.rng_name,
            "factor": self.factor,
            "l_max": self.l_max,
            "duration_seconds": float(self.duration_seconds),
            "per_flow": per_flow,
            "per_network": {
                network_id: {
                    "messages": counts.messages,
                    "bytes": counts.bytes,
                    "budget_violations_avoided": counts.budget_violations_avoided,
                }
                for network_id, counts in self.per_network.items()
            },
            "handshakes": [
                {
                    "start": float(shake.start),
                    "accepted": float(shake.accepted),
                    "duration": float(shake.duration),
                }
                for shake in self.handshakes
            ],
            "delivered_fraction_by_level": by_level,
            "final_allocation": {
                flow_id: None if placed is None else {"network": placed[0], "level": placed[1]}
                for flow_id, placed in self.final_allocation.items()
            },
        }

    def json_bytes(self) -> bytes:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2).encode("utf-8")


@dataclass
class _MsgRecord:
    seq: int
    flow_id: str
    flow_name: str
    level: int
    size: int
    network_id: str | None = None
    cancelled: bool = False


@dataclass
class _NetworkRuntime:
    profile: NetworkProfile
    up: bool
    last_send: Fraction | None = None
    day_index: int | None = None
    sent_today: int = 0
    pending: dict[int, _MsgRecord] = field(default_factory=dict)


@dataclass
class _GeneratorConfig:
    level: int
    period: Fraction
    size: int


class _Simulation:
    """Single-run state; see module docstring for the rules implemented."""

    def __init__(self, scenario: Scenario, transcript: list | None) -> None:
        self.scenario = scenario
        self.transcript = transcript
        self.rng = SplitMix64(scenario.seed)
        self.cfg = AllocatorConfig(l_max=scenario.l_max, factor=scenario.factor)
        self.flow_index = {flow.id: i for i, flow in enumerate(scenario.flows)}

        initially = (
            set(scenario.initially_available)
            if scenario.initially_available is not None
            else {p.id for p in scenario.networks}
        )
        self.networks = {
            p.id: _NetworkRuntime(profile=p, up=p.id in initially) for p in scenario.networks
        }

        # host state
        self.paused = False
        self.generators: dict[str, _GeneratorConfig] = {}
        self.emit_epoch: dict[str, int] = {flow.id: 0 for flow in scenario.flows}
        self.wire_acks: dict[str, int] = {}
        self.wire_errs: dict[tuple[str, wire.ErrorReason], int] = {}

        # node state
        self.active: dict[str, tuple[str, int]] = {}  # flow name -> (network id, level)
        self.pending_active: dict[str, tuple[str, int]] | None = None
        self.window_open = False
        self.window_start = Fraction(0)
        self.realloc_epoch = 0

        # accounting
        self.stats: dict[str, dict[int, FlowLevelCounts]] = {
            flow.id: {} for flow in scenario.flows
        }
        self.net_counts: dict[str, NetworkCounts] = {
            p.id: NetworkCounts() for p in scenario.networks
        }
        self.handshakes: list[Handshake] = []

        self.now = Fraction(0)
        self._heap: list[tuple] = []
        self._seq = 0
        self._msg_seq = 0
        self.msg_records: dict[int, _MsgRecord] = {}
        self.attribution: deque[int] = deque()

        self.host_decoder = wire.FrameDecoder()
        self.node_decoder = wire.FrameDecoder()

    # -- plumbing -------------------------------------------------------------

    def _push(self, time: Fraction, priority: int, flow_idx: int, action, *payload) -> None:
        self._seq += 1
        heapq.heappush(self._heap, (time, priority, flow_idx, self._seq, action, payload))

    def _counts(self, flow_id: str, level: int) -> FlowLevelCounts:
        return self.stats[flow_id].setdefault(level, FlowLevelCounts())

    def _log(self, direction: str, body: bytes) -> None:
        if self.transcript is not None:
            self.transcript.append(
                {
                    "t": float(self.now),
                    "dir": direction,
                    "body": body.decode("utf-8", "backslashreplace"),
                }
            )

    def _host_to_node(self, body: bytes) -> None:
        self._log("host->node", body)
        for event in self.node_decoder.feed(wire.encode_frame(body)):
            if isinstance(event, wire.MalformedFrame):
                raise AssertionError(f"node received malformed frame: {event}")
            self._node_on_frame(event.body)

    def _node_to_host(self, body: bytes) -> None:
        self._log("node->host", body)
        for event in self.host_decoder.feed(wire.encode_frame(body)):
            if isinstance(event, wire.MalformedFrame):
                raise AssertionError(f"host received malformed frame: {event}")
            self._host_on_frame(event.body)

    # -- node ------------------------------------------------------------------

    def _available_networks(self) -> list[NetworkProfile]:
        return [p for p in self.scenario.networks if self.networks[p.id].up]

    def _compute_allocation(self) -> dict[str, tuple[str, int]]:
        table = run_algorithm(
            self.scenario.algorithm,
            list(self.scenario.flows),
            self._available_networks(),
            self.cfg,
        )
        by_name: dict[str, tuple[str, int]] = {}
        for flow in self.scenario.flows:
            entry = table.entries.get(flow.id)
            if entry is not None:
                by_name[flow.name] = (entry.network_id, entry.level)
        return by_name

    def _mfea_for(self, allocation: dict[str, tuple[str, int]]) -> list[wire.MfeaEntry]:
        entries = []
        for flow in self.scenario.flows:
            placed = allocation.get(flow.name)
            if placed is None:
                continue
            network_id, level = placed
            qos = flow.qos[level]
            period = qos.min_interval_seconds
            entries.append(
                wire.MfeaEntry(
                    payload_size=qos.message_size_bytes,
                    network=self.networks[network_id].profile.name,
                    period_seconds=(
                        int(period) if period.denominator == 1 else float(period)
                    ),
                    flow_name=flow.name,
                    level=level,
                )
            )
        return entries

    def _announce_allocation(self, allocation: dict[str, tuple[str, int]]) -> None:
        self.pending_active = allocation
        text = wire.encode_mfea(self._mfea_for(allocation))
        self._node_to_host(text.encode("utf-8"))

    def _node_on_frame(self, body: bytes) -> None:
        if body.startswith(b"<"):
            message = wire.parse_control(body.decode("utf-8"))
            if isinstance(message, wire.ReallocAccepted):
                assert self.window_open and self.pending_active is not None
                self.active = self.pending_active
                self.pending_active = None
                self.window_open = False
                self.handshakes.append(Handshake(start=self.window_start, accepted=self.now))
            else:
                raise AssertionError(f"node cannot handle control message {message!r}")
            return
        self._node_on_app(wire.decode_app(body))

    def _node_on_app(self, message: wire.AppMessage) -> None:
        seq = self.attribution.popleft()
        record = self.msg_records[seq]
        assert record.flow_name == message.flow_name
        counts = self._counts(record.flow_id, record.level)

        placed = self.active.get(message.flow_name)
        if placed is None or not self.networks[placed[0]].up:
            counts.err_not_allocated += 1
            self._node_to_host(
                wire.encode_control(
                    wire.Err(message.flow_name, wire.ErrorReason.NOT_ALLOCATED)
                ).encode("utf-8")
            )
            return

        network_id, _level = placed
        runtime = self.networks[network_id]
        profile = runtime.profile

        refusal = None
        cap = profile.max_payload_bytes
        if cap is not None and record.size > cap:
            refusal = "payload"
        if refusal is None and profile.max_messages_per_day is not None:
            day = int(self.now // _SECONDS_PER_DAY)
            if runtime.day_index != day:
                runtime.day_index = day
                runtime.sent_today = 0
            if runtime.sent_today >= profile.max_messages_per_day:
                refusal = "budget"
                self.net_counts[network_id].budget_violations_avoided += 1
        if refusal is None:
            gap = profile.min_inter_message_gap_seconds
            if (
                gap is not None
                and runtime.last_send is not None
                and self.now - runtime.last_send < gap
            ):
                refusal = "gap"

        if refusal is not None:
            counts.err_not_delivered += 1
            self._node_to_host(
                wire.encode_control(
                    wire.Err(message.flow_name, wire.ErrorReason.NOT_DELIVERED)
                ).encode("utf-8")
            )
            return

        runtime.last_send = self.now
        if profile.max_messages_per_day is not None:
            runtime.sent_today += 1
        record.network_id = network_id
        runtime.pending[seq] = record
        latency = profile.latency.sample(self.rng)
        flow_idx = self.flow_index[record.flow_id]
        self._push(self.now + latency, _P_DELIVER, flow_idx, self._do_deliver, seq)

    def _do_deliver(self, seq: int) -> None:
        record = self.msg_records[seq]
        if record.cancelled:
            return
        assert record.network_id is not None
        runtime = self.networks[record.network_id]
        runtime.pending.pop(seq, None)
        self._counts(record.flow_id, record.level).delivered += 1
        counts = self.net_counts[record.network_id]
        counts.messages += 1
        counts.bytes += record.size
        self._node_to_host(
            wire.encode_control(wire.Ack(record.flow_name)).encode("utf-8")
        )

    # -- host -------------------------------------------------------------------

    def _host_on_frame(self, body: bytes) -> None:
        text = body.decode("utf-8")
        if text.startswith("MFEA:"):
            self._host_apply_mfea(wire.decode_mfea(text))
            return
        message = wire.parse_control(text)
        if isinstance(message, wire.ReallocInit):
            self.paused = True
            for flow in self.scenario.flows:
                self.emit_epoch[flow.id] += 1
            return
        if isinstance(message, wire.Ack):
            self.wire_acks[message.flow_name] = self.wire_acks.get(message.flow_name, 0) + 1
            return
        if isinstance(message, wire.Err):
            key = (message.flow_name, message.reason)
            self.wire_errs[key] = self.wire_errs.get(key, 0) + 1
            return
        raise AssertionError(f"host cannot handle control message {message!r}")

    def _host_apply_mfea(self, entries: list[wire.MfeaEntry]) -> None:
        by_name = {entry.flow_name: entry for entry in entries}
        self.generators = {}
        for flow in self.scenario.flows:
            entry = by_name.get(flow.name)
            if entry is None:
                # No service: the application still runs at its most generous
                # declared level, and the node will refuse its messages.
                level = flow.lowest_defined_level()
            else:
                level = entry.level
                qos = flow.qos[level]
                assert entry.payload_size == qos.message_size_bytes
                period = qos.min_interval_seconds
                assert entry.period_seconds == (
                    int(period) if period.denominator == 1 else float(period)
                )
            qos = flow.qos[level]
            self.generators[flow.id] = _GeneratorConfig(
                level=level,
                period=qos.min_interval_seconds,
                size=qos.message_size_bytes,
            )
        was_paused = self.paused
        self.paused = False
        self._schedule_all_emissions()
        if was_paused:
            self._host_to_node(wire.encode_control(wire.ReallocAccepted()).encode("utf-8"))

    def _schedule_all_emissions(self) -> None:
        for flow in self.scenario.flows:
            generator = self.generators[flow.id]
            self.emit_epoch[flow.id] += 1
            next_time = self.now + generator.period
            if next_time <= self.scenario.duration_seconds:
                self._push(
                    next_time,
                    _P_EMIT,
                    self.flow_index[flow.id],
                    self._do_emit,
                    flow.id,
                    self.emit_epoch[flow.id],
                )

    def _do_emit(self, flow_id: str, epoch: int) -> None:
        if epoch != self.emit_epoch[flow_id] or self.paused:
            return
        generator = self.generators[flow_id]
        flow = self.scenario.flows[self.flow_index[flow_id]]
        self._counts(flow_id, generator.level).sent += 1
        self._msg_seq += 1
        record = _MsgRecord(
            seq=self._msg_seq,
            flow_id=flow_id,
            flow_name=flow.name,
            level=generator.level,
            size=generator.size,
        )
        self.msg_records[record.seq] = record
        self.attribution.append(record.seq)
        self._host_to_node(
            wire.encode_app(
                wire.AppMessage(flow.name, generator.level, b"x" * generator.size)
            )
        )
        next_time = self.now + generator.period
        if next_time <= self.scenario.duration_seconds:
            self._push(next_time, _P_EMIT, self.flow_index[flow_id], self._do_emit, flow_id, epoch)

    # -- availability and re-allocation ------------------------------------------

    def _do_network_change(self, network_id: str, up: bool) -> None:
        runtime = self.networks[network_id]
        runtime.up = up
        if not up:
            for record in runtime.pending.values():
                record.cancelled = True
                self._counts(record.flow_id, record.level).err_not_delivered += 1
                # the node reports the loss exactly as a failed send would be
                self._node_to_host(
                    wire.encode_control(
                        wire.Err(record.flow_name, wire.ErrorReason.NOT_DELIVERED)
                    ).encode("utf-8")
                )
            runtime.pending.clear()
        self._push(self.now, _P_REALLOC_START, 0, self._do_realloc_start)

    def _do_realloc_start(self) -> None:
        self.realloc_epoch += 1
        if not self.window_open:
            self.window_open = True
            self.window_start = self.now
            self._node_to_host(wire.encode_control(wire.ReallocInit()).encode("utf-8"))
        duration = handshake_duration(self.scenario.handshake, self.rng)
        self._push(self.now + duration, _P_REALLOC_COMPLETE, 0, self._do_realloc_complete, self.realloc_epoch)

    def _do_realloc_complete(self, epoch: int) -> None:
        if epoch != self.realloc_epoch or not self.window_open:
            return
        self._announce_allocation(self._compute_allocation())

    # -- driver --------------------------------------------------------------------

    def run(self) -> SimReport:
        initial = self._compute_allocation()
        self.pending_active = None
        self.active = initial
        text = wire.encode_mfea(self._mfea_for(initial))
        self._node_to_host(text.encode("utf-8"))

        for event in self.scenario.events:
            self._push(
                event.time, _P_NETWORK_CHANGE, 0, self._do_network_change, event.network_id, event.up
            )

        while self._heap:
            time, _priority, _flow_idx, _seq, action, payload = heapq.heappop(self._heap)
            self.now = time
            action(*payload)

        return self._build_report()

    def _build_report(self) -> SimReport:
        final: dict[str, tuple[str, int] | None] = {}
        for flow in self.scenario.flows:
            final[flow.id] = self.active.get(flow.name)

        report = SimReport(
            algorithm=self.scenario.algorithm,
            seed=self.scenario.seed,
            rng_name=RNG_NAME,
            factor=self.scenario.factor,
            l_max=self.scenario.l_max,
            duration_seconds=self.scenario.duration_seconds,
            per_flow_level={
                flow.id: dict(sorted(self.stats[flow.id].items())) for flow in self.scenario.flows
            },
            per_network={p.id: self.net_counts[p.id] for p in self.scenario.networks},
            handshakes=list(self.handshakes),
            final_allocation=final,
        )
        self._check_consistency(report)
        return report

    def _check_consistency(self, report: SimReport) -> None:
        # Conservation and agreement between the wire view and the counters.
        for flow in self.scenario.flows:
            total = report.flow_totals(flow.id)
            assert total.sent == (
                total.delivered + total.err_not_allocated + total.err_not_delivered
            ), f"conservation violated for flow {flow.id}"
            assert self.wire_acks.get(flow.name, 0) == total.delivered
            assert (
                self.wire_errs.get((flow.name, wire.ErrorReason.NOT_ALLOCATED), 0)
                == total.err_not_allocated
            )
            assert (
                self.wire_errs.get((flow.name, wire.ErrorReason.NOT_DELIVERED), 0)
                == total.err_not_delivered
            )


def run(scenario: Scenario, transcript: list | None = None) -> SimReport:
    """Simulate ``scenario``; optionally append wire transcript entries.

    ``transcript``, when given, receives one ``{"t", "dir", "body"}`` dict per
    frame in stream order.
    """
    scenario.validate()
    return _Simulation(scenario, transcript).run()


# --- scenario JSON -----------------------------------------------------------


def _handshake_from_dict(obj: dict) -> DurationModel:
    if "fixed_seconds" in obj:
        return FixedDuration(as_fraction(obj["fixed_seconds"]))
    if "uniform_seconds" in obj:
        low, high = obj["uniform_seconds"]
        return UniformDuration(as_fraction(low), as_fraction(high))
    raise InvalidScenario(f"handshake must specify fixed_seconds or uniform_seconds, got {obj!r}")


def scenario_from_dict(obj: dict) -> Scenario:
    try:
        flows = tuple(flow_from_dict(entry) for entry in obj["flows"])
        networks = tuple(network_from_dict(entry) for entry in obj["networks"])
        events = tuple(
            NetworkEvent(
                time=as_fraction(entry["t"]),
                network_id=str(entry["network"]),
                up=entry["kind"] == "up",
            )
            for entry in obj.get("events", ())
        )
        for entry in obj.get("events", ()):
            if entry["kind"] not in ("up", "down"):
                raise InvalidScenario(f"event kind must be 'up' or 'down', got {entry['kind']!r}")
        initially = obj.get("initially_available")
        scenario = Scenario(
            flows=flows,
            networks=networks,
            l_max=int(obj["l_max"]),
            factor=int(obj.get("factor", 8)),
            algorithm=str(obj.get("algorithm", "cabf-inv")),
            duration_seconds=as_fraction(obj["duration_seconds"]),
            seed=int(obj["seed"]),
            events=events,
            handshake=(
                _handshake_from_dict(obj["handshake"]) if "handshake" in obj else DEFAULT_HANDSHAKE
            ),
            initially_available=None if initially is None else tuple(initially),
        )
    except KeyError as exc:
        raise InvalidScenario(f"scenario is missing key {exc}") from None
    scenario.validate()
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    with open(path, encoding="utf-8") as handle:
        return scenario_from_dict(json.load(handle))
