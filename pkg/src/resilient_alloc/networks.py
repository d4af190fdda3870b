"""Network interface profiles: capacity bins plus delivery constraints.

A profile describes one communication interface as seen by the allocator
(bandwidth capacity in bits per second) and by the simulator (payload cap,
daily message allowance, minimum spacing between sends, latency behaviour,
connect time). The built-in profiles cover the Wi-Fi / LoRa / Sigfox /
NB-IoT interfaces of a multi-radio edge board in two calibrations: the
64000 / 1760 / 48 bps set used in the allocation comparison and the
750000 / 55000 / 5470 / 100 bps set measured on the device itself.

Latency models are deliberately coarse. Wi-Fi and NB-IoT use their observed
fixed averages (8 ms and 576 ms); LoRa and Sigfox draw uniformly from their
observed min/max windows, because nothing finer than the endpoints is known.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from .rational import as_fraction

if TYPE_CHECKING:
    from .rng import SplitMix64

MICRO = 10**6


@dataclass(frozen=True)
class FixedLatency:
    """Constant one-way delivery latency in milliseconds."""

    ms: Fraction

    def sample(self, rng: "SplitMix64") -> Fraction:
        return Fraction(self.ms) / 1000


@dataclass(frozen=True)
class UniformLatency:
    """Latency drawn uniformly from [min_ms, max_ms) milliseconds."""

    min_ms: Fraction
    max_ms: Fraction

    def sample(self, rng: "SplitMix64") -> Fraction:
        return rng.uniform(Fraction(self.min_ms), Fraction(self.max_ms)) / 1000


LatencyModel = FixedLatency | UniformLatency


@dataclass(frozen=True)
class NetworkProfile:
    """One network interface treated as a capacity bin.

    ``capacity_bps`` is the only field the allocators look at. The delivery
    constraint fields (payload cap, daily allowance, inter-message gap) are
    enforced by the simulator at send time, never by the allocators.
    """

    id: str
    name: str
    capacity_bps: int
    max_payload_bytes: int | None = None
    max_messages_per_day: int | None = None
    min_inter_message_gap_seconds: Fraction | None = None
    latency: LatencyModel = FixedLatency(Fraction(0))
    connect_time_seconds: Fraction = Fraction(0)
    time_on_air_ms: Fraction | None = None

    def __post_init__(self) -> None:
        if self.capacity_bps <= 0:
            raise ValueError(f"capacity must be > 0, got {self.capacity_bps}")
        if self.max_payload_bytes is not None and self.max_payload_bytes < 1:
            raise ValueError(f"payload cap must be >= 1, got {self.max_payload_bytes}")

    @property
    def capacity_micro_bps(self) -> int:
        return self.capacity_bps * MICRO


#: Per spreading factor / bandwidth: uplink bitrate (bps), payload cap
#: (bytes), time on air for a max-size message (ms), and the daily message
#: allowance implied by the 1% duty cycle plus community fair-use airtime cap.
LORA_UPLINK_TABLE: dict[tuple[int, int], tuple[int, int, Fraction, int]] = {
    (12, 125): (250, 51, Fraction("2793.5"), 12),
    (11, 125): (440, 51, Fraction("1560.6"), 23),
    (10, 125): (980, 51, Fraction("698.4"), 51),
    (9, 125): (1760, 115, Fraction("676.9"), 53),
    (8, 125): (3125, 222, Fraction("655.9"), 54),
    (7, 125): (5470, 222, Fraction("368.9"), 97),
    (7, 250): (11000, 222, Fraction("184.4"), 195),
}

_LORA_LATENCY = UniformLatency(Fraction(24), Fraction(2800))
_LORA_CONNECT = Fraction("5.6")  # over-the-air activation, measured average

_SIGFOX_LATENCY = UniformLatency(Fraction(1000), Fraction(4500))
_SIGFOX_GAP = Fraction("10.5")  # mean spacing needed between uplinks
_SIGFOX_CONNECT = Fraction("0.1")  # socket creation, a few milliseconds

_WIFI_LATENCY = FixedLatency(Fraction("8"))
_WIFI_CONNECT = Fraction("7.7")  # scan plus association, measured average

_NBIOT_LATENCY = FixedLatency(Fraction(576))
_NBIOT_CONNECT = Fraction("15.5")  # init + attach + connect, no modem reset


def lora_profile(sf: int, bandwidth_khz: int, id: str = "lora") -> NetworkProfile:
    """Profile for one LoRa uplink configuration.

    Only the seven (spreading factor, bandwidth) pairs with published
    figures are supported; anything else raises ValueError.
    """
    try:
        bitrate, payload, airtime_ms, per_day = LORA_UPLINK_TABLE[(sf, bandwidth_khz)]
    except KeyError:
        raise ValueError(
            f"unsupported LoRa configuration SF{sf}/{bandwidth_khz} kHz; "
            f"supported: {sorted(LORA_UPLINK_TABLE)}"
        ) from None
    return NetworkProfile(
        id=id,
        name="LoRa",
        capacity_bps=bitrate,
        max_payload_bytes=payload,
        max_messages_per_day=per_day,
        min_inter_message_gap_seconds=Fraction("0.000165"),
        latency=_LORA_LATENCY,
        connect_time_seconds=_LORA_CONNECT,
        time_on_air_ms=airtime_ms,
    )


def _sigfox(capacity_bps: int) -> NetworkProfile:
    return NetworkProfile(
        id="sigfox",
        name="Sigfox",
        capacity_bps=capacity_bps,
        max_payload_bytes=12,
        max_messages_per_day=140,
        min_inter_message_gap_seconds=_SIGFOX_GAP,
        latency=_SIGFOX_LATENCY,
        connect_time_seconds=_SIGFOX_CONNECT,
    )


def _wifi(capacity_bps: int) -> NetworkProfile:
    # TCP/UDP fragmentation means there is no hard payload cap on Wi-Fi.
    return NetworkProfile(
        id="wifi",
        name="Wi-Fi",
        capacity_bps=capacity_bps,
        latency=_WIFI_LATENCY,
        connect_time_seconds=_WIFI_CONNECT,
    )


def _nbiot(capacity_bps: int) -> NetworkProfile:
    return NetworkProfile(
        id="nbiot",
        name="NB-IoT",
        capacity_bps=capacity_bps,
        latency=_NBIOT_LATENCY,
        connect_time_seconds=_NBIOT_CONNECT,
    )


_BUILTINS = {
    "wifi_table2": lambda: _wifi(64000),
    "lora_sf9_table2": lambda: lora_profile(9, 125),
    "sigfox_table2": lambda: _sigfox(48),
    "wifi_fipy": lambda: _wifi(750_000),
    "nbiot_fipy": lambda: _nbiot(55_000),
    "lora_sf7_fipy": lambda: lora_profile(7, 125),
    "sigfox_fipy": lambda: _sigfox(100),
}

BUILTIN_KINDS = tuple(_BUILTINS)


def builtin_profile(kind: str) -> NetworkProfile:
    """Return a named built-in profile; unknown kinds raise ValueError."""
    try:
        factory = _BUILTINS[kind]
    except KeyError:
        raise ValueError(
            f"unknown built-in profile {kind!r}; known: {', '.join(BUILTIN_KINDS)}"
        ) from None
    return factory()


def _latency_from_dict(obj: dict) -> LatencyModel:
    if "fixed_ms" in obj:
        return FixedLatency(as_fraction(obj["fixed_ms"]))
    if "uniform_ms" in obj:
        low, high = obj["uniform_ms"]
        return UniformLatency(as_fraction(low), as_fraction(high))
    raise ValueError(f"latency must specify fixed_ms or uniform_ms, got {obj!r}")


def network_from_dict(obj: dict) -> NetworkProfile:
    """Build a profile from JSON; ``{"builtin": kind}`` names a built-in."""
    if "builtin" in obj:
        return builtin_profile(obj["builtin"])
    gap = obj.get("min_inter_message_gap_seconds")
    return NetworkProfile(
        id=str(obj["id"]),
        name=str(obj.get("name", obj["id"])),
        capacity_bps=int(obj["capacity_bps"]),
        max_payload_bytes=obj.get("max_payload_bytes"),
        max_messages_per_day=obj.get("max_messages_per_day"),
        min_inter_message_gap_seconds=None if gap is None else as_fraction(gap),
        latency=_latency_from_dict(obj["latency"]) if "latency" in obj else FixedLatency(Fraction(0)),
        connect_time_seconds=as_fraction(obj.get("connect_time_seconds", 0)),
        time_on_air_ms=as_fraction(obj["time_on_air_ms"]) if "time_on_air_ms" in obj else None,
    )


def networks_from_json(entries: list[dict]) -> list[NetworkProfile]:
    networks = [network_from_dict(entry) for entry in entries]
    seen: set[str] = set()
    for profile in networks:
        if profile.id in seen:
            raise ValueError(f"duplicate network id {profile.id!r}")
        seen.add(profile.id)
    return networks


def load_networks(path: str | Path) -> list[NetworkProfile]:
    """Read a network list (or ``{"networks": [..]}``) from disk."""
    with open(path, encoding="utf-8") as handle:
        doc = json.load(handle)
    if isinstance(doc, dict):
        doc = doc["networks"]
    return networks_from_json(doc)
