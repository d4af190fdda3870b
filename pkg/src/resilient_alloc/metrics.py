"""Scoring and rendering of allocation tables.

The three aggregate columns reported for every algorithm are the objective
(sum of ``1 + l_max - level`` over served flows), the percentage of flows
served, and the average assigned criticality level. Averages are exact
fractions internally; tables render them truncated toward zero at two
decimals (17/8 prints as 2.12).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .allocators import AllocationTable
from .flows import FlowSpec
from .networks import NetworkProfile

REPORT_SCHEMA_VERSION = 1

#: Glyphs used in the comparison table next to the assigned level.
_GLYPHS = (("wi-fi", "*"), ("wifi", "*"), ("lora", "#"), ("sigfox", "+"), ("nb", "-"))


@dataclass(frozen=True)
class AllocationReport:
    """Aggregates plus the per-flow and per-network view of one table."""

    objective: int
    percent_served: Fraction
    avg_criticality: Fraction | None
    per_flow: dict[str, tuple[str, int] | None]
    per_network_load: dict[str, tuple[int, int]]


def objective(table: AllocationTable, l_max: int) -> int:
    return sum(1 + l_max - entry.level for entry in table.entries.values())


def report(
    table: AllocationTable,
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
    l_max: int,
) -> AllocationReport:
    per_flow: dict[str, tuple[str, int] | None] = {}
    served_levels: list[int] = []
    for flow in flows:
        entry = table.entries.get(flow.id)
        if entry is None:
            per_flow[flow.id] = None
        else:
            per_flow[flow.id] = (entry.network_id, entry.level)
            served_levels.append(entry.level)

    per_network_load: dict[str, tuple[int, int]] = {}
    for profile in networks:
        capacity = profile.capacity_micro_bps
        used = capacity - table.residual.get(profile.id, capacity)
        per_network_load[profile.id] = (used, capacity)

    n = len(flows)
    served = len(served_levels)
    return AllocationReport(
        objective=objective(table, l_max),
        percent_served=Fraction(100 * served, n) if n else Fraction(0),
        avg_criticality=Fraction(sum(served_levels), served) if served else None,
        per_flow=per_flow,
        per_network_load=per_network_load,
    )


def format_quantity(value: Fraction | None) -> str:
    """Truncate toward zero at two decimals and trim trailing zeros."""
    if value is None:
        return "-"
    hundredths = (100 * value.numerator) // value.denominator
    whole, frac = divmod(hundredths, 100)
    if frac == 0:
        return str(whole)
    text = f"{whole}.{frac:02d}"
    return text.rstrip("0")


def glyph_map(networks: list[NetworkProfile]) -> dict[str, str]:
    """Network id -> table glyph; unknown technologies get letters."""
    glyphs: dict[str, str] = {}
    fallback = iter("abcdefghijklmnopqrstuvwxyz")
    for profile in networks:
        lowered = profile.name.lower()
        for needle, glyph in _GLYPHS:
            if needle in lowered:
                glyphs[profile.id] = glyph
                break
        else:
            glyphs[profile.id] = next(fallback)
    return glyphs


def _cells(rep: AllocationReport, flows: list[FlowSpec], glyphs: dict[str, str]) -> list[str]:
    cells = []
    for flow in flows:
        placed = rep.per_flow[flow.id]
        cells.append("" if placed is None else f"{placed[1]}{glyphs[placed[0]]}")
    return cells


def render_comparison_table(
    rows: list[tuple[str, AllocationReport]],
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
    factor: int,
) -> str:
    """Fixed-column text table: one row per algorithm, one cell per flow."""
    glyphs = glyph_map(networks)
    header = ["algorithm"] + [flow.id for flow in flows] + ["% served", "avg crit", "objective"]
    body = []
    for name, rep in rows:
        body.append(
            [name.upper()]
            + _cells(rep, flows, glyphs)
            + [
                format_quantity(rep.percent_served),
                format_quantity(rep.avg_criticality),
                str(rep.objective),
            ]
        )
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    legend = "  ".join(f"{glyphs[p.id]} {p.name}" for p in networks)
    lines = [f"factor={factor}  networks: {legend}"]
    for row in [header] + body:
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_comparison_csv(
    rows: list[tuple[str, AllocationReport]],
    flows: list[FlowSpec],
    networks: list[NetworkProfile],
) -> str:
    glyphs = glyph_map(networks)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["algorithm"]
        + [f"flow_{flow.id}" for flow in flows]
        + ["percent_served", "avg_criticality", "objective"]
    )
    for name, rep in rows:
        writer.writerow(
            [name]
            + _cells(rep, flows, glyphs)
            + [
                format_quantity(rep.percent_served),
                format_quantity(rep.avg_criticality),
                rep.objective,
            ]
        )
    return buffer.getvalue()


def report_to_json_dict(rep: AllocationReport) -> dict:
    return {
        "objective": rep.objective,
        "percent_served": float(rep.percent_served),
        "avg_criticality": None if rep.avg_criticality is None else float(rep.avg_criticality),
        "avg_criticality_display": format_quantity(rep.avg_criticality),
        "per_flow": {
            flow_id: None if placed is None else {"network": placed[0], "level": placed[1]}
            for flow_id, placed in rep.per_flow.items()
        },
        "per_network_load": {
            network_id: {"used_micro_bps": used, "capacity_micro_bps": capacity}
            for network_id, (used, capacity) in rep.per_network_load.items()
        },
    }


def render_comparison_json(
    rows: list[tuple[str, AllocationReport]], factor: int
) -> str:
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "factor": factor,
        "rows": [{"algorithm": name, **report_to_json_dict(rep)} for name, rep in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
