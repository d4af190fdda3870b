"""Command-line front end.

Thin shell over the library: every behaviour here is reachable through
library calls; the CLI only parses arguments, loads JSON, and renders.
Exit codes: 0 success, 1 validation/input error, 2 infeasible instance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import simulator, wire
from .allocators import AllocatorConfig
from .catalog import ALGORITHM_NAMES, run_algorithm
from .flows import ValidationError, load_flow_set
from .metrics import (
    format_quantity,
    render_comparison_csv,
    render_comparison_json,
    render_comparison_table,
    report,
)
from .networks import BUILTIN_KINDS, builtin_profile, load_networks
from .solver import Infeasible

SEED_ENV_VAR = "RESILIENT_ALLOC_SEED"


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _CliError(message)


def _parse_networks(spec: str):
    path = Path(spec)
    if path.exists():
        return load_networks(path)
    networks = [builtin_profile(kind.strip()) for kind in spec.split(",") if kind.strip()]
    if not networks:
        raise _CliError(f"no networks in spec {spec!r}")
    ids = [p.id for p in networks]
    if len(set(ids)) != len(ids):
        raise _CliError(f"network spec {spec!r} repeats an id")
    return networks


def _add_allocation_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--flows", required=True, help="flow set JSON file")
    parser.add_argument(
        "--networks",
        required=True,
        help="comma-separated built-in profile kinds, or a JSON file",
    )
    parser.add_argument("--factor", type=int, default=8, help="capacity unit scale (default 8)")
    parser.add_argument(
        "--format", choices=("table", "csv", "json"), default="table", dest="fmt"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resilient-alloc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_allocate = sub.add_parser("allocate", help="run one allocation algorithm")
    _add_allocation_args(p_allocate)
    p_allocate.add_argument("--algo", default="cabf", choices=ALGORITHM_NAMES)
    p_allocate.set_defaults(func=cmd_allocate)

    p_compare = sub.add_parser("compare", help="run every algorithm and tabulate")
    _add_allocation_args(p_compare)
    p_compare.set_defaults(func=cmd_compare)

    p_solve = sub.add_parser("solve", help="run the exact solver")
    _add_allocation_args(p_solve)
    p_solve.add_argument(
        "--require-all", action="store_true", help="fail unless every flow is served"
    )
    p_solve.set_defaults(func=cmd_solve)

    p_simulate = sub.add_parser("simulate", help="run a scenario")
    p_simulate.add_argument("--scenario", required=True, help="scenario JSON file")
    p_simulate.add_argument("--transcript", help="write a JSON-lines frame transcript here")
    p_simulate.add_argument("--format", choices=("table", "json"), default="table", dest="fmt")
    p_simulate.set_defaults(func=cmd_simulate)

    p_profiles = sub.add_parser("profiles", help="list built-in network profiles")
    p_profiles.set_defaults(func=cmd_profiles)

    p_encode = sub.add_parser(
        "frame-encode", help="frame each stdin line and write the bytes to stdout"
    )
    p_encode.set_defaults(func=cmd_frame_encode)

    p_decode = sub.add_parser(
        "frame-decode", help="decode frames from stdin and print one body per line"
    )
    p_decode.set_defaults(func=cmd_frame_decode)

    return parser


def _run_rows(args, names) -> int:
    flow_set = load_flow_set(args.flows)
    networks = _parse_networks(args.networks)
    cfg = AllocatorConfig(l_max=flow_set.l_max, factor=args.factor)
    rows = []
    for name in names:
        require_all = getattr(args, "require_all", False)
        table = run_algorithm(name, list(flow_set.flows), networks, cfg, require_all=require_all)
        rows.append((name, report(table, list(flow_set.flows), networks, flow_set.l_max)))
    if args.fmt == "table":
        sys.stdout.write(render_comparison_table(rows, list(flow_set.flows), networks, args.factor))
    elif args.fmt == "csv":
        sys.stdout.write(render_comparison_csv(rows, list(flow_set.flows), networks))
    else:
        sys.stdout.write(render_comparison_json(rows, args.factor))
    return 0


def cmd_allocate(args) -> int:
    return _run_rows(args, [args.algo])


def cmd_compare(args) -> int:
    return _run_rows(args, list(ALGORITHM_NAMES))


def cmd_solve(args) -> int:
    return _run_rows(args, ["exact"])


def _render_sim_table(rep: simulator.SimReport) -> str:
    lines = [
        f"algorithm={rep.algorithm}  seed={rep.seed}  rng={rep.rng_name}  "
        f"duration={float(rep.duration_seconds):g}s  factor={rep.factor}"
    ]
    header = ["flow", "level", "sent", "delivered", "not-allocated", "not-delivered"]
    rows = [header]
    for flow_id, levels in rep.per_flow_level.items():
        if not levels:
            rows.append([flow_id, "-", "0", "0", "0", "0"])
        for level, counts in levels.items():
            rows.append(
                [
                    flow_id,
                    str(level),
                    str(counts.sent),
                    str(counts.delivered),
                    str(counts.err_not_allocated),
                    str(counts.err_not_delivered),
                ]
            )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines += ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.append("")
    for network_id, counts in rep.per_network.items():
        lines.append(
            f"network {network_id}: messages={counts.messages} bytes={counts.bytes} "
            f"budget_violations_avoided={counts.budget_violations_avoided}"
        )
    for shake in rep.handshakes:
        lines.append(
            f"handshake: start={float(shake.start):g}s accepted={float(shake.accepted):g}s "
            f"duration={float(shake.duration):.3f}s"
        )
    fractions = []
    for flow_id in rep.per_flow_level:
        fraction = rep.delivered_fraction(flow_id)
        fractions.append(f"{flow_id}:{'-' if fraction is None else format_quantity(100 * fraction) + '%'}")
    lines.append("delivered: " + "  ".join(fractions))
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    scenario = simulator.load_scenario(args.scenario)
    seed_override = os.environ.get(SEED_ENV_VAR)
    if seed_override is not None:
        from dataclasses import replace

        scenario = replace(scenario, seed=int(seed_override))
    transcript: list | None = [] if args.transcript else None
    rep = simulator.run(scenario, transcript=transcript)
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as handle:
            for entry in transcript or []:
                handle.write(json.dumps(entry, sort_keys=True) + "\n")
    if args.fmt == "json":
        sys.stdout.buffer.write(rep.json_bytes())
        sys.stdout.write("\n")
    else:
        sys.stdout.write(_render_sim_table(rep))
    return 0


def cmd_profiles(args) -> int:
    header = [
        "kind",
        "name",
        "capacity_bps",
        "max_payload_B",
        "msgs_per_day",
        "min_gap_s",
        "latency_ms",
        "connect_s",
    ]
    rows = [header]
    for kind in BUILTIN_KINDS:
        profile = builtin_profile(kind)
        latency = profile.latency
        if hasattr(latency, "ms"):
            latency_text = f"{float(latency.ms):g}"
        else:
            latency_text = f"{float(latency.min_ms):g}..{float(latency.max_ms):g}"
        rows.append(
            [
                kind,
                profile.name,
                str(profile.capacity_bps),
                "-" if profile.max_payload_bytes is None else str(profile.max_payload_bytes),
                "-" if profile.max_messages_per_day is None else str(profile.max_messages_per_day),
                (
                    "-"
                    if profile.min_inter_message_gap_seconds is None
                    else f"{float(profile.min_inter_message_gap_seconds):g}"
                ),
                latency_text,
                f"{float(profile.connect_time_seconds):g}",
            ]
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    for row in rows:
        sys.stdout.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")
    return 0


def cmd_frame_encode(args) -> int:
    for line in sys.stdin.buffer.read().split(b"\n"):
        if line:
            sys.stdout.buffer.write(wire.encode_frame(line))
    return 0


def cmd_frame_decode(args) -> int:
    decoder = wire.FrameDecoder()
    for event in decoder.feed(sys.stdin.buffer.read()):
        if isinstance(event, wire.Frame):
            sys.stdout.buffer.write(event.body + b"\n")
        else:
            sys.stderr.write(f"malformed frame: {event.reason}\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except Infeasible as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return 2
    except (
        ValidationError,
        simulator.InvalidScenario,
        wire.ParseError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
