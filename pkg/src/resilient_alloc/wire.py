"""Byte-exact codec for the host/node framed protocol.

Frame grammar (one frame per message, newline-terminated)::

    frame   = ":ML:" length ":" body "\\n"
    length  = decimal byte count of the escaped body

Bodies are escaped so that the terminating newline is unambiguous: raw
backslash becomes ``\\\\`` and raw newline becomes ``\\n``; the length field
counts escaped bytes. Escaping the backslash as well keeps the codec
injective, so decode(encode(body)) == body for arbitrary byte strings.

Payload kinds carried inside frames:

* application messages: ``<flow name>,<level>,<payload>`` (payload is raw
  bytes, commas allowed within it);
* allocation announcements: ``MFEA:[{'PS': .., 'N': .., 'PE': .., 'MF': ..,
  'CL': ..}, ..]`` with single-quoted strings in exactly that key order (the
  decoder also accepts double quotes and any key order);
* control messages: ``<INFO:RE-ALLOC:INIT>``, ``<INFO:RE-ALLOC:ACCEPTED>``,
  ``<ACK:flow>``, ``<ERR:flow:NOT-ALLOCATED>``, ``<ERR:flow:NOT-DELIVERED>``.

Flow names may not contain ``,``, ``:``, ``<``, ``>`` or newline; those are
protocol delimiters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .flows import FORBIDDEN_NAME_CHARS

HEADER = b":ML:"
_MAX_LENGTH_DIGITS = 10


class ParseError(ValueError):
    """Payload text does not match the protocol grammar."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Frame:
    """One complete, unescaped frame body."""

    body: bytes


@dataclass(frozen=True)
class MalformedFrame:
    """Stream event reporting undecodable bytes; decoding resumes after it."""

    reason: str
    skipped: bytes = b""


def escape_body(body: bytes) -> bytes:
    return body.replace(b"\\", b"\\\\").replace(b"\n", b"\\n")


def unescape_body(data: bytes) -> bytes:
    out = bytearray()
    i = 0
    length = len(data)
    while i < length:
        byte = data[i]
        if byte == 0x5C:  # backslash
            if i + 1 >= length:
                raise ValueError("dangling escape")
            nxt = data[i + 1]
            if nxt == 0x6E:  # n
                out.append(0x0A)
            elif nxt == 0x5C:
                out.append(0x5C)
            else:
                raise ValueError(f"bad escape \\{chr(nxt)!r}")
            i += 2
        else:
            out.append(byte)
            i += 1
    return bytes(out)


def encode_frame(body: bytes) -> bytes:
    escaped = escape_body(body)
    return HEADER + str(len(escaped)).encode("ascii") + b":" + escaped + b"\n"


class FrameDecoder:
    """Incremental frame decoder, invariant under input chunking.

    ``feed`` returns, in stream order, every Frame completed by the new
    bytes plus a MalformedFrame event wherever resynchronisation skipped
    bytes. The emitted sequence depends only on the concatenated byte
    stream, never on how it was split into chunks: garbage is reported only
    once the next header proves the run has ended, and trailing partial
    input stays buffered.
    """

    def __init__(self) -> None:
        self._buf = bytearray()
        self._garbage = bytearray()

    @property
    def pending(self) -> bytes:
        """Bytes received but not yet consumed by a frame or an event."""
        return bytes(self._garbage + self._buf)

    def feed(self, data: bytes) -> list[Frame | MalformedFrame]:
        self._buf.extend(data)
        out: list[Frame | MalformedFrame] = []
        while self._seek_header(out) and self._parse_frame(out):
            pass
        return out

    def _seek_header(self, out: list[Frame | MalformedFrame]) -> bool:
        """Align the buffer on a header; return False when more data is needed."""
        idx = self._buf.find(HEADER)
        if idx == -1:
            # Keep the longest buffer suffix that could still grow into a
            # header; everything before it is definitely garbage.
            keep = 0
            for size in (3, 2, 1):
                if self._buf[-size:] == HEADER[:size]:
                    keep = size
                    break
            cut = len(self._buf) - keep
            self._garbage.extend(self._buf[:cut])
            del self._buf[:cut]
            return False
        if idx:
            self._garbage.extend(self._buf[:idx])
            del self._buf[:idx]
        if self._garbage:
            out.append(MalformedFrame("bad-header", bytes(self._garbage)))
            self._garbage.clear()
        return True

    def _resync(self) -> None:
        # Drop the leading ':' so the scan can find a header nested in the
        # bytes of the abandoned frame.
        del self._buf[:1]

    def _parse_frame(self, out: list[Frame | MalformedFrame]) -> bool:
        """Parse one frame at the buffer head (which starts with HEADER).

        Returns True when progress was made (a frame or an event), False
        when more bytes are needed.
        """
        pos = len(HEADER)
        digits = 0
        while True:
            if pos >= len(self._buf):
                return False  # length field still incomplete
            byte = self._buf[pos]
            if not 0x30 <= byte <= 0x39:
                break
            digits += 1
            pos += 1
            if digits > _MAX_LENGTH_DIGITS:
                out.append(MalformedFrame("bad-length"))
                self._resync()
                return True
        if digits == 0 or byte != 0x3A:  # ':'
            out.append(MalformedFrame("bad-length"))
            self._resync()
            return True
        length = int(self._buf[len(HEADER) : pos])
        body_start = pos + 1
        body_end = body_start + length
        if len(self._buf) < body_end + 1:
            return False  # body or terminator not here yet
        if self._buf[body_end] != 0x0A:
            out.append(MalformedFrame("bad-terminator"))
            self._resync()
            return True
        raw = bytes(self._buf[body_start:body_end])
        del self._buf[: body_end + 1]
        try:
            body = unescape_body(raw)
        except ValueError:
            out.append(MalformedFrame("bad-escape", raw))
            return True
        out.append(Frame(body))
        return True


def decode_all(data: bytes) -> tuple[list[Frame | MalformedFrame], bytes]:
    """One-shot decode; returns the event list and the unconsumed remainder."""
    decoder = FrameDecoder()
    events = decoder.feed(data)
    return events, decoder.pending


# --- application messages ---------------------------------------------------


def _check_flow_name(name: str) -> str:
    if not name:
        raise ValueError("flow name must be non-empty")
    bad = FORBIDDEN_NAME_CHARS.intersection(name)
    if bad:
        raise ValueError(f"flow name {name!r} contains forbidden characters {sorted(bad)}")
    return name


@dataclass(frozen=True)
class AppMessage:
    """One application message: flow name, criticality level, raw payload."""

    flow_name: str
    level: int
    payload: bytes

    def __post_init__(self) -> None:
        _check_flow_name(self.flow_name)
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")


def encode_app(message: AppMessage) -> bytes:
    return message.flow_name.encode("utf-8") + b"," + str(message.level).encode("ascii") + b"," + message.payload


def decode_app(data: bytes) -> AppMessage:
    parts = data.split(b",", 2)
    if len(parts) != 3:
        raise ParseError("application message needs two commas", len(data))
    name_raw, level_raw, payload = parts
    try:
        name = name_raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("flow name is not valid UTF-8", exc.start) from None
    if not level_raw.isdigit():
        raise ParseError("criticality level is not a number", len(name_raw) + 1)
    try:
        return AppMessage(flow_name=name, level=int(level_raw), payload=payload)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


# --- allocation announcements (MFEA) ----------------------------------------


@dataclass(frozen=True)
class MfeaEntry:
    """One per-flow allocation record inside an MFEA message.

    Wire keys: PS payload size (bytes), N network name, PE period (seconds),
    MF flow name, CL criticality level.
    """

    payload_size: int
    network: str
    period_seconds: int | float
    flow_name: str
    level: int

    def __post_init__(self) -> None:
        if self.payload_size < 0:
            raise ValueError(f"payload size must be >= 0, got {self.payload_size}")
        if self.period_seconds <= 0:
            raise ValueError(f"period must be > 0, got {self.period_seconds}")
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")
        _check_flow_name(self.flow_name)


def _quote(value: str) -> str:
    if "'" not in value:
        return f"'{value}'"
    if '"' not in value:
        return f'"{value}"'
    raise ValueError(f"string {value!r} mixes both quote characters")


def _number(value: int | float) -> str:
    return repr(value)


def encode_mfea(entries: list[MfeaEntry]) -> str:
    records = []
    for entry in entries:
        records.append(
            "{'PS': %s, 'N': %s, 'PE': %s, 'MF': %s, 'CL': %s}"
            % (
                _number(entry.payload_size),
                _quote(entry.network),
                _number(entry.period_seconds),
                _quote(entry.flow_name),
                _number(entry.level),
            )
        )
    return "MFEA:[" + ", ".join(records) + "]"


_NUMBER_RE = re.compile(r"-?\d+(\.\d+)?")


class _Scanner:
    def __init__(self, text: str, pos: int = 0) -> None:
        self.text = text
        self.pos = pos

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def string(self) -> str:
        quote = self.peek()
        if quote not in ("'", '"'):
            raise self.error("expected a quoted string")
        end = self.text.find(quote, self.pos + 1)
        if end == -1:
            raise self.error("unterminated string")
        value = self.text[self.pos + 1 : end]
        self.pos = end + 1
        return value

    def number(self) -> int | float:
        match = _NUMBER_RE.match(self.text, self.pos)
        if not match:
            raise self.error("expected a number")
        self.pos = match.end()
        literal = match.group()
        return float(literal) if "." in literal else int(literal)


def decode_mfea(text: str) -> list[MfeaEntry]:
    scanner = _Scanner(text)
    scanner.expect("MFEA:")
    scanner.expect("[")
    entries: list[MfeaEntry] = []
    scanner.skip_spaces()
    if scanner.peek() == "]":
        scanner.pos += 1
    else:
        while True:
            entries.append(_decode_record(scanner))
            scanner.skip_spaces()
            if scanner.peek() == ",":
                scanner.pos += 1
                scanner.skip_spaces()
                continue
            scanner.expect("]")
            break
    if scanner.pos != len(text):
        raise scanner.error("trailing data after the entry list")
    return entries


def _decode_record(scanner: _Scanner) -> MfeaEntry:
    scanner.expect("{")
    fields: dict[str, object] = {}
    while True:
        scanner.skip_spaces()
        key = scanner.string()
        scanner.skip_spaces()
        scanner.expect(":")
        scanner.skip_spaces()
        if key in ("PS", "PE", "CL"):
            fields[key] = scanner.number()
        elif key in ("N", "MF"):
            fields[key] = scanner.string()
        else:
            raise scanner.error(f"unknown key {key!r}")
        scanner.skip_spaces()
        if scanner.peek() == ",":
            scanner.pos += 1
            continue
        scanner.expect("}")
        break
    missing = {"PS", "N", "PE", "MF", "CL"}.difference(fields)
    if missing:
        raise scanner.error(f"record is missing keys {sorted(missing)}")
    payload_size = fields["PS"]
    level = fields["CL"]
    if not isinstance(payload_size, int) or not isinstance(level, int):
        raise scanner.error("PS and CL must be integers")
    try:
        return MfeaEntry(
            payload_size=payload_size,
            network=str(fields["N"]),
            period_seconds=fields["PE"],  # type: ignore[arg-type]
            flow_name=str(fields["MF"]),
            level=level,
        )
    except ValueError as exc:
        raise ParseError(str(exc), scanner.pos) from None


# --- control messages --------------------------------------------------------


class ErrorReason(Enum):
    NOT_ALLOCATED = "NOT-ALLOCATED"
    NOT_DELIVERED = "NOT-DELIVERED"


@dataclass(frozen=True)
class ReallocInit:
    """Node announcement that re-allocation starts; the host must pause."""


@dataclass(frozen=True)
class ReallocAccepted:
    """Host acknowledgement that the new allocation table is in effect."""


@dataclass(frozen=True)
class Ack:
    flow_name: str

    def __post_init__(self) -> None:
        _check_flow_name(self.flow_name)


@dataclass(frozen=True)
class Err:
    flow_name: str
    reason: ErrorReason

    def __post_init__(self) -> None:
        _check_flow_name(self.flow_name)


ControlMessage = ReallocInit | ReallocAccepted | Ack | Err

_INIT_TEXT = "<INFO:RE-ALLOC:INIT>"
_ACCEPTED_TEXT = "<INFO:RE-ALLOC:ACCEPTED>"


def encode_control(message: ControlMessage) -> str:
    if isinstance(message, ReallocInit):
        return _INIT_TEXT
    if isinstance(message, ReallocAccepted):
        return _ACCEPTED_TEXT
    if isinstance(message, Ack):
        return f"<ACK:{message.flow_name}>"
    if isinstance(message, Err):
        return f"<ERR:{message.flow_name}:{message.reason.value}>"
    raise TypeError(f"not a control message: {message!r}")


def parse_control(text: str) -> ControlMessage:
    if text == _INIT_TEXT:
        return ReallocInit()
    if text == _ACCEPTED_TEXT:
        return ReallocAccepted()
    if not text.startswith("<") or not text.endswith(">"):
        raise ParseError("control message must be wrapped in <>", 0)
    inner = text[1:-1]
    try:
        if inner.startswith("ACK:"):
            return Ack(flow_name=inner[4:])
        if inner.startswith("ERR:"):
            rest = inner[4:]
            sep = rest.rfind(":")
            if sep == -1:
                raise ParseError("error message needs a reason", len(text) - 1)
            name, reason_text = rest[:sep], rest[sep + 1 :]
            for reason in ErrorReason:
                if reason.value == reason_text:
                    return Err(flow_name=name, reason=reason)
            raise ParseError(f"unknown error reason {reason_text!r}", 5 + sep + 1)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), 1) from None
    raise ParseError(f"unknown control message {text!r}", 1)
