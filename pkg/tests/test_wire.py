from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resilient_alloc import wire
from resilient_alloc.wire import (
    Ack,
    AppMessage,
    Err,
    ErrorReason,
    Frame,
    FrameDecoder,
    MalformedFrame,
    MfeaEntry,
    ParseError,
    ReallocAccepted,
    ReallocInit,
    decode_all,
    decode_app,
    decode_mfea,
    encode_app,
    encode_control,
    encode_frame,
    encode_mfea,
    parse_control,
)

PAPER_SAMPLE = "MFEA:[{'PS': 41, 'N': 'Wi-Fi', 'PE': 10, 'MF': 'Kitchen Sensor', 'CL': 1}]"

_name_alphabet = st.characters(
    codec="utf-8", exclude_characters=",:<>\n", exclude_categories=("Cs", "Cc")
)
flow_names = st.text(alphabet=_name_alphabet, min_size=1, max_size=30).filter(
    lambda s: "'" not in s or '"' not in s
)


class TestFrames:
    def test_plain_body(self):
        assert encode_frame(b"HELLO") == b":ML:5:HELLO\n"

    def test_empty_body(self):
        assert encode_frame(b"") == b":ML:0:\n"

    def test_newline_is_escaped_and_counted(self):
        encoded = encode_frame(b"a\nb")
        assert encoded == b":ML:4:a\\nb\n"
        events, rest = decode_all(encoded)
        assert events == [Frame(b"a\nb")]
        assert rest == b""

    def test_backslash_is_escaped(self):
        # without this, a body of backslash-n would collide with an escaped newline
        encoded = encode_frame(b"\\n")
        events, rest = decode_all(encoded)
        assert events == [Frame(b"\\n")]

    def test_two_frames_in_one_chunk(self):
        events, rest = decode_all(b":ML:5:HELLO\n:ML:2:HI\n")
        assert events == [Frame(b"HELLO"), Frame(b"HI")]
        assert rest == b""

    def test_split_mid_header(self):
        decoder = FrameDecoder()
        assert decoder.feed(b":ML:5:HE") == []
        assert decoder.feed(b"LLO\n:ML:2:HI\n") == [Frame(b"HELLO"), Frame(b"HI")]
        assert decoder.pending == b""

    def test_garbage_then_resync(self):
        events, rest = decode_all(b"garbage:ML:2:HI\n")
        assert events == [MalformedFrame("bad-header", b"garbage"), Frame(b"HI")]
        assert rest == b""

    def test_bad_terminator_then_recovery(self):
        events, _ = decode_all(b":ML:2:ABX:ML:2:HI\n")
        kinds = [type(e) for e in events]
        assert kinds == [MalformedFrame, MalformedFrame, Frame]
        assert events[0].reason == "bad-terminator"
        assert events[-1] == Frame(b"HI")

    def test_bad_length_field(self):
        events, _ = decode_all(b":ML:x:AB\n:ML:2:HI\n")
        assert events[0] == MalformedFrame("bad-length")
        assert events[-1] == Frame(b"HI")

    def test_bad_escape_skips_whole_frame(self):
        events, rest = decode_all(b":ML:2:\\x\n:ML:2:HI\n")
        assert events == [MalformedFrame("bad-escape", b"\\x"), Frame(b"HI")]
        assert rest == b""

    def test_trailing_partial_is_retained(self):
        decoder = FrameDecoder()
        assert decoder.feed(b":ML:10:abc") == []
        assert decoder.pending == b":ML:10:abc"

    def test_length_counts_escaped_bytes(self):
        body = b"\n\n"
        encoded = encode_frame(body)
        length = int(encoded.split(b":")[2])
        assert length == 4  # two escaped newlines

    @given(body=st.binary(max_size=300))
    def test_roundtrip_identity(self, body):
        events, rest = decode_all(encode_frame(body))
        assert events == [Frame(body)]
        assert rest == b""

    @given(body=st.binary(max_size=300))
    def test_length_field_equals_escaped_body_size(self, body):
        encoded = encode_frame(body)
        length = int(encoded.split(b":", 3)[2])
        # header ":ML:<len>:" ... "\n"
        payload = encoded.split(b":", 3)[3][:-1]
        assert length == len(payload)

    @given(
        bodies=st.lists(st.binary(max_size=60), max_size=6),
        data=st.data(),
    )
    def test_chunking_invariance(self, bodies, data):
        stream = b"".join(encode_frame(body) for body in bodies)
        whole, whole_rest = decode_all(stream)
        cuts = sorted(
            data.draw(
                st.lists(st.integers(0, len(stream)), max_size=6), label="cuts"
            )
        )
        decoder = FrameDecoder()
        events = []
        previous = 0
        for cut in cuts + [len(stream)]:
            events.extend(decoder.feed(stream[previous:cut]))
            previous = cut
        assert events == whole
        assert decoder.pending == whole_rest


class TestAppMessages:
    def test_roundtrip(self):
        message = AppMessage("fall detection", 2, b"payload,with,commas")
        assert decode_app(encode_app(message)) == message

    def test_wire_shape(self):
        assert encode_app(AppMessage("f", 1, b"xyz")) == b"f,1,xyz"

    def test_missing_fields(self):
        with pytest.raises(ParseError):
            decode_app(b"only-name")

    def test_bad_level(self):
        with pytest.raises(ParseError):
            decode_app(b"f,abc,payload")

    @given(
        name=flow_names,
        level=st.integers(1, 9),
        payload=st.binary(max_size=120),
    )
    def test_roundtrip_random(self, name, level, payload):
        message = AppMessage(name, level, payload)
        assert decode_app(encode_app(message)) == message


class TestMfea:
    def test_sample_string_byte_exact(self):
        entries = [
            MfeaEntry(
                payload_size=41,
                network="Wi-Fi",
                period_seconds=10,
                flow_name="Kitchen Sensor",
                level=1,
            )
        ]
        assert encode_mfea(entries) == PAPER_SAMPLE

    def test_sample_string_decodes(self):
        entries = decode_mfea(PAPER_SAMPLE)
        assert entries == [
            MfeaEntry(41, "Wi-Fi", 10, "Kitchen Sensor", 1),
        ]

    def test_empty_list(self):
        assert encode_mfea([]) == "MFEA:[]"
        assert decode_mfea("MFEA:[]") == []

    def test_two_entries_joined_with_comma_space(self):
        entries = [
            MfeaEntry(1, "A", 1, "x", 1),
            MfeaEntry(2, "B", 2, "y", 2),
        ]
        text = encode_mfea(entries)
        assert "}, {" in text
        assert decode_mfea(text) == entries

    def test_double_quotes_accepted(self):
        text = 'MFEA:[{"PS": 41, "N": "Wi-Fi", "PE": 10, "MF": "Kitchen Sensor", "CL": 1}]'
        assert decode_mfea(text) == [MfeaEntry(41, "Wi-Fi", 10, "Kitchen Sensor", 1)]

    def test_name_containing_single_quote_uses_double_quotes(self):
        entries = [MfeaEntry(1, "A", 1, "O'Hara room", 1)]
        text = encode_mfea(entries)
        assert '"O\'Hara room"' in text
        assert decode_mfea(text) == entries

    def test_fractional_period(self):
        entries = [MfeaEntry(1, "A", 0.5, "x", 1)]
        assert decode_mfea(encode_mfea(entries)) == entries

    def test_parse_error_carries_offset(self):
        with pytest.raises(ParseError) as excinfo:
            decode_mfea("MFEA:[{'PS': }]")
        assert excinfo.value.offset == 13

    def test_missing_key_rejected(self):
        with pytest.raises(ParseError):
            decode_mfea("MFEA:[{'PS': 1, 'N': 'A', 'PE': 1, 'MF': 'x'}]")

    def test_trailing_data_rejected(self):
        with pytest.raises(ParseError):
            decode_mfea("MFEA:[]x")

    @given(
        entries=st.lists(
            st.builds(
                MfeaEntry,
                payload_size=st.integers(0, 10**6),
                network=flow_names,
                period_seconds=st.one_of(
                    st.integers(1, 10**6),
                    st.floats(
                        min_value=0.001, max_value=1e6, allow_nan=False, allow_infinity=False
                    ),
                ),
                flow_name=flow_names,
                level=st.integers(1, 9),
            ),
            max_size=5,
        )
    )
    @settings(max_examples=200)
    def test_roundtrip_random(self, entries):
        assert decode_mfea(encode_mfea(entries)) == entries


class TestControl:
    @pytest.mark.parametrize(
        "text,message",
        [
            ("<INFO:RE-ALLOC:INIT>", ReallocInit()),
            ("<INFO:RE-ALLOC:ACCEPTED>", ReallocAccepted()),
            ("<ACK:fall detection>", Ack("fall detection")),
            ("<ERR:fall detection:NOT-ALLOCATED>", Err("fall detection", ErrorReason.NOT_ALLOCATED)),
            ("<ERR:heart monitoring:NOT-DELIVERED>", Err("heart monitoring", ErrorReason.NOT_DELIVERED)),
        ],
    )
    def test_canonical_forms(self, text, message):
        assert parse_control(text) == message
        assert encode_control(message) == text

    def test_unknown_reason(self):
        with pytest.raises(ParseError):
            parse_control("<ERR:f:NOT-SENT>")

    def test_unwrapped_text(self):
        with pytest.raises(ParseError):
            parse_control("ACK:f")

    @given(name=flow_names, reason=st.sampled_from(list(ErrorReason)))
    def test_roundtrip_random(self, name, reason):
        for message in (Ack(name), Err(name, reason)):
            assert parse_control(encode_control(message)) == message


class TestBulkRandomised:
    def test_ten_thousand_frame_roundtrips_with_random_chunking(self):
        rng = random.Random(0xC0DEC)
        cases = 0
        while cases < 10_000:
            group = rng.randint(1, 4)
            bodies = [
                rng.randbytes(rng.randint(0, 80)) for _ in range(group)
            ]
            cases += group
            stream = b"".join(encode_frame(body) for body in bodies)
            decoder = FrameDecoder()
            events: list = []
            position = 0
            while position < len(stream):
                step = rng.randint(1, 17)
                events.extend(decoder.feed(stream[position : position + step]))
                position += step
            assert events == [Frame(body) for body in bodies]
            assert decoder.pending == b""
