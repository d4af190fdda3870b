"""Tour of the host/node wire protocol.

Every message travels in a newline-terminated frame carrying its own byte
count, so a reader can pull complete messages out of an arbitrarily chunked
byte stream. On top of the frames ride three payload kinds: application
messages, allocation announcements (MFEA), and control messages (ACK/ERR
plus the re-allocation handshake pair).

Run:  python demos/wire_protocol_tour.py
"""

from resilient_alloc import wire


def main() -> None:
    print("frames")
    print("  encode_frame(b'HELLO')      ->", wire.encode_frame(b"HELLO"))
    print("  encode_frame(b'')           ->", wire.encode_frame(b""))
    print("  encode_frame(b'two\\nlines') ->", wire.encode_frame(b"two\nlines"))
    print()

    print("incremental decoding survives any chunking")
    stream = wire.encode_frame(b"HELLO") + wire.encode_frame(b"HI")
    decoder = wire.FrameDecoder()
    for chunk in (stream[:8], stream[8:15], stream[15:]):
        got = decoder.feed(chunk)
        print(f"  feed({chunk!r}) -> {got}")
    print()

    print("garbage resynchronises at the next header")
    events, _ = wire.decode_all(b"line noise:ML:2:HI\n")
    for event in events:
        print(" ", event)
    print()

    print("allocation announcement (MFEA)")
    entries = [
        wire.MfeaEntry(payload_size=41, network="Wi-Fi", period_seconds=10,
                       flow_name="Kitchen Sensor", level=1),
        wire.MfeaEntry(payload_size=12, network="Sigfox", period_seconds=60,
                       flow_name="fall detection", level=3),
    ]
    text = wire.encode_mfea(entries)
    print(" ", text)
    print("  decodes back to", len(wire.decode_mfea(text)), "entries")
    print()

    print("application and control messages")
    app = wire.AppMessage("fall detection", 1, b"accel=0.02;hr=61")
    print("  app    ->", wire.encode_app(app))
    for message in (
        wire.ReallocInit(),
        wire.ReallocAccepted(),
        wire.Ack("fall detection"),
        wire.Err("fall detection", wire.ErrorReason.NOT_ALLOCATED),
        wire.Err("heart monitoring", wire.ErrorReason.NOT_DELIVERED),
    ):
        encoded = wire.encode_control(message)
        assert wire.parse_control(encoded) == message
        print("  control->", encoded)


if __name__ == "__main__":
    main()
