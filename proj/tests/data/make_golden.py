"""Hand-assembles the golden GMS vectors with struct, independent of the C++ codec.

minimal.gms:  scene "s" (nbFrame 0, freq 1000 Hz, Float32, scale 1, blockSize 0),
              unit "u", channel "c" [Scalar0D, Position].
two_frames.gms: same structure, nbFrame 2, samples 1.0 and 2.0.
"""
import struct
import pathlib


def chunk(cid, payload):
    out = cid + struct.pack(">I", len(payload)) + payload
    return out + (b"\0" if len(payload) % 2 else b"")


def name(text):
    raw = text.encode()
    return struct.pack(">H", len(raw)) + raw


def document(nb_frame, frames):
    body = b"GMS "
    body += chunk(b"VERS", struct.pack(">HH", 0, 1))
    body += chunk(b"SCEN", name("s") + struct.pack(">IdHdI", nb_frame, 1000.0, 0, 1.0, 0))
    body += chunk(b"UNIT", name("u"))
    body += chunk(b"CHAN", name("c") + struct.pack(">HH", 0, 0))
    body += chunk(b"FRAM", b"".join(struct.pack(">f", v) for v in frames))
    return b"FORM" + struct.pack(">I", len(body)) + body


here = pathlib.Path(__file__).parent
(here / "minimal.gms").write_bytes(document(0, []))
(here / "two_frames.gms").write_bytes(document(2, [1.0, 2.0]))
