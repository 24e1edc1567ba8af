"""Standard MIDI File writer.

Emits format 1 files with three tracks: tempo, melody (channel 0), and
chords (channel 1). The encoding is deliberately rigid so identical
inputs give identical bytes: no running status, explicit note-offs,
velocity 80 throughout, and one tempo event at tick zero.
"""

from __future__ import annotations

from .harmonize import Harmonization, Melody

DEFAULT_TICKS_PER_QUARTER = 480
VELOCITY = 80

MELODY_CHANNEL = 0
CHORD_CHANNEL = 1


def encode_vlq(value: int) -> bytes:
    """Variable-length quantity: 7 bits per byte, high bit marks more."""
    if value < 0:
        raise ValueError(f"delta time must not be negative: {value}")
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(out))


def _check_pitch(midi_pitch: int) -> int:
    if not 0 <= midi_pitch <= 127:
        raise ValueError(f"pitch {midi_pitch} outside the MIDI range 0..127")
    return midi_pitch


def _note_track(
    notes: list[tuple[float, float, int]], channel: int, ticks_per_quarter: int
) -> bytes:
    """Encode (onset_beats, duration_beats, pitch) triples as one track.

    Simultaneous off and on events order offs first so repeated chords
    restrike cleanly."""
    timed: list[tuple[int, int, bytes]] = []
    for onset, duration, pitch in notes:
        _check_pitch(pitch)
        on_tick = round(onset * ticks_per_quarter)
        off_tick = round((onset + duration) * ticks_per_quarter)
        timed.append((on_tick, 1, bytes((0x90 | channel, pitch, VELOCITY))))
        timed.append((off_tick, 0, bytes((0x80 | channel, pitch, VELOCITY))))
    timed.sort(key=lambda item: (item[0], item[1]))
    body = bytearray()
    cursor = 0
    for tick, _, message in timed:
        body += encode_vlq(tick - cursor)
        body += message
        cursor = tick
    body += b"\x00\xff\x2f\x00"  # end of track
    return bytes(body)


def _tempo_track(bpm: float) -> bytes:
    microseconds = round(60_000_000 / bpm)
    body = b"\x00\xff\x51\x03" + microseconds.to_bytes(3, "big")
    body += b"\x00\xff\x2f\x00"
    return body


def _chunk(tag: bytes, body: bytes) -> bytes:
    return tag + len(body).to_bytes(4, "big") + body


def write_midi_bytes(
    melody: Melody,
    harmonization: Harmonization,
    bpm: float,
    ticks_per_quarter: int = DEFAULT_TICKS_PER_QUARTER,
) -> bytes:
    """Render melody plus one harmonization as a complete SMF byte string."""
    if bpm <= 0:
        raise ValueError(f"bpm must be positive, got {bpm}")
    header = (
        (1).to_bytes(2, "big")
        + (3).to_bytes(2, "big")
        + ticks_per_quarter.to_bytes(2, "big")
    )
    melody_notes = [(ev.onset, ev.duration, ev.note.midi) for ev in melody.events]
    chord_notes = [
        (ev.onset, ev.duration, note.midi)
        for ev in harmonization.events
        for note in ev.voicing
    ]
    return (
        _chunk(b"MThd", header)
        + _chunk(b"MTrk", _tempo_track(bpm))
        + _chunk(b"MTrk", _note_track(melody_notes, MELODY_CHANNEL, ticks_per_quarter))
        + _chunk(b"MTrk", _note_track(chord_notes, CHORD_CHANNEL, ticks_per_quarter))
    )
