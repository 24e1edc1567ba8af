"""Independent readers used only by the tests.

These parse the emitted MIDI and JSON back into structured form without
touching any writer code, so round-trip checks exercise two separate
routes through each format.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from chordsmith.harmonize import ChordEvent, Harmonization, Melody, NoteEvent
from chordsmith.theory import Chord, ChordQuality, Mode, Note, pc_parse


@dataclass
class SmfNote:
    tick_on: int
    tick_off: int
    channel: int
    pitch: int
    velocity: int


@dataclass
class SmfTrack:
    raw_events: list
    notes: list


@dataclass
class SmfFile:
    fmt: int
    n_tracks: int
    division: int
    tempo_us: int | None
    tracks: list


def _read_vlq(data: bytes, pos: int) -> tuple[int, int]:
    value = 0
    while True:
        byte = data[pos]
        pos += 1
        value = (value << 7) | (byte & 0x7F)
        if not byte & 0x80:
            return value, pos


def _read_track(body: bytes) -> tuple[SmfTrack, int | None]:
    pos = 0
    tick = 0
    raw = []
    pending: dict[tuple[int, int], list] = {}
    notes = []
    tempo = None
    while pos < len(body):
        delta, pos = _read_vlq(body, pos)
        tick += delta
        status = body[pos]
        pos += 1
        if status == 0xFF:
            meta_type = body[pos]
            pos += 1
            length, pos = _read_vlq(body, pos)
            payload = body[pos : pos + length]
            pos += length
            raw.append((tick, "meta", meta_type, payload))
            if meta_type == 0x51:
                tempo = int.from_bytes(payload, "big")
            if meta_type == 0x2F:
                break
        elif 0x80 <= status <= 0xEF:
            kind = status & 0xF0
            channel = status & 0x0F
            if kind in (0xC0, 0xD0):
                data1 = body[pos]
                pos += 1
                raw.append((tick, "channel", status, (data1,)))
                continue
            data1, data2 = body[pos], body[pos + 1]
            pos += 2
            raw.append((tick, "channel", status, (data1, data2)))
            if kind == 0x90 and data2 > 0:
                pending.setdefault((channel, data1), []).append((tick, data2))
            elif kind == 0x80 or (kind == 0x90 and data2 == 0):
                stack = pending.get((channel, data1))
                if not stack:
                    raise ValueError(
                        f"note off without a matching on: ch {channel} pitch {data1}"
                    )
                on_tick, velocity = stack.pop(0)
                notes.append(SmfNote(on_tick, tick, channel, data1, velocity))
        else:
            raise ValueError(f"unsupported status byte 0x{status:02x} (running status?)")
    leftovers = {k: v for k, v in pending.items() if v}
    if leftovers:
        raise ValueError(f"note ons left hanging: {leftovers}")
    return SmfTrack(raw, notes), tempo


def read_smf(data: bytes) -> SmfFile:
    if data[:4] != b"MThd":
        raise ValueError("not a standard MIDI file")
    header_len = int.from_bytes(data[4:8], "big")
    fmt = int.from_bytes(data[8:10], "big")
    n_tracks = int.from_bytes(data[10:12], "big")
    division = int.from_bytes(data[12:14], "big")
    pos = 8 + header_len
    tracks = []
    tempo_us = None
    for _ in range(n_tracks):
        if data[pos : pos + 4] != b"MTrk":
            raise ValueError(f"expected a track chunk at byte {pos}")
        length = int.from_bytes(data[pos + 4 : pos + 8], "big")
        body = data[pos + 8 : pos + 8 + length]
        pos += 8 + length
        track, tempo = _read_track(body)
        if tempo is not None:
            tempo_us = tempo
        tracks.append(track)
    if pos != len(data):
        raise ValueError(f"{len(data) - pos} trailing bytes after the last track")
    return SmfFile(fmt, n_tracks, division, tempo_us, tracks)


_NOTE_NAME = re.compile(r"^([A-G][#b]?)(-?\d+)$")


def parse_note_name(text: str) -> Note:
    match = _NOTE_NAME.match(text)
    if match is None:
        raise ValueError(f"bad note name: {text!r}")
    return Note(pc_parse(match.group(1)), int(match.group(2)))


_OFFSETS_TO_QUALITY = {
    (0, 4, 7): ChordQuality.MAJOR_TRIAD,
    (0, 3, 7): ChordQuality.MINOR_TRIAD,
    (0, 3, 6): ChordQuality.DIMINISHED_TRIAD,
    (0, 4, 7, 10): ChordQuality.DOMINANT7,
    (0, 3, 7, 10): ChordQuality.MINOR7,
    (0, 4, 7, 11): ChordQuality.MAJOR7,
}


def chord_from_voicing(notes: list[Note]) -> Chord:
    """Recover the chord: lowest note is the root by the voicing policy."""
    root = notes[0].pc
    offsets = tuple(sorted({(n.pc - root) % 12 for n in notes}))
    return Chord(root, _OFFSETS_TO_QUALITY[offsets])


def read_music_json(text: str) -> tuple[Melody, list[Harmonization]]:
    document = json.loads(text)
    melody_events = tuple(
        NoteEvent(ev["time"], parse_note_name(ev["note"]), ev["duration"])
        for ev in document["melody"]
    )
    melody = Melody(
        pc_parse(document["key"]),
        Mode(document["mode"]),
        document["bpm"],
        melody_events,
    )
    harmonizations = []
    for name, value in document.items():
        if name in ("key", "mode", "bpm", "melody"):
            continue
        events = tuple(
            ChordEvent(
                ev["time"],
                chord_from_voicing([parse_note_name(n) for n in ev["note"]]),
                tuple(parse_note_name(n) for n in ev["note"]),
                ev["duration"],
            )
            for ev in value
        )
        harmonizations.append(Harmonization(name, events))
    return melody, harmonizations
