"""Minimal MusicXML melody reader.

Scans a fixed tag subset in document order: divisions, key fifths,
metronome beat-unit and per-minute, then notes built from pitch (step,
alter, octave), rest, duration, and tie tags. Because the scan ignores
nesting, conventionally structured files and flat tag sequences parse
identically. Multi-voice features are out of scope; backup and forward
subtrees are skipped wholesale.

Durations divide by the declared divisions-per-quarter, accumulated as
exact fractions so long scores cannot drift.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction

from .harmonize import Melody, NoteEvent
from .theory import Mode, Note, pc_parse, transpose


class MusicXmlError(ValueError):
    pass


class MusicXmlStateError(MusicXmlError):
    """Note content arrived before the header tags that scale it."""


class MusicXmlTieError(MusicXmlError):
    """Tie stop without a matching start, or across different pitches."""


STEP_TO_PC = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}

_SKIP_SUBTREES = {"backup", "forward"}


def fifths_to_key(fifths: int, mode: Mode) -> int:
    """Key signature to tonic pitch class.

    Each sharp moves the major tonic up a fifth from C; the minor tonic
    tracks the relative minor, up a fifth from A."""
    if not -7 <= fifths <= 7:
        raise MusicXmlError(f"fifths out of range: {fifths}")
    start = pc_parse("C") if mode is Mode.MAJOR else pc_parse("A")
    return transpose(start, 7 * fifths)


@dataclass
class _PendingNote:
    step: str | None = None
    alter: int = 0
    octave: int | None = None
    duration: int | None = None
    tie_start: bool = False
    tie_stop: bool = False


@dataclass
class _PendingRest:
    duration: int | None = None


@dataclass
class _OpenTie:
    onset: Fraction
    midi: int
    duration: Fraction


@dataclass
class _ParserState:
    divisions: int | None = None
    fifths: int | None = None
    beat_unit_seen: bool = False
    per_minute: float | None = None
    cursor: Fraction = Fraction(0)
    pending: _PendingNote | _PendingRest | None = None
    open_tie: _OpenTie | None = None
    events: list[NoteEvent] = field(default_factory=list)


def parse_musicxml(content: str, mode: Mode = Mode.MAJOR) -> Melody:
    """Parse a single melody line from MusicXML text.

    The subset carries no mode, so the caller chooses: MAJOR reads the
    key signature as its major key, MINOR as its relative minor."""
    try:
        root = ET.fromstring(content)
    except ET.ParseError as exc:
        raise MusicXmlError(f"malformed XML: {exc}") from None
    state = _ParserState()
    _scan(root, state)
    _finalize_pending(state)
    _flush_tie(state)
    if state.fifths is None or state.divisions is None:
        raise MusicXmlStateError("document ended before divisions and fifths")
    key = fifths_to_key(state.fifths, mode)
    bpm = state.per_minute if state.per_minute is not None else 120.0
    return Melody(key, mode, bpm, tuple(state.events))


def _scan(element: ET.Element, state: _ParserState) -> None:
    for child in element:
        tag = child.tag
        if tag in _SKIP_SUBTREES:
            continue
        if tag == "divisions":
            state.divisions = _int_text(child, "divisions")
            if state.divisions <= 0:
                raise MusicXmlError(f"divisions must be positive, got {state.divisions}")
        elif tag == "fifths":
            state.fifths = _int_text(child, "fifths")
        elif tag == "beat-unit":
            if (child.text or "").strip() != "quarter":
                raise MusicXmlError(
                    f"unsupported beat-unit: {(child.text or '').strip()!r}"
                )
            state.beat_unit_seen = True
        elif tag == "per-minute":
            try:
                state.per_minute = float((child.text or "").strip())
            except ValueError:
                raise MusicXmlError(
                    f"per-minute is not a number: {child.text!r}"
                ) from None
        elif tag == "rest":
            _begin_item(state, _PendingRest())
        elif tag == "pitch":
            _begin_item(state, _PendingNote())
            _scan(child, state)
            continue
        elif tag == "step":
            note = _require_note(state, tag)
            text = (child.text or "").strip()
            if text not in STEP_TO_PC:
                raise MusicXmlError(f"unknown step: {text!r}")
            note.step = text
        elif tag == "alter":
            _require_note(state, tag).alter = _int_text(child, "alter")
        elif tag == "octave":
            _require_note(state, tag).octave = _int_text(child, "octave")
        elif tag == "duration":
            if state.pending is None:
                raise MusicXmlError("duration outside a note or rest")
            if state.pending.duration is not None:
                raise MusicXmlError("second duration inside one note")
            state.pending.duration = _int_text(child, "duration")
        elif tag == "tie":
            note = _require_note(state, tag)
            kind = child.get("type")
            if kind == "start":
                note.tie_start = True
            elif kind == "stop":
                note.tie_stop = True
            else:
                raise MusicXmlError(f"tie needs type start or stop, got {kind!r}")
        _scan(child, state)


def _int_text(element: ET.Element, what: str) -> int:
    text = (element.text or "").strip()
    try:
        return int(text)
    except ValueError:
        raise MusicXmlError(f"{what} is not an integer: {text!r}") from None


def _require_note(state: _ParserState, tag: str) -> _PendingNote:
    if not isinstance(state.pending, _PendingNote):
        raise MusicXmlError(f"{tag} outside a pitch")
    return state.pending


def _begin_item(state: _ParserState, item: _PendingNote | _PendingRest) -> None:
    _finalize_pending(state)
    if state.divisions is None or state.fifths is None:
        raise MusicXmlStateError("note content before divisions and fifths")
    state.pending = item


def _finalize_pending(state: _ParserState) -> None:
    pending = state.pending
    state.pending = None
    if pending is None:
        return
    if pending.duration is None:
        raise MusicXmlError("note or rest without a duration")
    beats = Fraction(pending.duration, state.divisions)
    if isinstance(pending, _PendingRest):
        # A tie cannot cross a rest; whatever is open simply ends.
        _flush_tie(state)
        state.cursor += beats
        return
    if pending.step is None or pending.octave is None:
        raise MusicXmlError("pitch without step and octave")
    pc = (STEP_TO_PC[pending.step] + pending.alter) % 12
    midi = Note(pc, pending.octave).midi + 12 * (
        (STEP_TO_PC[pending.step] + pending.alter) // 12
    )
    onset = state.cursor
    state.cursor += beats
    if pending.tie_stop:
        if state.open_tie is None:
            raise MusicXmlTieError("tie stop without an open tie")
        if state.open_tie.midi != midi:
            raise MusicXmlTieError(
                f"tie stop on a different pitch: {state.open_tie.midi} vs {midi}"
            )
        state.open_tie.duration += beats
        if not pending.tie_start:
            _flush_tie(state)
        return
    _flush_tie(state)
    if pending.tie_start:
        state.open_tie = _OpenTie(onset, midi, beats)
    else:
        state.events.append(NoteEvent(float(onset), Note.from_midi(midi), float(beats)))


def _flush_tie(state: _ParserState) -> None:
    tie = state.open_tie
    if tie is not None:
        state.open_tie = None
        state.events.append(
            NoteEvent(float(tie.onset), Note.from_midi(tie.midi), float(tie.duration))
        )
