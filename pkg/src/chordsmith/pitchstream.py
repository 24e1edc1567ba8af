"""Pitch-stream ingestion.

A pitch stream is a whitespace-separated text file: total duration in
seconds, key name, mode word, beats per minute, a sample count, then
that many Hz samples evenly spaced over the duration. Samples at or
below zero mark unvoiced frames. An optional variant interleaves a
confidence value after every sample.

``quantize_pitch_stream`` turns a stream into a melody: median filter
the voiced samples, snap each to the nearest tempered note, merge equal
runs into events, sweep out blips shorter than a minimum, and snap the
result to a beat grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .harmonize import Melody, NoteEvent
from .theory import Mode, Note, frequency_to_note, pc_parse


class PitchesParseError(ValueError):
    pass


@dataclass(frozen=True)
class PitchStream:
    duration_s: float
    key: int
    mode: Mode
    bpm: float
    samples_hz: tuple[float, ...]
    confidences: tuple[float, ...] | None = None


@dataclass(frozen=True)
class QuantizeOptions:
    median_window: int = 5
    min_note_beats: float = 0.125
    snap_grid_beats: float = 0.25
    confidence_threshold: float = 0.5

    def __post_init__(self) -> None:
        if self.median_window < 1 or self.median_window % 2 == 0:
            raise ValueError(
                f"median_window must be odd and positive, got {self.median_window}"
            )
        if self.min_note_beats <= 0 or self.snap_grid_beats <= 0:
            raise ValueError("note and grid minima must be positive")


def parse_pitches_txt(content: str, with_confidence: bool = False) -> PitchStream:
    tokens = content.split()
    if len(tokens) < 5:
        raise PitchesParseError(
            f"header needs duration, key, mode, bpm and count; got {len(tokens)} tokens"
        )
    duration_s = _float_token(tokens, 0, "duration")
    try:
        key = pc_parse(tokens[1])
    except ValueError as exc:
        raise PitchesParseError(f"token 2: {exc}") from None
    try:
        mode = Mode.from_name(tokens[2])
    except ValueError as exc:
        raise PitchesParseError(f"token 3: {exc}") from None
    bpm = _float_token(tokens, 3, "bpm")
    try:
        count = int(tokens[4])
    except ValueError:
        raise PitchesParseError(f"token 5: expected sample count, got {tokens[4]!r}") from None
    if duration_s <= 0:
        raise PitchesParseError(f"duration must be positive, got {duration_s}")
    if bpm <= 0:
        raise PitchesParseError(f"bpm must be positive, got {bpm}")
    if count < 0:
        raise PitchesParseError(f"sample count must not be negative, got {count}")
    values_per_sample = 2 if with_confidence else 1
    body = tokens[5:]
    if len(body) != count * values_per_sample:
        raise PitchesParseError(
            f"expected {count * values_per_sample} sample values, got {len(body)}"
        )
    numbers = []
    for i, token in enumerate(body):
        try:
            numbers.append(float(token))
        except ValueError:
            raise PitchesParseError(
                f"sample value {i + 1}: expected a number, got {token!r}"
            ) from None
    if with_confidence:
        samples = tuple(numbers[0::2])
        confidences = tuple(numbers[1::2])
    else:
        samples = tuple(numbers)
        confidences = None
    return PitchStream(duration_s, key, mode, bpm, samples, confidences)


def _float_token(tokens: list[str], index: int, what: str) -> float:
    try:
        return float(tokens[index])
    except ValueError:
        raise PitchesParseError(
            f"token {index + 1}: expected {what}, got {tokens[index]!r}"
        ) from None


def median_filter(samples: tuple[float, ...] | list[float], window: int) -> list[float]:
    """Sliding median over the voiced samples.

    Each voiced sample becomes the median of the voiced samples inside
    its centered window; windows shrink at the edges instead of padding.
    Unvoiced samples pass through untouched and never enter a window."""
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be odd and positive, got {window}")
    half = window // 2
    out = list(samples)
    for i, value in enumerate(samples):
        if value <= 0.0:
            continue
        lo = max(0, i - half)
        hi = min(len(samples), i + half + 1)
        voiced = sorted(v for v in samples[lo:hi] if v > 0.0)
        mid = len(voiced) // 2
        if len(voiced) % 2 == 1:
            out[i] = voiced[mid]
        else:
            out[i] = (voiced[mid - 1] + voiced[mid]) / 2.0
    return out


def _fill_low_confidence(
    samples: tuple[float, ...], confidences: tuple[float, ...], threshold: float
) -> list[float]:
    """Replace low-confidence samples with the nearest confident one.

    Ties between equally near neighbors fall to the earlier sample. With
    no confident sample anywhere the frame goes unvoiced."""
    confident = [i for i, c in enumerate(confidences) if c >= threshold]
    out = list(samples)
    for i, c in enumerate(confidences):
        if c >= threshold:
            continue
        if not confident:
            out[i] = 0.0
            continue
        nearest = min(confident, key=lambda j: (abs(j - i), j))
        out[i] = samples[nearest]
    return out


def _snap(beats: float, grid: float) -> float:
    return math.floor(beats / grid + 0.5) * grid


def quantize_pitch_stream(
    stream: PitchStream, options: QuantizeOptions = QuantizeOptions()
) -> Melody:
    """Convert a pitch stream to note events on a beat grid.

    A short event merges into the event before it when their pitches are
    within a semitone; otherwise its time becomes silence. Merges also
    rejoin an equal-pitched note that a dropped blip had split."""
    samples = stream.samples_hz
    if stream.confidences is not None:
        samples = tuple(
            _fill_low_confidence(
                samples, stream.confidences, options.confidence_threshold
            )
        )
    filtered = median_filter(samples, options.median_window)

    beats_per_sample = (
        (stream.duration_s / len(samples)) * stream.bpm / 60.0 if samples else 0.0
    )

    # Run-length segmentation of equal snapped notes; silence breaks
    # runs. Runs are tracked as [start_sample, midi, sample_count] so
    # contiguity checks stay exact integer arithmetic.
    raw: list[list[int]] = []
    current_midi: int | None = None
    for i, hz in enumerate(filtered):
        midi = frequency_to_note(hz)[0].midi if hz > 0.0 else None
        if midi is not None and midi == current_midi:
            raw[-1][2] += 1
        elif midi is not None:
            raw.append([i, midi, 1])
            current_midi = midi
        else:
            current_midi = None

    # Sweep out blips shorter than the minimum.
    kept: list[list[int]] = []
    for start, midi, length in raw:
        if length * beats_per_sample >= options.min_note_beats:
            kept.append([start, midi, length])
            continue
        if kept and kept[-1][0] + kept[-1][2] == start and abs(kept[-1][1] - midi) <= 1:
            kept[-1][2] += length
        # else: the blip's time becomes silence
    merged: list[list[int]] = []
    for start, midi, length in kept:
        if merged and merged[-1][1] == midi and merged[-1][0] + merged[-1][2] == start:
            merged[-1][2] += length
        else:
            merged.append([start, midi, length])

    events = []
    grid = options.snap_grid_beats
    for start, midi, length in merged:
        onset = _snap(start * beats_per_sample, grid)
        end = _snap((start + length) * beats_per_sample, grid)
        if end - onset < options.min_note_beats:
            continue
        events.append(NoteEvent(onset, Note.from_midi(midi), end - onset))
    return Melody(stream.key, stream.mode, stream.bpm, tuple(events))
