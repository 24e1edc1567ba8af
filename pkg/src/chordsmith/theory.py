"""Pitch classes, notes, scales, and chords.

Twelve-tone pitch arithmetic with sharps-only canonical spelling.
Flat names are accepted on input, and the five black keys can be
printed with flats as a display preference.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

SHARP_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")

FLAT_ALIASES = {"Db": 1, "Eb": 3, "Gb": 6, "Ab": 8, "Bb": 10}
FLAT_NAMES = {1: "Db", 3: "Eb", 6: "Gb", 8: "Ab", 10: "Bb"}

_NAME_TO_PC = {name: pc for pc, name in enumerate(SHARP_NAMES)}
_NAME_TO_PC.update(FLAT_ALIASES)

A4_MIDI = 69
A4_HZ = 440.0


def pc_parse(name: str) -> int:
    """Parse a note name into a pitch class 0..11.

    Accepts the twelve sharp spellings plus the five flat aliases.
    """
    try:
        return _NAME_TO_PC[name]
    except KeyError:
        raise ValueError(f"unknown note name: {name!r}") from None


def pc_name(pc: int, prefer_flats: bool = False) -> str:
    if not 0 <= pc <= 11:
        raise ValueError(f"pitch class out of range: {pc}")
    if prefer_flats and pc in FLAT_NAMES:
        return FLAT_NAMES[pc]
    return SHARP_NAMES[pc]


def transpose(pc: int, semitones: int) -> int:
    return (pc + semitones) % 12


@dataclass(frozen=True)
class Note:
    """A pitch class placed in an octave. C4 is MIDI 60, A4 is MIDI 69."""

    pc: int
    octave: int

    @property
    def midi(self) -> int:
        return 12 * (self.octave + 1) + self.pc

    @classmethod
    def from_midi(cls, midi: int) -> "Note":
        return cls(midi % 12, midi // 12 - 1)

    def name(self, prefer_flats: bool = False) -> str:
        return pc_name(self.pc, prefer_flats) + str(self.octave)


def midi_to_frequency(midi: float) -> float:
    return A4_HZ * 2.0 ** ((midi - A4_MIDI) / 12.0)


def frequency_to_note(hz: float) -> tuple[Note, float]:
    """Map a frequency to the nearest equal-tempered note and its cents offset.

    Returns (note, cents) with cents in [-50, +50). Ties round the note up.
    """
    if hz <= 0.0:
        raise ValueError(f"frequency must be positive, got {hz}")
    fractional = A4_MIDI + 12.0 * math.log2(hz / A4_HZ)
    nearest = math.floor(fractional + 0.5)
    cents = 100.0 * (fractional - nearest)
    return Note.from_midi(nearest), cents


class Mode(enum.Enum):
    MAJOR = "major"
    MINOR = "minor"

    @classmethod
    def from_name(cls, word: str) -> "Mode":
        try:
            return cls(word.lower())
        except ValueError:
            raise ValueError(f"unknown mode: {word!r}") from None


class ScaleKind(enum.Enum):
    MAJOR = "major"
    NATURAL_MINOR = "natural-minor"
    DORIAN = "dorian"
    PHRYGIAN = "phrygian"
    LYDIAN = "lydian"
    MIXOLYDIAN = "mixolydian"
    LOCRIAN = "locrian"
    PHRYGIAN_DOMINANT = "phrygian-dominant"


# Seven-interval step patterns, one octave each. The church modes are
# rotations of the major pattern; phrygian dominant is not (it is the
# fifth mode of harmonic minor and carries an augmented second).
SCALE_PATTERNS: dict[ScaleKind, tuple[int, ...]] = {
    ScaleKind.MAJOR: (2, 2, 1, 2, 2, 2, 1),
    ScaleKind.NATURAL_MINOR: (2, 1, 2, 2, 1, 2, 2),
    ScaleKind.DORIAN: (2, 1, 2, 2, 2, 1, 2),
    ScaleKind.PHRYGIAN: (1, 2, 2, 2, 1, 2, 2),
    ScaleKind.LYDIAN: (2, 2, 2, 1, 2, 2, 1),
    ScaleKind.MIXOLYDIAN: (2, 2, 1, 2, 2, 1, 2),
    ScaleKind.LOCRIAN: (1, 2, 2, 1, 2, 2, 2),
    ScaleKind.PHRYGIAN_DOMINANT: (1, 3, 1, 2, 1, 2, 2),
}

# Rotation index of each church mode within the major pattern.
CHURCH_MODE_ROTATION: dict[ScaleKind, int] = {
    ScaleKind.MAJOR: 0,
    ScaleKind.DORIAN: 1,
    ScaleKind.PHRYGIAN: 2,
    ScaleKind.LYDIAN: 3,
    ScaleKind.MIXOLYDIAN: 4,
    ScaleKind.NATURAL_MINOR: 5,
    ScaleKind.LOCRIAN: 6,
}


@dataclass(frozen=True)
class Scale:
    tonic: int
    kind: ScaleKind

    def __post_init__(self) -> None:
        if not 0 <= self.tonic <= 11:
            raise ValueError(f"scale tonic out of range: {self.tonic}")


def scale_degrees(scale: Scale) -> tuple[int, ...]:
    """The seven pitch classes of the scale, tonic first."""
    degrees = [scale.tonic]
    for step in SCALE_PATTERNS[scale.kind][:-1]:
        degrees.append(transpose(degrees[-1], step))
    return tuple(degrees)


def is_diatonic(scale: Scale, pc: int) -> bool:
    return pc % 12 in scale_degrees(scale)


class ChordQuality(enum.Enum):
    MAJOR_TRIAD = "major"
    MINOR_TRIAD = "minor"
    DIMINISHED_TRIAD = "diminished"
    DOMINANT7 = "dominant7"
    MINOR7 = "minor7"
    MAJOR7 = "major7"


CHORD_OFFSETS: dict[ChordQuality, tuple[int, ...]] = {
    ChordQuality.MAJOR_TRIAD: (0, 4, 7),
    ChordQuality.MINOR_TRIAD: (0, 3, 7),
    ChordQuality.DIMINISHED_TRIAD: (0, 3, 6),
    ChordQuality.DOMINANT7: (0, 4, 7, 10),
    ChordQuality.MINOR7: (0, 3, 7, 10),
    ChordQuality.MAJOR7: (0, 4, 7, 11),
}

CHORD_SUFFIX: dict[ChordQuality, str] = {
    ChordQuality.MAJOR_TRIAD: "",
    ChordQuality.MINOR_TRIAD: "m",
    ChordQuality.DIMINISHED_TRIAD: "dim",
    ChordQuality.DOMINANT7: "7",
    ChordQuality.MINOR7: "m7",
    ChordQuality.MAJOR7: "maj7",
}

_TRIAD_BY_OFFSETS = {
    (4, 7): ChordQuality.MAJOR_TRIAD,
    (3, 7): ChordQuality.MINOR_TRIAD,
    (3, 6): ChordQuality.DIMINISHED_TRIAD,
}


@dataclass(frozen=True)
class Chord:
    root: int
    quality: ChordQuality

    def __post_init__(self) -> None:
        if not 0 <= self.root <= 11:
            raise ValueError(f"chord root out of range: {self.root}")


def chord_tones(chord: Chord) -> tuple[int, ...]:
    return tuple(transpose(chord.root, off) for off in CHORD_OFFSETS[chord.quality])


def chord_name(chord: Chord, prefer_flats: bool = False) -> str:
    return pc_name(chord.root, prefer_flats) + CHORD_SUFFIX[chord.quality]


def diatonic_triad(scale: Scale, degree: int) -> Chord:
    """Stack thirds on the given 1-based scale degree.

    The phrygian dominant scale stacks an augmented triad on its sixth
    degree, which has no quality here; that degree raises rather than
    returning a mislabeled chord.
    """
    if not 1 <= degree <= 7:
        raise ValueError(f"scale degree out of range: {degree}")
    degrees = scale_degrees(scale)
    root = degrees[degree - 1]
    third = degrees[(degree + 1) % 7]
    fifth = degrees[(degree + 3) % 7]
    offsets = ((third - root) % 12, (fifth - root) % 12)
    quality = _TRIAD_BY_OFFSETS.get(offsets)
    if quality is None:
        raise ValueError(
            f"degree {degree} of {scale.kind.value} stacks to offsets "
            f"{offsets}, which is not a supported triad"
        )
    return Chord(root, quality)
