"""Harmonization engines.

Six ways to set chords under a monophonic melody:

* ``harmonize_simple1``: one matching chord per main tone.
* ``harmonize_simple2``: one matching chord per melody note.
* ``harmonize_schoenberg``: a seeded random walk over the chart of
  regions, decorated with secondary dominants and ii-V prefixes.
* ``harmonize_giant_steps``: key centers cycling by major thirds.
* ``harmonize_modal``: a fixed two-chord or four-chord progression for
  one of five church modes.

All engines share the one-beat slot grid, the voicing policy, and the
deterministic random source defined here.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass, field

from .regions import (
    ChartBoundaryError,
    Direction,
    GridPos,
    RegionChart,
    build_chart,
)
from .theory import (
    Chord,
    ChordQuality,
    Mode,
    Note,
    Scale,
    ScaleKind,
    chord_tones,
    diatonic_triad,
    is_diatonic,
    scale_degrees,
    transpose,
)

_MASK64 = (1 << 64) - 1

# Directions drawn per walk step before giving up.
MAX_DIRECTION_DRAWS = 64


class RandomSource:
    """SplitMix64 pseudo-random stream.

    A tiny, widely documented 64-bit generator. Its output depends only
    on the seed, never on the platform or interpreter version, so every
    harmonization is reproducible from (input, seed).
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """A float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def randrange(self, n: int) -> int:
        """An unbiased integer in [0, n), by rejection."""
        if n <= 0:
            raise ValueError(f"randrange bound must be positive, got {n}")
        limit = ((1 << 64) // n) * n
        while True:
            draw = self.next_u64()
            if draw < limit:
                return draw % n

    def choice(self, items):
        if not items:
            raise ValueError("cannot choose from an empty sequence")
        return items[self.randrange(len(items))]


def derive_seed(master_seed: int, label: str) -> int:
    """A stable per-label seed from a master seed.

    Uses SHA-256 so distinct labels get independent streams and the
    mapping never varies across runs or machines.
    """
    digest = hashlib.sha256(f"{master_seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class NoteEvent:
    """A melody note: onset and duration are in beats."""

    onset: float
    note: Note
    duration: float


@dataclass(frozen=True)
class Melody:
    key: int
    mode: Mode
    bpm: float
    events: tuple[NoteEvent, ...]

    def scale(self) -> Scale:
        kind = ScaleKind.MAJOR if self.mode is Mode.MAJOR else ScaleKind.NATURAL_MINOR
        return Scale(self.key, kind)

    def tonic_chord(self) -> Chord:
        quality = (
            ChordQuality.MAJOR_TRIAD
            if self.mode is Mode.MAJOR
            else ChordQuality.MINOR_TRIAD
        )
        return Chord(self.key, quality)

    def end_beats(self) -> float:
        if not self.events:
            return 0.0
        last = self.events[-1]
        return last.onset + last.duration


@dataclass(frozen=True)
class ChordEvent:
    onset: float
    chord: Chord
    voicing: tuple[Note, ...]
    duration: float


@dataclass(frozen=True)
class Harmonization:
    method_name: str
    events: tuple[ChordEvent, ...]


class WalkError(RuntimeError):
    """No legal move was found within the draw budget."""


class DominantPolicy(enum.Enum):
    ALWAYS_DOMINANT7 = "always-dominant7"
    DIATONIC_FIFTH = "diatonic-fifth"


class StepKind(enum.Enum):
    BASE = "base"
    INSERTED_DOMINANT = "inserted-dominant"
    INSERTED_TWO = "inserted-two"


@dataclass(frozen=True)
class WalkStep:
    chord: Chord
    slots: int
    kind: StepKind


@dataclass(frozen=True)
class SchoenbergParams:
    """Tuning knobs for the chart walk.

    ``p_ii_v_i`` is tried first at each insertion site; failing that,
    ``p_secondary_dominant`` decides whether a single dominant goes in.
    """

    directions: tuple[Direction, ...]
    allow_repeats: bool = False
    allow_mode_change: bool = True
    p_secondary_dominant: float = 1.0
    p_ii_v_i: float = 0.25
    repeats_per_chord: int = 1
    dominant_policy: DominantPolicy = DominantPolicy.ALWAYS_DOMINANT7

    def __post_init__(self) -> None:
        if not self.directions:
            raise ValueError("at least one walk direction is required")
        if self.repeats_per_chord < 1:
            raise ValueError("repeats_per_chord must be at least 1")
        for name in ("p_secondary_dominant", "p_ii_v_i"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be a probability, got {p}")
        # Normalize to declaration order so identical sets draw identically.
        ordered = tuple(d for d in Direction if d in set(self.directions))
        object.__setattr__(self, "directions", ordered)


def schoenberg_min_params(repeats_per_chord: int = 4) -> SchoenbergParams:
    """Conservative walk: rook moves, a chord per beat of the measure,
    an approach chord before every region change."""
    return SchoenbergParams(
        directions=(Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT),
        repeats_per_chord=repeats_per_chord,
        p_secondary_dominant=1.0,
        p_ii_v_i=0.25,
        dominant_policy=DominantPolicy.DIATONIC_FIFTH,
    )


def schoenberg_max_params() -> SchoenbergParams:
    """Adventurous walk: all twelve moves, one slot per chord, sparser
    approach chords."""
    return SchoenbergParams(
        directions=tuple(Direction),
        repeats_per_chord=1,
        p_secondary_dominant=0.5,
        p_ii_v_i=0.25,
        dominant_policy=DominantPolicy.ALWAYS_DOMINANT7,
    )


def matching_chord(scale: Scale, pc: int) -> Chord | None:
    """The diatonic triad that carries the pitch class as its third.

    Stacking thirds two degrees below the melody note always makes the
    note the chordal third. Returns None for pitches outside the scale.
    """
    degrees = scale_degrees(scale)
    if pc % 12 not in degrees:
        return None
    degree = degrees.index(pc % 12) + 1
    below = (degree - 3) % 7 + 1
    return diatonic_triad(scale, below)


def main_tone_indices(melody: Melody) -> tuple[int, ...]:
    """Indices of the emphasized notes: tonics, and notes strictly longer
    than both neighbors. Edge notes compare only the neighbor they have.
    Accidentals never qualify."""
    scale = melody.scale()
    picked = []
    events = melody.events
    for i, ev in enumerate(events):
        if not is_diatonic(scale, ev.note.pc):
            continue
        if ev.note.pc == melody.key:
            picked.append(i)
            continue
        longer_than_prev = i == 0 or ev.duration > events[i - 1].duration
        longer_than_next = i == len(events) - 1 or ev.duration > events[i + 1].duration
        if longer_than_prev and longer_than_next:
            picked.append(i)
    return tuple(picked)


def voice_chord(chord: Chord) -> tuple[Note, ...]:
    """Spread a chord for playback: root in octave 2, third in octave 3,
    then each tone at the nearest pitch strictly above the previous.
    Triads get the root doubled on top; sevenths stay four voices."""
    tones = chord_tones(chord)
    voices = [Note(chord.root, 2), Note(tones[1], 3)]
    for pc in tones[2:]:
        voices.append(_nearest_above(voices[-1], pc))
    if len(tones) == 3:
        voices.append(_nearest_above(voices[-1], chord.root))
    return tuple(voices)


def _nearest_above(prev: Note, pc: int) -> Note:
    interval = (pc - prev.pc) % 12
    if interval == 0:
        interval = 12
    return Note.from_midi(prev.midi + interval)


def secondary_dominant(target: Chord, policy: DominantPolicy) -> Chord:
    """The approach chord a fifth above the target.

    ALWAYS_DOMINANT7 gives a dominant seventh regardless of target.
    DIATONIC_FIFTH matches the target's color: minor targets get the
    minor seventh built on the unaltered fifth degree."""
    root = transpose(target.root, 7)
    if policy is DominantPolicy.DIATONIC_FIFTH and target.quality in (
        ChordQuality.MINOR_TRIAD,
        ChordQuality.MINOR7,
    ):
        return Chord(root, ChordQuality.MINOR7)
    return Chord(root, ChordQuality.DOMINANT7)


def two_five_one_prefix(target: Chord) -> tuple[Chord, Chord]:
    """The ii-V turnaround resolving into the target."""
    return (
        Chord(transpose(target.root, 2), ChordQuality.MINOR7),
        Chord(transpose(target.root, 7), ChordQuality.DOMINANT7),
    )


def _require_events(melody: Melody) -> None:
    if not melody.events:
        raise ValueError("cannot harmonize an empty melody")


def harmonize_simple1(melody: Melody) -> Harmonization:
    """One chord per main tone, held until the next one starts.

    Tonic main tones take the key's I chord; every other main tone takes
    its matching chord."""
    _require_events(melody)
    scale = melody.scale()
    picked = main_tone_indices(melody)
    events = []
    end = melody.end_beats()
    for rank, i in enumerate(picked):
        ev = melody.events[i]
        if ev.note.pc == melody.key:
            chord = melody.tonic_chord()
        else:
            chord = matching_chord(scale, ev.note.pc)
            assert chord is not None  # main tones are diatonic
        until = melody.events[picked[rank + 1]].onset if rank + 1 < len(picked) else end
        events.append(ChordEvent(ev.onset, chord, voice_chord(chord), until - ev.onset))
    return Harmonization("simple1", tuple(events))


def harmonize_simple2(melody: Melody) -> Harmonization:
    """One matching chord per melody note.

    Accidentals get no chord of their own; the previous chord simply
    keeps sounding through them."""
    _require_events(melody)
    scale = melody.scale()
    end = melody.end_beats()
    starts: list[tuple[float, Chord]] = []
    for ev in melody.events:
        chord = matching_chord(scale, ev.note.pc)
        if chord is not None:
            starts.append((ev.onset, chord))
    events = []
    for rank, (onset, chord) in enumerate(starts):
        until = starts[rank + 1][0] if rank + 1 < len(starts) else end
        events.append(ChordEvent(onset, chord, voice_chord(chord), until - onset))
    return Harmonization("simple2", tuple(events))


def slot_grid(melody: Melody) -> tuple[int, int]:
    """The whole-beat grid spanning the melody.

    Returns (origin, slot_count): the origin is the first onset floored
    to a beat, and slots run one per beat to the melody end, ceiled."""
    _require_events(melody)
    origin = math.floor(melody.events[0].onset)
    end = math.ceil(melody.end_beats())
    return origin, max(1, end - origin)


def base_step_budget(
    total_slots: int, repeats_per_chord: int, p_secondary_dominant: float, p_ii_v_i: float
) -> int:
    """How many base chords fit the slot budget, expected insertions and
    the closing dominant included. Never fewer than two."""
    per_step = repeats_per_chord + p_secondary_dominant + p_ii_v_i
    return max(2, math.floor((total_slots - 1) / per_step))


def schoenberg_walk(
    chart: RegionChart,
    params: SchoenbergParams,
    n_base_steps: int,
    rng: RandomSource,
) -> tuple[WalkStep, ...]:
    """Walk the chart from the center and dress the route for playback.

    The first and last base chords are the tonic cell. Intermediate base
    chords follow randomly drawn directions; draws that leave the chart,
    bounce straight back (unless repeats are allowed), or change mode
    (unless allowed) are retried up to MAX_DIRECTION_DRAWS times before
    the walk fails. Each non-initial base chord may be preceded by a
    ii-V pair or a single secondary dominant, and the final tonic is
    always approached through its own dominant."""
    if n_base_steps < 2:
        raise ValueError(f"need at least 2 base steps, got {n_base_steps}")
    tonic_chord = chart.chord_at(chart.center)
    cells = [tonic_chord]
    pos = chart.center
    prev_pos: GridPos | None = None
    for step_index in range(n_base_steps - 2):
        for _ in range(MAX_DIRECTION_DRAWS):
            direction = rng.choice(params.directions)
            try:
                candidate = chart.step(pos, direction)
            except ChartBoundaryError:
                continue
            if not params.allow_repeats and candidate == prev_pos:
                continue
            chord = chart.chord_at(candidate)
            if not params.allow_mode_change and chord.quality != tonic_chord.quality:
                continue
            prev_pos, pos = pos, candidate
            cells.append(chord)
            break
        else:
            raise WalkError(
                f"no legal direction after {MAX_DIRECTION_DRAWS} draws "
                f"at step {step_index + 1}"
            )
    bases = cells + [tonic_chord]
    return _decorate_bases(
        bases,
        repeats_per_chord=params.repeats_per_chord,
        p_secondary_dominant=params.p_secondary_dominant,
        p_ii_v_i=params.p_ii_v_i,
        policy=params.dominant_policy,
        rng=rng,
    )


def _decorate_bases(
    bases: list[Chord],
    repeats_per_chord: int,
    p_secondary_dominant: float,
    p_ii_v_i: float,
    policy: DominantPolicy,
    rng: RandomSource,
) -> tuple[WalkStep, ...]:
    """Lay out base chords with their insertions and the forced cadence."""
    steps = [WalkStep(bases[0], repeats_per_chord, StepKind.BASE)]
    for target in bases[1:-1]:
        if rng.random() < p_ii_v_i:
            two, five = two_five_one_prefix(target)
            steps.append(WalkStep(two, 1, StepKind.INSERTED_TWO))
            steps.append(WalkStep(five, 1, StepKind.INSERTED_TWO))
        elif rng.random() < p_secondary_dominant:
            steps.append(WalkStep(secondary_dominant(target, policy), 1, StepKind.INSERTED_DOMINANT))
        steps.append(WalkStep(target, repeats_per_chord, StepKind.BASE))
    steps.append(
        WalkStep(secondary_dominant(bases[-1], policy), 1, StepKind.INSERTED_DOMINANT)
    )
    steps.append(WalkStep(bases[-1], repeats_per_chord, StepKind.BASE))
    return tuple(steps)


def _steps_to_events(
    steps: tuple[WalkStep, ...], origin: int, total_slots: int
) -> tuple[ChordEvent, ...]:
    """One chord event per slot; the final chord soaks up spare slots."""
    counts = [s.slots for s in steps]
    used = sum(counts)
    if used < total_slots:
        counts[-1] += total_slots - used
    events = []
    beat = float(origin)
    for step, count in zip(steps, counts):
        voicing = voice_chord(step.chord)
        for _ in range(count):
            events.append(ChordEvent(beat, step.chord, voicing, 1.0))
            beat += 1.0
    return tuple(events)


def harmonize_schoenberg(
    melody: Melody,
    params: SchoenbergParams,
    rng: RandomSource,
    method_name: str = "schoenberg",
) -> Harmonization:
    """Harmonize by walking the melody key's chart of regions."""
    _require_events(melody)
    chart = build_chart(melody.key, melody.mode)
    origin, slots = slot_grid(melody)
    n = base_step_budget(
        slots, params.repeats_per_chord, params.p_secondary_dominant, params.p_ii_v_i
    )
    steps = schoenberg_walk(chart, params, n, rng)
    return Harmonization(method_name, _steps_to_events(steps, origin, slots))


GIANT_STEPS_P_II_V_I = 0.25


def harmonize_giant_steps(
    melody: Melody,
    rng: RandomSource,
    ascending: bool = False,
    method_name: str = "giant-steps",
) -> Harmonization:
    """Cycle the key center by major thirds, one slot per center.

    The cycle starts and ends on the melody tonic; a minor melody keeps
    its minor tonic at the ends and visits major centers in between.
    Every center change is approached through its secondary dominant, or
    one time in four through a full ii-V pair. By default the centers
    descend (tonic, down a major third, down another, back to tonic);
    ``ascending`` flips the cycle direction."""
    _require_events(melody)
    interval = 4 if ascending else -4
    origin, slots = slot_grid(melody)
    budget = base_step_budget(slots, 1, 1.0, GIANT_STEPS_P_II_V_I)
    # The cycle returns home every third step, so trim the budget to
    # land the final tonic on the cycle rather than jumping to it.
    n = budget - (budget - 1) % 3
    if n < 4:
        n = 2
    tonic_chord = melody.tonic_chord()
    bases = [tonic_chord]
    for i in range(1, n - 1):
        root = transpose(melody.key, interval * i)
        bases.append(Chord(root, ChordQuality.MAJOR_TRIAD))
    bases.append(tonic_chord)
    steps = _decorate_bases(
        bases,
        repeats_per_chord=1,
        p_secondary_dominant=1.0,
        p_ii_v_i=GIANT_STEPS_P_II_V_I,
        policy=DominantPolicy.ALWAYS_DOMINANT7,
        rng=rng,
    )
    return Harmonization(method_name, _steps_to_events(steps, origin, slots))


MODAL_KINDS = (
    ScaleKind.DORIAN,
    ScaleKind.PHRYGIAN_DOMINANT,
    ScaleKind.LYDIAN,
    ScaleKind.MIXOLYDIAN,
    ScaleKind.LOCRIAN,
)

_MODAL_METHOD_NAMES = {
    ScaleKind.DORIAN: "dorian",
    ScaleKind.PHRYGIAN_DOMINANT: "phrygian-dominant",
    ScaleKind.LYDIAN: "lydian",
    ScaleKind.MIXOLYDIAN: "mixolydian",
    ScaleKind.LOCRIAN: "locrian",
}

MODAL_BLOCK_SLOTS = 2


def modal_progression(tonic: int, kind: ScaleKind) -> tuple[Chord, ...]:
    """The fixed chord cycle for a mode, home chord first.

    Dorian borrows ii, iii and V from the relative ionian; locrian
    alternates the relative ionian's tonic with the diminished chord on
    the modal tonic; the others color the modal tonic and its whole-step
    or half-step neighbor."""
    if kind is ScaleKind.DORIAN:
        ionian = Scale(transpose(tonic, -2), ScaleKind.MAJOR)
        return (
            diatonic_triad(ionian, 2),
            diatonic_triad(ionian, 3),
            diatonic_triad(ionian, 2),
            diatonic_triad(ionian, 5),
        )
    if kind is ScaleKind.PHRYGIAN_DOMINANT:
        return (
            Chord(tonic, ChordQuality.MAJOR_TRIAD),
            Chord(transpose(tonic, 1), ChordQuality.MAJOR_TRIAD),
        )
    if kind is ScaleKind.LYDIAN:
        return (
            Chord(tonic, ChordQuality.MAJOR_TRIAD),
            Chord(transpose(tonic, 2), ChordQuality.DOMINANT7),
        )
    if kind is ScaleKind.MIXOLYDIAN:
        return (
            Chord(tonic, ChordQuality.DOMINANT7),
            Chord(transpose(tonic, -2), ChordQuality.MAJOR_TRIAD),
        )
    if kind is ScaleKind.LOCRIAN:
        return (
            Chord(transpose(tonic, 1), ChordQuality.MAJOR_TRIAD),
            Chord(tonic, ChordQuality.DIMINISHED_TRIAD),
        )
    raise ValueError(f"no modal progression for {kind}")


def harmonize_modal(melody: Melody, kind: ScaleKind) -> Harmonization:
    """Cycle the mode's progression in two-beat blocks.

    The final two blocks always rest on the progression's home chord."""
    if kind not in MODAL_KINDS:
        raise ValueError(f"{kind} is not a modal harmonization kind")
    _require_events(melody)
    progression = modal_progression(melody.key, kind)
    home = progression[0]
    origin, slots = slot_grid(melody)
    n_blocks = math.ceil(slots / MODAL_BLOCK_SLOTS)
    events = []
    for block in range(n_blocks):
        if block >= n_blocks - 2:
            chord = home
        else:
            chord = progression[block % len(progression)]
        voicing = voice_chord(chord)
        start = block * MODAL_BLOCK_SLOTS
        for slot in range(start, min(start + MODAL_BLOCK_SLOTS, slots)):
            events.append(ChordEvent(float(origin + slot), chord, voicing, 1.0))
    return Harmonization(_MODAL_METHOD_NAMES[kind], tuple(events))
