"""chordsmith: chord accompaniments for monophonic melodies.

The package splits into a pitch and chord theory kernel, a chart of key
regions, six harmonization engines, two melody readers, and renderers
for chord symbols, JSON, a playable script, MIDI, and piano-roll
figures.
"""

from .harmonize import (
    ChordEvent,
    DominantPolicy,
    Harmonization,
    Melody,
    NoteEvent,
    RandomSource,
    SchoenbergParams,
    StepKind,
    WalkError,
    WalkStep,
    derive_seed,
    harmonize_giant_steps,
    harmonize_modal,
    harmonize_schoenberg,
    harmonize_simple1,
    harmonize_simple2,
    main_tone_indices,
    matching_chord,
    schoenberg_max_params,
    schoenberg_min_params,
    schoenberg_walk,
    secondary_dominant,
    two_five_one_prefix,
    voice_chord,
)
from .musicxml import MusicXmlError, fifths_to_key, parse_musicxml
from .pitchstream import (
    PitchesParseError,
    PitchStream,
    QuantizeOptions,
    median_filter,
    parse_pitches_txt,
    quantize_pitch_stream,
)
from .regions import (
    CENTER,
    ChartBoundaryError,
    Direction,
    GridPos,
    RegionChart,
    RegionLabel,
    build_chart,
    format_chart,
)
from .render import (
    RenderConfig,
    chord_symbols,
    write_chord_symbols,
    write_midi,
    write_music_json,
    write_music_script,
)
from .theory import (
    Chord,
    ChordQuality,
    Mode,
    Note,
    Scale,
    ScaleKind,
    chord_name,
    chord_tones,
    diatonic_triad,
    frequency_to_note,
    is_diatonic,
    midi_to_frequency,
    pc_name,
    pc_parse,
    scale_degrees,
    transpose,
)

__version__ = "0.1.0"
