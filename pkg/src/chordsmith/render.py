"""Output renderers: chord symbols, JSON, playable script, MIDI.

Chord symbols print with flats by default, matching common lead-sheet
spelling. The structured formats always use sharp spellings so note
names round-trip through the parsers unambiguously. JSON carries times
in beats; the playable script converts to seconds at its printed tempo.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .harmonize import Harmonization, Melody
from .midi import DEFAULT_TICKS_PER_QUARTER, write_midi_bytes
from .theory import chord_name, pc_name


@dataclass(frozen=True)
class RenderConfig:
    prefer_flats: bool = True
    bpm_override: float | None = None
    ticks_per_quarter: int = DEFAULT_TICKS_PER_QUARTER


def chord_symbols(
    harmonization: Harmonization, config: RenderConfig = RenderConfig()
) -> list[str]:
    return [
        chord_name(ev.chord, config.prefer_flats) for ev in harmonization.events
    ]


def write_chord_symbols(
    harmonization: Harmonization, config: RenderConfig = RenderConfig()
) -> str:
    """One line: the method name, a colon, then the chord of every slot."""
    return (
        f"{harmonization.method_name}: "
        + " ".join(chord_symbols(harmonization, config))
        + "\n"
    )


def write_music_json(melody: Melody, harmonizations: list[Harmonization]) -> str:
    """One JSON document: key, mode, bpm, melody, then a chord event list
    named after each harmonization. Times and durations are beats."""
    document: dict = {
        "key": pc_name(melody.key),
        "mode": melody.mode.value,
        "bpm": melody.bpm,
        "melody": [
            {"time": ev.onset, "note": ev.note.name(), "duration": ev.duration}
            for ev in melody.events
        ],
    }
    for harmonization in harmonizations:
        document[harmonization.method_name] = [
            {
                "time": ev.onset,
                "note": [note.name() for note in ev.voicing],
                "duration": ev.duration,
            }
            for ev in harmonization.events
        ]
    return json.dumps(document, indent=2) + "\n"


_SAMPLER_NOTES = ["A0", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "C8"]


def _script_events(events, bpm: float) -> str:
    lines = []
    for time_beats, note_field, duration_beats in events:
        time_s = time_beats * 60.0 / bpm
        duration_s = duration_beats * 60.0 / bpm
        if isinstance(note_field, list):
            names = ", ".join(f"'{name}'" for name in note_field)
            note_text = f"[{names}]"
        else:
            note_text = f"'{note_field}'"
        lines.append(
            f"  {{'time': '{time_s:.6f}', 'note': {note_text}, "
            f"'duration': '{duration_s:.6f}'}},"
        )
    return "\n".join(lines)


def write_music_script(
    melody: Melody, harmonization: Harmonization, config: RenderConfig = RenderConfig()
) -> str:
    """A self-contained playback script for a browser audio sandbox.

    Loads piano samples, sets the transport tempo, then schedules the
    melody and the chord voicings as two parts. Times and durations are
    seconds, formatted to six decimals."""
    bpm = config.bpm_override if config.bpm_override is not None else melody.bpm
    urls = "\n".join(f'    "{n}": "{n}.mp3",' for n in _SAMPLER_NOTES)
    melody_entries = _script_events(
        [(ev.onset, ev.note.name(), ev.duration) for ev in melody.events], bpm
    )
    chord_entries = _script_events(
        [
            (ev.onset, [note.name() for note in ev.voicing], ev.duration)
            for ev in harmonization.events
        ],
        bpm,
    )
    return f"""const sampler = new Tone.Sampler({{
  urls: {{
{urls}
  }},
  baseUrl: "pianoSamples/",
}}).toDestination();

Tone.Transport.bpm.value = {bpm:g}

const melody = [
{melody_entries}
];

const key = '{pc_name(melody.key)}';
const mode = '{melody.mode.value}';

const chords = [
{chord_entries}
];

Tone.loaded().then(() => {{
  const chordPart = new Tone.Part(function(time, value) {{
    sampler.triggerAttackRelease(value.note, value.duration, time);
  }}, chords).start(0);

  const melodyPart = new Tone.Part(function(time, value) {{
    sampler.triggerAttackRelease(value.note, value.duration, time);
  }}, melody).start(0);
  melodyPart.humanize = true;

  Tone.Transport.start();
}});
"""


def write_midi(
    melody: Melody, harmonization: Harmonization, config: RenderConfig = RenderConfig()
) -> bytes:
    bpm = config.bpm_override if config.bpm_override is not None else melody.bpm
    return write_midi_bytes(
        melody, harmonization, bpm, ticks_per_quarter=config.ticks_per_quarter
    )
