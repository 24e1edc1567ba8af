"""Piano-roll figures for a melody and its chords.

Renders the melody notes and the chord voicings as labeled rectangles
on a beats-by-pitch grid and writes the figure straight to a file.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .harmonize import Harmonization, Melody

MELODY_COLOR = "#29527a"
CHORD_COLOR = "#d08a2e"


def render_piano_roll(melody: Melody, harmonization: Harmonization, path: str) -> None:
    fig, ax = plt.subplots(figsize=(11, 5))
    pitches = [ev.note.midi for ev in melody.events]
    pitches += [n.midi for ev in harmonization.events for n in ev.voicing]
    for ev in harmonization.events:
        for note in ev.voicing:
            ax.add_patch(
                Rectangle(
                    (ev.onset, note.midi - 0.45),
                    ev.duration,
                    0.9,
                    facecolor=CHORD_COLOR,
                    edgecolor="white",
                    linewidth=0.4,
                    alpha=0.7,
                )
            )
    for ev in melody.events:
        ax.add_patch(
            Rectangle(
                (ev.onset, ev.note.midi - 0.45),
                ev.duration,
                0.9,
                facecolor=MELODY_COLOR,
                edgecolor="white",
                linewidth=0.4,
            )
        )
    if pitches:
        ax.set_ylim(min(pitches) - 2, max(pitches) + 2)
    end = melody.end_beats()
    if harmonization.events:
        last = harmonization.events[-1]
        end = max(end, last.onset + last.duration)
    ax.set_xlim(0, max(end, 1.0))
    ax.set_xlabel("beats")
    ax.set_ylabel("MIDI pitch")
    ax.set_title(harmonization.method_name)
    ax.grid(True, axis="x", alpha=0.3)
    fig.tight_layout()
    # Fixed metadata keeps repeated renders byte-identical.
    fig.savefig(path, dpi=100, metadata={"Software": "chordsmith"})
    plt.close(fig)
