"""A 24 by 24 chart of key regions centered on a tonal center.

Reading any column bottom to top, roots ascend by perfect fifths. Each
row alternates major and minor triads: immediately left of a major
triad sits its relative minor (root three semitones down), immediately
right sits its parallel minor (same root). One step right of a minor
triad is the major triad three semitones up, so roots climb three
semitones per column pair and every row repeats after eight columns.

A minor-key chart is the chart of the relative major shifted one column
so that the minor tonic, not the relative major, occupies the center.
"""

from __future__ import annotations

import enum
from typing import NamedTuple

from .theory import Chord, ChordQuality, Mode, pc_name, transpose

GRID_SIZE = 24


class GridPos(NamedTuple):
    row: int
    col: int


CENTER = GridPos(12, 12)


class ChartBoundaryError(IndexError):
    """A position or step fell outside the 24 by 24 grid."""


class Direction(enum.Enum):
    """Single moves available to a chart walk. Row 0 is the top row."""

    UP = (-1, 0)
    DOWN = (1, 0)
    LEFT = (0, -1)
    RIGHT = (0, 1)
    UP_LEFT = (-1, -1)
    UP_RIGHT = (-1, 1)
    DOWN_LEFT = (1, -1)
    DOWN_RIGHT = (1, 1)
    UP2 = (-2, 0)
    DOWN2 = (2, 0)
    LEFT2 = (0, -2)
    RIGHT2 = (0, 2)

    @property
    def delta(self) -> tuple[int, int]:
        return self.value


class RegionLabel(enum.Enum):
    T = "T"
    D = "D"
    SD = "SD"
    SM = "sm"
    M = "m"
    DOR = "dor"
    V = "v"
    T_MIN = "t"
    SD_MIN = "sd"
    NONE = ""


# Labeled cells as (row, col) offsets from the center: the tonic, the
# dominant above, the subdominant below, their relative minors to the
# left, and the parallel-minor column to the right.
_LABEL_OFFSETS: dict[tuple[int, int], RegionLabel] = {
    (0, 0): RegionLabel.T,
    (-1, 0): RegionLabel.D,
    (1, 0): RegionLabel.SD,
    (0, -1): RegionLabel.SM,
    (-1, -1): RegionLabel.M,
    (1, -1): RegionLabel.DOR,
    (0, 1): RegionLabel.V,
    (-1, 1): RegionLabel.T_MIN,
    (1, 1): RegionLabel.SD_MIN,
}


def _cell_from_center(key: int, rows_up: int, cols_right: int) -> Chord:
    # Closed form of the row and column rules: up a row adds a fifth,
    # each column pair to the right adds three semitones, and odd
    # columns hold the minor member of the pair.
    root = transpose(key, 7 * rows_up + 3 * (cols_right // 2))
    if cols_right % 2 == 0:
        return Chord(root, ChordQuality.MAJOR_TRIAD)
    return Chord(root, ChordQuality.MINOR_TRIAD)


class RegionChart:
    def __init__(self, key: int, mode: Mode, cells: tuple[tuple[Chord, ...], ...]):
        self.key = key
        self.mode = mode
        self.cells = cells
        self.center = CENTER

    def chord_at(self, pos: GridPos) -> Chord:
        if not (0 <= pos.row < GRID_SIZE and 0 <= pos.col < GRID_SIZE):
            raise ChartBoundaryError(f"position {tuple(pos)} outside chart")
        return self.cells[pos.row][pos.col]

    def step(self, pos: GridPos, direction: Direction) -> GridPos:
        drow, dcol = direction.delta
        new = GridPos(pos.row + drow, pos.col + dcol)
        if not (0 <= new.row < GRID_SIZE and 0 <= new.col < GRID_SIZE):
            raise ChartBoundaryError(
                f"step {direction.name} from {tuple(pos)} leaves the chart"
            )
        return new

    def region_label(self, pos: GridPos) -> RegionLabel:
        offset = (pos.row - CENTER.row, pos.col - CENTER.col)
        return _LABEL_OFFSETS.get(offset, RegionLabel.NONE)


def build_chart(key: int, mode: Mode) -> RegionChart:
    """Build the chart for a key. The tonic chord sits at the center.

    For minor keys the grid is the relative major's grid evaluated one
    column to the left, which places the minor tonic at the center with
    its parallel major as the immediate left neighbor.
    """
    if mode is Mode.MAJOR:
        anchor, shift = key, 0
    else:
        anchor, shift = transpose(key, 3), -1
    rows = []
    for row in range(GRID_SIZE):
        rows.append(
            tuple(
                _cell_from_center(anchor, CENTER.row - row, col - CENTER.col + shift)
                for col in range(GRID_SIZE)
            )
        )
    return RegionChart(key, mode, tuple(rows))


def cell_text(chord: Chord) -> str:
    """Chart cell spelling: minor triads print lowercase."""
    name = pc_name(chord.root)
    if chord.quality is ChordQuality.MINOR_TRIAD:
        return name.lower()
    return name


def format_chart(chart: RegionChart) -> str:
    """Tab-separated rows with the center cell bracketed."""
    lines = []
    for row in range(GRID_SIZE):
        parts = []
        for col in range(GRID_SIZE):
            text = cell_text(chart.cells[row][col])
            if GridPos(row, col) == CENTER:
                text = f"[{text}]"
            parts.append(text)
        lines.append("\t".join(parts))
    return "\n".join(lines) + "\n"
