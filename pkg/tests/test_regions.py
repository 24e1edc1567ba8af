from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chordsmith.regions import (
    CENTER,
    GRID_SIZE,
    ChartBoundaryError,
    Direction,
    GridPos,
    RegionLabel,
    build_chart,
    cell_text,
    format_chart,
)
from chordsmith.theory import Chord, ChordQuality, Mode, pc_parse, transpose


@pytest.fixture(scope="module")
def c_major():
    return build_chart(pc_parse("C"), Mode.MAJOR)


@pytest.fixture(scope="module")
def a_minor():
    return build_chart(pc_parse("A"), Mode.MINOR)


class TestChartStructure:
    def test_center_is_tonic(self, c_major, a_minor):
        assert c_major.chord_at(CENTER) == Chord(0, ChordQuality.MAJOR_TRIAD)
        assert a_minor.chord_at(CENTER) == Chord(9, ChordQuality.MINOR_TRIAD)

    def test_center_row_spelling(self, c_major):
        row = [cell_text(c_major.cells[CENTER.row][col]) for col in range(10, 18)]
        assert row == ["A", "a", "C", "c", "D#", "d#", "F#", "f#"]

    def test_row_law_right_of_major_is_parallel_minor(self, c_major):
        for row in range(GRID_SIZE):
            for col in range(GRID_SIZE - 1):
                left = c_major.cells[row][col]
                right = c_major.cells[row][col + 1]
                if left.quality is ChordQuality.MAJOR_TRIAD:
                    assert right == Chord(left.root, ChordQuality.MINOR_TRIAD)
                else:
                    assert right == Chord(
                        transpose(left.root, 3), ChordQuality.MAJOR_TRIAD
                    )

    def test_column_law_up_is_a_fifth(self, c_major):
        for row in range(1, GRID_SIZE):
            for col in range(GRID_SIZE):
                below = c_major.cells[row][col]
                above = c_major.cells[row - 1][col]
                assert above.root == transpose(below.root, 7)
                assert above.quality is below.quality

    def test_horizontal_period_eight(self, c_major):
        for row in range(GRID_SIZE):
            for col in range(GRID_SIZE - 8):
                assert c_major.cells[row][col] == c_major.cells[row][col + 8]

    def test_vertical_period_twelve(self, c_major):
        for row in range(GRID_SIZE - 12):
            for col in range(GRID_SIZE):
                assert c_major.cells[row][col] == c_major.cells[row + 12][col]

    def test_minor_chart_left_of_center_is_parallel_major(self, a_minor):
        left = a_minor.chord_at(GridPos(CENTER.row, CENTER.col - 1))
        assert left == Chord(9, ChordQuality.MAJOR_TRIAD)
        right = a_minor.chord_at(GridPos(CENTER.row, CENTER.col + 1))
        assert right == Chord(0, ChordQuality.MAJOR_TRIAD)

    @given(st.integers(0, 11))
    def test_minor_chart_is_relative_major_shifted(self, key):
        minor = build_chart(key, Mode.MINOR)
        major = build_chart(transpose(key, 3), Mode.MAJOR)
        for row in range(GRID_SIZE):
            for col in range(1, GRID_SIZE):
                assert minor.cells[row][col] == major.cells[row][col - 1]


class TestTraversal:
    def test_twelve_directions_reach_twelve_distinct_chords(self, c_major):
        assert len(Direction) == 12
        seen = set()
        for direction in Direction:
            pos = c_major.step(CENTER, direction)
            chord = c_major.chord_at(pos)
            seen.add((chord.root, chord.quality))
        assert len(seen) == 12

    def test_steps_reverse(self, c_major):
        opposites = {
            Direction.UP: Direction.DOWN,
            Direction.LEFT: Direction.RIGHT,
            Direction.UP_LEFT: Direction.DOWN_RIGHT,
            Direction.UP_RIGHT: Direction.DOWN_LEFT,
            Direction.UP2: Direction.DOWN2,
            Direction.LEFT2: Direction.RIGHT2,
        }
        for there, back in opposites.items():
            mid = c_major.step(CENTER, there)
            assert c_major.step(mid, back) == CENTER

    def test_boundary_step_raises(self, c_major):
        with pytest.raises(ChartBoundaryError):
            c_major.step(GridPos(0, 5), Direction.UP)
        with pytest.raises(ChartBoundaryError):
            c_major.step(GridPos(23, 23), Direction.RIGHT2)

    def test_out_of_bounds_lookup_raises(self, c_major):
        with pytest.raises(ChartBoundaryError):
            c_major.chord_at(GridPos(24, 0))
        with pytest.raises(ChartBoundaryError):
            c_major.chord_at(GridPos(0, -1))


class TestLabels:
    def test_label_ring(self, c_major):
        grid = {
            (-1, -1): RegionLabel.M,
            (-1, 0): RegionLabel.D,
            (-1, 1): RegionLabel.T_MIN,
            (0, -1): RegionLabel.SM,
            (0, 0): RegionLabel.T,
            (0, 1): RegionLabel.V,
            (1, -1): RegionLabel.DOR,
            (1, 0): RegionLabel.SD,
            (1, 1): RegionLabel.SD_MIN,
        }
        for (dr, dc), label in grid.items():
            pos = GridPos(CENTER.row + dr, CENTER.col + dc)
            assert c_major.region_label(pos) is label

    def test_labeled_chords_for_c_major(self, c_major):
        # T D SD ring for C: C G F with Am Em Dm left and c g f right.
        def at(dr, dc):
            return cell_text(c_major.chord_at(GridPos(CENTER.row + dr, CENTER.col + dc)))

        assert at(0, 0) == "C"
        assert at(-1, 0) == "G"
        assert at(1, 0) == "F"
        assert at(0, -1) == "a"
        assert at(-1, -1) == "e"
        assert at(1, -1) == "d"
        assert at(0, 1) == "c"
        assert at(-1, 1) == "g"
        assert at(1, 1) == "f"

    def test_exactly_nine_labels(self, c_major):
        labeled = [
            (row, col)
            for row in range(GRID_SIZE)
            for col in range(GRID_SIZE)
            if c_major.region_label(GridPos(row, col)) is not RegionLabel.NONE
        ]
        assert len(labeled) == 9


class TestFormatting:
    def test_minor_cells_print_lowercase(self):
        assert cell_text(Chord(10, ChordQuality.MINOR_TRIAD)) == "a#"
        assert cell_text(Chord(10, ChordQuality.MAJOR_TRIAD)) == "A#"

    def test_format_brackets_center(self, c_major):
        lines = format_chart(c_major).splitlines()
        assert len(lines) == GRID_SIZE
        row = lines[CENTER.row].split("\t")
        assert len(row) == GRID_SIZE
        assert row[CENTER.col] == "[C]"
        assert row[CENTER.col - 1] == "a"

    def test_format_minor_center(self):
        lines = format_chart(build_chart(pc_parse("A"), Mode.MINOR)).splitlines()
        row = lines[CENTER.row].split("\t")
        assert row[CENTER.col] == "[a]"
        assert row[CENTER.col - 1] == "A"
