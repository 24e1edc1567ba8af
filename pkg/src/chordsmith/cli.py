"""Command line interface.

Two subcommands: ``harmonize`` (the default when the first argument is
not a subcommand) reads a melody, runs the chosen harmonization
methods, and writes one file per method and format; ``chart`` prints a
key's chart of regions.

Every stochastic method draws from its own random stream derived from
the master seed and the method name, so adding or removing methods
never disturbs the others' output.
"""

from __future__ import annotations

import argparse
import pathlib
import sys
from dataclasses import dataclass, field

from .harmonize import (
    Harmonization,
    Melody,
    RandomSource,
    ScaleKind,
    WalkError,
    derive_seed,
    harmonize_giant_steps,
    harmonize_modal,
    harmonize_schoenberg,
    harmonize_simple1,
    harmonize_simple2,
    schoenberg_max_params,
    schoenberg_min_params,
)
from .musicxml import MusicXmlError, parse_musicxml
from .pitchstream import (
    PitchesParseError,
    QuantizeOptions,
    parse_pitches_txt,
    quantize_pitch_stream,
)
from .regions import build_chart, format_chart
from .render import (
    RenderConfig,
    chord_symbols,
    write_chord_symbols,
    write_midi,
    write_music_json,
    write_music_script,
)
from .theory import Mode, pc_parse

METHOD_NAMES = (
    "simple1",
    "simple2",
    "schoenberg-min",
    "schoenberg-max",
    "giant-steps",
    "dorian",
    "phrygian-dominant",
    "lydian",
    "mixolydian",
    "locrian",
)

FORMAT_EXTENSIONS = {
    "text": "txt",
    "json": "json",
    "midi": "mid",
    "musicjs": "js",
    "png": "png",
}

DEFAULT_SEED = 1


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    kind: str | None = None  # "pitches" | "musicxml" | None to infer
    methods: tuple[str, ...] = ("simple2",)
    formats: tuple[str, ...] = ("text",)
    output_dir: str = "."
    seed: int = DEFAULT_SEED
    mode_override: Mode | None = None
    beats_per_measure: int = 4
    quantize: QuantizeOptions = field(default_factory=QuantizeOptions)
    with_confidence: bool = False
    render: RenderConfig = field(default_factory=RenderConfig)


class CliError(ValueError):
    pass


def infer_kind(path: str) -> str:
    suffix = pathlib.Path(path).suffix.lower()
    if suffix in (".musicxml", ".xml"):
        return "musicxml"
    if suffix in (".txt", ".pitches"):
        return "pitches"
    raise CliError(
        f"cannot infer input kind from {path!r}; pass --kind pitches or --kind musicxml"
    )


def load_melody(config: RunConfig) -> Melody:
    kind = config.kind or infer_kind(config.input_path)
    text = pathlib.Path(config.input_path).read_text(encoding="utf-8")
    if kind == "musicxml":
        mode = config.mode_override if config.mode_override is not None else Mode.MAJOR
        return parse_musicxml(text, mode)
    stream = parse_pitches_txt(text, with_confidence=config.with_confidence)
    melody = quantize_pitch_stream(stream, config.quantize)
    if config.mode_override is not None and config.mode_override is not melody.mode:
        melody = Melody(melody.key, config.mode_override, melody.bpm, melody.events)
    return melody


def run_method(config: RunConfig, melody: Melody, name: str) -> Harmonization:
    rng = RandomSource(derive_seed(config.seed, name))
    if name == "simple1":
        return harmonize_simple1(melody)
    if name == "simple2":
        return harmonize_simple2(melody)
    if name == "schoenberg-min":
        params = schoenberg_min_params(repeats_per_chord=config.beats_per_measure)
        return harmonize_schoenberg(melody, params, rng, method_name=name)
    if name == "schoenberg-max":
        return harmonize_schoenberg(melody, schoenberg_max_params(), rng, method_name=name)
    if name == "giant-steps":
        return harmonize_giant_steps(melody, rng)
    modal = {
        "dorian": ScaleKind.DORIAN,
        "phrygian-dominant": ScaleKind.PHRYGIAN_DOMINANT,
        "lydian": ScaleKind.LYDIAN,
        "mixolydian": ScaleKind.MIXOLYDIAN,
        "locrian": ScaleKind.LOCRIAN,
    }
    if name in modal:
        return harmonize_modal(melody, modal[name])
    raise CliError(f"unknown method: {name!r}")


def run(config: RunConfig, out=None) -> list[pathlib.Path]:
    """Execute a harmonize run; returns the files written."""
    if out is None:
        out = sys.stdout
    if not config.methods:
        raise CliError("no methods selected")
    for name in config.methods:
        if name not in METHOD_NAMES:
            raise CliError(f"unknown method: {name!r}")
    for fmt in config.formats:
        if fmt not in FORMAT_EXTENSIONS:
            raise CliError(f"unknown format: {fmt!r}")
    melody = load_melody(config)
    out_dir = pathlib.Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in config.methods:
        try:
            harmonization = run_method(config, melody, name)
        except WalkError as exc:
            raise WalkError(f"method {name}: {exc}") from exc
        print(write_chord_symbols(harmonization, config.render), end="", file=out)
        for fmt in config.formats:
            path = out_dir / f"{name}.{FORMAT_EXTENSIONS[fmt]}"
            if fmt == "text":
                path.write_text(
                    " ".join(chord_symbols(harmonization, config.render)) + "\n",
                    encoding="utf-8",
                )
            elif fmt == "json":
                path.write_text(
                    write_music_json(melody, [harmonization]), encoding="utf-8"
                )
            elif fmt == "musicjs":
                path.write_text(
                    write_music_script(melody, harmonization, config.render),
                    encoding="utf-8",
                )
            elif fmt == "midi":
                path.write_bytes(write_midi(melody, harmonization, config.render))
            elif fmt == "png":
                from .viz import render_piano_roll

                render_piano_roll(melody, harmonization, str(path))
            written.append(path)
    return written


def chart_command(key_name: str, mode: Mode, out=None) -> None:
    chart = build_chart(pc_parse(key_name), mode)
    print(format_chart(chart), end="", file=out if out is not None else sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordsmith", description="Harmonize a melody or print a region chart."
    )
    sub = parser.add_subparsers(dest="command")

    harm = sub.add_parser("harmonize", help="harmonize a melody file")
    harm.add_argument("--input", required=True, help="melody file to read")
    harm.add_argument(
        "--kind",
        choices=("pitches", "musicxml"),
        help="input format; inferred from the extension when omitted",
    )
    harm.add_argument(
        "--methods",
        default="simple2",
        help="comma-separated method names, or 'all'",
    )
    harm.add_argument(
        "--formats",
        default="text",
        help="comma-separated output formats: text,json,midi,musicjs,png",
    )
    harm.add_argument("--out", default=".", help="output directory")
    harm.add_argument("--seed", type=int, default=DEFAULT_SEED)
    harm.add_argument(
        "--mode",
        choices=("major", "minor"),
        help="mode override; for MusicXML, minor reads the key signature "
        "as its relative minor",
    )
    harm.add_argument("--beats-per-measure", type=int, default=4)
    harm.add_argument("--median-window", type=int, default=5)
    harm.add_argument(
        "--min-note", type=float, default=0.125, help="shortest kept note, in beats"
    )
    harm.add_argument(
        "--with-confidence",
        action="store_true",
        help="pitch samples carry a trailing confidence column",
    )
    harm.add_argument(
        "--prefer-sharps",
        action="store_true",
        help="print chord symbols with sharps instead of flats",
    )

    chart = sub.add_parser("chart", help="print the chart of regions for a key")
    chart.add_argument("key", help="tonic note name, e.g. C or Bb")
    chart.add_argument("--mode", choices=("major", "minor"), default="major")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in ("harmonize", "chart", "-h", "--help"):
        argv.insert(0, "harmonize")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "chart":
            chart_command(args.key, Mode.from_name(args.mode))
            return 0
        methods = tuple(
            METHOD_NAMES if args.methods == "all" else args.methods.split(",")
        )
        config = RunConfig(
            input_path=args.input,
            kind=args.kind,
            methods=methods,
            formats=tuple(args.formats.split(",")),
            output_dir=args.out,
            seed=args.seed,
            mode_override=Mode.from_name(args.mode) if args.mode else None,
            beats_per_measure=args.beats_per_measure,
            quantize=QuantizeOptions(
                median_window=args.median_window, min_note_beats=args.min_note
            ),
            with_confidence=args.with_confidence,
            render=RenderConfig(prefer_flats=not args.prefer_sharps),
        )
        run(config)
        return 0
    except WalkError as exc:
        print(f"error: walk failed (seed {args.seed}): {exc}", file=sys.stderr)
        return 1
    except (CliError, PitchesParseError, MusicXmlError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
