"""``ued`` command line: corpus to arcs to dynamics to report, in batch.

Exit codes: 0 on success, 1 for usage or configuration errors, 2 for data
errors (malformed inputs, schema mismatches, unwritable outputs).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn, Optional

from pydantic import ValidationError

from ._errors import ConfigError, EmotionDynamicsError
from .arcs import load_window_scores, token_windows
from .config import LexiconSpec, RunConfig
from .corpus import assemble_units, corpus_stats, filter_by_length, load_corpus
from .lexicon import (
    Lexicon,
    default_rescale,
    lexicons_by_dimension,
    load_lexicon,
    peek_dimensions,
    sniff_format,
)
from .pipeline import analyze_arcs, analyze_units
from .report import (
    GROUP_COLUMNS,
    UNIT_COLUMNS,
    adult_reference,
    aggregate_by_group,
    export,
    load_reference,
    load_unit_metrics,
    overlay_columns,
    plot_series,
    reference_overlay,
    render,
    write_atomic,
)
from .textproc import StopwordSet, default_stopwords, load_stopwords

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_MODES = {"instance": "instance", "speaker": "speaker", "meta": "meta-speaker"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--log-level", default="WARNING", help="Logging level.")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Shortcut for --log-level INFO."
    )


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True, help="Corpus CSV, one document per row.")
    parser.add_argument("--id-col", default="id")
    parser.add_argument("--text-col", default="text")
    parser.add_argument("--group-col", default="grade")
    parser.add_argument("--speaker-col", default=None)
    parser.add_argument("--seq-col", default=None)
    parser.add_argument("--min-words", type=int, default=0)
    parser.add_argument("--max-words", type=int, default=None)
    parser.add_argument("--stopwords", default=None, help="Stopword list, one per line.")


def _add_dynamics_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", type=int, default=5)
    parser.add_argument("--step", type=int, default=1)
    parser.add_argument("--homebase-k", type=float, default=1.0)
    parser.add_argument("--ddof", type=int, choices=(0, 1), default=0)
    parser.add_argument(
        "--peak-reference", choices=("mean", "boundary"), default="mean"
    )
    parser.add_argument(
        "--rate-pool",
        choices=("complete", "qualifying"),
        default="complete",
        help="Displacements averaged into the rates.",
    )
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", "-o", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ued", description="Utterance emotion dynamics of text collections."
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = commands.add_parser("analyze", help="Per-unit metrics from a corpus.")
    _add_corpus_args(analyze)
    analyze.add_argument(
        "--lexicon",
        action="append",
        required=True,
        help="Lexicon file; repeat to combine e.g. VAD and intensity lexicons.",
    )
    analyze.add_argument(
        "--lexicon-format",
        choices=("auto", "single-dimension", "multi-dimension", "wide"),
        default="auto",
    )
    analyze.add_argument(
        "--rescale", choices=("auto", "none", "zero-one-to-signed-unit"), default="auto"
    )
    analyze.add_argument(
        "--dimension",
        action="append",
        default=None,
        help="Dimension to analyse; repeatable. Defaults to all loaded.",
    )
    analyze.add_argument("--min-emotion-words", type=int, default=5)
    analyze.add_argument("--neutral-half-width", type=float, default=0.0)
    analyze.add_argument("--mode", choices=tuple(_MODES), default="instance")
    analyze.add_argument("--workers", type=int, default=1)
    _add_dynamics_args(analyze)
    _add_common(analyze)

    scores = commands.add_parser(
        "scores", help="Per-unit metrics from externally scored windows."
    )
    scores.add_argument("scores_file", help="CSV doc_id,window_index,score.")
    scores.add_argument("--dimension", default="valence")
    scores.add_argument(
        "--corpus", default=None, help="Corpus CSV supplying each document's group."
    )
    scores.add_argument("--id-col", default="id")
    scores.add_argument("--text-col", default="text")
    scores.add_argument("--group-col", default="grade")
    _add_dynamics_args(scores)
    _add_common(scores)

    aggregate = commands.add_parser("aggregate", help="Group means of per-unit metrics.")
    aggregate.add_argument("per_unit", help="Per-unit metrics CSV.")
    aggregate.add_argument("--min-units", type=int, default=5)
    aggregate.add_argument(
        "--adult-ref",
        nargs="?",
        const="packaged",
        default=None,
        help="Reference CSV dimension,metric,value; no value uses the packaged table.",
    )
    aggregate.add_argument("--format", choices=("csv", "json"), default="csv")
    aggregate.add_argument("--output", "-o", required=True)
    aggregate.add_argument("--series", default=None, help="Plot series JSON path.")
    _add_common(aggregate)

    stats = commands.add_parser("stats", help="Documents and mean length per group.")
    stats.add_argument("--corpus", required=True)
    stats.add_argument("--id-col", default="id")
    stats.add_argument("--text-col", default="text")
    stats.add_argument("--group-col", default="grade")
    stats.add_argument("--output", "-o", default=None, help="CSV path; stdout if unset.")
    _add_common(stats)

    windows = commands.add_parser(
        "windows", help="Raw-token windows for an external scorer."
    )
    _add_corpus_args(windows)
    windows.add_argument("--window", type=int, default=5)
    windows.add_argument("--step", type=int, default=1)
    windows.add_argument("--output", "-o", required=True)
    _add_common(windows)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = "INFO" if args.verbose else str(args.log_level).upper()
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def _stopwords(path: Optional[str]) -> StopwordSet:
    return load_stopwords(path) if path else default_stopwords()


def _lexicon_specs(args: argparse.Namespace) -> tuple[LexiconSpec, ...]:
    specs = []
    dimension = args.dimension[0] if args.dimension and len(args.lexicon) == 1 else None
    for path in args.lexicon:
        fmt = sniff_format(path) if args.lexicon_format == "auto" else args.lexicon_format
        rescale = args.rescale
        if rescale == "auto":
            rescale = default_rescale(peek_dimensions(path, fmt, dimension))
        specs.append(
            LexiconSpec(path=path, format=fmt, rescale=rescale, dimension=dimension)
        )
    return tuple(specs)


def _load_registry(specs: Sequence[LexiconSpec]) -> dict[str, Lexicon]:
    lexicons = [
        load_lexicon(s.path, s.format, s.rescale, dimension=s.dimension) for s in specs
    ]
    return lexicons_by_dimension(lexicons)


def _run_config(**settings: Any) -> RunConfig:
    try:
        return RunConfig(**settings)
    except ValidationError as e:
        errors = "; ".join(err["msg"] for err in e.errors())
        raise ConfigError(errors) from e


def _manifest_path(output: str) -> Path:
    return Path(f"{output}.manifest.json")


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _run_config(
        lexicons=_lexicon_specs(args),
        dimensions=tuple(d.lower() for d in args.dimension or ()),
        window=args.window,
        step=args.step,
        min_emotion_words=args.min_emotion_words,
        homebase_k=args.homebase_k,
        neutral_half_width=args.neutral_half_width,
        mode=_MODES[args.mode],
        min_words=args.min_words,
        max_words=args.max_words,
        stopwords_path=args.stopwords,
        ddof=args.ddof,
        peak_reference=args.peak_reference,
        rate_pool=args.rate_pool,
        workers=args.workers,
        output_format=args.format,
        outputs={"per_unit": args.output},
    )
    registry = _load_registry(config.lexicons)
    dimensions = config.resolve_dimensions(registry)
    stopwords = _stopwords(config.stopwords_path)

    docs = load_corpus(
        args.corpus,
        args.id_col,
        args.text_col,
        args.group_col,
        args.speaker_col,
        args.seq_col,
    )
    if config.min_words or config.max_words is not None:
        docs = filter_by_length(docs, config.min_words, config.max_words, stopwords)
    units = assemble_units(docs, config.mode, stopwords)
    rows, diagnostics = analyze_units(units, registry, dimensions, config)

    export(rows, config.output_format, args.output, UNIT_COLUMNS)
    write_atomic(
        _manifest_path(args.output),
        config.manifest(
            command="analyze",
            corpus=args.corpus,
            dimensions=dimensions,
            diagnostics=diagnostics.model_dump(),
        ),
    )
    for dimension in dimensions:
        excluded = diagnostics.excluded.get(dimension, 0)
        print(
            f"{dimension}: {excluded} of {diagnostics.n_units} units excluded "
            f"(fewer than {config.min_emotion_words} emotion words)",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_scores(args: argparse.Namespace) -> int:
    config = _run_config(
        dimensions=(args.dimension,),
        window=args.window,
        step=args.step,
        min_emotion_words=args.window,
        homebase_k=args.homebase_k,
        ddof=args.ddof,
        peak_reference=args.peak_reference,
        rate_pool=args.rate_pool,
        output_format=args.format,
        outputs={"per_unit": args.output},
    )
    arcs = load_window_scores(
        args.scores_file, dimension=args.dimension, window=args.window, step=args.step
    )
    groups = None
    if args.corpus:
        docs = load_corpus(args.corpus, args.id_col, args.text_col, args.group_col)
        groups = {doc.doc_id: doc.group for doc in docs}
    rows = analyze_arcs(arcs, config, groups)
    if not rows:
        print(f"warning: no window scores in {args.scores_file}", file=sys.stderr)
    export(rows, config.output_format, args.output, UNIT_COLUMNS)
    write_atomic(
        _manifest_path(args.output),
        config.manifest(
            command="scores", scores_file=args.scores_file, n_arcs=len(rows)
        ),
    )
    return EXIT_OK


def cmd_aggregate(args: argparse.Namespace) -> int:
    if args.min_units < 1:
        msg = f"--min-units must be at least 1, got {args.min_units}"
        raise ConfigError(msg)
    per_unit = load_unit_metrics(args.per_unit)
    summaries = aggregate_by_group(per_unit, args.min_units)

    reference = None
    if args.adult_ref is not None:
        reference = (
            adult_reference()
            if args.adult_ref == "packaged"
            else load_reference(args.adult_ref)
        )
        overlay = reference_overlay(summaries, reference)
        export(
            overlay_columns(summaries, overlay),
            args.format,
            args.output,
            (*GROUP_COLUMNS, "reference", "nearest_group"),
        )
    else:
        export(summaries, args.format, args.output, GROUP_COLUMNS)

    series_path = args.series or str(Path(args.output).with_suffix(".series.json"))
    write_atomic(
        series_path,
        json.dumps(plot_series(summaries, reference), indent=2) + "\n",
    )
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    docs = load_corpus(args.corpus, args.id_col, args.text_col, args.group_col)
    table = render(corpus_stats(docs), "csv", ("group", "n_docs", "mean_words"))
    if args.output:
        write_atomic(args.output, table)
    else:
        sys.stdout.write(table)
    return EXIT_OK


def cmd_windows(args: argparse.Namespace) -> int:
    if args.window < 1 or args.step < 1:
        msg = f"window and step must be at least 1, got {args.window}/{args.step}"
        raise ConfigError(msg)
    stopwords = _stopwords(args.stopwords)
    docs = load_corpus(
        args.corpus,
        args.id_col,
        args.text_col,
        args.group_col,
        args.speaker_col,
        args.seq_col,
    )
    if args.min_words or args.max_words is not None:
        docs = filter_by_length(docs, args.min_words, args.max_words, stopwords)
    rows = [
        {"doc_id": unit.unit_id, "window_index": index, "text": text}
        for unit in assemble_units(docs, "instance", stopwords)
        for index, text in token_windows(unit.tokens, args.window, args.step)
    ]
    write_atomic(args.output, render(rows, "csv", ("doc_id", "window_index", "text")))
    return EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "scores": cmd_scores,
    "aggregate": cmd_aggregate,
    "stats": cmd_stats,
    "windows": cmd_windows,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"ued: configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EmotionDynamicsError, ValidationError, OSError) as e:
        print(f"ued: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
