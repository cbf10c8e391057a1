"""Per-grade UED trends of a children's poetry corpus.

Runs the instance-mode pipeline over a corpus CSV, writes per-unit metrics,
group means and plot series to an output directory, and prints the Spearman
correlation of every group mean with grade.

    python scripts/reproduce_trends.py poki.csv NRC-VAD-Lexicon.txt \
        --lexicon NRC-Emotion-Intensity-Lexicon.txt --out results/
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from langchain_emotion_dynamics.config import LexiconSpec, RunConfig
from langchain_emotion_dynamics.corpus import assemble_units, load_corpus
from langchain_emotion_dynamics.lexicon import (
    default_rescale,
    lexicons_by_dimension,
    load_lexicon,
    peek_dimensions,
    sniff_format,
)
from langchain_emotion_dynamics.pipeline import analyze_units
from langchain_emotion_dynamics.report import (
    adult_reference,
    aggregate_by_group,
    export,
    group_trend,
    plot_series,
    write_atomic,
)


def _spec(path: str) -> LexiconSpec:
    fmt = sniff_format(path)
    return LexiconSpec(
        path=path, format=fmt, rescale=default_rescale(peek_dimensions(path, fmt))
    )


def main() -> int:
    parser = argparse.ArgumentParser(description="Per-grade UED trends of a poetry corpus.")
    parser.add_argument("corpus")
    parser.add_argument("vad_lexicon")
    parser.add_argument("--lexicon", action="append", default=[])
    parser.add_argument("--out", default="results")
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()
    logging.basicConfig(level="INFO", format="%(asctime)s %(levelname)s %(message)s")

    config = RunConfig(
        lexicons=tuple(_spec(p) for p in [args.vad_lexicon, *args.lexicon]),
        workers=args.workers,
    )
    registry = lexicons_by_dimension(
        load_lexicon(s.path, s.format, s.rescale) for s in config.lexicons
    )
    started = time.perf_counter()
    units = assemble_units(load_corpus(args.corpus), config.mode)
    rows, diagnostics = analyze_units(
        units, registry, config.resolve_dimensions(registry), config
    )
    summaries = aggregate_by_group(rows, config.min_units)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    export(rows, "csv", out / "per_unit.csv")
    export(summaries, "csv", out / "groups.csv")
    write_atomic(
        out / "series.json",
        json.dumps(plot_series(summaries, adult_reference()), indent=2) + "\n",
    )
    write_atomic(
        out / "manifest.json",
        config.manifest(corpus=args.corpus, diagnostics=diagnostics.model_dump()),
    )

    print(f"{'dimension':<12}{'metric':<16}{'spearman':>10}")
    for (dimension, metric), rho in group_trend(summaries).items():
        shown = "n/a" if rho is None else f"{rho:+.3f}"
        print(f"{dimension:<12}{metric:<16}{shown:>10}")
    print(f"\n{len(units)} poems in {time.perf_counter() - started:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
