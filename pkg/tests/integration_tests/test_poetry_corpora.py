"""Reproduction checks against the children's and adult poetry corpora.

These need local copies of the datasets and lexicons and are skipped otherwise:

* ``POKI_CSV``: children's poems with ``id``, ``text`` and ``grade`` columns.
* ``FPP_CSV``: adult poems; the group column is read from ``FPP_GROUP_COL``
  (default ``grade``).
* ``NRC_VAD_LEXICON``: the NRC VAD lexicon in its wide layout.
* ``NRC_INTENSITY_LEXICON``: the NRC Emotion Intensity lexicon.
"""

from __future__ import annotations

import os

import pytest

from langchain_emotion_dynamics.config import RunConfig
from langchain_emotion_dynamics.corpus import assemble_units, corpus_stats, load_corpus
from langchain_emotion_dynamics.lexicon import lexicons_by_dimension, load_lexicon
from langchain_emotion_dynamics.pipeline import analyze_units
from langchain_emotion_dynamics.report import (
    adult_reference,
    aggregate_by_group,
    group_trend,
)

GRADE_STATS = {
    "1": (900, 37.3),
    "2": (3174, 32.1),
    "3": (6712, 35.2),
    "4": (10899, 39.3),
    "5": (11479, 44.5),
    "6": (11011, 49.6),
    "7": (7831, 59.7),
    "8": (4546, 67.6),
    "9": (1284, 91.5),
    "10": (1171, 91.8),
    "11": (667, 103.0),
    "12": (1656, 97.2),
}


def _env(name: str) -> str:
    value = os.environ.get(name)
    if not value:
        pytest.skip(f"{name} not set")
    return value


@pytest.fixture(scope="module")
def poki_csv() -> str:
    return _env("POKI_CSV")


@pytest.fixture(scope="module")
def vad_registry() -> dict:
    path = _env("NRC_VAD_LEXICON")
    return lexicons_by_dimension(
        [load_lexicon(path, "wide", "zero-one-to-signed-unit")]
    )


class TestCorpusStatistics:
    """Corpus statistics of the unmodified children's corpus."""

    def test_poem_counts_and_lengths(self, poki_csv: str) -> None:
        """Test per-grade counts match exactly and mean lengths within 0.1 words."""
        rows = {row.group: row for row in corpus_stats(load_corpus(poki_csv))}

        assert rows["total"].n_docs == 61330
        for grade, (n_docs, mean_words) in GRADE_STATS.items():
            assert rows[grade].n_docs == n_docs
            assert rows[grade].mean_words == pytest.approx(mean_words, abs=0.1)


class TestGradeTrends:
    """Direction of the VAD trends across school grades."""

    def test_spearman_with_grade(self, poki_csv: str, vad_registry: dict) -> None:
        """Test valence falls and arousal, dominance and valence dynamics rise."""
        config = RunConfig(workers=os.cpu_count() or 1)
        units = assemble_units(load_corpus(poki_csv), "instance")
        rows, _ = analyze_units(
            units, vad_registry, ["valence", "arousal", "dominance"], config
        )

        trends = group_trend(aggregate_by_group(rows))

        assert trends[("valence", "average")] <= -0.8
        assert trends[("arousal", "average")] >= 0.8
        assert trends[("dominance", "average")] >= 0.8
        for metric in ("variability", "rise_rate", "recovery_rate"):
            assert trends[("valence", metric)] >= 0.8


class TestAdultReference:
    """Adult poems against the packaged reference table."""

    def test_valence_close_to_reference(self, vad_registry: dict) -> None:
        """Test valence average and variability are within 0.05 of the table."""
        docs = load_corpus(
            _env("FPP_CSV"), group_col=os.environ.get("FPP_GROUP_COL", "grade")
        )
        rows, _ = analyze_units(
            assemble_units(docs, "instance"), vad_registry, ["valence"], RunConfig()
        )
        units = [row.model_copy(update={"group": "adult"}) for row in rows]
        summaries = {s.metric: s.value for s in aggregate_by_group(units)}
        adult = adult_reference()

        assert summaries["average"] == pytest.approx(
            adult.get("valence", "average"), abs=0.05
        )
        assert summaries["variability"] == pytest.approx(
            adult.get("valence", "variability"), abs=0.05
        )


class TestIntensityLexicon:
    """The emotion intensity lexicon next to the VAD lexicon."""

    def test_combined_registry(self, vad_registry: dict) -> None:
        """Test intensity dimensions stay unsigned and join the VAD registry."""
        path = _env("NRC_INTENSITY_LEXICON")
        intensity = load_lexicon(path, "multi-dimension")

        registry = lexicons_by_dimension([vad_registry["valence"], intensity])

        assert {"anger", "fear", "joy", "sadness"} <= set(intensity.dimension_names)
        assert intensity.score_range == (0.0, 1.0)
        assert intensity.default_band() is None
        assert registry["joy"] is intensity
        assert registry["valence"] is vad_registry["valence"]
