"""Unit tests for emotion arc construction."""

from pathlib import Path

import numpy as np
import pytest

from langchain_emotion_dynamics._errors import (
    ConfigError,
    DuplicateIndexError,
    EmptyArcError,
    InsufficientEmotionWordsError,
    MalformedCsvError,
    MalformedLineError,
    NonContiguousIndicesError,
    SchemaMismatchError,
    ScoreOutOfRangeError,
    UnknownDimensionError,
)
from langchain_emotion_dynamics._types import NeutralBand, ScoredSequence, TokenSequence
from langchain_emotion_dynamics.arcs import (
    arc_from_window_scores,
    arc_length,
    build_arc,
    emotion_word_sequence,
    load_window_scores,
    read_window_scores,
    token_windows,
)
from langchain_emotion_dynamics.dynamics import ued_metrics
from langchain_emotion_dynamics.lexicon import Lexicon


@pytest.fixture
def lexicon() -> Lexicon:
    return Lexicon(
        name="test",
        dimension_names=("valence",),
        entries={
            "happy": {"valence": 0.8},
            "sad": {"valence": -0.6},
            "okay": {"valence": 0.0},
            "fine": {"valence": 0.05},
        },
        score_range=(-1.0, 1.0),
        rescale="zero-one-to-signed-unit",
    )


def _tokens(tokens: list[str]) -> TokenSequence:
    return TokenSequence(doc_id="d", tokens=tokens, n_raw_tokens=len(tokens))


def _seq(scores: list[float]) -> ScoredSequence:
    return ScoredSequence(
        doc_id="d", dimension="valence", scores=tuple(scores), n_tokens=len(scores)
    )


class TestEmotionWordSequence:
    """Test cases for emotion_word_sequence."""

    def test_keeps_lexicon_words_in_order(self, lexicon: Lexicon) -> None:
        """Test unknown words are skipped and order is preserved."""
        tokens = _tokens(["sad", "table", "happy", "sad"])

        seq = emotion_word_sequence(tokens, lexicon, "valence")

        assert seq.scores == (-0.6, 0.8, -0.6)
        assert seq.n_tokens == 4
        assert seq.n_emotion_words == 3

    def test_neutral_band_excludes_words(self, lexicon: Lexicon) -> None:
        """Test words inside the neutral band are not emotion words."""
        tokens = _tokens(["okay", "fine", "happy"])

        exact = emotion_word_sequence(
            tokens, lexicon, "valence", NeutralBand(half_width=0.0)
        )
        wide = emotion_word_sequence(
            tokens, lexicon, "valence", NeutralBand(half_width=0.1)
        )

        assert exact.scores == (0.05, 0.8)
        assert wide.scores == (0.8,)

    def test_no_emotion_words(self, lexicon: Lexicon) -> None:
        """Test text without lexicon words."""
        tokens = _tokens(["table", "chair"])

        seq = emotion_word_sequence(tokens, lexicon, "valence")

        assert seq.scores == ()
        assert seq.coverage == 0.0

    def test_unknown_dimension(self, lexicon: Lexicon) -> None:
        """Test a dimension the lexicon does not score."""
        tokens = _tokens(["happy"])

        with pytest.raises(UnknownDimensionError):
            emotion_word_sequence(tokens, lexicon, "anger")


class TestBuildArc:
    """Test cases for build_arc."""

    def test_window_means(self) -> None:
        """Test each point is the mean of one full window."""
        arc = build_arc(_seq([0.0, 0.3, 0.6, 0.9]), window=2)

        assert arc.points == pytest.approx((0.15, 0.45, 0.75))
        assert arc.window == 2
        assert arc.step == 1

    def test_exactly_window_words(self) -> None:
        """Test five emotion words give a single point."""
        arc = build_arc(_seq([0.2, 0.4, 0.6, 0.8, 1.0]), window=5)

        assert arc.points == pytest.approx((0.6,))

    def test_step_skips_windows(self) -> None:
        """Test windows start every ``step`` emotion words."""
        arc = build_arc(_seq([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]), window=2, step=2)

        assert arc.points == pytest.approx((1.5, 3.5, 5.5))

    def test_window_one_is_identity(self) -> None:
        """Test window 1 reproduces the scores."""
        assert build_arc(_seq([0.1, -0.2]), window=1).points == (0.1, -0.2)

    def test_too_few_words(self) -> None:
        """Test fewer scores than the window size."""
        with pytest.raises(InsufficientEmotionWordsError) as excinfo:
            build_arc(_seq([0.1, 0.2, 0.3, 0.4]), window=5)

        assert excinfo.value.found == 4
        assert excinfo.value.required == 5

    @pytest.mark.parametrize(("window", "step"), [(0, 1), (5, 0)])
    def test_invalid_window(self, window: int, step: int) -> None:
        """Test non-positive window or step."""
        with pytest.raises(ConfigError):
            build_arc(_seq([0.1] * 10), window=window, step=step)

    def test_window_algebra_exhaustive(self) -> None:
        """Test arc length over every small configuration."""
        for n in range(1, 31):
            scores = [i / 30 for i in range(n)]
            for window in range(1, n + 1):
                for step in range(1, n + 1):
                    arc = build_arc(_seq(scores), window=window, step=step)
                    expected = (n - window) // step + 1
                    assert len(arc) == expected
                    assert arc_length(n, window, step) == expected
                    for i, point in enumerate(arc.points):
                        start = i * step
                        expected_mean = sum(scores[start : start + window]) / window
                        assert point == pytest.approx(expected_mean, abs=1e-12)

    def test_arc_length_below_window(self) -> None:
        """Test no windows fit in a short sequence."""
        assert arc_length(3, 5, 1) == 0

    def test_partial_tail_dropped(self) -> None:
        """Test six scores with window 5 give two full-window points."""
        arc = build_arc(_seq([0.2, 0.4, 0.6, 0.8, 1.0, 0.0]), window=5)

        assert arc.points == pytest.approx((0.6, 0.56), abs=1e-12)

    def test_shift_equivariance(self) -> None:
        """Test shifting every score shifts every point."""
        rng = np.random.default_rng(3)
        for _ in range(100):
            scores = rng.uniform(-1.0, 1.0, size=int(rng.integers(5, 40))).tolist()
            c = float(rng.uniform(-2.0, 2.0))

            base = build_arc(_seq(scores))
            shifted = build_arc(_seq([s + c for s in scores]))

            assert shifted.points == pytest.approx(
                tuple(p + c for p in base.points), abs=1e-12
            )

    def test_scale_equivariance(self) -> None:
        """Test scaling every score scales every point."""
        rng = np.random.default_rng(5)
        for _ in range(100):
            scores = rng.uniform(-1.0, 1.0, size=int(rng.integers(5, 40))).tolist()
            s = float(rng.uniform(0.1, 3.0))

            base = build_arc(_seq(scores))
            scaled = build_arc(_seq([x * s for x in scores]))

            assert scaled.points == pytest.approx(
                tuple(p * s for p in base.points), abs=1e-12
            )

    def test_reordered_windows_have_equal_means(self) -> None:
        """Test a repeated line gives a constant arc without displacements."""
        rng = np.random.default_rng(19)
        for _ in range(2000):
            line = rng.uniform(-1.0, 1.0, size=5).tolist()

            arc = build_arc(_seq(line * 3))
            metrics = ued_metrics(arc)

            assert len(set(arc.points)) == 1
            assert metrics.variability == 0.0
            assert metrics.n_displacements == 0
            assert metrics.rise_rate is None


class TestWindowScores:
    """Test cases for externally scored windows."""

    def test_out_of_order_records(self) -> None:
        """Test records are ordered by window index."""
        arc = arc_from_window_scores([("p", 1, 0.4), ("p", 0, 0.2), ("p", 2, 0.9)])

        assert arc.points == (0.2, 0.4, 0.9)
        assert arc.doc_id == "p"

    def test_gap_names_missing_index(self) -> None:
        """Test a gap reports the document and the first missing index."""
        with pytest.raises(NonContiguousIndicesError) as excinfo:
            arc_from_window_scores([("p", 0, 0.2), ("p", 2, 0.9)])

        assert excinfo.value.doc_id == "p"
        assert excinfo.value.index == 1

    def test_missing_first_index(self) -> None:
        """Test indices must start at zero."""
        with pytest.raises(NonContiguousIndicesError) as excinfo:
            arc_from_window_scores([("p", 1, 0.2)])

        assert excinfo.value.index == 0

    def test_duplicate_index(self) -> None:
        """Test a repeated window index."""
        with pytest.raises(DuplicateIndexError):
            arc_from_window_scores([("p", 0, 0.2), ("p", 0, 0.3)])

    def test_score_out_of_range(self) -> None:
        """Test scores outside [0, 1]."""
        with pytest.raises(ScoreOutOfRangeError):
            arc_from_window_scores([("p", 0, 1.5)])

    def test_empty_records(self) -> None:
        """Test no records."""
        with pytest.raises(EmptyArcError):
            arc_from_window_scores([])

    def test_mixed_documents(self) -> None:
        """Test records of several documents."""
        with pytest.raises(MalformedCsvError):
            arc_from_window_scores([("p", 0, 0.2), ("q", 1, 0.3)])

    def test_load_csv(self, tmp_path: Path) -> None:
        """Test one arc per document in order of first appearance."""
        path = tmp_path / "scores.csv"
        path.write_text(
            "doc_id,window_index,score\nb,0,0.5\na,0,0.1\nb,1,0.6\na,1,0.2\n",
            encoding="utf-8",
        )

        arcs = load_window_scores(path, dimension="valence", window=5)

        assert [arc.doc_id for arc in arcs] == ["b", "a"]
        assert arcs[0].points == (0.5, 0.6)

    def test_empty_csv(self, tmp_path: Path) -> None:
        """Test a file with only a header gives no arcs."""
        path = tmp_path / "scores.csv"
        path.write_text("doc_id,window_index,score\n", encoding="utf-8")

        assert load_window_scores(path) == []

    def test_bad_header(self, tmp_path: Path) -> None:
        """Test a file with other columns."""
        path = tmp_path / "scores.csv"
        path.write_text("id,index,value\np,0,0.1\n", encoding="utf-8")

        with pytest.raises(SchemaMismatchError):
            read_window_scores(path)

    def test_bad_row_has_line_number(self, tmp_path: Path) -> None:
        """Test parse errors carry the CSV line number."""
        path = tmp_path / "scores.csv"
        path.write_text(
            "doc_id,window_index,score\np,0,0.1\np,one,0.2\n", encoding="utf-8"
        )

        with pytest.raises(MalformedLineError) as excinfo:
            read_window_scores(path)

        assert excinfo.value.line_number == 3

    def test_range_error_has_line_number(self, tmp_path: Path) -> None:
        """Test range errors carry the CSV line number."""
        path = tmp_path / "scores.csv"
        path.write_text("doc_id,window_index,score\np,0,-0.5\n", encoding="utf-8")

        with pytest.raises(ScoreOutOfRangeError) as excinfo:
            read_window_scores(path)

        assert excinfo.value.line_number == 2


class TestTokenWindows:
    """Test cases for token_windows."""

    def test_windows_over_all_tokens(self) -> None:
        """Test every token is part of the windows."""
        windows = token_windows(["a", "b", "c", "d"], window=3)

        assert windows == [(0, "a b c"), (1, "b c d")]

    def test_short_sequence(self) -> None:
        """Test fewer tokens than the window."""
        assert token_windows(["a", "b"], window=3) == []
