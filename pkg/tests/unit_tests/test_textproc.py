"""Unit tests for text preprocessing."""

from pathlib import Path

import pytest

from langchain_emotion_dynamics.textproc import (
    count_words,
    default_stopwords,
    load_stopwords,
    normalize_tokens,
    preprocess,
)


class TestPreprocess:
    """Test cases for preprocess."""

    def test_removes_stopwords_and_punctuation(self) -> None:
        """Test the basic pipeline."""
        result = preprocess("The cat, the Hat!", frozenset({"the"}), doc_id="p1")

        assert result.tokens == ["cat", "hat"]
        assert result.n_raw_tokens == 4
        assert result.doc_id == "p1"

    def test_html_entities_unescaped(self) -> None:
        """Test escaped characters are decoded before tokenizing."""
        result = preprocess("rock &amp; roll &quot;forever&quot;", frozenset())

        assert result.tokens == ["rock", "roll", "forever"]

    def test_internal_apostrophes_kept(self) -> None:
        """Test contractions and hyphenated words stay whole."""
        assert normalize_tokens("don't well-known 'quoted'") == [
            "don't",
            "well-known",
            "quoted",
        ]

    def test_empty_text(self) -> None:
        """Test empty input gives an empty sequence."""
        result = preprocess("", frozenset())

        assert result.tokens == []
        assert result.n_raw_tokens == 0

    def test_only_stopwords(self) -> None:
        """Test text made only of stopwords."""
        result = preprocess("the and of", default_stopwords())

        assert result.tokens == []
        assert result.n_raw_tokens == 3

    def test_custom_tokenizer(self) -> None:
        """Test a pluggable tokenizer."""
        result = preprocess("a|b|c", frozenset(), tokenizer=lambda s: s.split("|"))

        assert result.tokens == ["a", "b", "c"]

    def test_tokens_are_lowercase_without_whitespace(self) -> None:
        """Test output tokens are normalised."""
        result = preprocess("Sunny\tDAY\n\nBright  Sky", frozenset())

        assert result.tokens == ["sunny", "day", "bright", "sky"]

    @pytest.mark.parametrize(
        "text",
        [
            "The cat, the Hat!",
            "&quot;Don't&quot; STOP -- the well-known Rain, falling... &amp; the sun!",
            "'' ... ?!",
            "I LOVE my dog\nand my dog loves me",
        ],
    )
    def test_idempotent_on_own_output(self, text: str) -> None:
        """Test preprocessing the joined tokens again changes nothing."""
        stopwords = default_stopwords()
        first = preprocess(text, stopwords)

        second = preprocess(" ".join(first.tokens), stopwords)

        assert second.tokens == first.tokens


class TestStopwords:
    """Test cases for stopword lists."""

    def test_load_stopwords(self, tmp_path: Path) -> None:
        """Test lowercasing and deduplication."""
        path = tmp_path / "stop.txt"
        path.write_text("The\nthe\n\nand\n", encoding="utf-8")

        assert load_stopwords(path) == frozenset({"the", "and"})

    def test_empty_file(self, tmp_path: Path) -> None:
        """Test an empty list removes nothing."""
        path = tmp_path / "stop.txt"
        path.write_text("", encoding="utf-8")

        assert load_stopwords(path) == frozenset()

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test a missing stopword file."""
        with pytest.raises(FileNotFoundError):
            load_stopwords(tmp_path / "missing.txt")

    def test_default_list(self) -> None:
        """Test the packaged English list."""
        stopwords = default_stopwords()

        assert {"the", "and", "i", "you"} <= stopwords
        assert "happy" not in stopwords


def test_count_words() -> None:
    """Test raw whitespace counting keeps punctuation tokens."""
    assert count_words("roses are red ,  violets blue\n") == 6
