"""Unit tests for the emotion dynamics tool."""

import os
from pathlib import Path
from unittest.mock import AsyncMock, Mock, patch

import pytest
from langchain_tests.unit_tests import ToolsUnitTests

from langchain_emotion_dynamics.dynamics_tool import EmotionDynamicsTool
from langchain_emotion_dynamics.lexicon import Lexicon

LEXICON = Lexicon(
    name="vad",
    dimension_names=("valence", "arousal"),
    entries={
        "happy": {"valence": 0.8, "arousal": 0.4},
        "sad": {"valence": -0.8, "arousal": -0.4},
        "calm": {"valence": 0.2, "arousal": -0.8},
        "angry": {"valence": -0.6},
        "love": {"valence": 1.0},
    },
    score_range=(-1.0, 1.0),
    rescale="zero-one-to-signed-unit",
)

TEXT = "Happy, sad... calm and angry; love the happy days!"


class TestEmotionDynamicsToolStandard(ToolsUnitTests):
    @property
    def tool_constructor(self) -> type[EmotionDynamicsTool]:
        return EmotionDynamicsTool

    @property
    def tool_constructor_params(self) -> dict:
        return {"lexicon": LEXICON}

    @property
    def tool_invoke_params_example(self) -> dict:
        return {"text": TEXT, "dimensions": ["valence"]}


class TestEmotionDynamicsTool:
    """Test cases for EmotionDynamicsTool."""

    def test_tool_initialization(self) -> None:
        """Test tool can be initialized with a preloaded lexicon."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)

        assert tool.name == "emotion_dynamics"
        assert "emotions change" in tool.description
        assert tool.min_emotion_words == 5

    def test_lexicon_from_env(self, tmp_path: Path) -> None:
        """Test the lexicon path is read from UED_LEXICON."""
        path = tmp_path / "valence.txt"
        path.write_text("happy\t0.9\nsad\t0.1\n", encoding="utf-8")

        with patch.dict(os.environ, {"UED_LEXICON": str(path)}):
            tool = EmotionDynamicsTool()

        assert tool.lexicon is not None
        assert tool.lexicon.dimension_names == ("valence",)
        assert tool.lexicon.entries["happy"]["valence"] == pytest.approx(0.8)

    def test_missing_lexicon(self) -> None:
        """Test a helpful error without a lexicon."""
        with patch.dict(os.environ, {}, clear=True):
            with pytest.raises(ValueError, match="Emotion lexicon not found"):
                EmotionDynamicsTool()

    def test_run(self) -> None:
        """Test metrics for a text with enough emotion words."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)

        result = tool._run(text=TEXT, dimensions=["valence"], include_arc=True)

        (metrics,) = result["metrics"]
        assert result["tokens"] == 7
        assert result["excluded"] == []
        assert metrics["dimension"] == "valence"
        assert metrics["n_emotion_words"] == 6
        assert metrics["arc_len"] == 2
        assert "group" not in metrics
        assert len(result["arcs"]["valence"]) == 2

    def test_excluded_dimension(self) -> None:
        """Test dimensions with too few emotion words are listed, not analysed."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)

        result = tool.invoke({"text": TEXT})

        assert [m["dimension"] for m in result["metrics"]] == ["valence"]
        assert result["excluded"] == ["arousal"]
        assert "arcs" not in result

    def test_window_above_min_emotion_words(self) -> None:
        """Test a window larger than the text's emotion words."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)

        result = tool._run(text=TEXT, dimensions=["valence"], window=7)

        assert result["metrics"] == []
        assert result["excluded"] == ["valence"]

    def test_unknown_dimension(self) -> None:
        """Test errors are wrapped with the tool's message."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)

        with pytest.raises(ValueError, match="Error computing emotion dynamics"):
            tool._run(text=TEXT, dimensions=["joy"])

    def test_callbacks(self) -> None:
        """Test progress is reported through the run manager."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)
        run_manager = Mock()

        tool._run(text=TEXT, run_manager=run_manager)

        colors = [call.kwargs["color"] for call in run_manager.on_text.call_args_list]
        assert colors == ["blue", "yellow", "green"]

    async def test_arun(self) -> None:
        """Test the async path gives the same result."""
        tool = EmotionDynamicsTool(lexicon=LEXICON)
        run_manager = AsyncMock()

        result = await tool._arun(
            text=TEXT, dimensions=["valence"], run_manager=run_manager
        )

        assert result == tool._run(text=TEXT, dimensions=["valence"])
        assert run_manager.on_text.await_count == 2
