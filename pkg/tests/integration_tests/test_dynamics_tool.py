"""Integration tests for the emotion dynamics tool against a real lexicon."""

from __future__ import annotations

import os

import pytest
from langchain_tests.integration_tests import ToolsIntegrationTests

from langchain_emotion_dynamics.dynamics_tool import EmotionDynamicsTool

pytestmark = pytest.mark.skipif(
    not os.environ.get("UED_LEXICON"), reason="UED_LEXICON not set"
)

POEM = (
    "I love the sunny morning and the happy birds that sing, "
    "but the night brings fear and lonely tears, a cold and bitter sting. "
    "Then hope returns with gentle light, and joy and laughter ring."
)


class TestEmotionDynamicsToolIntegration(ToolsIntegrationTests):
    @property
    def tool_constructor(self) -> type[EmotionDynamicsTool]:
        return EmotionDynamicsTool

    @property
    def tool_constructor_params(self) -> dict:
        # Lexicon path will be read from environment variable UED_LEXICON
        return {}

    @property
    def tool_invoke_params_example(self) -> dict:
        """Returns a dictionary representing the "args" of an example tool call.

        This should NOT be a ToolCall dict - i.e. it should not
        have {"name", "id", "args"} keys.
        """
        return {"text": POEM, "window": 3, "include_arc": True}


class TestEmotionDynamicsToolLexicon:
    """Integration tests for EmotionDynamicsTool with the configured lexicon."""

    def test_poem_metrics(self) -> None:
        """Test every analysed dimension has an arc of the expected length."""
        tool = EmotionDynamicsTool(min_emotion_words=3)

        result = tool.invoke({"text": POEM, "window": 3, "include_arc": True})

        assert result["metrics"] or result["excluded"]
        for metrics in result["metrics"]:
            arc = result["arcs"][metrics["dimension"]]
            assert metrics["arc_len"] == len(arc)
            assert metrics["arc_len"] == metrics["n_emotion_words"] - 2
            assert metrics["variability"] >= 0.0
