import json

import pytest

from storymix.errors import FixtureMiss, SchemaInvalidAfterRetry, UnboundPlaceholder
from storymix.gateway import Cassette, Gateway, render
from storymix.gateway.client import fixture_key
from storymix.gateway.templates import TEMPLATES


class TestRender:
    def test_protagonist_prompt(self):
        p = render("protagonist", {"story": "Once there was a girl named Maya."})
        assert "Who is the main character" in p.system
        assert p.context == "The story is: Once there was a girl named Maya."

    def test_emotions_prompt(self):
        p = render("emotions", {"protagonist": "Maya", "plot": "Maya wins."})
        assert "How does Maya feel in this plot?" in p.context
        assert "Use three different words" in p.system
        assert "[happy, sad, joyful]" in p.system

    def test_unbound_placeholder(self):
        with pytest.raises(UnboundPlaceholder):
            render("segment", {})

    def test_unknown_template(self):
        with pytest.raises(KeyError):
            render("nope", {})

    def test_rendering_is_deterministic(self):
        a = render("segment", {"title": "T", "story": "S"})
        b = render("segment", {"title": "T", "story": "S"})
        assert (a.system, a.context) == (b.system, b.context)
        assert fixture_key(a, {"temperature": 0.0}) == fixture_key(b, {"temperature": 0.0})


class TestTemplateFidelity:
    """The five analysis prompts are published text and must not drift."""

    def test_segment_prompt_text(self):
        t = TEMPLATES["segment"]
        assert t.system.startswith(
            "You are an expert story analyst. Your task is to segment a given story "
            "into coherent plot segments that represent distinct narrative beats."
        )
        assert "- Aim for 5-10 segments depending on story length and complexity" in t.system
        assert (
            "- Avoid overly short segments (less than 50 words) or overly long "
            "segments (more than 300 words)" in t.system
        )
        assert t.system.endswith(
            '{"plots": [{"title": "Brief, descriptive title (3-8 words)", '
            '"plot": "Original text content from this story segment (extracted '
            'verbatim from the source)", "summary": "Concise summary of what '
            'happens in this segment"}]}.'
        )
        assert t.context == "The story title is <<title>> and the story is: <<story>>"

    def test_protagonist_prompt_text(self):
        t = TEMPLATES["protagonist"]
        assert t.system == (
            "Who is the main character of the this story?\n"
            "The output should just be a name or a short phrase. "
            "Do not include any other information or context."
        )
        assert t.context == "The story is: <<story>>"

    def test_emotions_prompt_text(self):
        t = TEMPLATES["emotions"]
        assert t.system == (
            "Use three different words to describe the character's feeling in a "
            "given story plot.\nThe output should be a list of words. For example, "
            "[happy, sad, joyful]. Do not include other outputs."
        )
        assert t.context == "How does <<protagonist>> feel in this plot? <<plot>>"

    def test_infer_strategies_prompt_text(self):
        t = TEMPLATES["infer-strategies"]
        assert t.system.startswith("You are an expert literary analyst tasked with identifying")
        assert "1. A concise phrase describing the strategy (2-6 words)" in t.system
        assert (
            "- Do NOT paraphrase, interpret, or modify the original text - use "
            "exact quotations only Return output" in t.system
        )
        assert t.system.endswith(
            '{"strategies":[{"strategy":"Brief strategy name (2-6 words)",'
            '"reasoning":"1-3 sentence explanation of how this strategy functions '
            "and why it's effective.\",\"lexicon\":[\"word1\",\"phrase2\","
            '"linguistic pattern3"]}]}.'
        )
        assert "don't limit yourself to traditional categories" in t.context

    def test_categorize_prompt_text(self):
        t = TEMPLATES["categorize"]
        assert "one or two primary categories" in t.system
        assert "**Taxonomy Categories:**\n<<taxonomy>>" in t.system
        assert t.system.endswith(
            '{"category": ["PRIMARY_CATEGORY"]} or {"category": ["CATEGORY_1","CATEGORY_2"]}.'
        )
        assert t.context.startswith(
            "Please categorize the following creative strategy: <<strategy>> "
            "used in the plot: <<plot>>."
        )

    def test_temperature_defaults(self):
        for tid in ("segment", "infer-strategies", "categorize", "protagonist",
                    "emotions", "turning-point"):
            assert TEMPLATES[tid].default_temperature == 0.0
        for tid in ("revise", "continue", "reflect"):
            assert TEMPLATES[tid].default_temperature == 0.8


class FlakyProvider:
    """Returns scripted responses in order, recording each call."""

    def __init__(self, responses):
        self.responses = list(responses)
        self.calls = []

    def complete(self, system, context, params):
        self.calls.append((system, context, params))
        return self.responses.pop(0)


class TestComplete:
    def test_replay_hit_attempts_1(self, replay_gateway, corpus_manifest):
        entry = corpus_manifest["stories"][0]
        p = render("protagonist", {"story": entry["body"]})
        completion = replay_gateway.complete(p)
        assert completion.attempts == 1
        assert completion.raw == "Cinderella"

    def test_replay_is_byte_identical(self, replay_gateway, corpus_manifest):
        entry = corpus_manifest["stories"][0]
        p = render("segment", {"title": entry["title"], "story": entry["body"]})
        a = replay_gateway.complete(p)
        b = replay_gateway.complete(p)
        assert a.raw == b.raw
        assert a.fixture_key == b.fixture_key

    def test_replay_miss(self, replay_gateway):
        p = render("protagonist", {"story": "a story the cassette has never seen"})
        with pytest.raises(FixtureMiss):
            replay_gateway.complete(p)

    def test_malformed_then_valid_retry(self, tmp_path):
        provider = FlakyProvider(["not json at all", '{"category": ["PLOT"]}'])
        gw = Gateway(mode="record", cassette=Cassette(tmp_path / "c.jsonl"), provider=provider)
        p = render(
            "categorize",
            {"strategy": "X", "plot": "p", "explanation": "e", "taxonomy": "t"},
        )
        completion = gw.complete(p)
        assert completion.attempts == 2
        assert completion.parsed == {"category": ["PLOT"]}
        # the repair context carries the invalid output back to the model
        assert "not json at all" in provider.calls[1][1]

    def test_malformed_twice_raises_with_both_outputs(self, tmp_path):
        provider = FlakyProvider(["bad one", "bad two"])
        gw = Gateway(mode="record", cassette=Cassette(tmp_path / "c.jsonl"), provider=provider)
        p = render(
            "categorize",
            {"strategy": "X", "plot": "p", "explanation": "e", "taxonomy": "t"},
        )
        with pytest.raises(SchemaInvalidAfterRetry) as exc:
            gw.complete(p)
        assert exc.value.raw_outputs == ["bad one", "bad two"]

    def test_schema_validation_rejects_wrong_shape(self, tmp_path):
        provider = FlakyProvider(['{"category": []}', '{"category": ["PLOT"]}'])
        gw = Gateway(mode="record", cassette=Cassette(tmp_path / "c.jsonl"), provider=provider)
        p = render(
            "categorize",
            {"strategy": "X", "plot": "p", "explanation": "e", "taxonomy": "t"},
        )
        assert gw.complete(p).attempts == 2

    def test_record_mode_appends_cassette_lines(self, tmp_path):
        provider = FlakyProvider(["The hero"])
        path = tmp_path / "c.jsonl"
        gw = Gateway(mode="record", cassette=Cassette(path), provider=provider)
        p = render("protagonist", {"story": "body"})
        completion = gw.complete(p)
        lines = [json.loads(line) for line in path.read_text().splitlines()]
        assert lines == [{"fixture_key": completion.fixture_key, "raw": "The hero"}]
        # a second identical call is served from the cassette, not the provider
        gw.complete(p)
        assert len(provider.calls) == 1

    def test_fenced_json_tolerated(self, tmp_path):
        provider = FlakyProvider(['```json\n{"category": ["PLOT"]}\n```'])
        gw = Gateway(mode="record", cassette=Cassette(tmp_path / "c.jsonl"), provider=provider)
        p = render(
            "categorize",
            {"strategy": "X", "plot": "p", "explanation": "e", "taxonomy": "t"},
        )
        completion = gw.complete(p)
        assert completion.attempts == 1
        assert completion.parsed == {"category": ["PLOT"]}
