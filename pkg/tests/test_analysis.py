import json

import pytest

from storymix.analysis.models import (
    DIMENSIONS,
    TURNING_POINTS,
    Cue,
    StrategyAnnotation,
    parse_dimension,
    parse_turning_point,
)
from storymix.analysis.strategies import categorize, cue_slices_match, infer_strategies, locate_cue, verify_cues
from storymix.analysis.turning_points import ExternalClassifier, classify_turning_points
from storymix.analysis.pipeline import segment_story
from storymix.corpus.models import Block, ingest_story
from storymix.errors import UnknownCategory
from storymix.textnorm import normalize_fold
from tests.conftest import load_golden


def make_block(text, block_id="bk-test-000"):
    return Block(
        id=block_id, story_id="st-test", index=0, title="t", text=text,
        summary="s", char_span=(0, len(text)),
    )


class TestTaxonomies:
    def test_eight_dimensions(self):
        assert DIMENSIONS == (
            "Plot", "Character", "Information", "Emotional",
            "Linguistic", "Pacing", "Thematic", "Engagement",
        )

    def test_five_turning_points(self):
        assert TURNING_POINTS == (
            "Opportunity", "Change of Plans", "Point of No Return",
            "Major Setback", "Climax",
        )

    def test_case_insensitive_dimension_parse(self):
        assert parse_dimension("PLOT") == "Plot"
        assert parse_dimension("emotional") == "Emotional"
        with pytest.raises(UnknownCategory):
            parse_dimension("VIBES")

    def test_turning_point_parse_variants(self):
        assert parse_turning_point("Climax") == "Climax"
        assert parse_turning_point("change of plans") == "Change of Plans"
        assert parse_turning_point("MajorSetback") == "Major Setback"
        assert parse_turning_point("point_of_no_return") == "Point of No Return"


class TestLocateCue:
    def test_exact_phrase(self):
        text = "She whispered to herself and waited."
        s, e = locate_cue(text, "whispered to herself")
        assert text[s:e] == "whispered to herself"

    def test_case_insensitive_normalized(self):
        text = "there lay The  Precious\nSunstone, glowing."
        span = locate_cue(text, "the precious sunstone")
        assert span is not None
        s, e = span
        assert normalize_fold(text[s:e]) == "the precious sunstone"

    def test_word_boundary_respected(self):
        assert locate_cue("restart the engine", "art") is None
        assert locate_cue("state of the art design", "art") is not None

    def test_missing_cue(self):
        assert locate_cue("nothing to see", "invisible words") is None


class TestVerifyCues:
    def test_offsets_slice_back_out(self):
        block = make_block("The gown was glimmering with silver and gold that night.")
        ann = StrategyAnnotation(
            id="an-1", block_id=block.id, name="Sensory Imagery", explanation="e",
            cues=[Cue("glimmering with silver and gold")],
        )
        verified = verify_cues(block, ann)
        assert verified.verified
        assert cue_slices_match(block.text, verified)

    def test_unlocatable_cue_dropped_but_recorded(self, caplog):
        block = make_block("Plain text without the phrase.")
        ann = StrategyAnnotation(
            id="an-2", block_id=block.id, name="X", explanation="e",
            cues=[Cue("Plain text"), Cue("ghost phrase")],
        )
        with caplog.at_level("WARNING"):
            verified = verify_cues(block, ann)
        assert verified.verified
        assert [c.text for c in verified.cues] == ["Plain text"]
        assert verified.dropped_cues == ["ghost phrase"]
        assert "ghost phrase" in caplog.text

    def test_all_cues_hallucinated_flags_ungrounded(self, caplog):
        block = make_block("Plain text without anything special.")
        ann = StrategyAnnotation(
            id="an-3", block_id=block.id, name="X", explanation="e",
            cues=[Cue("not here"), Cue("nor this")],
        )
        with caplog.at_level("WARNING"):
            verified = verify_cues(block, ann)
        assert not verified.verified
        assert "ungrounded" in verified.flags
        assert verified.dropped_cues == ["not here", "nor this"]
        assert "ungrounded" in caplog.text

    def test_verification_does_not_mutate_input(self):
        block = make_block("Some phrase here.")
        ann = StrategyAnnotation(
            id="an-4", block_id=block.id, name="X", explanation="e",
            cues=[Cue("Some phrase")],
        )
        verify_cues(block, ann)
        assert ann.cues[0].start is None


class FakeGateway:
    """Returns canned parsed payloads per template id."""

    def __init__(self, payloads):
        self.payloads = payloads

    def complete(self, prompt, params=None):
        from storymix.gateway.client import Completion

        raw = self.payloads[prompt.template_id]
        parsed = json.loads(raw) if prompt.schema_id else None
        return Completion(raw=raw, parsed=parsed, fixture_key="k", attempts=1)


class TestCategorize:
    def block_and_ann(self):
        block = make_block("text")
        ann = StrategyAnnotation(
            id="an-9", block_id=block.id, name="Withholding Information",
            explanation="e", cues=[],
        )
        return block, ann

    def test_single_category(self):
        block, ann = self.block_and_ann()
        gw = FakeGateway({"categorize": '{"category": ["INFORMATION"]}'})
        assert categorize(gw, ann, block) == ["Information"]

    def test_dual_category_passthrough(self):
        block, ann = self.block_and_ann()
        gw = FakeGateway({"categorize": '{"category": ["PLOT","EMOTIONAL"]}'})
        assert categorize(gw, ann, block) == ["Plot", "Emotional"]

    def test_unknown_category(self):
        block, ann = self.block_and_ann()
        gw = FakeGateway({"categorize": '{"category": ["VIBES"]}'})
        with pytest.raises(UnknownCategory):
            categorize(gw, ann, block)

    def test_three_categories_truncated(self, caplog):
        block, ann = self.block_and_ann()
        gw = FakeGateway({"categorize": '{"category": ["PLOT","EMOTIONAL","PACING"]}'})
        with caplog.at_level("WARNING"):
            dims = categorize(gw, ann, block)
        assert dims == ["Plot", "Emotional"]
        assert "keeping the first 2" in caplog.text


class TestInferStrategies:
    def test_empty_strategy_list_ok(self):
        gw = FakeGateway({"infer-strategies": '{"strategies": []}'})
        assert infer_strategies(gw, make_block("text")) == []

    def test_block_not_mutated(self):
        gw = FakeGateway(
            {"infer-strategies": '{"strategies": [{"strategy": "Vivid Verbs", '
             '"reasoning": "r", "lexicon": ["text"]}]}'}
        )
        block = make_block("text")
        before = block.to_dict()
        infer_strategies(gw, block)
        assert block.to_dict() == before

    def test_long_name_flagged_not_dropped(self):
        gw = FakeGateway(
            {"infer-strategies": '{"strategies": [{"strategy": '
             '"A Very Long Strategy Name That Keeps Going", '
             '"reasoning": "r", "lexicon": []}]}'}
        )
        anns = infer_strategies(gw, make_block("text"))
        assert len(anns) == 1
        assert "name-length" in anns[0].flags

    def test_fixture_block_matches_golden(self, replay_gateway, analyzed):
        golden = load_golden("annotations.json")
        for story_id, (story, analysis) in analyzed.items():
            for ann in analysis.annotations:
                golden_anns = {a["id"]: a for a in golden[ann.block_id]}
                assert ann.to_dict() == golden_anns[ann.id]


class TestSegmentStory:
    def test_fixture_tales_segment_into_expected_blocks(self, replay_gateway, corpus_manifest):
        sizes = {"Cinderella": 7, "The Frog Prince": 7, "Rapunzel": 6}
        for entry in corpus_manifest["stories"]:
            story = ingest_story(entry["title"], entry["body"])
            report = segment_story(replay_gateway, story)
            assert len(report.aligned_blocks) == sizes[entry["title"]]
            for block in report.aligned_blocks:
                s, e = block.char_span
                assert normalize_fold(story.body[s:e]) == normalize_fold(block.text)

    def test_short_block_warned_not_rejected(self, replay_gateway, corpus_manifest):
        entry = corpus_manifest["stories"][1]  # The Frog Prince
        story = ingest_story(entry["title"], entry["body"])
        report = segment_story(replay_gateway, story)
        assert any("block 2 has" in w and "< 50" in w for w in report.warnings)

    def test_corrupted_candidate_repaired(self, replay_gateway, corpus_manifest):
        entry = corpus_manifest["stories"][1]
        story = ingest_story(entry["title"], entry["body"])
        report = segment_story(replay_gateway, story)
        assert report.repaired_indices == [3]
        assert "marble" in report.aligned_blocks[3].text  # true body text restored

    def test_replay_determinism(self, replay_gateway, corpus_manifest):
        entry = corpus_manifest["stories"][2]
        story = ingest_story(entry["title"], entry["body"])
        a = segment_story(replay_gateway, story)
        b = segment_story(replay_gateway, story)
        assert [blk.to_dict() for blk in a.aligned_blocks] == [
            blk.to_dict() for blk in b.aligned_blocks
        ]


class YesSetClassifier:
    def __init__(self, positives):
        self.positives = positives

    def decide(self, tp_type, block):
        return tp_type in self.positives


class TestTurningPoints:
    def test_label_is_subset_and_ordered(self):
        label = classify_turning_points(
            make_block("x"), YesSetClassifier({"Climax", "Opportunity"})
        )
        assert label.types == ["Opportunity", "Climax"]

    def test_empty_label_permitted(self):
        label = classify_turning_points(make_block("x"), YesSetClassifier(set()))
        assert label.types == []

    def test_fixture_labels_match_golden(self, analyzed):
        golden = load_golden("turning_points.json")
        seen = {}
        for story_id, (story, analysis) in analyzed.items():
            for label in analysis.turning_points:
                assert set(label.types) <= set(TURNING_POINTS)
                seen[label.block_id] = label.types
        assert seen == golden

    def test_external_classifier_adapter(self):
        calls = []

        def post(payload):
            calls.append(payload)
            return {"positive": payload["type"] == "Climax"}

        clf = ExternalClassifier(post)
        label = classify_turning_points(make_block("resolution scene"), clf)
        assert label.types == ["Climax"]
        assert len(calls) == 5


class TestCueGroundingOnFixtureCorpus:
    def test_all_verified_cues_slice_back(self, analyzed):
        total = 0
        for story_id, (story, analysis) in analyzed.items():
            texts = {b.id: b.text for b in analysis.blocks}
            for ann in analysis.annotations:
                assert cue_slices_match(texts[ann.block_id], ann)
                total += len(ann.cues)
        assert total > 30

    def test_known_ungrounded_annotation_flagged(self, analyzed):
        flagged = [
            ann
            for _, (_, analysis) in analyzed.items()
            for ann in analysis.annotations
            if "ungrounded" in ann.flags
        ]
        assert [a.name for a in flagged] == ["Ominous Bargain Foreshadowing"]
        assert not flagged[0].verified
        assert flagged[0].dropped_cues == ["a shadow crossed the garden wall"]
