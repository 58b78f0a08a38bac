import pytest

from storymix.analysis.models import StrategyAnnotation
from storymix.corpus.models import SOURCE_DRAFT, Draft, ingest_story
from storymix.errors import (
    Busy,
    DimensionMismatch,
    NoStrategies,
    SpanOutOfRange,
    UnknownDimension,
    UnknownRevision,
)
from storymix.remix.workspace import RemixWorkspace
from tests.conftest import annotation_by_name


@pytest.fixture
def workspace(analyzed_store, replay_gateway, remix_session):
    draft = Draft.from_story(
        ingest_story(remix_session["draft_title"], remix_session["draft_body"], SOURCE_DRAFT)
    )

    def resolve(ann_id):
        return StrategyAnnotation.from_dict(analyzed_store.annotations[ann_id])

    return RemixWorkspace(draft, replay_gateway, resolve)


def ann_id(analyzed_store, name):
    return annotation_by_name(analyzed_store, name)["id"]


class TestTracks:
    def test_add_track(self, workspace):
        track = workspace.add_track("Information")
        assert track.dimension == "Information"
        assert track.order == 0

    def test_duplicate_dimensions_permitted(self, workspace):
        a = workspace.add_track("Emotional")
        b = workspace.add_track("Emotional")
        assert a.id != b.id
        assert [t.order for t in workspace.tracks] == [0, 1]

    def test_unknown_dimension(self, workspace):
        with pytest.raises(UnknownDimension):
            workspace.add_track("Vibes")


class TestTiles:
    def test_place_tile(self, workspace, analyzed_store):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        tile = workspace.place_tile(track.id, wi, (0, 0))
        assert tile.span == (0, 0)

    def test_span_may_cover_continuation_slot(self, workspace, analyzed_store):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        n = len(workspace.draft.blocks)
        tile = workspace.place_tile(track.id, wi, (n, n))
        assert tile.covers(n)

    def test_span_out_of_range(self, workspace, analyzed_store):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        n = len(workspace.draft.blocks)  # 3 blocks: continuation slot = 3
        assert n == 3
        with pytest.raises(SpanOutOfRange):
            workspace.place_tile(track.id, wi, (2, 4))
        with pytest.raises(SpanOutOfRange):
            workspace.place_tile(track.id, wi, (-1, 0))

    def test_dimension_mismatch(self, workspace, analyzed_store):
        track = workspace.add_track("Character")
        plot_only = ann_id(analyzed_store, "Impossible Task Obstacle")  # Plot
        with pytest.raises(DimensionMismatch):
            workspace.place_tile(track.id, plot_only, (0, 0))

    def test_resize_tile(self, workspace, analyzed_store):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        tile = workspace.place_tile(track.id, wi, (0, 0))
        resized = workspace.resize_tile(tile.id, (0, 2))
        assert resized.span == (0, 2)
        with pytest.raises(SpanOutOfRange):
            workspace.resize_tile(tile.id, (0, 99))

    def test_remove_tile(self, workspace, analyzed_store):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        tile = workspace.place_tile(track.id, wi, (0, 0))
        workspace.remove_tile(tile.id)
        assert workspace.strategies_for_block(0) == []

    def test_dual_dimension_strategy_placeable_on_either(self, workspace, analyzed_store):
        dual = ann_id(analyzed_store, "Dialogue for Characterization")  # Character+Linguistic
        t1 = workspace.add_track("Character")
        t2 = workspace.add_track("Linguistic")
        assert workspace.place_tile(t1.id, dual, (0, 0))
        assert workspace.place_tile(t2.id, dual, (1, 1))


class TestStrategiesForBlock:
    def test_span_containment(self, workspace, analyzed_store):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        workspace.place_tile(track.id, wi, (0, 2))
        for idx in (0, 1, 2):
            assert workspace.strategies_for_block(idx) == [wi]
        assert workspace.strategies_for_block(3) == []

    def test_track_order_then_placement_order(self, workspace, analyzed_store):
        info = workspace.add_track("Information")
        ling = workspace.add_track("Linguistic")
        wi = ann_id(analyzed_store, "Withholding Information")
        si = ann_id(analyzed_store, "Sensory Imagery")
        workspace.place_tile(ling.id, si, (0, 0))  # placed first, later track
        workspace.place_tile(info.id, wi, (0, 0))
        assert workspace.strategies_for_block(0) == [wi, si]

    def test_duplicates_deduplicated(self, workspace, analyzed_store):
        t1 = workspace.add_track("Information")
        t2 = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        workspace.place_tile(t1.id, wi, (0, 1))
        workspace.place_tile(t2.id, wi, (1, 1))
        assert workspace.strategies_for_block(1) == [wi]

    def test_no_tiles_empty(self, workspace):
        assert workspace.strategies_for_block(0) == []


class TestRevise:
    def test_revise_block_pending_then_accept(self, workspace, analyzed_store, remix_session):
        track = workspace.add_track("Information")
        wi = ann_id(analyzed_store, "Withholding Information")
        workspace.place_tile(track.id, wi, (0, 0))
        original = [b.text for b in workspace.draft.blocks]

        revision = workspace.revise_block(0)
        assert revision.new_text == remix_session["revise_text"]
        assert not revision.accepted
        # nothing changes until acceptance
        assert [b.text for b in workspace.draft.blocks] == original
        version_before = workspace.draft.version

        workspace.accept(revision.id)
        texts = [b.text for b in workspace.draft.blocks]
        assert texts[0] == remix_session["revise_text"]
        assert texts[1:] == original[1:]  # only the target block changed
        assert workspace.draft.version == version_before + 1

    def test_revise_requires_strategies(self, workspace):
        with pytest.raises(NoStrategies):
            workspace.revise_block(0)

    def test_second_pending_revision_busy(self, workspace, analyzed_store):
        wi = ann_id(analyzed_store, "Withholding Information")
        track = workspace.add_track("Information")
        workspace.place_tile(track.id, wi, (0, 0))
        workspace.revise_block(0)
        with pytest.raises(Busy):
            workspace.revise_block(0)

    def test_replay_revision_text_is_byte_identical(self, analyzed_store, replay_gateway,
                                                    remix_session):
        texts = []
        for _ in range(2):
            draft = Draft.from_story(
                ingest_story(remix_session["draft_title"], remix_session["draft_body"],
                             SOURCE_DRAFT)
            )
            ws = RemixWorkspace(
                draft, replay_gateway,
                lambda aid: StrategyAnnotation.from_dict(analyzed_store.annotations[aid]),
            )
            wi = ann_id(analyzed_store, "Withholding Information")
            texts.append(ws.revise_block(0, [wi]).new_text)
        assert texts[0] == texts[1]

    def test_restore_round_trip(self, workspace, analyzed_store):
        wi = ann_id(analyzed_store, "Withholding Information")
        track = workspace.add_track("Information")
        workspace.place_tile(track.id, wi, (0, 0))
        original = workspace.draft.blocks[0].text

        revision = workspace.revise_block(0)
        workspace.accept(revision.id)
        assert workspace.draft.blocks[0].text != original

        workspace.restore(revision.block_id, revision.id, use_previous=True)
        assert workspace.draft.blocks[0].text == original

    def test_restore_unknown_revision(self, workspace):
        with pytest.raises(UnknownRevision):
            workspace.restore(workspace.draft.blocks[0].id, "rv-999999")

    def test_history_chronological_and_append_only(self, workspace, analyzed_store):
        wi = ann_id(analyzed_store, "Withholding Information")
        track = workspace.add_track("Information")
        workspace.place_tile(track.id, wi, (0, 0))
        block_id = workspace.draft.blocks[0].id

        r1 = workspace.revise_block(0)
        workspace.accept(r1.id)
        workspace.restore(block_id, r1.id, use_previous=True)
        history = workspace.history(block_id)
        assert [r.id for r in history] == sorted(r.id for r in history)
        assert len(history) == 2  # the revision and the restore record
        assert history[-1].kind == "restore"


class TestContinue:
    def test_continue_with_hint(self, workspace, analyzed_store, remix_session):
        di = ann_id(analyzed_store, "Dramatic Irony")
        track = workspace.add_track("Information")
        slot = len(workspace.draft.blocks)
        workspace.place_tile(track.id, di, (slot, slot))

        revision = workspace.continue_story(hint=remix_session["hint"])
        assert revision.new_text == remix_session["continue_text"]
        assert revision.block_id is None
        n_before = len(workspace.draft.blocks)
        workspace.accept(revision.id)
        assert len(workspace.draft.blocks) == n_before + 1
        assert workspace.draft.blocks[-1].text == remix_session["continue_text"]
        assert revision.block_id == workspace.draft.blocks[-1].id

    def test_continue_without_hint(self, workspace, analyzed_store):
        di = ann_id(analyzed_store, "Dramatic Irony")
        revision = workspace.continue_story([di], hint=None)
        assert revision.new_text

    def test_continue_requires_strategies(self, workspace):
        with pytest.raises(NoStrategies):
            workspace.continue_story()


class TestReflect:
    def test_reflect_comparison(self, workspace, analyzed_store, remix_session):
        si = annotation_by_name(analyzed_store, "Sensory Imagery")
        example_text = analyzed_store.blocks[si["block_id"]]["text"]
        comparison = workspace.reflect(example_text, si["id"], remix_session["revise_text"])
        assert comparison.strategy_name == "Sensory Imagery"
        assert "secrets the day might hold" in comparison.commentary
        for side in (comparison.example_side, comparison.revised_side):
            for cue in side.cues:
                assert cue["start"] is not None
        revised_cues = [c["text"] for c in comparison.revised_side.cues]
        assert "secrets the day might hold" in revised_cues

    def test_identical_texts_have_identical_cue_sets(self, workspace, analyzed_store,
                                                     remix_session, monkeypatch):
        import json as _json
        from storymix.gateway.client import Completion

        si = annotation_by_name(analyzed_store, "Sensory Imagery")
        raw = _json.dumps(
            {
                "example_cues": ["the same phrase"],
                "revised_cues": ["the same phrase"],
                "commentary": "Both sides realize the strategy identically.",
            }
        )

        def fake_complete(prompt, params=None):
            return Completion(raw=raw, parsed=_json.loads(raw), fixture_key="k", attempts=1)

        monkeypatch.setattr(workspace.gateway, "complete", fake_complete)
        text = "Here is the same phrase in both texts."
        comparison = workspace.reflect(text, si["id"], text)
        assert comparison.example_side.cues == comparison.revised_side.cues


class TestPersistence:
    def test_workspace_roundtrip(self, workspace, analyzed_store, replay_gateway):
        wi = ann_id(analyzed_store, "Withholding Information")
        track = workspace.add_track("Information")
        workspace.place_tile(track.id, wi, (0, 0))
        revision = workspace.revise_block(0)
        data = workspace.to_dict()

        clone = RemixWorkspace.from_dict(
            data, replay_gateway,
            lambda aid: StrategyAnnotation.from_dict(analyzed_store.annotations[aid]),
        )
        assert clone.to_dict() == data
        clone.accept(revision.id)
        assert clone.draft.blocks[0].text == revision.new_text
