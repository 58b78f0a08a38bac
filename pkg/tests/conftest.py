import json
from pathlib import Path

import pytest

from storymix.analysis.pipeline import run_story_pipeline
from storymix.analysis.turning_points import PromptClassifier
from storymix.arc.valence import ValenceLexicon
from storymix.config import bundled_lexicon_path
from storymix.corpus.models import ingest_story
from storymix.gateway import Cassette, Gateway
from storymix.store import WorkspaceStore

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str):
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def load_golden(name: str):
    return json.loads((FIXTURES / "golden" / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def cassette_path() -> Path:
    return FIXTURES / "cassette.jsonl"


@pytest.fixture(scope="session")
def replay_gateway(cassette_path) -> Gateway:
    return Gateway(mode="replay", cassette=Cassette(cassette_path))


@pytest.fixture(scope="session")
def lexicon() -> ValenceLexicon:
    return ValenceLexicon.from_file(bundled_lexicon_path())


@pytest.fixture(scope="session")
def corpus_manifest() -> dict:
    return load_fixture("corpus.json")


@pytest.fixture(scope="session")
def remix_session() -> dict:
    return load_fixture("remix_session.json")


@pytest.fixture(scope="session")
def analyzed(replay_gateway, lexicon, corpus_manifest):
    """Full pipeline results for the three-tale fixture corpus (replay)."""
    classifier = PromptClassifier(replay_gateway)
    results = {}
    for entry in corpus_manifest["stories"]:
        story = ingest_story(entry["title"], entry["body"])
        results[story.id] = (story, run_story_pipeline(story, replay_gateway, lexicon, classifier))
    return results


@pytest.fixture(scope="session")
def analyzed_store(analyzed) -> WorkspaceStore:
    store = WorkspaceStore()
    for story_id, (story, analysis) in analyzed.items():
        store.put_story(story)
        store.put_blocks(story_id, analysis.blocks)
        for ann in analysis.annotations:
            store.put_annotation(ann.to_dict())
        for label in analysis.turning_points:
            store.turning_points[label.block_id] = label.types
        store.protagonists[story_id] = analysis.protagonist
        store.arcs[story_id] = analysis.arc.to_dict()
        store.story_warnings[story_id] = analysis.warnings
    return store


def annotation_by_name(store: WorkspaceStore, name: str) -> dict:
    for ann in store.annotations.values():
        if ann["name"] == name:
            return ann
    raise KeyError(name)
