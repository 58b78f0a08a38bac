"""Headless driver for the pipeline and arc math.

Errors leave as machine-readable JSON on stderr with a nonzero exit code
(2 for replay-fixture misses, 1 otherwise) so CI can assert on them.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .analysis.turning_points import PromptClassifier
from .arc.dtw import most_similar
from .arc.valence import ValenceArc, ValenceLexicon
from .analysis.pipeline import build_draft_arc, run_story_pipeline
from .config import Config, bundled_lexicon_path
from .corpus.models import SOURCE_DRAFT, Draft, ingest_story
from .errors import FixtureMiss, StorymixError, UnknownId
from .gateway import Cassette, Gateway, HTTPProvider
from .store import WorkspaceStore


def _fail(err: StorymixError) -> None:
    sys.stderr.write(json.dumps(err.payload(), sort_keys=True) + "\n")
    sys.exit(2 if err.code == "FixtureMiss" else 1)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except StorymixError as err:
            _fail(err)

    return wrapper


def _load_manifest(path: Path) -> list[dict]:
    if path.suffix == ".json":
        doc = json.loads(path.read_text(encoding="utf-8"))
        entries = doc["stories"] if isinstance(doc, dict) else doc
        return [{"title": e.get("title", ""), "body": e["body"]} for e in entries]
    return [{"title": path.stem, "body": path.read_text(encoding="utf-8")}]


def _gateway(replay: str | None, mode: str, provider_url: str | None, model: str) -> Gateway:
    if mode == "replay":
        if not replay:
            raise FixtureMiss("offline mode requires --replay <cassette>")
        return Gateway(mode="replay", cassette=Cassette(replay))
    provider = HTTPProvider(url=provider_url, model=model)
    cassette = Cassette(replay) if replay else None
    return Gateway(mode=mode, cassette=cassette, provider=provider)


def _lexicon(path: str | None) -> ValenceLexicon:
    return ValenceLexicon.from_file(path or bundled_lexicon_path())


@click.group()
def main() -> None:
    """Extract narrative strategies, model story arcs, remix drafts."""


@main.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path))
@handle_errors
def ingest(inputs: tuple[Path, ...], out_path: Path) -> None:
    """Ingest a JSON manifest and/or UTF-8 text files into a store."""
    store = WorkspaceStore.load(out_path) if out_path.exists() else WorkspaceStore()
    ingested = []
    for path in inputs:
        for entry in _load_manifest(path):
            story = ingest_story(entry["title"], entry["body"])
            store.put_story(story)
            ingested.append(story.id)
    store.save(out_path)
    click.echo(json.dumps({"story_ids": ingested}, sort_keys=True))


@main.command()
@click.argument("store_path", type=click.Path(exists=True, path_type=Path))
@click.option("--replay", type=click.Path(path_type=Path), default=None,
              help="Cassette for offline replay (or the record target).")
@click.option("--mode", type=click.Choice(["replay", "record", "live"]), default="replay")
@click.option("--provider-url", default=None)
@click.option("--model", default="gpt-4o")
@click.option("--lexicon", "lexicon_path", type=click.Path(path_type=Path), default=None)
@handle_errors
def analyze(store_path: Path, replay: Path | None, mode: str,
            provider_url: str | None, model: str, lexicon_path: Path | None) -> None:
    """Run the full analysis pipeline for every story in the store."""
    store = WorkspaceStore.load(store_path)
    gw = _gateway(str(replay) if replay else None, mode, provider_url, model)
    lexicon = _lexicon(str(lexicon_path) if lexicon_path else None)
    classifier = PromptClassifier(gw)

    failures = {}
    for story_id in sorted(store.stories):
        if store.stories[story_id]["source"] == SOURCE_DRAFT:
            continue
        story = store.get_story(story_id)
        try:
            analysis = run_story_pipeline(story, gw, lexicon, classifier)
        except StorymixError as err:
            if err.code == "FixtureMiss":
                raise
            failures[story_id] = err.payload()
            continue
        store.put_blocks(story_id, analysis.blocks)
        for ann in analysis.annotations:
            store.put_annotation(ann.to_dict())
        for label in analysis.turning_points:
            store.turning_points[label.block_id] = label.types
        store.protagonists[story_id] = analysis.protagonist
        store.arcs[story_id] = analysis.arc.to_dict()
        store.story_warnings[story_id] = analysis.warnings
    store.save(store_path)
    click.echo(json.dumps(
        {"analyzed": len(store.stories) - len(failures), "failures": failures},
        sort_keys=True,
    ))
    if failures:
        sys.exit(1)


@main.command()
@click.argument("store_path", type=click.Path(exists=True, path_type=Path))
@click.option("--story", "story_id", required=True)
@handle_errors
def arc(store_path: Path, story_id: str) -> None:
    """Print a story's valence arc as JSON."""
    store = WorkspaceStore.load(store_path)
    if story_id not in store.arcs:
        raise UnknownId(f"no arc for story {story_id}")
    click.echo(json.dumps(store.arcs[story_id], sort_keys=True))


@main.command()
@click.argument("store_path", type=click.Path(exists=True, path_type=Path))
@click.option("--draft", "draft_path", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--replay", type=click.Path(path_type=Path), default=None)
@click.option("--mode", type=click.Choice(["replay", "record", "live"]), default="replay")
@click.option("--provider-url", default=None)
@click.option("--model", default="gpt-4o")
@click.option("--lexicon", "lexicon_path", type=click.Path(path_type=Path), default=None)
@handle_errors
def similar(store_path: Path, draft_path: Path, replay: Path | None, mode: str,
            provider_url: str | None, model: str, lexicon_path: Path | None) -> None:
    """Rank corpus stories by arc similarity to a draft text file."""
    store = WorkspaceStore.load(store_path)
    gw = _gateway(str(replay) if replay else None, mode, provider_url, model)
    lexicon = _lexicon(str(lexicon_path) if lexicon_path else None)

    body = draft_path.read_text(encoding="utf-8")
    story = ingest_story(draft_path.stem, body, source=SOURCE_DRAFT)
    draft = Draft.from_story(story)
    _, user_arc = build_draft_arc(story, draft.blocks, gw, lexicon)

    corpus = [
        (sid, ValenceArc.from_dict(arc_dict).signed_values)
        for sid, arc_dict in store.arcs.items()
        if store.stories.get(sid, {}).get("source") != SOURCE_DRAFT
    ]
    best_id, s = most_similar(user_arc.signed_values, corpus)
    click.echo(json.dumps({"story_id": best_id, "S": round(s, 12)}, sort_keys=True))


@main.command()
@click.argument("store_path", type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
@handle_errors
def export(store_path: Path, fmt: str, out_path: Path | None) -> None:
    """Dump the store as stable-ordered JSON (sorted keys and ids)."""
    store = WorkspaceStore.load(store_path)
    payload = json.dumps(store.to_dict(), sort_keys=True, ensure_ascii=False, indent=1)
    if out_path:
        out_path.write_text(payload + "\n", encoding="utf-8")
    else:
        click.echo(payload)


@main.command()
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
@handle_errors
def serve(config_path: Path | None, host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(Config.load(config_path))
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
