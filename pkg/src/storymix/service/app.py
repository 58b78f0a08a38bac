"""HTTP facade over the pipeline, browser queries, arcs, and the remixer.

All endpoints live under /v1 and speak JSON.  Every 2xx mutation is written
through to the store file before the response returns, so a restarted
service reproduces the same snapshot.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .. import errors
from ..analysis.models import StrategyAnnotation, parse_dimension, parse_turning_point
from ..analysis.pipeline import build_draft_arc, run_story_pipeline
from ..analysis.turning_points import PromptClassifier
from ..arc.dtw import most_similar
from ..arc.valence import ValenceArc, ValenceLexicon
from ..config import Config
from ..corpus.models import SOURCE_DRAFT, Draft, ingest_story
from ..errors import StorymixError, UnknownId
from ..gateway import Cassette, Gateway, HTTPProvider
from ..remix.workspace import RemixWorkspace
from ..search import CardIndex
from ..store import EventLog, WorkspaceStore
from .jobs import JobRunner

_STATUS: dict[str, int] = {
    "UnknownId": 404,
    "UnknownRevision": 404,
    "Busy": 409,
    "FixtureMiss": 502,
    "NoProvider": 502,
    "SchemaInvalidAfterRetry": 502,
}


def _status_for(err: StorymixError) -> int:
    return _STATUS.get(err.code, 400)


class CorpusManifest(BaseModel):
    stories: list[dict]


class DraftCreate(BaseModel):
    title: str = ""
    body: str


class BlockInsert(BaseModel):
    index: int
    text: str = ""


class BlockPatch(BaseModel):
    text: str


class TrackCreate(BaseModel):
    draft_id: str
    dimension: str


class TileCreate(BaseModel):
    draft_id: str
    track_id: str
    strategy_ref: str
    span: list[int]


class TilePatch(BaseModel):
    draft_id: str
    span: list[int]


class ReviseRequest(BaseModel):
    draft_id: str
    block_index: int
    strategy_ids: Optional[list[str]] = None


class ContinueRequest(BaseModel):
    draft_id: str
    strategy_ids: Optional[list[str]] = None
    hint: Optional[str] = None


class ReflectRequest(BaseModel):
    draft_id: str
    example_block_id: str
    strategy_ref: str
    revised_text: str


class RevisionRef(BaseModel):
    draft_id: str
    revision_id: str


class RestoreRequest(BaseModel):
    draft_id: str
    block_id: str
    revision_id: str
    use_previous: bool = False


class Event(BaseModel):
    type: str
    timestamp: float
    payload: dict


def build_gateway(config: Config) -> Gateway:
    cassette = Cassette(config.cassette_path) if config.cassette_path else None
    provider = None
    if config.mode in ("record", "live"):
        provider = HTTPProvider(url=config.provider_url or None, model=config.model)
    return Gateway(
        mode=config.mode,
        cassette=cassette,
        provider=provider,
        max_concurrency=config.max_concurrency,
    )


def create_app(config: Config, gateway: Gateway | None = None) -> FastAPI:
    app = FastAPI(title="storymix", version="1")
    # single-user local tool; the UI is served separately and calls cross-origin
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store_path = Path(config.store_path)
    store = WorkspaceStore.load(store_path) if store_path.exists() else WorkspaceStore()
    gw = gateway if gateway is not None else build_gateway(config)
    lexicon = ValenceLexicon.from_file(config.lexicon_path)
    classifier = PromptClassifier(gw)
    events = EventLog(config.event_log_path)
    jobs = JobRunner()
    draft_locks: dict[str, threading.Lock] = defaultdict(threading.Lock)

    def save() -> None:
        store.save(store_path)

    def resolve_annotation(ann_id: str) -> StrategyAnnotation:
        if ann_id not in store.annotations:
            raise UnknownId(f"no annotation {ann_id}")
        return StrategyAnnotation.from_dict(store.annotations[ann_id])

    def load_workspace(draft_id: str) -> RemixWorkspace:
        if draft_id not in store.drafts:
            raise UnknownId(f"no draft {draft_id}")
        if draft_id in store.workspaces:
            return RemixWorkspace.from_dict(store.workspaces[draft_id], gw, resolve_annotation)
        ws = RemixWorkspace(Draft.from_dict(store.drafts[draft_id]), gw, resolve_annotation)
        return ws

    def save_workspace(draft_id: str, ws: RemixWorkspace) -> None:
        store.workspaces[draft_id] = ws.to_dict()
        store.drafts[draft_id] = ws.draft.to_dict()
        save()

    @app.exception_handler(StorymixError)
    async def storymix_error_handler(_req: Request, err: StorymixError):
        return JSONResponse(status_code=_status_for(err), content=err.payload())

    # -- corpus and pipeline ------------------------------------------------

    @app.post("/v1/corpus")
    def post_corpus(manifest: CorpusManifest):
        if not manifest.stories:
            raise errors.EmptyBody("manifest has no stories")
        story_ids = []
        for entry in manifest.stories:
            if "body" not in entry:
                raise errors.EmptyBody("manifest entry missing body")
            story = ingest_story(entry.get("title", ""), entry["body"])
            store.put_story(story)
            story_ids.append(story.id)
        save()

        def process_one(story_id: str) -> None:
            story = store.get_story(story_id)
            analysis = run_story_pipeline(story, gw, lexicon, classifier)
            with store.lock:
                store.put_blocks(story_id, analysis.blocks)
                for ann in analysis.annotations:
                    store.put_annotation(ann.to_dict())
                for label in analysis.turning_points:
                    store.turning_points[label.block_id] = label.types
                store.protagonists[story_id] = analysis.protagonist
                store.arcs[story_id] = analysis.arc.to_dict()
                store.story_warnings[story_id] = analysis.warnings
            save()

        job = jobs.submit(story_ids, process_one)
        return {"story_ids": story_ids, "job_id": job.id}

    @app.get("/v1/jobs/{job_id}")
    def get_job(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            raise UnknownId(f"no job {job_id}")
        return job.to_dict()

    @app.get("/v1/stories")
    def get_stories():
        out = []
        for sid in sorted(store.stories):
            s = store.stories[sid]
            out.append(
                {
                    "id": sid,
                    "title": s["title"],
                    "source": s["source"],
                    "protagonist": store.protagonists.get(sid),
                    "n_blocks": len(store.blocks_for_story(sid)),
                }
            )
        return out

    @app.get("/v1/stories/{story_id}")
    def get_story(story_id: str):
        story = store.get_story(story_id)
        return {
            **story.to_dict(),
            "blocks": [b.to_dict() for b in store.blocks_for_story(story_id)],
            "warnings": store.story_warnings.get(story_id, []),
        }

    # -- browser cards -------------------------------------------------------

    def _card(block_dict: dict) -> dict:
        bid = block_dict["id"]
        return {
            "block": block_dict,
            "story_title": store.stories[block_dict["story_id"]]["title"],
            "annotations": store.annotations_for_block(bid),
            "turning_points": store.turning_points.get(bid, []),
        }

    def _corpus_block_ids() -> list[str]:
        return sorted(
            bid
            for bid, b in store.blocks.items()
            if store.stories[b["story_id"]]["source"] != SOURCE_DRAFT
        )

    @app.get("/v1/blocks")
    def get_blocks(
        dimension: Optional[str] = None,
        turning_point: Optional[str] = None,
        q: Optional[str] = None,
        q_semantic: Optional[str] = None,
    ):
        if q_semantic:
            raise errors.NoProvider(
                "semantic search requires an embedding provider; use q for lexical search"
            )
        cards = [_card(store.blocks[bid]) for bid in _corpus_block_ids()]
        if dimension is not None:
            canon = parse_dimension(dimension)  # 400 on unknown values
            cards = [
                c for c in cards
                if any(canon in a["dimensions"] for a in c["annotations"])
            ]
        if turning_point is not None:
            canon = parse_turning_point(turning_point)
            cards = [c for c in cards if canon in c["turning_points"]]
        if q:
            docs = {}
            for c in cards:
                parts = []
                for a in c["annotations"]:
                    parts.append(a["name"])
                    parts.append(a["explanation"])
                    parts.extend(cue["text"] for cue in a["cues"])
                docs[c["block"]["id"]] = " ".join(parts)
            ranked = CardIndex(docs).rank(q)
            by_id = {c["block"]["id"]: c for c in cards}
            cards = [{**by_id[cid], "score": score} for cid, score in ranked]
        return cards

    # -- arcs ------------------------------------------------------------------

    def _arc_points(arc_dict: dict) -> list[dict]:
        arc = ValenceArc.from_dict(arc_dict)
        xs = arc.normalized_x()
        return [
            {**p.to_dict(), "x": x, "y": p.signed_valence}
            for p, x in zip(arc.points, xs)
        ]

    @app.get("/v1/arcs")
    def get_arcs(story_id: Optional[str] = None, draft_id: Optional[str] = None):
        key = story_id or draft_id
        if key is None:
            return {
                "arcs": [
                    {"id": sid, "points": _arc_points(arc)}
                    for sid, arc in sorted(store.arcs.items())
                    if sid in store.stories or sid in store.drafts
                ]
            }
        if key not in store.arcs:
            raise UnknownId(f"no arc for {key}")
        return {"id": key, "points": _arc_points(store.arcs[key])}

    @app.get("/v1/arcs/similar")
    def get_similar(draft_id: str):
        if draft_id not in store.arcs:
            raise UnknownId(f"no arc for draft {draft_id}")
        user_arc = ValenceArc.from_dict(store.arcs[draft_id])
        corpus = [
            (sid, ValenceArc.from_dict(arc).signed_values)
            for sid, arc in store.arcs.items()
            if sid in store.stories and store.stories[sid]["source"] != SOURCE_DRAFT
        ]
        story_id, s = most_similar(user_arc.signed_values, corpus)
        return {"story_id": story_id, "S": s}

    @app.get("/v1/blocks/brush")
    def brush(
        x0: float = Query(...), x1: float = Query(...),
        y0: float = Query(...), y1: float = Query(...),
    ):
        if not (0.0 <= x0 <= x1 <= 1.0) or not (-1.0 <= y0 <= y1 <= 1.0):
            raise errors.SpanOutOfRange(
                "brush rectangle must satisfy 0<=x0<=x1<=1 and -1<=y0<=y1<=1"
            )
        hits = []
        for sid in sorted(store.arcs):
            if sid not in store.stories or store.stories[sid]["source"] == SOURCE_DRAFT:
                continue
            for point in _arc_points(store.arcs[sid]):
                if x0 <= point["x"] <= x1 and y0 <= point["y"] <= y1:
                    hits.append(
                        {
                            "block_id": point["block_id"],
                            "story_id": sid,
                            "x": point["x"],
                            "y": point["y"],
                        }
                    )
        return hits

    # -- drafts ------------------------------------------------------------------

    @app.post("/v1/drafts")
    def create_draft(body: DraftCreate):
        story = ingest_story(body.title, body.body, source=SOURCE_DRAFT)
        draft = Draft.from_story(story)
        draft_id = f"dr-{store.next_counter('draft'):06d}"
        store.drafts[draft_id] = draft.to_dict()
        save()
        return {"draft_id": draft_id, **draft.to_dict()}

    def _get_draft(draft_id: str) -> Draft:
        if draft_id not in store.drafts:
            raise UnknownId(f"no draft {draft_id}")
        return Draft.from_dict(store.drafts[draft_id])

    @app.get("/v1/drafts/{draft_id}")
    def get_draft(draft_id: str):
        return {"draft_id": draft_id, **_get_draft(draft_id).to_dict()}

    @app.post("/v1/drafts/{draft_id}/blocks")
    def insert_block(draft_id: str, body: BlockInsert):
        with draft_locks[draft_id]:
            ws = load_workspace(draft_id)
            if not 0 <= body.index <= len(ws.draft.blocks):
                raise errors.SpanOutOfRange(f"index {body.index} out of range")
            block = ws.draft.insert_block(body.index, body.text)
            save_workspace(draft_id, ws)
        return block.to_dict()

    @app.patch("/v1/drafts/{draft_id}/blocks/{block_id}")
    def patch_block(draft_id: str, block_id: str, body: BlockPatch):
        with draft_locks[draft_id]:
            ws = load_workspace(draft_id)
            block = ws.draft.set_block_text(block_id, body.text)
            save_workspace(draft_id, ws)
        return block.to_dict()

    @app.post("/v1/drafts/{draft_id}/arc")
    def compute_draft_arc(draft_id: str):
        with draft_locks[draft_id]:
            draft = _get_draft(draft_id)
            protagonist, arc = build_draft_arc(draft.story, draft.blocks, gw, lexicon)
            store.arcs[draft_id] = arc.to_dict()
            store.protagonists[draft_id] = protagonist
            save()
        return {"id": draft_id, "protagonist": protagonist, "points": _arc_points(arc.to_dict())}

    # -- remix ------------------------------------------------------------------

    @app.get("/v1/remix/workspace")
    def get_workspace(draft_id: str):
        ws = load_workspace(draft_id)
        return ws.to_dict()

    @app.post("/v1/remix/tracks")
    def add_track(body: TrackCreate):
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            track = ws.add_track(body.dimension)
            save_workspace(body.draft_id, ws)
        return track.to_dict()

    @app.post("/v1/remix/tiles")
    def place_tile(body: TileCreate):
        if len(body.span) != 2:
            raise errors.SpanOutOfRange("span must be [start, end]")
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            tile = ws.place_tile(body.track_id, body.strategy_ref, (body.span[0], body.span[1]))
            save_workspace(body.draft_id, ws)
        return tile.to_dict()

    @app.patch("/v1/remix/tiles/{tile_id}")
    def resize_tile(tile_id: str, body: TilePatch):
        if len(body.span) != 2:
            raise errors.SpanOutOfRange("span must be [start, end]")
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            tile = ws.resize_tile(tile_id, (body.span[0], body.span[1]))
            save_workspace(body.draft_id, ws)
        return tile.to_dict()

    @app.delete("/v1/remix/tiles/{tile_id}")
    def remove_tile(tile_id: str, draft_id: str):
        with draft_locks[draft_id]:
            ws = load_workspace(draft_id)
            tile = ws.remove_tile(tile_id)
            save_workspace(draft_id, ws)
        return tile.to_dict()

    @app.get("/v1/remix/strategies")
    def strategies_for_block(draft_id: str, block_index: int):
        ws = load_workspace(draft_id)
        return ws.strategies_for_block(block_index)

    @app.post("/v1/remix/revise")
    def revise(body: ReviseRequest):
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            revision = ws.revise_block(body.block_index, body.strategy_ids)
            save_workspace(body.draft_id, ws)
        return revision.to_dict()

    @app.post("/v1/remix/continue")
    def continue_story(body: ContinueRequest):
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            revision = ws.continue_story(body.strategy_ids, body.hint)
            save_workspace(body.draft_id, ws)
        return revision.to_dict()

    @app.post("/v1/remix/accept")
    def accept(body: RevisionRef):
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            revision = ws.accept(body.revision_id)
            save_workspace(body.draft_id, ws)
        return revision.to_dict()

    @app.post("/v1/remix/discard")
    def discard(body: RevisionRef):
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            revision = ws.discard(body.revision_id)
            save_workspace(body.draft_id, ws)
        return revision.to_dict()

    @app.post("/v1/remix/restore")
    def restore(body: RestoreRequest):
        with draft_locks[body.draft_id]:
            ws = load_workspace(body.draft_id)
            ws.restore(body.block_id, body.revision_id, body.use_previous)
            save_workspace(body.draft_id, ws)
        return store.drafts[body.draft_id]

    @app.post("/v1/remix/reflect")
    def reflect(body: ReflectRequest):
        block = store.get_block(body.example_block_id)
        ann = resolve_annotation(body.strategy_ref)
        if ann.block_id != block.id:
            raise UnknownId(
                f"strategy {body.strategy_ref} did not originate from block {block.id}"
            )
        ws = load_workspace(body.draft_id)
        comparison = ws.reflect(block.text, body.strategy_ref, body.revised_text)
        return comparison.to_dict()

    # -- events ------------------------------------------------------------------

    @app.post("/v1/events")
    def post_event(event: Event):
        record = events.append(event.model_dump())
        return {"ok": True, "recorded_at": record["recorded_at"]}

    return app
