"""The remix workspace: a draft plus dimension tracks and strategy tiles.

Edits are block-scoped and gated: a revise/continue call produces a pending
Revision that touches nothing until accepted.  History per block is
append-only, and at most one revision may be pending per target at a time.
"""

from __future__ import annotations

import time
from typing import Callable

from .. import ids
from ..analysis.models import StrategyAnnotation, parse_track_dimension
from ..analysis.strategies import locate_cue
from ..corpus.models import Draft
from ..errors import (
    Busy,
    DimensionMismatch,
    NoStrategies,
    SpanOutOfRange,
    UnknownId,
    UnknownRevision,
)
from ..gateway import Gateway, render
from ..gateway.templates import format_strategy_list
from .models import Comparison, ComparisonSide, Revision, Tile, Track

CONTINUATION = "__continuation__"  # pending-slot key for continue_story


class RemixWorkspace:
    def __init__(
        self,
        draft: Draft,
        gateway: Gateway,
        annotation_resolver: Callable[[str], StrategyAnnotation],
    ):
        self.draft = draft
        self.gateway = gateway
        self.resolve = annotation_resolver
        self.tracks: list[Track] = []
        self.tiles: list[Tile] = []
        self.revisions: list[Revision] = []
        self.pending: dict[str, str] = {}  # target key -> revision id
        self._counter = 0

    def _next(self, prefix: str) -> str:
        self._counter += 1
        return ids.counter_id(prefix, self._counter)

    # -- tracks and tiles ----------------------------------------------

    def add_track(self, dimension: str) -> Track:
        canon = parse_track_dimension(dimension)
        track = Track(id=self._next("tr"), dimension=canon, order=len(self.tracks))
        self.tracks.append(track)
        return track

    def track_by_id(self, track_id: str) -> Track:
        for t in self.tracks:
            if t.id == track_id:
                return t
        raise UnknownId(f"no track {track_id}")

    def place_tile(self, track_id: str, strategy_ref: str, span: tuple[int, int]) -> Tile:
        track = self.track_by_id(track_id)
        ann = self.resolve(strategy_ref)
        if track.dimension not in ann.dimensions:
            raise DimensionMismatch(
                f"strategy {ann.name!r} has dimensions {ann.dimensions}, "
                f"not {track.dimension!r}"
            )
        start, end = span
        limit = len(self.draft.blocks)  # last valid index is the continuation slot
        if not (0 <= start <= end <= limit):
            raise SpanOutOfRange(
                f"span [{start}, {end}] out of range for {limit} blocks "
                f"(continuation slot = {limit})"
            )
        tile = Tile(
            id=self._next("tl"),
            track_id=track_id,
            strategy_ref=strategy_ref,
            span=(start, end),
            seq=self._counter,
        )
        self.tiles.append(tile)
        return tile

    def tile_by_id(self, tile_id: str) -> Tile:
        for t in self.tiles:
            if t.id == tile_id:
                return t
        raise UnknownId(f"no tile {tile_id}")

    def resize_tile(self, tile_id: str, span: tuple[int, int]) -> Tile:
        tile = self.tile_by_id(tile_id)
        start, end = span
        limit = len(self.draft.blocks)
        if not (0 <= start <= end <= limit):
            raise SpanOutOfRange(
                f"span [{start}, {end}] out of range for {limit} blocks "
                f"(continuation slot = {limit})"
            )
        tile.span = (start, end)
        return tile

    def remove_tile(self, tile_id: str) -> Tile:
        tile = self.tile_by_id(tile_id)
        self.tiles.remove(tile)
        return tile

    def strategies_for_block(self, block_index: int) -> list[str]:
        """Strategy ids from tiles covering the index, ordered by
        (track order, placement order), de-duplicated."""
        order = {t.id: t.order for t in self.tracks}
        covering = sorted(
            (tile for tile in self.tiles if tile.covers(block_index)),
            key=lambda tile: (order[tile.track_id], tile.seq),
        )
        seen: list[str] = []
        for tile in covering:
            if tile.strategy_ref not in seen:
                seen.append(tile.strategy_ref)
        return seen

    # -- generation ----------------------------------------------------

    def _strategy_bindings(self, strategy_ids: list[str]) -> str:
        entries = []
        for sid in strategy_ids:
            ann = self.resolve(sid)
            entries.append(
                {
                    "name": ann.name,
                    "explanation": ann.explanation,
                    "cues": [c.text for c in ann.cues],
                }
            )
        return format_strategy_list(entries)

    def _draft_text(self) -> str:
        return "\n\n".join(b.text for b in self.draft.blocks)

    def revise_block(self, block_index: int, strategy_ids: list[str] | None = None) -> Revision:
        if not 0 <= block_index < len(self.draft.blocks):
            raise SpanOutOfRange(f"no block at index {block_index}")
        block = self.draft.blocks[block_index]
        if strategy_ids is None:
            strategy_ids = self.strategies_for_block(block_index)
        if not strategy_ids:
            raise NoStrategies("revise needs at least one strategy tile on the block")
        if block.id in self.pending:
            raise Busy(f"block {block.id} already has a pending revision")

        prompt = render(
            "revise",
            {
                "draft": self._draft_text(),
                "block": block.text,
                "strategies": self._strategy_bindings(strategy_ids),
            },
        )
        completion = self.gateway.complete(prompt)
        revision = Revision(
            id=self._next("rv"),
            block_id=block.id,
            applied_strategies=list(strategy_ids),
            previous_text=block.text,
            new_text=completion.raw.strip(),
            timestamp=time.time(),
        )
        self.revisions.append(revision)
        self.pending[block.id] = revision.id
        return revision

    def continue_story(self, strategy_ids: list[str] | None = None,
                       hint: str | None = None) -> Revision:
        if strategy_ids is None:
            strategy_ids = self.strategies_for_block(len(self.draft.blocks))
        if not strategy_ids:
            raise NoStrategies("continue needs strategies on the continuation slot")
        if CONTINUATION in self.pending:
            raise Busy("a continuation is already pending")

        hint_section = f"\n\nThe writer describes the desired next block as: {hint}" if hint else ""
        prompt = render(
            "continue",
            {
                "draft": self._draft_text(),
                "strategies": self._strategy_bindings(strategy_ids),
                "hint_section": hint_section,
            },
        )
        completion = self.gateway.complete(prompt)
        revision = Revision(
            id=self._next("rv"),
            block_id=None,
            applied_strategies=list(strategy_ids),
            previous_text="",
            new_text=completion.raw.strip(),
            timestamp=time.time(),
            kind="continue",
        )
        self.revisions.append(revision)
        self.pending[CONTINUATION] = revision.id
        return revision

    # -- acceptance and history ------------------------------------------

    def revision_by_id(self, revision_id: str) -> Revision:
        for r in self.revisions:
            if r.id == revision_id:
                return r
        raise UnknownRevision(f"no revision {revision_id}")

    def _pending_key(self, revision: Revision) -> str | None:
        for key, rid in self.pending.items():
            if rid == revision.id:
                return key
        return None

    def accept(self, revision_id: str) -> Revision:
        revision = self.revision_by_id(revision_id)
        key = self._pending_key(revision)
        if key is None:
            raise UnknownRevision(f"revision {revision_id} is not pending")
        if revision.kind == "continue":
            block = self.draft.append_block(revision.new_text)
            revision.block_id = block.id
        else:
            self.draft.set_block_text(revision.block_id, revision.new_text)
        revision.accepted = True
        del self.pending[key]
        return revision

    def discard(self, revision_id: str) -> Revision:
        revision = self.revision_by_id(revision_id)
        key = self._pending_key(revision)
        if key is None:
            raise UnknownRevision(f"revision {revision_id} is not pending")
        del self.pending[key]
        return revision

    def history(self, block_id: str) -> list[Revision]:
        return [r for r in self.revisions if r.block_id == block_id]

    def restore(self, block_id: str, revision_id: str, use_previous: bool = False) -> Draft:
        """Set the block's text back to a recorded revision state and record
        the restore itself as a new accepted revision."""
        revision = self.revision_by_id(revision_id)
        if revision.block_id != block_id:
            raise UnknownRevision(f"revision {revision_id} does not target block {block_id}")
        block = self.draft.block_by_id(block_id)
        target_text = revision.previous_text if use_previous else revision.new_text
        record = Revision(
            id=self._next("rv"),
            block_id=block_id,
            applied_strategies=[],
            previous_text=block.text,
            new_text=target_text,
            timestamp=time.time(),
            accepted=True,
            kind="restore",
        )
        self.draft.set_block_text(block_id, target_text)
        self.revisions.append(record)
        return self.draft

    # -- reflection ------------------------------------------------------

    def reflect(self, example_block_text: str, strategy_ref: str, revised_text: str) -> Comparison:
        """Side-by-side comparison of a strategy in the example vs the
        revision; cue lists are grounded against their own texts."""
        ann = self.resolve(strategy_ref)
        prompt = render(
            "reflect",
            {
                "strategy": ann.name,
                "explanation": ann.explanation,
                "example": example_block_text,
                "revised": revised_text,
            },
        )
        completion = self.gateway.complete(prompt)
        assert completion.parsed is not None
        dropped: list[str] = []
        example_side = ComparisonSide(
            text=example_block_text,
            cues=_ground(example_block_text, completion.parsed["example_cues"], dropped),
        )
        revised_side = ComparisonSide(
            text=revised_text,
            cues=_ground(revised_text, completion.parsed["revised_cues"], dropped),
        )
        return Comparison(
            strategy_name=ann.name,
            example_side=example_side,
            revised_side=revised_side,
            commentary=completion.parsed["commentary"],
            dropped_cues=dropped,
        )

    # -- persistence -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "draft": self.draft.to_dict(),
            "tracks": [t.to_dict() for t in self.tracks],
            "tiles": [t.to_dict() for t in self.tiles],
            "revisions": [r.to_dict() for r in self.revisions],
            "pending": dict(self.pending),
            "counter": self._counter,
        }

    @classmethod
    def from_dict(
        cls,
        d: dict,
        gateway: Gateway,
        annotation_resolver: Callable[[str], StrategyAnnotation],
    ) -> "RemixWorkspace":
        ws = cls(Draft.from_dict(d["draft"]), gateway, annotation_resolver)
        ws.tracks = [Track.from_dict(t) for t in d["tracks"]]
        ws.tiles = [Tile.from_dict(t) for t in d["tiles"]]
        ws.revisions = [Revision.from_dict(r) for r in d["revisions"]]
        ws.pending = dict(d["pending"])
        ws._counter = d["counter"]
        return ws


def _ground(text: str, cues: list[str], dropped: list[str]) -> list[dict]:
    out = []
    for cue in cues:
        span = locate_cue(text, cue)
        if span is None:
            dropped.append(cue)
        else:
            out.append({"text": cue, "start": span[0], "end": span[1]})
    return out
