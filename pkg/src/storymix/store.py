"""File-backed workspace store and append-only event log.

One JSON document holds everything (desk-scale corpora need no database);
snapshots are written with sorted keys so equal stores serialize to equal
bytes.  Usage events go to a separate JSON Lines log with monotone
timestamps.
"""

from __future__ import annotations

import json
import os
import threading
import time
from pathlib import Path

from .corpus.models import Block, Story
from .errors import UnknownId


class WorkspaceStore:
    def __init__(self) -> None:
        self.stories: dict[str, dict] = {}
        self.blocks: dict[str, dict] = {}
        self.annotations: dict[str, dict] = {}
        self.turning_points: dict[str, list[str]] = {}  # block_id -> types
        self.protagonists: dict[str, str] = {}  # story_id -> name
        self.arcs: dict[str, dict] = {}  # story_id -> ValenceArc dict
        self.drafts: dict[str, dict] = {}  # draft_id -> Draft dict
        self.workspaces: dict[str, dict] = {}  # draft_id -> workspace dict
        self.story_warnings: dict[str, list[str]] = {}
        self.counters: dict[str, int] = {}
        self.lock = threading.RLock()

    # -- entities --------------------------------------------------------

    def put_story(self, story: Story) -> None:
        with self.lock:
            self.stories[story.id] = story.to_dict()

    def get_story(self, story_id: str) -> Story:
        try:
            return Story.from_dict(self.stories[story_id])
        except KeyError:
            raise UnknownId(f"no story {story_id}") from None

    def put_blocks(self, story_id: str, blocks: list[Block]) -> None:
        with self.lock:
            if story_id not in self.stories:
                raise UnknownId(f"no story {story_id}")
            stale = [bid for bid, b in self.blocks.items() if b["story_id"] == story_id]
            for bid in stale:
                del self.blocks[bid]
            for b in blocks:
                self.blocks[b.id] = b.to_dict()

    def blocks_for_story(self, story_id: str) -> list[Block]:
        found = [Block.from_dict(b) for b in self.blocks.values() if b["story_id"] == story_id]
        return sorted(found, key=lambda b: b.index)

    def get_block(self, block_id: str) -> Block:
        try:
            return Block.from_dict(self.blocks[block_id])
        except KeyError:
            raise UnknownId(f"no block {block_id}") from None

    def put_annotation(self, ann_dict: dict) -> None:
        with self.lock:
            if ann_dict["block_id"] not in self.blocks:
                raise UnknownId(f"annotation references unknown block {ann_dict['block_id']}")
            self.annotations[ann_dict["id"]] = ann_dict

    def annotations_for_block(self, block_id: str) -> list[dict]:
        found = [a for a in self.annotations.values() if a["block_id"] == block_id]
        return sorted(found, key=lambda a: a["id"])

    def next_counter(self, prefix: str) -> int:
        with self.lock:
            self.counters[prefix] = self.counters.get(prefix, 0) + 1
            return self.counters[prefix]

    # -- persistence -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "stories": self.stories,
            "blocks": self.blocks,
            "annotations": self.annotations,
            "turning_points": self.turning_points,
            "protagonists": self.protagonists,
            "arcs": self.arcs,
            "drafts": self.drafts,
            "workspaces": self.workspaces,
            "story_warnings": self.story_warnings,
            "counters": self.counters,
        }

    def save(self, path: str | Path) -> None:
        path = Path(path)
        with self.lock:
            payload = json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, indent=1)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(payload + "\n", encoding="utf-8")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | Path) -> "WorkspaceStore":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        store = cls()
        store.stories = d.get("stories", {})
        store.blocks = d.get("blocks", {})
        store.annotations = d.get("annotations", {})
        store.turning_points = d.get("turning_points", {})
        store.protagonists = d.get("protagonists", {})
        store.arcs = d.get("arcs", {})
        store.drafts = d.get("drafts", {})
        store.workspaces = d.get("workspaces", {})
        store.story_warnings = d.get("story_warnings", {})
        store.counters = d.get("counters", {})
        store.check_integrity()
        return store

    def check_integrity(self) -> None:
        for b in self.blocks.values():
            if b["story_id"] not in self.stories:
                raise UnknownId(f"block {b['id']} references unknown story {b['story_id']}")
        for a in self.annotations.values():
            if a["block_id"] not in self.blocks:
                raise UnknownId(f"annotation {a['id']} references unknown block {a['block_id']}")
        for bid in self.turning_points:
            if bid not in self.blocks:
                raise UnknownId(f"turning-point label references unknown block {bid}")


class EventLog:
    """Append-only JSONL usage log; recorded timestamps never go backward."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._last = 0.0

    def append(self, event: dict) -> dict:
        with self._lock:
            now = max(time.time(), self._last)
            self._last = now
            record = {"recorded_at": now, **event}
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as f:
                f.write(json.dumps(record, sort_keys=True, ensure_ascii=False))
                f.write("\n")
            return record

    def count(self) -> int:
        if not self.path.exists():
            return 0
        with self.path.open(encoding="utf-8") as f:
            return sum(1 for line in f if line.strip())
