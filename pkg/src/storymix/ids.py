"""Deterministic, sortable, opaque identifiers.

Corpus entities get content-derived ids so that re-running the pipeline on
the same inputs yields byte-identical stores.  Interactive entities (drafts,
tracks, tiles, revisions) get zero-padded counter ids scoped to their store
or workspace, which are stable across save/load round-trips.
"""

from __future__ import annotations

import hashlib


def _digest(*parts: str) -> str:
    h = hashlib.sha256("\x1f".join(parts).encode("utf-8"))
    return h.hexdigest()


def story_id(title: str, body: str) -> str:
    return "st-" + _digest(title, body)[:16]


def block_id(parent_story_id: str, index: int) -> str:
    # Embedding the ordinal keeps a story's block ids sortable in block order.
    return f"bk-{parent_story_id[3:11]}-{index:03d}"


def annotation_id(parent_block_id: str, ordinal: int) -> str:
    return f"an-{parent_block_id[3:]}-{ordinal:02d}"


def counter_id(prefix: str, n: int) -> str:
    return f"{prefix}-{n:06d}"
