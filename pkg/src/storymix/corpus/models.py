"""Stories, blocks, and drafts.

A Block is always a verbatim slice of its story's body: ``text`` equals
``body[start:end]`` up to whitespace normalization, and a story's block
spans are non-overlapping and strictly increasing by index.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .. import ids
from ..errors import EmptyBody, UnknownId
from ..textnorm import normalize_ws, word_count

WORD_BOUNDS = (50, 300)  # outside this range a block is flagged, not rejected

SOURCE_EXAMPLE = "example-corpus"
SOURCE_DRAFT = "user-draft"


@dataclass
class Story:
    id: str
    title: str
    body: str
    source: str = SOURCE_EXAMPLE

    def to_dict(self) -> dict:
        return {"id": self.id, "title": self.title, "body": self.body, "source": self.source}

    @classmethod
    def from_dict(cls, d: dict) -> "Story":
        return cls(id=d["id"], title=d["title"], body=d["body"], source=d["source"])


@dataclass
class Block:
    id: str
    story_id: str
    index: int
    title: str
    text: str
    summary: str
    char_span: tuple[int, int]

    @property
    def word_count(self) -> int:
        return word_count(self.text)

    def size_warning(self) -> str | None:
        lo, hi = WORD_BOUNDS
        n = self.word_count
        if n < lo:
            return f"block {self.index} has {n} words (< {lo})"
        if n > hi:
            return f"block {self.index} has {n} words (> {hi})"
        return None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "story_id": self.story_id,
            "index": self.index,
            "title": self.title,
            "text": self.text,
            "summary": self.summary,
            "char_span": list(self.char_span),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Block":
        return cls(
            id=d["id"],
            story_id=d["story_id"],
            index=d["index"],
            title=d["title"],
            text=d["text"],
            summary=d["summary"],
            char_span=(d["char_span"][0], d["char_span"][1]),
        )


def ingest_story(title: str, body: str, source: str = SOURCE_EXAMPLE) -> Story:
    """Create a Story with a content-derived id.  Rejects empty bodies."""
    if not normalize_ws(body):
        raise EmptyBody("story body is empty")
    return Story(id=ids.story_id(title, body), title=title, body=body, source=source)


def split_draft_blocks(story: Story) -> list[Block]:
    """Split a draft body into blocks on blank lines (editor semantics:
    one paragraph per block).  Spans index into the original body."""
    blocks: list[Block] = []
    body = story.body
    pos = 0
    index = 0
    for para in body.split("\n\n"):
        stripped = para.strip()
        start = body.index(para, pos)
        pos = start + len(para)
        if not stripped:
            continue
        inner = start + para.index(stripped)
        blocks.append(
            Block(
                id=ids.block_id(story.id, index),
                story_id=story.id,
                index=index,
                title=f"Paragraph {index + 1}",
                text=stripped,
                summary="",
                char_span=(inner, inner + len(stripped)),
            )
        )
        index += 1
    return blocks


@dataclass
class Draft:
    """A user draft: a story plus its editable blocks and a version counter.

    The version increases by exactly 1 per accepted mutation; block ids are
    stable across edits that do not delete the block.
    """

    story: Story
    blocks: list[Block] = field(default_factory=list)
    version: int = 0
    _next_block: int = 0

    @classmethod
    def from_story(cls, story: Story) -> "Draft":
        blocks = split_draft_blocks(story)
        return cls(story=story, blocks=blocks, version=0, _next_block=len(blocks))

    def block_by_id(self, bid: str) -> Block:
        for b in self.blocks:
            if b.id == bid:
                return b
        raise UnknownId(f"no block {bid} in draft {self.story.id}")

    def _reindex(self) -> None:
        for i, b in enumerate(self.blocks):
            b.index = i

    def _sync_body(self) -> None:
        # The draft body is owned by its blocks once editing starts.
        body = "\n\n".join(b.text for b in self.blocks)
        self.story = replace(self.story, body=body)
        pos = 0
        for b in self.blocks:
            start = body.index(b.text, pos)
            b.char_span = (start, start + len(b.text))
            pos = start + len(b.text)

    def set_block_text(self, bid: str, text: str) -> Block:
        block = self.block_by_id(bid)
        block.text = text
        self._sync_body()
        self.version += 1
        return block

    def insert_block(self, index: int, text: str, title: str = "") -> Block:
        block = Block(
            id=ids.block_id(self.story.id, self._next_block),
            story_id=self.story.id,
            index=index,
            title=title or f"Paragraph {index + 1}",
            text=text,
            summary="",
            char_span=(0, 0),
        )
        self._next_block += 1
        self.blocks.insert(index, block)
        self._reindex()
        self._sync_body()
        self.version += 1
        return block

    def append_block(self, text: str, title: str = "") -> Block:
        return self.insert_block(len(self.blocks), text, title)

    def to_dict(self) -> dict:
        return {
            "story": self.story.to_dict(),
            "blocks": [b.to_dict() for b in self.blocks],
            "version": self.version,
            "next_block": self._next_block,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Draft":
        return cls(
            story=Story.from_dict(d["story"]),
            blocks=[Block.from_dict(b) for b in d["blocks"]],
            version=d["version"],
            _next_block=d["next_block"],
        )
