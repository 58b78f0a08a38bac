"""Tracks, tiles, revisions, and reflective comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Track:
    id: str
    dimension: str
    order: int

    def to_dict(self) -> dict:
        return {"id": self.id, "dimension": self.dimension, "order": self.order}

    @classmethod
    def from_dict(cls, d: dict) -> "Track":
        return cls(id=d["id"], dimension=d["dimension"], order=d["order"])


@dataclass
class Tile:
    """A strategy placed on a track, spanning draft blocks [start, end]
    inclusive; end may equal the block count (the continuation slot)."""

    id: str
    track_id: str
    strategy_ref: str
    span: tuple[int, int]
    seq: int  # creation order, used for stable listing

    def covers(self, block_index: int) -> bool:
        return self.span[0] <= block_index <= self.span[1]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "track_id": self.track_id,
            "strategy_ref": self.strategy_ref,
            "span": list(self.span),
            "seq": self.seq,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tile":
        return cls(
            id=d["id"],
            track_id=d["track_id"],
            strategy_ref=d["strategy_ref"],
            span=(d["span"][0], d["span"][1]),
            seq=d["seq"],
        )


@dataclass
class Revision:
    id: str
    block_id: str | None  # None for a pending continuation
    applied_strategies: list[str]
    previous_text: str
    new_text: str
    timestamp: float
    accepted: bool = False
    kind: str = "revise"  # revise | continue | restore

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "block_id": self.block_id,
            "applied_strategies": self.applied_strategies,
            "previous_text": self.previous_text,
            "new_text": self.new_text,
            "timestamp": self.timestamp,
            "accepted": self.accepted,
            "kind": self.kind,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Revision":
        return cls(
            id=d["id"],
            block_id=d["block_id"],
            applied_strategies=list(d["applied_strategies"]),
            previous_text=d["previous_text"],
            new_text=d["new_text"],
            timestamp=d["timestamp"],
            accepted=d["accepted"],
            kind=d["kind"],
        )


@dataclass
class ComparisonSide:
    text: str
    cues: list[dict] = field(default_factory=list)  # {text, start, end}


@dataclass
class Comparison:
    strategy_name: str
    example_side: ComparisonSide
    revised_side: ComparisonSide
    commentary: str
    dropped_cues: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "strategy_name": self.strategy_name,
            "example": {"text": self.example_side.text, "cues": self.example_side.cues},
            "revised": {"text": self.revised_side.text, "cues": self.revised_side.cues},
            "commentary": self.commentary,
            "dropped_cues": self.dropped_cues,
        }
