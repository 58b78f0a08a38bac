"""Strategy annotations, turning-point labels, and the two fixed taxonomies."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnknownCategory, UnknownDimension
from ..textnorm import word_count

# The eight creative dimensions onto which strategies are categorized and
# remix tracks are keyed.
DIMENSION_DEFINITIONS: dict[str, str] = {
    "Plot": (
        "Strategies for plot construction and story progression, e.g., causation, "
        "escalation, conflict setup and resolution, reversals and twists, and act "
        "and beat frameworks."
    ),
    "Character": (
        "Strategies for character development and portrayal, e.g., growth, traits, "
        "relationships, and archetypal roles."
    ),
    "Information": (
        "Strategies for information control and perspective, e.g., revelation, "
        "concealment, misdirection, foreshadowing, and point-of-view manipulation."
    ),
    "Emotional": (
        "Strategies for emotional effect, e.g., tension, empathy, surprise, "
        "catharsis, and atmosphere."
    ),
    "Linguistic": (
        "Strategies for language style, e.g., voice, imagery, syntax and rhythm, "
        "dialogue, and rhetorical devices."
    ),
    "Pacing": (
        "Strategies for pacing at the moment and segment levels, e.g., scene versus "
        "summary, time compression and expansion, beat density, sentence and "
        "paragraph cadence, cutaways and cross-cutting, time skips, and "
        "arrive-late, leave-early trims."
    ),
    "Thematic": (
        "Strategies for theme and meaning, e.g., symbolism, allegory, and "
        "philosophical exploration."
    ),
    "Engagement": (
        "Strategies for reader engagement, e.g., hooks, immersion techniques, "
        "curiosity creation, suspense management, and narrative payoffs."
    ),
}

DIMENSIONS: tuple[str, ...] = tuple(DIMENSION_DEFINITIONS)

# The five turning-point types, in canonical narrative order.
TURNING_POINT_DEFINITIONS: dict[str, str] = {
    "Opportunity": "The introductory event that sets the stage for the narrative.",
    "Change of Plans": (
        "A pivotal moment where the main goal of the narrative is defined or altered."
    ),
    "Point of No Return": (
        "The commitment point beyond which the protagonists are invested in goals."
    ),
    "Major Setback": (
        "A critical juncture where the protagonists face significant challenges or failures."
    ),
    "Climax": (
        "The peak of the narrative arc, encompassing the resolution of the central conflict."
    ),
}

TURNING_POINTS: tuple[str, ...] = tuple(TURNING_POINT_DEFINITIONS)

_DIMENSION_LOOKUP = {name.casefold(): name for name in DIMENSIONS}
_TP_LOOKUP = {name.casefold().replace(" ", ""): name for name in TURNING_POINTS}


def parse_dimension(label: str) -> str:
    """Map a label to its canonical dimension name, case-insensitively."""
    key = label.strip().casefold()
    if key not in _DIMENSION_LOOKUP:
        raise UnknownCategory(f"{label!r} is not one of the eight creative dimensions")
    return _DIMENSION_LOOKUP[key]


def parse_track_dimension(label: str) -> str:
    """Like parse_dimension but raises UnknownDimension (track-creation path)."""
    try:
        return parse_dimension(label)
    except UnknownCategory as e:
        raise UnknownDimension(str(e)) from e


def parse_turning_point(label: str) -> str:
    key = label.strip().casefold().replace(" ", "").replace("_", "").replace("-", "")
    if key not in _TP_LOOKUP:
        raise UnknownCategory(f"{label!r} is not one of the five turning-point types")
    return _TP_LOOKUP[key]


def taxonomy_text() -> str:
    """The eight dimension definitions as prompt-ready text."""
    return "\n".join(f"- {name}: {desc}" for name, desc in DIMENSION_DEFINITIONS.items())


NAME_WORD_BOUNDS = (2, 6)


@dataclass
class Cue:
    text: str
    start: int | None = None  # char offsets into Block.text once verified
    end: int | None = None

    def to_dict(self) -> dict:
        return {"text": self.text, "start": self.start, "end": self.end}

    @classmethod
    def from_dict(cls, d: dict) -> "Cue":
        return cls(text=d["text"], start=d.get("start"), end=d.get("end"))


@dataclass
class StrategyAnnotation:
    id: str
    block_id: str
    name: str
    explanation: str
    cues: list[Cue] = field(default_factory=list)
    dimensions: list[str] = field(default_factory=list)
    verified: bool = False
    dropped_cues: list[str] = field(default_factory=list)  # unverifiable, kept for audit
    flags: list[str] = field(default_factory=list)

    def check_name_length(self) -> None:
        lo, hi = NAME_WORD_BOUNDS
        n = word_count(self.name)
        if not lo <= n <= hi and "name-length" not in self.flags:
            self.flags.append("name-length")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "block_id": self.block_id,
            "name": self.name,
            "explanation": self.explanation,
            "cues": [c.to_dict() for c in self.cues],
            "dimensions": self.dimensions,
            "verified": self.verified,
            "dropped_cues": self.dropped_cues,
            "flags": self.flags,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StrategyAnnotation":
        return cls(
            id=d["id"],
            block_id=d["block_id"],
            name=d["name"],
            explanation=d["explanation"],
            cues=[Cue.from_dict(c) for c in d["cues"]],
            dimensions=list(d["dimensions"]),
            verified=d["verified"],
            dropped_cues=list(d.get("dropped_cues", [])),
            flags=list(d.get("flags", [])),
        )


@dataclass
class TurningPointLabel:
    block_id: str
    types: list[str]  # subset of TURNING_POINTS, canonical order

    def __post_init__(self):
        unknown = [t for t in self.types if t not in TURNING_POINTS]
        if unknown:
            raise UnknownCategory(f"unknown turning-point types: {unknown}")
        self.types = [t for t in TURNING_POINTS if t in set(self.types)]

    def to_dict(self) -> dict:
        return {"block_id": self.block_id, "types": self.types}
