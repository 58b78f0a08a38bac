"""Valence lexicon lookup and per-block arc points.

Lexicon scores are raw valences in [0, 1]; arcs are drawn and compared in
signed units, signed = 2*raw - 1 in [-1, 1].  A block's raw valence is the
arithmetic mean over the adjectives found in the lexicon; a block whose
three adjectives are all unknown falls back to neutral (raw 0.5, signed 0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

_STRIP_SUFFIXES = ("ed", "ing", "s")


class ValenceLexicon:
    """word -> valence in [0, 1]; file format is `word<TAB>valence[<TAB>...]`
    with `#` comment lines.  Extra columns (arousal, dominance) are ignored."""

    def __init__(self, entries: dict[str, float]):
        self.entries = {k.lower(): v for k, v in entries.items()}
        bad = {w: v for w, v in self.entries.items() if not 0.0 <= v <= 1.0}
        if bad:
            raise ValueError(f"valence values outside [0, 1]: {bad}")

    @classmethod
    def from_file(cls, path: str | Path) -> "ValenceLexicon":
        entries: dict[str, float] = {}
        with Path(path).open(encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) < 2:
                    logger.warning("%s:%d: skipping malformed lexicon line", path, lineno)
                    continue
                entries[parts[0]] = float(parts[1])
        return cls(entries)

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, word: str) -> float | None:
        """Case-insensitive lookup with a light suffix-strip retry."""
        w = word.lower().strip()
        if w in self.entries:
            return self.entries[w]
        for suf in _STRIP_SUFFIXES:
            if w.endswith(suf) and len(w) - len(suf) >= 3:
                stem = w[: -len(suf)]
                if stem in self.entries:
                    return self.entries[stem]
        return None


@dataclass
class ArcPoint:
    block_id: str
    index: int
    adjectives: list[str]
    raw_valence: float
    signed_valence: float
    coverage: int

    def to_dict(self) -> dict:
        return {
            "block_id": self.block_id,
            "index": self.index,
            "adjectives": self.adjectives,
            "raw_valence": self.raw_valence,
            "signed_valence": self.signed_valence,
            "coverage": self.coverage,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArcPoint":
        return cls(
            block_id=d["block_id"],
            index=d["index"],
            adjectives=list(d["adjectives"]),
            raw_valence=d["raw_valence"],
            signed_valence=d["signed_valence"],
            coverage=d["coverage"],
        )


def block_valence(block_id: str, index: int, adjectives: list[str],
                  lexicon: ValenceLexicon) -> ArcPoint:
    found = [v for v in (lexicon.lookup(w) for w in adjectives) if v is not None]
    if found:
        # summing in sorted order makes the mean invariant under adjective order
        raw = sum(sorted(found)) / len(found)
    else:
        raw = 0.5
    return ArcPoint(
        block_id=block_id,
        index=index,
        adjectives=list(adjectives),
        raw_valence=raw,
        signed_valence=2.0 * raw - 1.0,
        coverage=len(found),
    )


@dataclass
class ValenceArc:
    story_id: str
    points: list[ArcPoint]

    @property
    def signed_values(self) -> list[float]:
        return [p.signed_valence for p in self.points]

    def normalized_x(self) -> list[float]:
        """Display x-coordinates in [0, 1]; similarity math never uses these."""
        n = len(self.points)
        if n <= 1:
            return [0.0] * n
        return [p.index / (n - 1) for p in self.points]

    def to_dict(self) -> dict:
        return {"story_id": self.story_id, "points": [p.to_dict() for p in self.points]}

    @classmethod
    def from_dict(cls, d: dict) -> "ValenceArc":
        return cls(
            story_id=d["story_id"],
            points=[ArcPoint.from_dict(p) for p in d["points"]],
        )
