"""Protagonist identification and per-block emotion adjectives."""

from __future__ import annotations

import logging
import re

from ..errors import UnparseableList
from ..gateway import Gateway, render

logger = logging.getLogger(__name__)

_BRACKETED_RE = re.compile(r"\[([^\]]*)\]")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z'-]*")


def identify_protagonist(gateway: Gateway, story_body: str) -> str:
    """Ask for the story's main character; returns a single trimmed line."""
    prompt = render("protagonist", {"story": story_body})
    completion = gateway.complete(prompt)
    lines = [ln.strip() for ln in completion.raw.strip().splitlines() if ln.strip()]
    if not lines:
        return ""
    if len(lines) > 1:
        logger.warning("protagonist response had %d lines; keeping the first", len(lines))
    return lines[0]


def infer_adjectives(gateway: Gateway, protagonist: str, plot: str) -> list[str]:
    """Infer exactly three lowercase emotion adjectives for a block.

    The model is asked for a bracketed list like ``[happy, sad, joyful]``;
    a bare comma-separated list is tolerated.  Short lists are padded by
    repeating the last word, long ones truncated, both with a warning.
    """
    prompt = render("emotions", {"protagonist": protagonist, "plot": plot})
    completion = gateway.complete(prompt)
    return parse_adjectives(completion.raw)


def parse_adjectives(raw: str) -> list[str]:
    m = _BRACKETED_RE.search(raw)
    payload = m.group(1) if m else raw
    words = []
    for part in payload.split(","):
        found = _WORD_RE.findall(part)
        if found:
            words.append(found[0].lower())
    if not words:
        raise UnparseableList(f"no adjective list found in {raw!r}")
    if len(words) != 3:
        logger.warning("expected 3 adjectives, got %d in %r; adjusting", len(words), raw)
    while len(words) < 3:
        words.append(words[-1])
    return words[:3]
