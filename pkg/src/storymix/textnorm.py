"""Whitespace-normalized text comparison helpers.

All verbatim checks in the pipeline (segment alignment, lexical-cue
grounding) compare whitespace-normalized text, optionally lowercased.
"""

from __future__ import annotations

import re

_WS_RE = re.compile(r"\s+")
_WORD_RE = re.compile(r"\S+")


def normalize_ws(s: str) -> str:
    """Collapse runs of whitespace to single spaces and strip the ends."""
    return _WS_RE.sub(" ", s).strip()


def normalize_fold(s: str) -> str:
    """Whitespace-normalize and casefold, for case-insensitive matching."""
    return normalize_ws(s).casefold()


def word_count(s: str) -> int:
    return len(_WORD_RE.findall(s))


def words_with_offsets(s: str) -> list[tuple[str, int, int]]:
    """Tokenize into (word, start, end) triples with offsets into ``s``."""
    return [(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(s)]
