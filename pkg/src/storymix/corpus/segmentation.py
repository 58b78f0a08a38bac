"""Align model-proposed story segments back onto the source text.

Each candidate segment must be a verbatim excerpt of the story body up to
whitespace normalization.  Because models occasionally alter a word or some
punctuation, a repair pass accepts near-verbatim candidates (word-level
Levenshtein distance / candidate length <= REPAIR_THRESHOLD) and replaces
their text with the true body slice, so accepted blocks always satisfy the
verbatim invariant exactly.
"""

from __future__ import annotations

import difflib
import logging
from dataclasses import dataclass, field

from .. import ids
from ..errors import NotVerbatim, OutOfOrder
from ..textnorm import normalize_ws, words_with_offsets
from .models import Block, Story

logger = logging.getLogger(__name__)

REPAIR_THRESHOLD = 0.05


@dataclass
class ValidationReport:
    aligned_blocks: list[Block]
    warnings: list[str] = field(default_factory=list)
    gaps: list[tuple[int, int]] = field(default_factory=list)
    repaired_indices: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "blocks": [b.to_dict() for b in self.aligned_blocks],
            "warnings": self.warnings,
            "gaps": [list(g) for g in self.gaps],
            "repaired_indices": self.repaired_indices,
        }


def validate_segmentation(story: Story, candidate_blocks: list[dict]) -> ValidationReport:
    """Locate each candidate in story.body and return aligned blocks.

    Candidates are dicts with keys ``title``, ``plot``, ``summary``.
    Raises NotVerbatim(i) when candidate i cannot be aligned within the
    repair threshold, OutOfOrder when located spans are not strictly
    increasing and non-overlapping.
    """
    if not candidate_blocks:
        raise ValueError("candidate block list is empty")

    body_words = words_with_offsets(story.body)
    tokens = [w for w, _, _ in body_words]

    spans: list[tuple[int, int]] = []  # word-index spans [wi, wj)
    repaired: list[int] = []
    prev_end = 0  # word index where the previous block ended
    for i, cand in enumerate(candidate_blocks):
        cand_tokens = normalize_ws(cand.get("plot", "")).split()
        if not cand_tokens:
            raise NotVerbatim(i, f"candidate block {i} is empty")
        located = _locate(tokens, cand_tokens, prev_end)
        if located is None:
            raise NotVerbatim(i)
        wi, wj, dist = located
        if dist > 0:
            repaired.append(i)
            logger.info(
                "repaired candidate block %d: %d word edit(s) over %d words",
                i, dist, len(cand_tokens),
            )
        spans.append((wi, wj))
        if wi >= prev_end:
            prev_end = wj

    for prev, cur in zip(spans, spans[1:]):
        if cur[0] < prev[1]:
            raise OutOfOrder(
                f"candidate spans are not strictly increasing: {prev} then {cur}"
            )

    blocks: list[Block] = []
    warnings: list[str] = []
    for i, ((wi, wj), cand) in enumerate(zip(spans, candidate_blocks)):
        start = body_words[wi][1]
        end = body_words[wj - 1][2]
        block = Block(
            id=ids.block_id(story.id, i),
            story_id=story.id,
            index=i,
            title=cand.get("title", ""),
            text=story.body[start:end],
            summary=cand.get("summary", ""),
            char_span=(start, end),
        )
        blocks.append(block)
        w = block.size_warning()
        if w:
            warnings.append(w)
    warnings.extend(f"block {i} aligned with repair" for i in repaired)

    return ValidationReport(
        aligned_blocks=blocks,
        warnings=warnings,
        gaps=_gaps(story.body, blocks),
        repaired_indices=repaired,
    )


def _locate(tokens: list[str], cand: list[str], search_from: int):
    """Find the best word span for ``cand``, preferring matches at or after
    ``search_from``.  Returns (start, end, distance) or None."""
    hit = _exact_find(tokens, cand, search_from)
    if hit is None:
        hit = _repair_find(tokens, cand, search_from)
    if hit is None and search_from > 0:
        # Not ahead of the previous block: look anywhere so that reordered
        # candidates surface as OutOfOrder rather than NotVerbatim.
        hit = _exact_find(tokens, cand, 0) or _repair_find(tokens, cand, 0)
    return hit


def _exact_find(tokens: list[str], cand: list[str], search_from: int):
    n, m = len(tokens), len(cand)
    first = cand[0]
    for p in range(search_from, n - m + 1):
        if tokens[p] == first and tokens[p : p + m] == cand:
            return (p, p + m, 0)
    return None


def _repair_find(tokens: list[str], cand: list[str], search_from: int):
    region = tokens[search_from:]
    if not region:
        return None
    sm = difflib.SequenceMatcher(None, region, cand, autojunk=False)
    match = sm.find_longest_match(0, len(region), 0, len(cand))
    if match.size == 0:
        return None
    slack = max(2, int(REPAIR_THRESHOLD * len(cand)) + 2)
    lo = max(0, match.a - match.b - slack)
    hi = min(len(region), match.a - match.b + len(cand) + slack)
    found = _best_infix(cand, region, lo, hi)
    if found is None:
        return None
    start, end, dist = found
    if dist > REPAIR_THRESHOLD * len(cand) + 1e-9:
        return None
    return (search_from + start, search_from + end, dist)


def _best_infix(pattern: list[str], window: list[str], lo: int, hi: int):
    """Semi-global alignment: best Levenshtein match of ``pattern`` against
    any contiguous sub-slice of ``window[lo:hi]``.  Returns (start, end, dist)
    in window coordinates."""
    sub = window[lo:hi]
    w = len(sub)
    if w == 0:
        return None
    prev = [0] * (w + 1)
    starts_prev = list(range(w + 1))
    for i, pw in enumerate(pattern, 1):
        cur = [i] + [0] * w
        starts_cur = [starts_prev[0]] + [0] * w
        for j in range(1, w + 1):
            sub_cost = prev[j - 1] + (0 if pw == sub[j - 1] else 1)
            del_cost = prev[j] + 1  # drop a pattern word
            ins_cost = cur[j - 1] + 1  # skip a window word
            best = min(sub_cost, del_cost, ins_cost)
            cur[j] = best
            if best == sub_cost:
                starts_cur[j] = starts_prev[j - 1]
            elif best == del_cost:
                starts_cur[j] = starts_prev[j]
            else:
                starts_cur[j] = starts_cur[j - 1]
        prev, starts_prev = cur, starts_cur
    best_j = min(range(1, w + 1), key=lambda j: (prev[j], j))
    start = lo + starts_prev[best_j]
    end = lo + best_j
    if end <= start:
        return None
    return (start, end, prev[best_j])


def _gaps(body: str, blocks: list[Block]) -> list[tuple[int, int]]:
    """Uncovered [start, end) ranges of the body that contain visible text."""
    gaps = []
    pos = 0
    for b in blocks:
        s, e = b.char_span
        if body[pos:s].strip():
            gaps.append((pos, s))
        pos = max(pos, e)
    if body[pos:].strip():
        gaps.append((pos, len(body)))
    return gaps
