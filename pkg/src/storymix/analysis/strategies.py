"""Strategy inference, lexical-cue grounding, and dimension categorization.

Cue grounding is lossy but never fails: a cue that cannot be located in its
block is dropped from the annotation's cue list, recorded in dropped_cues,
and logged; an annotation whose cues all fail is kept and flagged
"ungrounded" rather than deleted.
"""

from __future__ import annotations

import logging
from dataclasses import replace

from .. import ids
from ..corpus.models import Block
from ..gateway import Gateway, render
from ..textnorm import normalize_fold
from .models import Cue, StrategyAnnotation, parse_dimension, taxonomy_text

logger = logging.getLogger(__name__)


def infer_strategies(gateway: Gateway, block: Block) -> list[StrategyAnnotation]:
    """Infer named strategies with explanations and (unverified) cues."""
    prompt = render("infer-strategies", {"plot": block.text})
    completion = gateway.complete(prompt)
    assert completion.parsed is not None
    annotations = []
    for i, item in enumerate(completion.parsed["strategies"]):
        ann = StrategyAnnotation(
            id=ids.annotation_id(block.id, i),
            block_id=block.id,
            name=item["strategy"].strip(),
            explanation=item["reasoning"].strip(),
            cues=[Cue(text=c) for c in item["lexicon"] if c.strip()],
        )
        ann.check_name_length()
        annotations.append(ann)
    return annotations


def _fold_with_offsets(text: str) -> tuple[str, list[int]]:
    """Casefolded, whitespace-collapsed copy of ``text`` plus a map from each
    folded char back to its original offset."""
    out: list[str] = []
    offsets: list[int] = []
    in_ws = False
    for i, ch in enumerate(text):
        if ch.isspace():
            in_ws = True
            continue
        if in_ws and out:
            out.append(" ")
            offsets.append(i - 1)
        in_ws = False
        folded = ch.casefold()
        for fch in folded:  # casefold may expand a char
            out.append(fch)
            offsets.append(i)
    return "".join(out), offsets


def locate_cue(text: str, cue: str) -> tuple[int, int] | None:
    """First case-insensitive, whitespace-normalized occurrence of ``cue`` in
    ``text``; returns char offsets into ``text`` or None."""
    needle = normalize_fold(cue)
    if not needle:
        return None
    hay, offsets = _fold_with_offsets(text)
    pos = hay.find(needle)
    while pos != -1:
        # require word-ish boundaries so "art" does not ground inside "start"
        left_ok = pos == 0 or not hay[pos - 1].isalnum() or not needle[0].isalnum()
        right = pos + len(needle)
        right_ok = right == len(hay) or not hay[right].isalnum() or not needle[-1].isalnum()
        if left_ok and right_ok:
            start = offsets[pos]
            end = offsets[right - 1] + 1
            return start, end
        pos = hay.find(needle, pos + 1)
    return None


def verify_cues(block: Block, ann: StrategyAnnotation) -> StrategyAnnotation:
    """Ground an annotation's cues in its block text.

    Returns a new annotation: locatable cues gain offsets, unlocatable ones
    move to dropped_cues; verified is True iff at least one cue survives.
    """
    kept: list[Cue] = []
    dropped: list[str] = list(ann.dropped_cues)
    for cue in ann.cues:
        span = locate_cue(block.text, cue.text)
        if span is None:
            dropped.append(cue.text)
            logger.warning(
                "ungrounded cue %r for strategy %r on block %s",
                cue.text, ann.name, block.id,
            )
        else:
            kept.append(Cue(text=cue.text, start=span[0], end=span[1]))
    flags = [f for f in ann.flags if f != "ungrounded"]
    if not kept:
        flags.append("ungrounded")
        logger.warning(
            "annotation %s (%r) has no groundable cues; flagged ungrounded",
            ann.id, ann.name,
        )
    return replace(
        ann,
        cues=kept,
        dropped_cues=dropped,
        verified=bool(kept),
        flags=flags,
    )


def categorize(gateway: Gateway, ann: StrategyAnnotation, block: Block) -> list[str]:
    """Assign 1-2 creative dimensions to a named strategy.

    More than two labels from the model are truncated to the first two with
    a warning; labels outside the taxonomy raise UnknownCategory.
    """
    prompt = render(
        "categorize",
        {
            "strategy": ann.name,
            "plot": block.text,
            "explanation": ann.explanation,
            "taxonomy": taxonomy_text(),
        },
    )
    completion = gateway.complete(prompt)
    assert completion.parsed is not None
    labels = completion.parsed["category"]
    if len(labels) > 2:
        logger.warning(
            "strategy %r categorized with %d labels; keeping the first 2",
            ann.name, len(labels),
        )
        labels = labels[:2]
    dims = []
    for label in labels:
        canon = parse_dimension(label)
        if canon not in dims:
            dims.append(canon)
    return dims


def cue_slices_match(block_text: str, ann: StrategyAnnotation) -> bool:
    """True when every verified cue slices back out of the block text, after
    normalization.  Used by invariant checks and the acceptance suite."""
    for cue in ann.cues:
        if cue.start is None or cue.end is None:
            return False
        if normalize_fold(block_text[cue.start : cue.end]) != normalize_fold(cue.text):
            return False
    return True
