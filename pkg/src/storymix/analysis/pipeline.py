"""Per-story analysis pipeline: segment, annotate, label, and build the arc."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..arc.emotions import identify_protagonist, infer_adjectives
from ..arc.valence import ArcPoint, ValenceArc, ValenceLexicon, block_valence
from ..corpus.models import Block, Story
from ..corpus.segmentation import ValidationReport, validate_segmentation
from ..gateway import Gateway, render
from .models import StrategyAnnotation, TurningPointLabel
from .strategies import categorize, infer_strategies, verify_cues
from .turning_points import Classifier, classify_turning_points

logger = logging.getLogger(__name__)


def segment_story(gateway: Gateway, story: Story) -> ValidationReport:
    """Segment a story into blocks and align them back onto the body."""
    prompt = render("segment", {"title": story.title, "story": story.body})
    completion = gateway.complete(prompt)
    assert completion.parsed is not None
    return validate_segmentation(story, completion.parsed["plots"])


@dataclass
class StoryAnalysis:
    story_id: str
    blocks: list[Block]
    annotations: list[StrategyAnnotation]
    turning_points: list[TurningPointLabel]
    protagonist: str
    arc: ValenceArc
    warnings: list[str] = field(default_factory=list)


def run_story_pipeline(
    story: Story,
    gateway: Gateway,
    lexicon: ValenceLexicon,
    classifier: Classifier,
) -> StoryAnalysis:
    """Full analysis for one story, in deterministic block order."""
    report = segment_story(gateway, story)
    blocks = report.aligned_blocks
    warnings = list(report.warnings)

    annotations: list[StrategyAnnotation] = []
    labels: list[TurningPointLabel] = []
    points: list[ArcPoint] = []
    protagonist = identify_protagonist(gateway, story.body)

    for block in blocks:
        for ann in infer_strategies(gateway, block):
            ann = verify_cues(block, ann)
            ann.dimensions = categorize(gateway, ann, block)
            annotations.append(ann)
        labels.append(classify_turning_points(block, classifier))
        adjectives = infer_adjectives(gateway, protagonist, block.text)
        points.append(block_valence(block.id, block.index, adjectives, lexicon))

    return StoryAnalysis(
        story_id=story.id,
        blocks=blocks,
        annotations=annotations,
        turning_points=labels,
        protagonist=protagonist,
        arc=ValenceArc(story_id=story.id, points=points),
        warnings=warnings,
    )


def build_draft_arc(
    draft_story: Story,
    blocks: list[Block],
    gateway: Gateway,
    lexicon: ValenceLexicon,
) -> tuple[str, ValenceArc]:
    """Arc for a user draft whose blocks already exist (no segmentation)."""
    protagonist = identify_protagonist(gateway, draft_story.body)
    points = []
    for block in blocks:
        adjectives = infer_adjectives(gateway, protagonist, block.text)
        points.append(block_valence(block.id, block.index, adjectives, lexicon))
    return protagonist, ValenceArc(story_id=draft_story.id, points=points)
