from .models import (
    DIMENSION_DEFINITIONS,
    DIMENSIONS,
    TURNING_POINT_DEFINITIONS,
    TURNING_POINTS,
    Cue,
    StrategyAnnotation,
    TurningPointLabel,
    parse_dimension,
    parse_turning_point,
)
from .strategies import categorize, infer_strategies, verify_cues
from .turning_points import Classifier, ExternalClassifier, PromptClassifier, classify_turning_points
from .pipeline import StoryAnalysis, run_story_pipeline, segment_story

__all__ = [
    "Classifier",
    "Cue",
    "DIMENSIONS",
    "DIMENSION_DEFINITIONS",
    "ExternalClassifier",
    "PromptClassifier",
    "StoryAnalysis",
    "StrategyAnnotation",
    "TURNING_POINTS",
    "TURNING_POINT_DEFINITIONS",
    "TurningPointLabel",
    "categorize",
    "classify_turning_points",
    "infer_strategies",
    "parse_dimension",
    "parse_turning_point",
    "run_story_pipeline",
    "segment_story",
    "verify_cues",
]
