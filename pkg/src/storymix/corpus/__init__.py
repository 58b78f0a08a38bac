from .models import Block, Draft, Story, ingest_story
from .segmentation import ValidationReport, validate_segmentation

__all__ = [
    "Block",
    "Draft",
    "Story",
    "ValidationReport",
    "ingest_story",
    "validate_segmentation",
]
