"""Narrative strategy extraction, story-arc modeling, and remix editing."""

__version__ = "0.1.0"
