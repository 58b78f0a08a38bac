from .client import Completion, Gateway, HTTPProvider, Provider
from .templates import RenderedPrompt, render
from .cassette import Cassette

__all__ = [
    "Cassette",
    "Completion",
    "Gateway",
    "HTTPProvider",
    "Provider",
    "RenderedPrompt",
    "render",
]
