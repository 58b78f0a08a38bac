from .models import Comparison, Revision, Tile, Track
from .workspace import RemixWorkspace

__all__ = ["Comparison", "RemixWorkspace", "Revision", "Tile", "Track"]
