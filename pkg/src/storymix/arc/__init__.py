from .dtw import HAVE_COMPILED, arc_similarity, dtw_full, dtw_open_end, most_similar
from .valence import ArcPoint, ValenceArc, ValenceLexicon, block_valence
from .emotions import identify_protagonist, infer_adjectives

__all__ = [
    "ArcPoint",
    "HAVE_COMPILED",
    "ValenceArc",
    "ValenceLexicon",
    "arc_similarity",
    "block_valence",
    "dtw_full",
    "dtw_open_end",
    "identify_protagonist",
    "infer_adjectives",
    "most_similar",
]
