"""Open-end DTW distance and arc similarity.

Alignments share a start (both sequences begin together) but may end at any
position of the reference, which suits comparing an in-progress draft arc
against complete example arcs.  The distance is normalized into a [0, 1]
similarity by the per-step upper bound 2 and the longer length:

    S = max(0, 1 - D* / (2 * max(m, n)))

The inner loop lives in a compiled extension when available; the pure-Python
kernel is selected at import time otherwise (or when STORYMIX_PURE_DTW is
set).  Both kernels compute identical rows.
"""

from __future__ import annotations

import os

from ..errors import EmptyCorpus, EmptySequence

if os.environ.get("STORYMIX_PURE_DTW"):
    from . import _dtw_py as _kernel

    HAVE_COMPILED = False
else:
    try:
        from . import _dtw_cy as _kernel  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        from . import _dtw_py as _kernel

        HAVE_COMPILED = False


def _check(a, b) -> None:
    if len(a) == 0 or len(b) == 0:
        raise EmptySequence("DTW inputs must be non-empty")


def dtw_open_end(a, b) -> float:
    """D* = min over 1<=j<=n of D[m][j]: alignment may end anywhere in b."""
    _check(a, b)
    row = _kernel.last_row(a, b)
    return min(row[1:])


def dtw_full(a, b) -> float:
    """Classic full-endpoint DTW distance D[m][n] (shared start and end)."""
    _check(a, b)
    row = _kernel.last_row(a, b)
    return row[-1]


def arc_similarity(a, b) -> float:
    _check(a, b)
    d_star = dtw_open_end(a, b)
    return max(0.0, 1.0 - d_star / (2.0 * max(len(a), len(b))))


def most_similar(user_values, corpus: list[tuple[str, list[float]]]) -> tuple[str, float]:
    """Pick the corpus story whose arc is most similar to the user's.

    ``corpus`` is a list of (story_id, signed-valence values).  Ties break
    toward the lexicographically smallest story id, so the result does not
    depend on corpus ordering.
    """
    if not corpus:
        raise EmptyCorpus("no corpus arcs to compare against")
    _check(user_values, user_values)
    best_id: str | None = None
    best_s = -1.0
    for story_id, values in corpus:
        s = arc_similarity(user_values, values)
        if s > best_s or (s == best_s and (best_id is None or story_id < best_id)):
            best_id, best_s = story_id, s
    assert best_id is not None
    return best_id, best_s
