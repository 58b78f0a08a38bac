"""Lexical relevance ranking over strategy cards.

A card's searchable text is its strategies' names, explanations, and cues.
Scoring is TF-IDF with cosine normalization; an optional embedding provider
can re-rank on top of this, but lexical ranking is the default because it
needs no network.
"""

from __future__ import annotations

import math
import re
from collections import Counter

_TOKEN_RE = re.compile(r"[a-z0-9']+")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class CardIndex:
    def __init__(self, docs: dict[str, str]):
        """docs: card id -> searchable text."""
        self.ids = sorted(docs)
        self._tf: dict[str, Counter] = {}
        df: Counter = Counter()
        for cid in self.ids:
            counts = Counter(tokenize(docs[cid]))
            self._tf[cid] = counts
            df.update(counts.keys())
        n = len(self.ids)
        self._idf = {t: math.log((n + 1) / (c + 1)) + 1.0 for t, c in df.items()}
        self._norm = {}
        for cid in self.ids:
            weights = [self._weight(cid, t) for t in self._tf[cid]]
            self._norm[cid] = math.sqrt(sum(w * w for w in weights)) or 1.0

    def _weight(self, cid: str, token: str) -> float:
        tf = self._tf[cid].get(token, 0)
        if tf == 0:
            return 0.0
        return (1.0 + math.log(tf)) * self._idf.get(token, 0.0)

    def score(self, cid: str, query_tokens: list[str]) -> float:
        if not query_tokens:
            return 0.0
        q = Counter(query_tokens)
        dot = 0.0
        for token, qcount in q.items():
            dot += qcount * self._weight(cid, token)
        return dot / self._norm[cid]

    def rank(self, query: str) -> list[tuple[str, float]]:
        """Card ids with positive scores, best first; ties by id."""
        tokens = tokenize(query)
        scored = [(cid, self.score(cid, tokens)) for cid in self.ids]
        hits = [(cid, s) for cid, s in scored if s > 0.0]
        hits.sort(key=lambda pair: (-pair[1], pair[0]))
        return hits
