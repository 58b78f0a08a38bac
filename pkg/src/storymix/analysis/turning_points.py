"""Turning-point detection as five independent binary decisions.

The Classifier interface keeps the per-type decision functions pluggable:
the default asks the gateway a zero-temperature yes/no question per type
using the canonical definition; ExternalClassifier posts the block to an
HTTP endpoint for deployments with trained per-type models.
"""

from __future__ import annotations

import logging
from typing import Callable, Protocol

from ..corpus.models import Block
from ..gateway import Gateway, render
from .models import TURNING_POINT_DEFINITIONS, TURNING_POINTS, TurningPointLabel

logger = logging.getLogger(__name__)


class Classifier(Protocol):
    def decide(self, tp_type: str, block: Block) -> bool:
        """f_k(block): True when the block contains turning point tp_type."""
        ...


class PromptClassifier:
    kind = "prompt-default"

    def __init__(self, gateway: Gateway):
        self.gateway = gateway

    def decide(self, tp_type: str, block: Block) -> bool:
        prompt = render(
            "turning-point",
            {
                "tp_name": tp_type,
                "tp_definition": TURNING_POINT_DEFINITIONS[tp_type],
                "plot": block.text,
            },
        )
        completion = self.gateway.complete(prompt)
        return _parse_yes_no(completion.raw)


def _parse_yes_no(raw: str) -> bool:
    token = raw.strip().split()[0].strip(".,!:;\"'").lower() if raw.strip() else ""
    if token not in ("yes", "no"):
        logger.warning("expected yes/no, got %r; treating as no", raw)
    return token == "yes"


class ExternalClassifier:
    """Adapter for an HTTP classifier: POST {type, text} -> {"positive": bool}.

    The transport callable is injected (the HTTP implementation lives with
    the gateway) so this module stays free of network code.
    """

    kind = "external"

    def __init__(self, post_json: Callable[[dict], dict]):
        self._post = post_json

    def decide(self, tp_type: str, block: Block) -> bool:
        reply = self._post({"type": tp_type, "text": block.text})
        return bool(reply["positive"])


def classify_turning_points(block: Block, clf: Classifier) -> TurningPointLabel:
    """Run all five decisions; any failure aborts the label (no half-labels)."""
    decisions = {tp: clf.decide(tp, block) for tp in TURNING_POINTS}
    return TurningPointLabel(
        block_id=block.id,
        types=[tp for tp in TURNING_POINTS if decisions[tp]],
    )
