"""Runtime configuration shared by the CLI and the service.

File values (JSON) are overridden by environment variables, which are
overridden by explicit CLI flags.  The API key is environment-only.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

ENV_PREFIX = "STORYMIX_"


def bundled_lexicon_path() -> Path:
    """The small lexicon shipped for tests and offline runs."""
    return Path(str(resources.files("storymix").joinpath("data/lexicon_small.tsv")))


@dataclass
class Config:
    provider_url: str = ""
    model: str = "gpt-4o"
    lexicon_path: str = ""
    cassette_path: str = ""
    mode: str = "replay"  # replay | record | live
    store_path: str = "store.json"
    event_log_path: str = "events.jsonl"
    max_concurrency: int = 4
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.lexicon_path:
            self.lexicon_path = str(bundled_lexicon_path())

    @classmethod
    def load(cls, path: str | Path | None = None) -> "Config":
        values: dict = {}
        if path:
            values = json.loads(Path(path).read_text(encoding="utf-8"))
        cfg = cls(**{k: v for k, v in values.items() if k in cls.__dataclass_fields__})
        for name in ("provider_url", "model", "lexicon_path", "cassette_path", "mode", "store_path"):
            env = os.environ.get(ENV_PREFIX + name.upper())
            if env:
                setattr(cfg, name, env)
        return cfg
