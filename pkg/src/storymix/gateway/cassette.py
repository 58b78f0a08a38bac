"""Record/replay cassette: JSON Lines of {fixture_key, raw}.

Committed cassettes make the whole analysis pipeline runnable offline and
byte-for-byte deterministic.  Appends are serialized; on load, the last
entry wins for a duplicated key.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path


class Cassette:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._entries: dict[str, str] = {}
        self._lock = threading.Lock()
        if self.path.exists():
            with self.path.open(encoding="utf-8") as f:
                for line in f:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    self._entries[rec["fixture_key"]] = rec["raw"]

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def get(self, key: str) -> str | None:
        return self._entries.get(key)

    def append(self, key: str, raw: str) -> None:
        with self._lock:
            if self._entries.get(key) == raw:
                return
            self._entries[key] = raw
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as f:
                f.write(json.dumps({"fixture_key": key, "raw": raw}, ensure_ascii=False))
                f.write("\n")
