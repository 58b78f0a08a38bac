"""The single choke-point for model calls.

Every model interaction goes through Gateway.complete: prompt in, Completion
out.  Modes:

  replay  — cassette only; unknown keys raise FixtureMiss (offline default)
  record  — cassette first, then provider; new responses are appended
  live    — provider only

When a template declares an output schema, a failed parse triggers exactly
one repair retry (the invalid output is echoed back with an instruction to
return valid JSON); a second failure raises SchemaInvalidAfterRetry.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, field
from typing import Protocol

import jsonschema

from ..errors import FixtureMiss, NoProvider, SchemaInvalidAfterRetry
from .cassette import Cassette
from .schemas import parse_and_validate
from .templates import RenderedPrompt

DEFAULT_MAX_TOKENS = 2048

REPAIR_INSTRUCTION = (
    "Your previous response was:\n{raw}\n\n"
    "It did not parse as valid JSON with the required structure. "
    "Return valid JSON matching the schema, with no other text."
)


class Provider(Protocol):
    def complete(self, system: str, context: str, params: dict) -> str: ...


class HTTPProvider:
    """OpenAI-compatible chat-completions provider.

    Endpoint and key come from STORYMIX_PROVIDER_URL / STORYMIX_API_KEY
    unless given explicitly; the model name is configuration, not code.
    """

    def __init__(self, url: str | None = None, api_key: str | None = None,
                 model: str | None = None, timeout: float = 120.0):
        self.url = url or os.environ.get("STORYMIX_PROVIDER_URL", "")
        self.api_key = api_key or os.environ.get("STORYMIX_API_KEY", "")
        self.model = model or os.environ.get("STORYMIX_MODEL", "gpt-4o")
        self.timeout = timeout
        if not self.url:
            raise NoProvider("no provider endpoint configured (STORYMIX_PROVIDER_URL)")

    def complete(self, system: str, context: str, params: dict) -> str:
        import httpx

        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": context},
            ],
            **params,
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        resp = httpx.post(self.url, json=payload, headers=headers, timeout=self.timeout)
        resp.raise_for_status()
        return resp.json()["choices"][0]["message"]["content"]


@dataclass
class Completion:
    raw: str
    parsed: dict | None
    fixture_key: str
    attempts: int


def fixture_key(prompt: RenderedPrompt, params: dict) -> str:
    material = json.dumps(
        {
            "template": prompt.template_id,
            "system": prompt.system,
            "context": prompt.context,
            "params": params,
        },
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


@dataclass
class Gateway:
    mode: str = "replay"  # replay | record | live
    cassette: Cassette | None = None
    provider: Provider | None = None
    max_concurrency: int = 4
    _sem: threading.Semaphore = field(init=False, repr=False)

    def __post_init__(self):
        if self.mode not in ("replay", "record", "live"):
            raise ValueError(f"unknown gateway mode {self.mode!r}")
        if self.mode == "replay" and self.cassette is None:
            raise NoProvider("replay mode requires a cassette")
        if self.mode in ("record", "live") and self.provider is None:
            raise NoProvider(f"{self.mode} mode requires a provider")
        if self.mode == "record" and self.cassette is None:
            raise NoProvider("record mode requires a cassette path")
        self._sem = threading.Semaphore(self.max_concurrency)

    def _params(self, prompt: RenderedPrompt, params: dict | None) -> dict:
        merged = {
            "temperature": 0.8 if prompt.generation else 0.0,
            "max_tokens": DEFAULT_MAX_TOKENS,
        }
        if params:
            merged.update(params)
        return merged

    def _fetch(self, prompt: RenderedPrompt, params: dict) -> tuple[str, str]:
        key = fixture_key(prompt, params)
        if self.cassette is not None:
            cached = self.cassette.get(key)
            if cached is not None:
                return key, cached
        if self.mode == "replay":
            raise FixtureMiss(
                f"no cassette entry for template {prompt.template_id!r} (key {key[:12]}…)"
            )
        assert self.provider is not None
        with self._sem:
            raw = self.provider.complete(prompt.system, prompt.context, params)
        if self.mode == "record":
            assert self.cassette is not None
            self.cassette.append(key, raw)
        return key, raw

    def complete(self, prompt: RenderedPrompt, params: dict | None = None) -> Completion:
        params = self._params(prompt, params)
        key, raw = self._fetch(prompt, params)
        if prompt.schema_id is None:
            return Completion(raw=raw, parsed=None, fixture_key=key, attempts=1)

        try:
            parsed = parse_and_validate(raw, prompt.schema_id)
            return Completion(raw=raw, parsed=parsed, fixture_key=key, attempts=1)
        except (ValueError, jsonschema.ValidationError) as first_err:
            repair = RenderedPrompt(
                template_id=prompt.template_id,
                system=prompt.system,
                context=prompt.context + "\n\n" + REPAIR_INSTRUCTION.format(raw=raw),
                schema_id=prompt.schema_id,
                generation=prompt.generation,
            )
            key2, raw2 = self._fetch(repair, params)
            try:
                parsed = parse_and_validate(raw2, prompt.schema_id)
            except (ValueError, jsonschema.ValidationError) as second_err:
                raise SchemaInvalidAfterRetry(
                    f"template {prompt.template_id!r}: invalid output twice "
                    f"({first_err}; then {second_err})",
                    raw_outputs=[raw, raw2],
                ) from second_err
            return Completion(raw=raw2, parsed=parsed, fixture_key=key2, attempts=2)
