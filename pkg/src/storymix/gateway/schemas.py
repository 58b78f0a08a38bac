"""JSON schemas for structured model outputs."""

from __future__ import annotations

import json

import jsonschema

SCHEMAS: dict[str, dict] = {
    "segment": {
        "type": "object",
        "required": ["plots"],
        "properties": {
            "plots": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "object",
                    "required": ["title", "plot", "summary"],
                    "properties": {
                        "title": {"type": "string"},
                        "plot": {"type": "string", "minLength": 1},
                        "summary": {"type": "string"},
                    },
                },
            }
        },
    },
    "strategies": {
        "type": "object",
        "required": ["strategies"],
        "properties": {
            "strategies": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["strategy", "reasoning", "lexicon"],
                    "properties": {
                        "strategy": {"type": "string", "minLength": 1},
                        "reasoning": {"type": "string"},
                        "lexicon": {"type": "array", "items": {"type": "string"}},
                    },
                },
            }
        },
    },
    "category": {
        "type": "object",
        "required": ["category"],
        "properties": {
            "category": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "string", "minLength": 1},
            }
        },
    },
    "reflect": {
        "type": "object",
        "required": ["example_cues", "revised_cues", "commentary"],
        "properties": {
            "example_cues": {"type": "array", "items": {"type": "string"}},
            "revised_cues": {"type": "array", "items": {"type": "string"}},
            "commentary": {"type": "string"},
        },
    },
}


def parse_and_validate(raw: str, schema_id: str) -> dict:
    """Parse raw model output as JSON and validate against the schema.

    Tolerates a fenced ```json block around the payload.  Raises ValueError
    on parse failure, jsonschema.ValidationError on schema failure.
    """
    text = raw.strip()
    if text.startswith("```"):
        first_nl = text.index("\n") if "\n" in text else len(text)
        text = text[first_nl + 1 :]
        if text.rstrip().endswith("```"):
            text = text.rstrip()[:-3]
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"output is not valid JSON: {e}") from e
    jsonschema.validate(doc, SCHEMAS[schema_id])
    return doc
