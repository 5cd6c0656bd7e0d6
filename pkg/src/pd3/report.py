"""JSON certificate reports."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass

import jsonschema

from . import __version__
from .engine import Verdict

SCHEMA_VERSION = 1

CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "pd3 certificate report",
    "type": "object",
    "required": ["schema", "input", "input_hash", "verdict", "exit_code", "citations", "notes",
                 "witness", "admissibility", "presentation", "tool_version"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "input": {"type": "string"},
        "input_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "verdict": {"enum": ["Obstructed", "Realizable", "StructurallyInadmissible", "Unknown"]},
        "exit_code": {"enum": [0, 2, 3, 4]},
        "citations": {"type": "array", "items": {"type": "string"}},
        "notes": {"type": "array", "items": {"type": "string"}},
        "witness": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["type"], "properties": {"type": {
                    "enum": ["ObstructionWitness", "Witness", "ChainComplexData", "CatalogManifold"]}}},
            ]
        },
        "admissibility": {"type": ["object", "null"]},
        "presentation": {"type": ["string", "null"]},
        "tool_version": {"type": "string"},
    },
}


def input_hash(canonical_text: str) -> str:
    return hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CertificateReport:
    input: str
    input_hash: str
    verdict: str
    exit_code: int
    citations: tuple
    notes: tuple
    witness: dict | None
    admissibility: dict | None
    presentation: str | None
    tool_version: str = __version__
    schema: int = SCHEMA_VERSION

    @classmethod
    def from_verdict(cls, canonical_text: str, v: Verdict) -> "CertificateReport":
        return cls(
            input=canonical_text,
            input_hash=input_hash(canonical_text),
            verdict=v.kind,
            exit_code=v.exit_code,
            citations=tuple(v.citations),
            notes=tuple(v.notes),
            witness=_plain(v.certificate_dict()),
            admissibility=_plain(v.admissibility.to_dict()) if v.admissibility is not None else None,
            presentation=v.presentation.render() if v.presentation is not None else None,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["citations"] = list(self.citations)
        d["notes"] = list(self.notes)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "CertificateReport":
        d = json.loads(text)
        validate(d)
        d["citations"] = tuple(d["citations"])
        d["notes"] = tuple(d["notes"])
        return cls(**d)


def _plain(x):
    """Recursively convert to JSON-native values (tuples to lists, keys to str)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return int(x)
    return str(x)


def validate(d: dict) -> None:
    jsonschema.validate(d, CERTIFICATE_SCHEMA)
