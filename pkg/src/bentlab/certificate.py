"""Machine-readable certificates: canonical JSON with named verdicts."""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field as dc_field

from . import __version__

FLOAT_DIGITS = 12


def _normalize(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return float(f"{obj:.{FLOAT_DIGITS}g}")
    if isinstance(obj, complex):
        return [_normalize(obj.real), _normalize(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _normalize(obj.tolist())
    if hasattr(obj, "item"):
        return _normalize(obj.item())
    return str(obj)


@dataclass
class Report:
    command: str
    parameters: dict = dc_field(default_factory=dict)
    field_params: dict | None = None
    verdicts: list = dc_field(default_factory=list)
    results: dict = dc_field(default_factory=dict)
    provenance: dict = dc_field(default_factory=lambda: {"exhaustive": True})
    timing: dict = dc_field(default_factory=dict)
    _start: float = dc_field(default_factory=time.perf_counter, repr=False, compare=False)

    def verdict(self, name: str, passed: bool, value=None) -> bool:
        entry = {"name": name, "passed": bool(passed)}
        if value is not None:
            entry["value"] = value
        self.verdicts.append(entry)
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(v["passed"] for v in self.verdicts)

    def failed(self) -> list[str]:
        return [v["name"] for v in self.verdicts if not v["passed"]]

    def finish(self) -> "Report":
        self.timing = {"seconds": round(time.perf_counter() - self._start, 3)}
        return self

    def to_dict(self) -> dict:
        out = {
            "tool": "bentlab",
            "version": __version__,
            "command": self.command,
            "parameters": self.parameters,
            "verdicts": self.verdicts,
            "results": self.results,
            "provenance": self.provenance,
            "timing": self.timing,
            "passed": self.passed,
        }
        if self.field_params is not None:
            out["field"] = self.field_params
        return _normalize(out)


def field_info(ctx) -> dict:
    return {"p": ctx.p, "n": ctx.n, "modulus": list(reversed(ctx.modulus)), "text": ctx.to_text()}


def emit_certificate(report) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    data = report.to_dict() if isinstance(report, Report) else _normalize(report)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_certificate(text: str) -> dict:
    return json.loads(text)


def certificate_digest(data: dict) -> str:
    """SHA-256 of the canonical form with the timing field removed."""
    stripped = {k: v for k, v in data.items() if k != "timing"}
    blob = json.dumps(stripped, sort_keys=True, ensure_ascii=False).encode()
    return hashlib.sha256(blob).hexdigest()
