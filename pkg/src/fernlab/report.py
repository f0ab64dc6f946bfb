"""Machine-readable report documents.

JSON is canonical; CSV is a flat projection of ``records``; text is for
people.  Every number is written as a decimal string.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__

SCHEMA_VERSION = "1"

SCOPE = {
    "level": "model",
    "statement": (
        "Checks are exact computations on finite models: the orbit complex of "
        "admissible words and the invariant Arnold algebra of the plane. "
        "They are model-level verifications, not proofs of the geometric statements."
    ),
    "not_reproduced": [
        "connectivity of the infinite fern complex",
        "rational stability for closed surfaces",
        "integral stability beyond the computed window",
    ],
}


def stringify(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclass
class ReportDocument:
    command: str
    params: dict[str, Any]
    records: list[dict[str, Any]] = field(default_factory=list)
    elapsed_ms: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        for r in self.records:
            if r.get("diagnostic"):
                continue
            if r.get("verdict") == "fail" or "error" in r:
                return "fail"
        return "pass"

    def to_dict(self) -> dict[str, Any]:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "params": self.params,
            "records": self.records,
            "verdict": self.verdict,
            "elapsed_ms": self.elapsed_ms,
            "scope": SCOPE,
        }
        doc.update(self.extra)
        return stringify(doc)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        rows = [_flatten(r) for r in self.to_dict()["records"]]
        cols = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow(r)
        return buf.getvalue()

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"fernlab {d['tool_version']}  {d['command']}  " +
                 " ".join(f"{k}={v}" for k, v in sorted(d["params"].items()))]
        for r in d["records"]:
            tag = r.get("verdict", "")
            if r.get("diagnostic"):
                tag = f"diag:{tag}"
            body = " ".join(f"{k}={json.dumps(v) if isinstance(v, (dict, list)) else v}"
                            for k, v in sorted(r.items()) if k not in ("verdict", "diagnostic", "witness"))
            lines.append(f"  [{tag or '-':>9}] {body}")
        lines.append(f"verdict: {d['verdict']}  ({d['elapsed_ms']} ms)")
        lines.append("scope: model-level verification (" + "; ".join(SCOPE["not_reproduced"]) + " not reproduced)")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _flatten(record: dict[str, Any], prefix: str = "") -> dict[str, str]:
    out: dict[str, str] = {}
    for k, v in record.items():
        name = f"{prefix}{k}"
        if isinstance(v, dict) and k == "params":
            out.update(_flatten(v, ""))
        elif isinstance(v, (dict, list)):
            out[name] = json.dumps(v, sort_keys=True, separators=(",", ":"))
        else:
            out[name] = "" if v is None else str(v)
    return out
