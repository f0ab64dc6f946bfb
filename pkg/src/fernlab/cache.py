"""On-disk cache of invariant bases.

One JSON file per ``(n, xi, k)``.  Each file carries the schema version
and a SHA-256 of the canonical serialization of the basis; entries whose
hash or version does not match are ignored on read.  Writes go to a
temporary file in the same directory followed by an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .arnold import CohomologyElement
from .wreath import InvariantBasis

SCHEMA_VERSION = "1"
ENV_VAR = "FERNLAB_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "fernlab"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def basis_payload(basis: InvariantBasis) -> dict:
    return {
        "key": {"n": basis.n, "xi": basis.xi, "k": basis.k},
        "vectors": [
            [[[list(pair) for pair in mono], str(c)] for mono, c in v.terms.items()]
            for v in basis.vectors
        ],
    }


def basis_from_payload(payload: dict) -> InvariantBasis:
    key = payload["key"]
    n, xi, k = key["n"], key["xi"], key["k"]
    m = n * xi
    vecs = []
    for raw in payload["vectors"]:
        terms = {tuple(tuple(p) for p in mono): Fraction(c) for mono, c in raw}
        vecs.append(CohomologyElement(m, k, terms))
    return InvariantBasis(n, xi, k, tuple(vecs))


class BasisCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def _path(self, n: int, xi: int, k: int) -> Path:
        return self.directory / f"invariants_n{n}_xi{xi}_k{k}.json"

    def get(self, n: int, xi: int, k: int) -> InvariantBasis | None:
        path = self._path(n, xi, k)
        try:
            doc = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if doc.get("schema_version") != SCHEMA_VERSION:
            return None
        payload = doc.get("payload")
        digest = hashlib.sha256((SCHEMA_VERSION + canonical_json(payload)).encode()).hexdigest()
        if doc.get("sha256") != digest or payload.get("key") != {"n": n, "xi": xi, "k": k}:
            return None
        try:
            return basis_from_payload(payload)
        except (KeyError, TypeError, ValueError):
            return None

    def put(self, basis: InvariantBasis) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = basis_payload(basis)
        body = canonical_json(payload)
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "invariant_basis",
            "sha256": hashlib.sha256((SCHEMA_VERSION + body).encode()).hexdigest(),
            "payload": payload,
        }
        path = self._path(basis.n, basis.xi, basis.k)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_json(doc))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def entries(self) -> list[dict]:
        if not self.directory.is_dir():
            return []
        out = []
        for path in sorted(self.directory.glob("invariants_*.json")):
            try:
                doc = json.loads(path.read_text())
                key = doc["payload"]["key"]
                out.append({
                    "file": path.name,
                    "kind": doc.get("kind"),
                    "schema_version": doc.get("schema_version"),
                    "n": key["n"], "xi": key["xi"], "k": key["k"],
                    "dim": len(doc["payload"]["vectors"]),
                    "sha256": doc.get("sha256"),
                    "bytes": path.stat().st_size,
                })
            except (OSError, ValueError, KeyError, TypeError):
                out.append({"file": path.name, "kind": "unreadable"})
        return out

    def clear(self) -> int:
        removed = 0
        for entry in self.entries():
            try:
                (self.directory / entry["file"]).unlink()
                removed += 1
            except FileNotFoundError:
                pass
        return removed
