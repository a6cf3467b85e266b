"""JSON documents for quantales, spaces, L-subsets and maps.

A document may reference another one by a path relative to its own file;
:class:`Workspace` resolves and caches those references.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from . import quantale as qmod
from .convex import DEFAULT_FAMILY_CAP, LConvexSpace, SpaceMap, generate_structure, validate_structure
from .errors import LConvexError
from .lfuzz import LSet
from .quantale import Quantale


class DocumentError(LConvexError):
    """A document is malformed (CLI exit code 2)."""


def dumps(doc: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def kind_of(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise DocumentError("a document must be a JSON object")
    if "kind" in doc:
        return doc["kind"]
    if "chain" in doc or "tensor" in doc or "builtin" in doc:
        return "quantale"
    if "source" in doc and "target" in doc:
        return "map"
    if "convexes" in doc or "generators" in doc:
        return "space"
    if "degrees" in doc:
        return "lset"
    raise DocumentError(f"cannot tell what kind of document has keys {sorted(doc)}")


def lset_from_document(q: Quantale, size: int, doc: Union[dict, list]) -> LSet:
    degrees = doc["degrees"] if isinstance(doc, dict) else doc
    if len(degrees) != size:
        raise DocumentError(f"expected {size} degrees, got {len(degrees)}")
    out = []
    for d in degrees:
        if isinstance(d, str):
            if d not in q.labels:
                raise DocumentError(f"unknown element label {d!r}")
            d = q.labels.index(d)
        out.append(int(d))
    return LSet(q, tuple(out))


@dataclass
class Workspace:
    """Loaded objects keyed by resolved path, plus run settings."""

    root: Path = field(default_factory=Path.cwd)
    seed: int = 0
    max_family: int = DEFAULT_FAMILY_CAP
    objects: dict = field(default_factory=dict)

    def read(self, path: Union[str, Path]) -> tuple[Path, dict]:
        p = Path(path)
        if not p.is_absolute():
            p = self.root / p
        p = p.resolve()
        try:
            doc = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise DocumentError(f"{p}: {exc}") from exc
        except OSError as exc:
            raise DocumentError(f"{p}: {exc}") from exc
        return p, doc

    def load(self, path: Union[str, Path]):
        p, doc = self.read(path)
        if p in self.objects:
            return self.objects[p]
        obj = self.build(doc, base=p.parent, name=p.stem)
        self.objects[p] = obj
        return obj

    def _ref(self, ref, base: Path, expect: type, name: Optional[str] = None):
        if isinstance(ref, str):
            obj = self.load(base / ref)
        else:
            obj = self.build(ref, base=base, name=name)
        if not isinstance(obj, expect):
            raise DocumentError(f"expected a {expect.__name__}, got {type(obj).__name__}")
        return obj

    def build(self, doc: dict, base: Optional[Path] = None, name: Optional[str] = None):
        base = base or self.root
        kind = kind_of(doc)
        try:
            if kind == "quantale":
                return qmod.from_document(doc, name=name)
            if kind == "space":
                return self.space(doc, base)
            if kind == "map":
                source = self._ref(doc["source"], base, LConvexSpace)
                target = self._ref(doc["target"], base, LConvexSpace)
                return SpaceMap(source, target, tuple(int(y) for y in doc["points"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed {kind} document: {exc!r}") from exc
        raise DocumentError(f"unsupported document kind {kind!r}")

    def space(self, doc: dict, base: Path) -> LConvexSpace:
        q = self._ref(doc["quantale"], base, Quantale)
        labels = doc.get("points")
        size = len(labels) if isinstance(labels, list) else int(doc.get("size", labels))
        if not isinstance(labels, list):
            labels = None
        if "convexes" in doc:
            family = [lset_from_document(q, size, c) for c in doc["convexes"]]
            return validate_structure(q, size, family, labels=labels)
        gens = [lset_from_document(q, size, g) for g in doc.get("generators", [])]
        X = generate_structure(q, size, gens, stratified=bool(doc.get("stratified", True)),
                               cap=self.max_family, labels=labels)
        return validate_structure(q, size, X.convexes, labels=labels)


def map_document(f: SpaceMap) -> dict:
    return {"source": f.source.to_document(), "target": f.target.to_document(),
            "points": list(f.points)}
