"""JSON documents for soft spaces, soft mappings and reflections.

A space document looks like::

    {
      "format": 1,
      "universe": {"points": ["x", "y"], "parameters": ["a1", "a2"]},
      "opens": {"0_A": {"a1": [], "a2": []}, "B": {"a1": ["x"], "a2": ["x", "y"]}, ...},
      "metadata": {"name": "...", "expected": {"T0": true}, "provenance": "..."}
    }

Serialization is canonical: points and parameters in universe order, opens
sorted by their flattened bit code, point lists in universe order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .exceptions import SoftTopologyError, TopologyAxiomError, UnknownLabelError
from .reflection import Reflection
from .soft_core import SoftMapping, SoftSet, Universe
from .topology import SoftSpace, ValidationReport, generate_topology, validate_topology

__all__ = [
    "FORMAT_VERSION",
    "DocumentError",
    "SpaceDocument",
    "parse_document",
    "parse_space",
    "serialize_space",
    "canonicalize",
    "parse_mapping",
    "serialize_mapping",
    "serialize_reflection",
]

FORMAT_VERSION = 1


class DocumentError(SoftTopologyError, ValueError):
    """Malformed document text."""


@dataclass
class SpaceDocument:
    """A parsed space document.

    ``names`` maps bit codes of opens to their names in the document;
    ``printed`` is the validation report of the family exactly as written
    and ``added`` lists opens that closing the family had to add.
    """

    space: SoftSpace
    names: dict[int, str]
    metadata: dict[str, Any] = field(default_factory=dict)
    printed: ValidationReport = ValidationReport(True)
    added: list[SoftSet] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.metadata.get("name", self.space.name)

    def discrepancies(self) -> list[str]:
        """Human-readable account of what the printed family was missing."""
        if self.printed.ok:
            return []
        out = [self.printed.message(self.names)]
        out += [f"closure adds {self.names.get(s.bits, repr(s))}" for s in self.added]
        return out


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = doc.get("format")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format {version!r}; expected {FORMAT_VERSION}")
    return doc


def _universe(doc: dict) -> Universe:
    try:
        raw = doc["universe"]
        points, params = raw["points"], raw["parameters"]
    except (KeyError, TypeError):
        raise DocumentError("universe needs 'points' and 'parameters' lists") from None
    if not all(isinstance(p, str) for p in list(points) + list(params)):
        raise DocumentError("labels must be strings")
    try:
        return Universe(tuple(points), tuple(params))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def _soft_set(u: Universe, rows: Any, where: str) -> SoftSet:
    if not isinstance(rows, dict):
        raise DocumentError(f"{where}: expected a parameter -> points object")
    for pts in rows.values():
        if not isinstance(pts, list):
            raise DocumentError(f"{where}: rows must be lists of point labels")
    try:
        return SoftSet.from_rows(u, rows)
    except UnknownLabelError as exc:
        raise UnknownLabelError(f"{where}: {exc}") from None


def parse_document(text: str, generate: bool = False) -> SpaceDocument:
    """Parse a space document.

    Without ``generate`` the family must already be a soft topology and a
    :class:`TopologyAxiomError` names the offending pair otherwise.  With
    ``generate`` the family is closed and the discrepancy recorded.
    """
    doc = _load(text)
    u = _universe(doc)
    opens = doc.get("opens")
    if not isinstance(opens, dict):
        raise DocumentError("'opens' must be an object of named soft sets")
    members = [(name, _soft_set(u, rows, f"open {name!r}")) for name, rows in opens.items()]
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise DocumentError("'metadata' must be an object")
    names: dict[int, str] = {}
    for name, s in members:
        names.setdefault(s.bits, name)
    family = [s for _, s in members]
    printed = validate_topology(u, family)
    title = metadata.get("name", "")
    if not printed.ok and not generate:
        raise TopologyAxiomError(
            f"{title or 'document'}: {printed.message(names)}", printed.axiom, printed.witness
        )
    topology = generate_topology(u, family)
    space = SoftSpace(u, topology, title)
    given = {s.bits for s in family}
    added = [SoftSet(u, c) for c in topology.codes if c not in given]
    for k, s in enumerate(added, 1):
        names.setdefault(s.bits, f"gen{k}")
    return SpaceDocument(space, names, metadata, printed, added)


def parse_space(text: str, generate: bool = False) -> SoftSpace:
    return parse_document(text, generate).space


def _default_name(u: Universe, bits: int, k: int) -> str:
    if bits == 0:
        return "0_A"
    if bits == u.full_mask:
        return "1_A"
    return f"U{k}"


def space_to_dict(
    sp: SoftSpace,
    names: dict[int, str] | None = None,
    metadata: dict[str, Any] | None = None,
) -> dict:
    u = sp.universe
    names = names or {}
    opens = {}
    for k, c in enumerate(sp.codes):
        label = names.get(c) or _default_name(u, c, k)
        opens[label] = SoftSet(u, c).as_dict()
    meta = dict(metadata or {})
    if sp.name and "name" not in meta:
        meta["name"] = sp.name
    out = {
        "format": FORMAT_VERSION,
        "universe": {"points": list(u.points), "parameters": list(u.parameters)},
        "opens": opens,
    }
    if meta:
        out["metadata"] = meta
    return out


def serialize_space(
    sp: SoftSpace,
    names: dict[int, str] | None = None,
    metadata: dict[str, Any] | None = None,
) -> str:
    return json.dumps(space_to_dict(sp, names, metadata), indent=2, ensure_ascii=False) + "\n"


def canonicalize(text: str, generate: bool = False) -> str:
    d = parse_document(text, generate)
    return serialize_space(d.space, d.names, d.metadata)


def parse_mapping(text: str, source: Universe, target: Universe) -> SoftMapping:
    """Parse a mapping document (``point_map`` and ``param_map`` label
    objects) between the given universes."""
    doc = _load(text)
    pm, em = doc.get("point_map"), doc.get("param_map")
    if not isinstance(pm, dict) or not isinstance(em, dict):
        raise DocumentError("mapping needs 'point_map' and 'param_map' objects")
    try:
        return SoftMapping.from_labels(source, target, pm, em)
    except UnknownLabelError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def serialize_mapping(m: SoftMapping, source: str = "", target: str = "") -> str:
    doc = {
        "format": FORMAT_VERSION,
        "source": source,
        "target": target,
        "point_map": m.point_label_map(),
        "param_map": m.param_label_map(),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize_reflection(r: Reflection) -> str:
    """The quotient as a space document; classes and the surjection go in
    the metadata."""
    meta = {
        "name": r.quotient.name or "reflection",
        "classes": {label: list(members) for label, members in zip(r.quotient.universe.points, r.classes)},
        "surjection": r.surjection.point_label_map(),
        "verified": r.verified,
    }
    return serialize_space(r.quotient, metadata=meta)
