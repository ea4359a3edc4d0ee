"""JSON documents for root data and deterministic JSON output."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Mapping

from . import linalg
from .root_datum import (CartanType, InvalidInput, LatticeSpec, RootDatum, RootSystem,
                         build_root_datum, gl_datum, product_root_system, sl_datum)


def _root_system(doc: Mapping) -> RootSystem:
    if "types" in doc:
        return product_root_system([str(t) for t in doc["types"]])
    try:
        return product_root_system([CartanType(str(doc["type"]).upper(), int(doc["rank"]))])
    except KeyError as exc:
        raise InvalidInput(f"root datum document lacks {exc.args[0]!r}") from None


def parse_lattice(value: Any, central_free_rank: int = 0) -> LatticeSpec:
    if value is None:
        return LatticeSpec("weight", (), central_free_rank)
    if isinstance(value, str):
        return LatticeSpec(value, (), central_free_rank)
    if isinstance(value, Mapping) and "generators" in value:
        gens = tuple(tuple(int(v) for v in row) for row in value["generators"])
        return LatticeSpec("intermediate", gens, central_free_rank)
    raise InvalidInput(f"cannot interpret character lattice {value!r}")


def parse_datum(doc: Mapping | str) -> RootDatum:
    """Root datum from a document.

    Accepted shapes: ``{"type", "rank", "char_lattice", "central_free_rank"}``,
    ``{"types": [...], ...}`` for products, ``{"group": "GL"|"SL", "n": k}``, and
    explicit ``{"type", "rank" | "types", "roots": [...], "coroots": [...]}``.
    """
    if isinstance(doc, str):
        return parse_datum(json.loads(doc))
    if not isinstance(doc, Mapping):
        raise InvalidInput("root datum document must be a JSON object")
    if "group" in doc:
        group, n = str(doc["group"]).upper(), int(doc.get("n", 0))
        if group == "GL":
            return gl_datum(n)
        if group == "SL":
            return sl_datum(n)
        raise InvalidInput(f"unknown group {group!r}")
    rs = _root_system(doc)
    if "roots" in doc or "coroots" in doc:
        return RootDatum.explicit(rs, doc.get("roots", []), doc.get("coroots", []),
                                  name=str(doc.get("name", "")))
    spec = parse_lattice(doc.get("char_lattice"), int(doc.get("central_free_rank", 0)))
    return build_root_datum(rs, spec, name=str(doc.get("name", "")))


def datum_to_doc(datum: RootDatum) -> dict:
    rs = datum.root_system
    doc: dict = {"types": [str(t) for t in rs.components]}
    spec = datum.char_lattice
    if spec is None:
        doc["roots"] = [list(v) for v in datum.roots_x]
        doc["coroots"] = [list(v) for v in datum.coroots_x]
        doc["dim"] = datum.dim
    else:
        if spec.name == "intermediate":
            doc["char_lattice"] = {"generators": [list(g) for g in spec.generators]}
        else:
            doc["char_lattice"] = spec.name.replace("_lattice", "")
        doc["central_free_rank"] = spec.central_free_rank
    return doc


def _default(obj):
    if isinstance(obj, Fraction):
        return linalg.fmt_fraction(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int | None = 2) -> str:
    """Canonical JSON: sorted keys, fractions as "p/q"."""
    return json.dumps(obj, sort_keys=True, indent=indent, default=_default, ensure_ascii=False)


def cache_key(*parts: Any) -> str:
    return hashlib.sha256(dumps(list(parts), indent=None).encode()).hexdigest()
