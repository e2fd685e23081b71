"""JSON encoding of posets, lattices, closure spaces, resolutions and morphisms.

Subsets are written as sorted name lists, except in resolution tables where
the key is the comma-joined sorted subset ("" for the empty set).  Every
document carries a ``"type"`` field on output; on input it is optional and
inferred from the keys when absent.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from ._bits import names_of
from .closure import ClosureSpace, closed_set_lattice, space_from_sets
from .errors import UsageError
from .order import CompleteLattice, FinitePoset, LatticeMap, as_complete_lattice, validate_poset
from .quantum import Ortholattice, validate_ortholattice
from .resolution import Resolution, resolution_from_factors, validate_resolution
from .transitions import Kind, PossibleTransition, PropertyTransition


def _hasse(P: FinitePoset) -> list[list[str]]:
    from .dot import hasse_edges

    return [[a, b] for a, b in hasse_edges(P)]


def poset_to_json(P: FinitePoset | CompleteLattice) -> dict:
    if isinstance(P, CompleteLattice):
        return {"type": "lattice", "elements": list(P.elements), "le": _hasse(P.poset)}
    return {"type": "poset", "elements": list(P.elements), "le": _hasse(P)}


def poset_from_json(doc: Mapping) -> FinitePoset:
    try:
        return validate_poset(doc["elements"], [tuple(p) for p in doc.get("le", [])])
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed poset document: {e}") from None


def lattice_from_json(doc: Mapping) -> CompleteLattice:
    return as_complete_lattice(poset_from_json(doc))


def ortholattice_to_json(ol: Ortholattice) -> dict:
    doc = poset_to_json(ol.lattice)
    doc["type"] = "ortholattice"
    doc["ortho"] = dict(zip(ol.lattice.elements, ol.ortho))
    return doc


def ortholattice_from_json(doc: Mapping) -> Ortholattice:
    return validate_ortholattice(lattice_from_json(doc), doc["ortho"])


def space_to_json(space: ClosureSpace) -> dict:
    closed = [names_of(F, space.universe) for F in sorted(space.closed)]
    return {"type": "space", "universe": list(space.universe), "closed": closed}


def space_from_json(doc: Mapping) -> ClosureSpace:
    try:
        return space_from_sets(doc["universe"], doc["closed"])
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed space document: {e}") from None


def _key(mask: int, sigma) -> str:
    return ",".join(sorted(names_of(mask, sigma)))


def resolution_to_json(res: Resolution) -> dict:
    return {
        "type": "resolution",
        "sigma": list(res.sigma),
        "lattice": poset_to_json(res.target),
        "table": {_key(T, res.sigma): res.table[T] for T in range(1 << len(res.sigma))},
        "strict": res.strict,
    }


def resolution_from_json(doc: Mapping, strict: bool | None = None) -> Resolution:
    """Table form, or factored form ``{"space", "theta", "lattice"}``.

    ``strict`` overrides the document's own flag when given.
    """
    if strict is None:
        strict = doc.get("strict")
    if "space" in doc:
        space = space_from_json(doc["space"])
        by_label = {space.label(F): F for F in space.closed}
        theta = {}
        for k, v in doc["theta"].items():
            if k not in by_label:
                raise UsageError(f"{k!r} is not a closed set", witness=k)
            theta[by_label[k]] = v
        target = _target(doc) if ("lattice" in doc or "target" in doc) else closed_set_lattice(space).poset
        return resolution_from_factors(space, theta, target, strict)
    try:
        sigma = list(doc["sigma"])
        target = _target(doc)
        raw = doc["table"]
    except (KeyError, TypeError) as e:
        raise UsageError(f"malformed resolution document: {e}") from None
    index = {p: i for i, p in enumerate(sigma)}
    table = {}
    for k, v in raw.items():
        names = [x.strip() for x in k.split(",") if x.strip()]
        unknown = [x for x in names if x not in index]
        if unknown:
            raise UsageError(f"unknown states {unknown} in table key {k!r}", witness=unknown)
        table[sum(1 << index[x] for x in set(names))] = v
    return validate_resolution(sigma, target, table, True if strict is None else bool(strict))


def _target(doc: Mapping) -> FinitePoset:
    return poset_from_json(doc["lattice"] if "lattice" in doc else doc["target"])


def transition_to_json(f: PossibleTransition, kind: Kind | str | None = None) -> dict:
    doc: dict[str, Any] = {"type": "transition", "map": f.as_mapping()}
    if kind is not None:
        doc["kind"] = Kind(kind).value
    return doc


def transition_from_json(doc: Mapping, source: Resolution, target: Resolution) -> PossibleTransition:
    return PossibleTransition.from_mapping(source, target, doc["map"])


def property_to_json(g: PropertyTransition, kind: Kind | str | None = None) -> dict:
    doc: dict[str, Any] = {"type": "property-transition", "map": g.as_mapping()}
    if kind is not None:
        doc["kind"] = Kind(kind).value
    return doc


def property_from_json(doc: Mapping, source: Resolution, target: Resolution) -> PropertyTransition:
    return PropertyTransition.from_mapping(source, target, doc["map"])


def lattice_map_to_json(g: LatticeMap) -> dict:
    return {"type": "lattice-map", "map": g.as_dict()}


def lattice_map_from_json(doc: Mapping, L1: CompleteLattice, L2: CompleteLattice) -> LatticeMap:
    return LatticeMap.from_mapping(L1, L2, doc["map"])


def detect_kind(doc: Mapping) -> str:
    """Document type: explicit ``"type"`` or inferred from the keys."""
    if not isinstance(doc, Mapping):
        raise UsageError("top-level JSON value must be an object")
    if "type" in doc:
        return doc["type"]
    if "ortho" in doc:
        return "ortholattice"
    if "sigma" in doc or "theta" in doc:
        return "resolution"
    if "universe" in doc:
        return "space"
    if "elements" in doc:
        return "poset"
    if "map" in doc:
        vals = list(doc["map"].values())
        if "kind" in doc and Kind(doc["kind"]).on_states or any(isinstance(v, list) for v in vals):
            return "transition"
        return "property-transition"
    raise UsageError("cannot tell what kind of structure this is", witness=sorted(doc))


def load(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e})") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
