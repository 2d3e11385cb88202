"""
JSON documents for finite category specs.

Schema::

    {
      "name": "injections(2)",
      "objects": ["set1", "set2"],
      "identities": {"set1": "...", "set2": "..."},
      "homs": [{"source": "set1", "target": "set2", "morphisms": ["...", "..."]}, ...],
      "compose": [["f", "g", "f then g"], ...],
      "inner": {"set1": ["..."], "set2": ["...", "..."]}
    }

``homs`` lists nonempty hom-sets in object order; ``compose`` lists every
composable pair in hom-set order. Output is ``json.dumps(sort_keys=True,
indent=2)`` plus a trailing newline, so load followed by save reproduces a
saved file byte for byte.
"""

import json
import logging
from typing import Any, Dict

from src.core.categories.finite_category import FiniteCategorySpec
from src.core.utils.errors import SpecValidationError

logger = logging.getLogger(__name__)

_REQUIRED_KEYS = ("objects", "identities", "homs", "compose")


def spec_to_dict(spec: FiniteCategorySpec) -> Dict[str, Any]:
    homs = [
        {"source": a, "target": b, "morphisms": list(spec.hom(a, b))}
        for a in spec.objects
        for b in spec.objects
        if spec.hom(a, b)
    ]
    return {
        "name": spec.name,
        "objects": list(spec.objects),
        "identities": {a: spec.identities[a] for a in spec.objects if a in spec.identities},
        "homs": homs,
        "compose": [[f, g, spec.compose(f, g)] for f, g in spec.composable_pairs()],
        "inner": {a: list(spec.inner[a]) for a in spec.objects},
    }


def spec_from_dict(data: Dict[str, Any]) -> FiniteCategorySpec:
    """
    Build a spec from a decoded JSON document.

    Raises:
        SpecValidationError: If a required key is missing or an entry has the wrong shape.
    """
    if not isinstance(data, dict):
        raise SpecValidationError("spec document must be a JSON object")
    missing = [key for key in _REQUIRED_KEYS if key not in data]
    if missing:
        raise SpecValidationError(f"spec document is missing {missing}")
    try:
        return _build_spec(data)
    except SpecValidationError:
        raise
    except (TypeError, KeyError, AttributeError, ValueError) as e:
        raise SpecValidationError(f"malformed spec document: {type(e).__name__}: {e}") from e


def _build_spec(data: Dict[str, Any]) -> FiniteCategorySpec:
    homs = {}
    for entry in data["homs"]:
        try:
            homs[(entry["source"], entry["target"])] = tuple(entry["morphisms"])
        except (KeyError, TypeError):
            raise SpecValidationError(f"malformed hom entry: {entry!r}")
    composition = {}
    for entry in data["compose"]:
        if not isinstance(entry, list) or len(entry) != 3:
            raise SpecValidationError(f"compose entries are [f, g, composite], got {entry!r}")
        composition[(entry[0], entry[1])] = entry[2]
    if isinstance(data["objects"], (str, dict)) or not isinstance(data["identities"], dict):
        raise SpecValidationError("objects must be a list and identities an object")
    return FiniteCategorySpec(
        objects=tuple(data["objects"]),
        homs=homs,
        composition=composition,
        identities=dict(data["identities"]),
        inner={a: tuple(v) for a, v in data.get("inner", {}).items()},
        name=data.get("name", ""),
    )


def dumps_spec(spec: FiniteCategorySpec) -> str:
    return json.dumps(spec_to_dict(spec), sort_keys=True, indent=2) + "\n"


def load_spec(path: str) -> FiniteCategorySpec:
    """Read a spec file (the category laws are not checked here; see validate_category)."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as e:
            raise SpecValidationError(f"{path} is not valid JSON: {e}")
    spec = spec_from_dict(data)
    logger.info(f"Loaded spec {spec.name or path}: {len(spec.objects)} objects, {spec.morphism_count()} morphisms")
    return spec


def save_spec(spec: FiniteCategorySpec, path: str) -> None:
    """Write ``spec`` in canonical form; lazily computed tables are filled in."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_spec(spec))
    logger.info(f"Saved spec {spec.name or '<unnamed>'} to {path}")
