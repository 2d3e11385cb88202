"""
JSON documents for Bratteli diagrams.

    {"levels": [[1], [2], [4]], "steps": [[[2]], [[2]]], "stationary": [[2]]}

``stationary`` is optional (null or absent for a plain truncation) and
``require_nonzero_columns`` may be set to true for classical diagrams.
Output is canonical: sorted keys, two-space indent, trailing newline.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from src.core.bratteli.diagram import BratteliDiagram
from src.core.matcat.matrix_category import AlgebraObject, MultiplicityMorphism
from src.core.utils.errors import SpecValidationError

logger = logging.getLogger(__name__)


def diagram_to_dict(d: BratteliDiagram) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "levels": [level.to_list() for level in d.levels],
        "steps": [[list(row) for row in step.matrix] for step in d.steps],
        "stationary": None if d.stationary is None else [list(row) for row in d.stationary],
    }
    if d.require_nonzero_columns:
        data["require_nonzero_columns"] = True
    return data


def diagram_from_dict(data: Dict[str, Any]) -> BratteliDiagram:
    """
    Build a diagram from its JSON document.

    Raises:
        SpecValidationError: If keys are missing or the matrices do not fit the levels.
    """
    if not isinstance(data, dict):
        raise SpecValidationError(f"a diagram document must be an object, got {type(data).__name__}")
    missing = [key for key in ("levels", "steps") if key not in data]
    if missing:
        raise SpecValidationError(f"diagram document is missing {', '.join(missing)}", missing)
    try:
        levels = tuple(AlgebraObject(tuple(sizes)) for sizes in data["levels"])
        steps = tuple(
            MultiplicityMorphism(levels[i], levels[i + 1], matrix)
            for i, matrix in enumerate(data["steps"])
            if i + 1 < len(levels)
        )
        if len(steps) != len(data["steps"]):
            raise SpecValidationError(
                f"{len(levels)} levels need {max(len(levels) - 1, 0)} steps, got {len(data['steps'])}"
            )
        return BratteliDiagram(
            levels,
            steps,
            stationary=data.get("stationary"),
            require_nonzero_columns=bool(data.get("require_nonzero_columns", False)),
        )
    except SpecValidationError:
        raise
    except (TypeError, KeyError, AttributeError) as e:
        raise SpecValidationError(f"malformed diagram document: {type(e).__name__}: {e}") from e


def dumps_diagram(d: BratteliDiagram) -> str:
    return json.dumps(diagram_to_dict(d), sort_keys=True, indent=2) + "\n"


def load_diagram(path: Union[str, Path]) -> BratteliDiagram:
    """Read a diagram document; invalid JSON is reported as SpecValidationError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecValidationError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
    d = diagram_from_dict(data)
    logger.debug(f"Loaded {d.length}-level diagram from {path}")
    return d


def save_diagram(d: BratteliDiagram, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_diagram(d), encoding="utf-8")
