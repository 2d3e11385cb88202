"""
Finite-stage queries on the dimension group of a Bratteli diagram.

An element is a pair (level, integer vector); (i, v) and (i + 1, M_i v) name
the same element. Equality and positivity are searched level by level up to
a depth. The answers are tri-state (True / False / None):

- True as soon as a level within the depth settles the question;
- False only when the stationary rule proves it: for equality, a stationary
  matrix with nonzero determinant keeps distinct images distinct forever;
  for positivity, a strictly positive stationary matrix keeps a nonzero
  nonpositive image strictly negative forever;
- None otherwise.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from sympy import Matrix as SymMatrix

from src.core.bratteli.diagram import BratteliDiagram, path_product
from src.core.matcat.matrix_category import is_integer_entry
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import ShapeMismatchError, SpecValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class K0Element:
    """An integer vector at a level of a diagram (signs unrestricted)."""

    level: int
    vector: Tuple[int, ...]

    def __post_init__(self):
        if not is_integer_entry(self.level) or self.level < 0:
            raise SpecValidationError(f"K0 level must be a nonnegative integer, got {self.level!r}")
        vector = tuple(self.vector)
        if not all(is_integer_entry(x) for x in vector):
            raise SpecValidationError(f"K0 vector entries must be integers, got {list(vector)}")
        object.__setattr__(self, "vector", tuple(int(x) for x in vector))

    def to_dict(self) -> dict:
        return {"level": self.level, "vector": list(self.vector)}


def push_forward(d: BratteliDiagram, x: K0Element, level: int) -> Tuple[int, ...]:
    """The vector representing ``x`` at ``level`` (>= x.level)."""
    if len(x.vector) != len(d.level(x.level)):
        raise ShapeMismatchError(
            f"vector of length {len(x.vector)} at level {x.level}, which has {len(d.level(x.level))} summands"
        )
    matrix = path_product(d, x.level, level).as_array()
    image = np.dot(matrix, np.array(x.vector, dtype=object).reshape(-1, 1))
    return tuple(int(v) for v in image.reshape(-1).tolist())


def _stationary_start(d: BratteliDiagram, level: int) -> int:
    """First level at or after ``level`` from which every step is the stationary matrix."""
    return max(level, d.length - 1)


def k0_equal(d: BratteliDiagram, x: K0Element, y: K0Element, depth: Optional[int] = None,
             config: Optional[ToolkitConfig] = None) -> Optional[bool]:
    """
    Whether x and y name the same dimension-group element.

    Args:
        d: The diagram.
        x, y: Elements at any available levels.
        depth: Largest level examined (defaults to ToolkitConfig.k0_depth).
        config: Supplies the default depth.
    """
    depth = resolve_config(config).k0_depth if depth is None else depth
    start = max(x.level, y.level)
    for j in range(start, depth + 1):
        if not d.has_level(j):
            break
        if push_forward(d, x, j) == push_forward(d, y, j):
            logger.debug(f"K0 elements agree at level {j}")
            return True
    if d.is_stationary:
        j = _stationary_start(d, start)
        if push_forward(d, x, j) == push_forward(d, y, j):
            return True
        if SymMatrix(d.stationary).det() != 0:
            return False
    return None


def k0_positive(d: BratteliDiagram, x: K0Element, depth: Optional[int] = None,
                config: Optional[ToolkitConfig] = None) -> Optional[bool]:
    """Whether some level gives ``x`` a componentwise nonnegative representative."""
    depth = resolve_config(config).k0_depth if depth is None else depth
    strictly_positive = d.is_stationary and all(v > 0 for row in d.stationary for v in row)
    stationary_from = _stationary_start(d, x.level)
    for j in range(x.level, max(depth, stationary_from) + 1):
        if not d.has_level(j):
            break
        image = push_forward(d, x, j)
        if all(v >= 0 for v in image):
            return True
        if strictly_positive and j >= stationary_from and all(v <= 0 for v in image):
            return False
    return None
