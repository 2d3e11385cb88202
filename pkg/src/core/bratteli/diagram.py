"""
Bratteli diagrams as finite truncations with an optional stationary rule.

A diagram has levels 0..L-1 (size vectors) and steps 0..L-2 (multiplicity
matrices from level i to level i+1). When a square ``stationary`` matrix M is
given, the diagram continues forever past its last level: level i+1 has
sizes M . sizes(level i) and step i is M, for every i >= L-1. Levels beyond
the truncation are computed on demand and cached.

telescope keeps a subsequence of levels and multiplies the skipped steps
together; path_product is that product for one pair of levels.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.matcat.matrix_category import (
    AlgebraObject,
    Matrix,
    MultiplicityMorphism,
    as_integer_matrix,
    compose,
    identity,
    matrix_product,
)
from src.core.utils.errors import LevelRangeError, ShapeMismatchError, SpecValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BratteliDiagram:
    """
    Attributes:
        levels: Size vectors of the truncation, at least one.
        steps: One morphism per consecutive pair of levels.
        stationary: Optional square matrix continuing the diagram past its last level.
        require_nonzero_columns: Reject steps in which some summand maps nowhere.
    """

    levels: Tuple[AlgebraObject, ...]
    steps: Tuple[MultiplicityMorphism, ...]
    stationary: Optional[Matrix] = None
    require_nonzero_columns: bool = False
    _extension: Dict[int, AlgebraObject] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def __post_init__(self):
        levels = tuple(self.levels)
        steps = tuple(self.steps)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "steps", steps)
        if not levels:
            raise SpecValidationError("a diagram needs at least one level")
        if len(steps) != len(levels) - 1:
            raise ShapeMismatchError(f"{len(levels)} levels need {len(levels) - 1} steps, got {len(steps)}")
        for i, step in enumerate(steps):
            if step.source != levels[i] or step.target != levels[i + 1]:
                raise ShapeMismatchError(
                    f"step {i} goes {step.source.label} -> {step.target.label}, "
                    f"levels are {levels[i].label} -> {levels[i + 1].label}"
                )
        if self.stationary is not None:
            matrix = as_integer_matrix(self.stationary)
            object.__setattr__(self, "stationary", matrix)
            k = len(levels[-1])
            if len(matrix) != k or any(len(row) != k for row in matrix):
                raise ShapeMismatchError(f"stationary matrix must be {k}x{k} to continue {levels[-1].label}")
            if any(x < 0 for row in matrix for x in row):
                raise SpecValidationError("stationary matrix entries must be nonnegative")
            if any(not any(row) for row in matrix):
                raise SpecValidationError("stationary matrix has a zero row; the next level would have an empty summand")
        if self.require_nonzero_columns:
            self._check_nonzero_columns()

    def _check_nonzero_columns(self) -> None:
        problems = []
        for i, step in enumerate(self.steps):
            for c, column in enumerate(zip(*step.matrix)):
                if not any(column):
                    problems.append(f"summand {c} of level {i} maps nowhere")
        if self.stationary is not None:
            for c, column in enumerate(zip(*self.stationary)):
                if not any(column):
                    problems.append(f"summand {c} maps nowhere under the stationary matrix")
        if problems:
            raise SpecValidationError("diagram has zero columns", problems)

    @property
    def length(self) -> int:
        """Number of levels in the truncation."""
        return len(self.levels)

    @property
    def is_stationary(self) -> bool:
        return self.stationary is not None

    def has_level(self, i: int) -> bool:
        return 0 <= i < self.length or (i >= 0 and self.is_stationary)

    def level(self, i: int) -> AlgebraObject:
        """Level ``i``, extending past the truncation through the stationary matrix."""
        if 0 <= i < self.length:
            return self.levels[i]
        if i < 0 or not self.is_stationary:
            raise LevelRangeError(f"level {i} is outside the truncation of {self.length} levels")
        with self._lock:
            # extension levels are filled contiguously from index `length`
            last = self.length - 1 + len(self._extension)
            sizes = self._extension[last].sizes if last >= self.length else self.levels[-1].sizes
            for j in range(last + 1, i + 1):
                sizes = tuple(sum(m * n for m, n in zip(row, sizes)) for row in self.stationary)
                self._extension[j] = AlgebraObject(sizes)
            return self._extension[i]

    def step(self, i: int) -> MultiplicityMorphism:
        """The morphism from level i to level i+1."""
        if 0 <= i < len(self.steps):
            return self.steps[i]
        if i < 0 or not self.is_stationary:
            raise LevelRangeError(f"step {i} is outside the truncation of {self.length} levels")
        return MultiplicityMorphism(self.level(i), self.level(i + 1), self.stationary)


def stationary_diagram(matrix: Sequence[Sequence[int]], initial_sizes: Sequence[int],
                       length: int = 3) -> BratteliDiagram:
    """
    The diagram with every step equal to ``matrix``, starting from ``initial_sizes``.

    ``length`` levels are materialized; the rest follow from the stationary rule.
    """
    if length < 1:
        raise SpecValidationError("length must be at least 1")
    seed = BratteliDiagram((AlgebraObject(tuple(initial_sizes)),), (), stationary=matrix)
    levels = tuple(seed.level(i) for i in range(length))
    steps = tuple(seed.step(i) for i in range(length - 1))
    return BratteliDiagram(levels, steps, stationary=seed.stationary)


def path_product(d: BratteliDiagram, start: int, end: int) -> MultiplicityMorphism:
    """
    Composite of the steps from level ``start`` to level ``end``.

    Raises:
        LevelRangeError: If start > end or a level is unavailable.
    """
    if start > end:
        raise LevelRangeError(f"path from level {start} to earlier level {end}")
    result = identity(d.level(start))
    for i in range(start, end):
        result = compose(result, d.step(i))
    return result


def _matrix_power(matrix: Matrix, exponent: int) -> Matrix:
    result = tuple(tuple(1 if i == j else 0 for j in range(len(matrix))) for i in range(len(matrix)))
    for _ in range(exponent):
        result = matrix_product(matrix, result)
    return result


def telescope(d: BratteliDiagram, indices: Sequence[int]) -> BratteliDiagram:
    """
    Keep the levels at ``indices`` and join them by path products.

    When ``d`` is stationary and the last index is at or past the end of the
    truncation, the result is stationary with M^s, s being the last gap
    (1 for a single index).

    Raises:
        SpecValidationError: If ``indices`` is empty or not strictly increasing.
        LevelRangeError: If an index is unavailable.
    """
    indices = list(indices)
    if not indices:
        raise SpecValidationError("telescope needs at least one index")
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise SpecValidationError(f"telescope indices must be strictly increasing, got {indices}")
    levels = [d.level(i) for i in indices]
    steps = [path_product(d, a, b) for a, b in zip(indices, indices[1:])]
    stationary = None
    if d.is_stationary and indices[-1] >= d.length - 1:
        gap = indices[-1] - indices[-2] if len(indices) > 1 else 1
        stationary = _matrix_power(d.stationary, gap)
    logger.debug(f"Telescoped {d.length}-level diagram along {indices}")
    return BratteliDiagram(tuple(levels), tuple(steps), stationary=stationary,
                           require_nonzero_columns=d.require_nonzero_columns)


def to_dot(d: BratteliDiagram, name: str = "bratteli") -> str:
    """
    Layered DOT text: one rank per level, vertex label = summand size,
    one edge per nonzero multiplicity k labelled "×k".
    """
    lines: List[str] = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=circle];"]
    for i, level in enumerate(d.levels):
        vertices = " ".join(f'v{i}_{k} [label="{n}"];' for k, n in enumerate(level.sizes))
        lines.append(f"  {{ rank=same; {vertices} }}")
    for i, step in enumerate(d.steps):
        for j, row in enumerate(step.matrix):
            for k, multiplicity in enumerate(row):
                if multiplicity:
                    lines.append(f'  v{i}_{k} -> v{i + 1}_{j} [label="×{multiplicity}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
