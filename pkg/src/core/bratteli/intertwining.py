"""
Exact zig-zag intertwinings between two Bratteli diagrams.

A witness consists of levels i_0 < i_1 < ... of D and j_0 < j_1 < ... of E,
down matrices R_k: D(i_k) -> E(j_k) and up matrices S_k: E(j_k) -> D(i_{k+1}),
such that every triangle commutes:

    R_k then S_k     = D's path product from i_k to i_{k+1}
    S_k then R_{k+1} = E's path product from j_k to j_{k+1}

Every R_k and S_k must itself be an admissible multiplicity matrix. With K
up matrices the witness has K or K+1 down matrices; the zero-segment witness
is i = (0,), j = (0,), down = (identity,), up = () and needs the two first
levels to coincide.

find_intertwining searches depth-first over (j_k, R_k, i_{k+1}, S_k) in
lexicographic order. Once R_k is fixed, the equation for S_k splits into one
independent equation per row (row . R_k = a row of the path product), and
likewise for R_{k+1} given S_k, so rows are solved separately by bounded
backtracking and then combined in row-major order.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from src.core.bratteli.diagram import BratteliDiagram, path_product
from src.core.matcat.matrix_category import Matrix, identity_matrix, matrix_product
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import ShapeMismatchError, SpecValidationError

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntertwiningWitness:
    """Zig-zag data; ``down[k]`` maps D(i[k]) -> E(j[k]) and ``up[k]`` maps E(j[k]) -> D(i[k+1])."""

    i: Tuple[int, ...]
    j: Tuple[int, ...]
    down: Tuple[Matrix, ...]
    up: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "i", tuple(self.i))
        object.__setattr__(self, "j", tuple(self.j))
        object.__setattr__(self, "down", tuple(tuple(tuple(row) for row in m) for m in self.down))
        object.__setattr__(self, "up", tuple(tuple(tuple(row) for row in m) for m in self.up))

    @property
    def segments(self) -> int:
        return len(self.up)

    def to_dict(self) -> dict:
        return {
            "i": list(self.i),
            "j": list(self.j),
            "down": [[list(row) for row in m] for m in self.down],
            "up": [[list(row) for row in m] for m in self.up],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IntertwiningWitness":
        try:
            return cls(data["i"], data["j"], data["down"], data["up"])
        except (KeyError, TypeError) as e:
            raise SpecValidationError(f"malformed witness document: {e}")


def _shape(m: Matrix) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def _admissible(m: Matrix, source_sizes: Sequence[int], target_sizes: Sequence[int]) -> bool:
    if any(x < 0 for row in m for x in row):
        return False
    return all(sum(x * n for x, n in zip(row, source_sizes)) <= cap for row, cap in zip(m, target_sizes))


def intertwining_violations(d: BratteliDiagram, e: BratteliDiagram, w: IntertwiningWitness) -> List[str]:
    """
    Every failed condition of ``w``, as readable strings.

    Raises:
        ShapeMismatchError: If the index lists, matrix counts or matrix shapes do not fit together.
    """
    K = w.segments
    if len(w.i) != K + 1:
        raise ShapeMismatchError(f"{K} up matrices need {K + 1} D-levels, got {len(w.i)}")
    if len(w.down) not in (K, K + 1) or len(w.down) == 0:
        raise ShapeMismatchError(f"{K} up matrices need {max(K, 1)} or {K + 1} down matrices, got {len(w.down)}")
    if len(w.j) != len(w.down):
        raise ShapeMismatchError(f"{len(w.down)} down matrices need as many E-levels, got {len(w.j)}")
    for k, (i, j) in enumerate(zip(w.i, w.j)):
        rows, cols = _shape(w.down[k])
        if (rows, cols) != (len(e.level(j)), len(d.level(i))):
            raise ShapeMismatchError(f"down[{k}] is {rows}x{cols}, D({i}) -> E({j}) needs "
                                     f"{len(e.level(j))}x{len(d.level(i))}")
    for k in range(K):
        rows, cols = _shape(w.up[k])
        target, source = d.level(w.i[k + 1]), e.level(w.j[k])
        if (rows, cols) != (len(target), len(source)):
            raise ShapeMismatchError(f"up[{k}] is {rows}x{cols}, E({w.j[k]}) -> D({w.i[k + 1]}) needs "
                                     f"{len(target)}x{len(source)}")

    problems: List[str] = []
    if any(b <= a for a, b in zip(w.i, w.i[1:])):
        problems.append(f"D-levels {list(w.i)} are not strictly increasing")
    if any(b <= a for a, b in zip(w.j, w.j[1:])):
        problems.append(f"E-levels {list(w.j)} are not strictly increasing")
    if K == 0:
        if d.level(w.i[0]) != e.level(w.j[0]) or w.down[0] != identity_matrix(len(d.level(w.i[0]))):
            problems.append("a zero-segment witness must be the identity between equal levels")
        return problems

    for k, (i, j) in enumerate(zip(w.i, w.j)):
        if not _admissible(w.down[k], d.level(i).sizes, e.level(j).sizes):
            problems.append(f"down[{k}] is not admissible D({i}) -> E({j})")
    for k in range(K):
        if not _admissible(w.up[k], e.level(w.j[k]).sizes, d.level(w.i[k + 1]).sizes):
            problems.append(f"up[{k}] is not admissible E({w.j[k]}) -> D({w.i[k + 1]})")
    if problems:
        return problems

    for k in range(K):
        expected = path_product(d, w.i[k], w.i[k + 1]).matrix
        if matrix_product(w.up[k], w.down[k]) != expected:
            problems.append(f"down[{k}] then up[{k}] differs from D's path {w.i[k]} -> {w.i[k + 1]}")
        if k + 1 < len(w.down):
            expected = path_product(e, w.j[k], w.j[k + 1]).matrix
            if matrix_product(w.down[k + 1], w.up[k]) != expected:
                problems.append(f"up[{k}] then down[{k + 1}] differs from E's path {w.j[k]} -> {w.j[k + 1]}")
    return problems


def check_intertwining(d: BratteliDiagram, e: BratteliDiagram, w: IntertwiningWitness) -> bool:
    """True iff every triangle of ``w`` commutes exactly (ShapeMismatchError on inconsistent shapes)."""
    return not intertwining_violations(d, e, w)


def _row_solutions(coefficients: Optional[Matrix], target: Optional[Sequence[int]], sizes: Sequence[int],
                   cap: int, entry_bound: int) -> Iterator[Tuple[int, ...]]:
    """
    Rows x in lexicographic order with entries in 0..entry_bound, x . sizes <= cap,
    and x . coefficients = target when coefficients are given.
    """
    p = len(sizes)
    width = len(target) if target is not None else 0
    row = [0] * p

    def extend(t: int, acc: Tuple[int, ...], used: int) -> Iterator[Tuple[int, ...]]:
        if t == p:
            if coefficients is None or list(acc) == list(target):
                yield tuple(row)
            return
        for x in range(entry_bound + 1):
            new_used = used + x * sizes[t]
            if new_used > cap:
                break
            if coefficients is not None:
                new_acc = tuple(a + x * c for a, c in zip(acc, coefficients[t]))
                if any(a > b for a, b in zip(new_acc, target)):
                    break
            else:
                new_acc = acc
            row[t] = x
            yield from extend(t + 1, new_acc, new_used)
        row[t] = 0

    yield from extend(0, tuple([0] * width), 0)


def _matrices(per_row: List[List[Tuple[int, ...]]]) -> Iterator[Matrix]:
    if any(not options for options in per_row):
        return iter(())
    return itertools.product(*per_row)


def find_intertwining(d: BratteliDiagram, e: BratteliDiagram, depth: Optional[int] = None,
                      level_bound: Optional[int] = None, entry_bound: Optional[int] = None,
                      config: Optional[ToolkitConfig] = None) -> Optional[IntertwiningWitness]:
    """
    First witness with exactly ``depth`` segments, with i_0 = 0.

    Args:
        d, e: The diagrams.
        depth: Number of up matrices (defaults to ToolkitConfig.intertwining_depth).
        level_bound: Largest level index used in either diagram.
        entry_bound: Largest matrix entry tried.
        config: Supplies the defaults.

    Returns:
        Optional[IntertwiningWitness]: The lexicographically first witness, or None when the bounds are exhausted.
    """
    cfg = resolve_config(config)
    depth = cfg.intertwining_depth if depth is None else depth
    level_bound = cfg.level_bound if level_bound is None else level_bound
    entry_bound = cfg.entry_bound if entry_bound is None else entry_bound
    if depth < 1 or level_bound < 1 or entry_bound < 1:
        raise SpecValidationError("depth, level_bound and entry_bound must be positive")
    logger.info(f"Searching intertwinings: depth {depth}, levels <= {level_bound}, entries <= {entry_bound}")

    def choose_down(i_list: List[int], j_list: List[int], downs: List[Matrix],
                    ups: List[Matrix]) -> Optional[IntertwiningWitness]:
        k = len(downs)
        source = d.level(i_list[-1])
        start = 0 if k == 0 else j_list[-1] + 1
        for j in range(start, level_bound + 1):
            if not e.has_level(j):
                break
            target = e.level(j)
            if k == 0:
                per_row = [list(_row_solutions(None, None, source.sizes, cap, entry_bound)) for cap in target.sizes]
            else:
                expected = path_product(e, j_list[-1], j).matrix
                per_row = [
                    list(_row_solutions(ups[-1], expected[r], source.sizes, cap, entry_bound))
                    for r, cap in enumerate(target.sizes)
                ]
            for down in _matrices(per_row):
                found = choose_up(i_list, j_list + [j], downs + [down], ups)
                if found is not None:
                    return found
        return None

    def choose_up(i_list: List[int], j_list: List[int], downs: List[Matrix],
                  ups: List[Matrix]) -> Optional[IntertwiningWitness]:
        source = e.level(j_list[-1])
        for i in range(i_list[-1] + 1, level_bound + 1):
            if not d.has_level(i):
                break
            target = d.level(i)
            expected = path_product(d, i_list[-1], i).matrix
            per_row = [
                list(_row_solutions(downs[-1], expected[r], source.sizes, cap, entry_bound))
                for r, cap in enumerate(target.sizes)
            ]
            for up in _matrices(per_row):
                if len(ups) + 1 == depth:
                    return IntertwiningWitness(tuple(i_list + [i]), tuple(j_list), tuple(downs), tuple(ups + [up]))
                found = choose_down(i_list + [i], j_list, downs, ups + [up])
                if found is not None:
                    return found
        return None

    witness = choose_down([0], [], [], [])
    if witness is None:
        logger.info("No intertwining within the bounds")
    else:
        logger.info(f"Found intertwining along D-levels {list(witness.i)} and E-levels {list(witness.j)}")
    return witness
