"""
The combinatorial category of finite-dimensional algebras.

An object is a size vector (n_1, ..., n_k): the algebra M_{n_1} + ... + M_{n_k}.
A morphism a -> b is a nonnegative integer matrix M with one row per summand
of b and one column per summand of a, subject to M . a <= b componentwise;
entry M[j][i] counts how many times the i-th summand of a sits inside the
j-th summand of b. The morphism is unital when M . a = b.

Composition "f then g" is the matrix product g.matrix . f.matrix. Products
are computed with numpy object arrays, so entries stay exact Python ints.

export_as_spec turns every object with size sum at most a bound, and every
morphism between them, into a FiniteCategorySpec with trivial inner
families (morphisms here already are classes modulo inner automorphisms).
"""

import itertools
import logging
import re
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.categories.finite_category import (
    FiniteCategorySpec,
    LazyCompositionTable,
    MorphismId,
    ObjectId,
    iter_composable_pairs,
)
from src.core.utils.errors import ShapeMismatchError, SpecValidationError

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]


def is_integer_entry(x) -> bool:
    """True for Python and numpy integers; bools and floats are rejected."""
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


@dataclass(frozen=True)
class AlgebraObject:
    """A size vector of strictly positive integers."""

    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(self.sizes)
        if not sizes:
            raise SpecValidationError("an algebra object needs at least one summand")
        if any(not is_integer_entry(n) or n < 1 for n in sizes):
            raise SpecValidationError(f"summand sizes must be positive integers, got {list(sizes)}")
        object.__setattr__(self, "sizes", tuple(int(n) for n in sizes))

    def __len__(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def label(self) -> str:
        return "(" + ",".join(str(n) for n in self.sizes) + ")"

    def to_list(self) -> List[int]:
        return list(self.sizes)


def as_integer_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    try:
        matrix = tuple(tuple(row) for row in rows)
    except TypeError:
        raise SpecValidationError(f"a matrix must be a list of rows, got {rows!r}") from None
    bad = [x for row in matrix for x in row if not is_integer_entry(x)]
    if bad:
        raise SpecValidationError(f"matrix entries must be integers, got {bad[0]!r}")
    return tuple(tuple(int(x) for x in row) for row in matrix)


def matrix_product(left: Matrix, right: Matrix) -> Matrix:
    """``left . right`` with exact integer entries."""
    inner = len(left[0]) if left else 0
    if inner != len(right):
        raise ShapeMismatchError(f"cannot multiply a {len(left)}x{inner} matrix by a {len(right)}-row matrix")
    if not left:
        return ()
    product = np.dot(np.array(left, dtype=object), np.array(right, dtype=object))
    return as_integer_matrix(product.tolist())


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class MultiplicityMorphism:
    """
    A multiplicity matrix between two size vectors.

    Attributes:
        source: Object with n summands.
        target: Object with m summands.
        matrix: m x n nonnegative integers, rows indexed by target summands.
    """

    source: AlgebraObject
    target: AlgebraObject
    matrix: Matrix

    def __post_init__(self):
        matrix = as_integer_matrix(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        n, m = len(self.source), len(self.target)
        if len(matrix) != m or any(len(row) != n for row in matrix):
            raise ShapeMismatchError(
                f"{self.source.label} -> {self.target.label} needs a {m}x{n} matrix, got {[list(r) for r in matrix]}"
            )
        if any(x < 0 for row in matrix for x in row):
            raise SpecValidationError(f"multiplicities must be nonnegative: {[list(r) for r in matrix]}")
        used = self.used_sizes()
        if any(u > b for u, b in zip(used, self.target.sizes)):
            raise SpecValidationError(
                f"matrix {[list(r) for r in matrix]} sends {self.source.label} to {list(used)}, "
                f"exceeding {self.target.label}"
            )

    def used_sizes(self) -> Tuple[int, ...]:
        return tuple(sum(x * n for x, n in zip(row, self.source.sizes)) for row in self.matrix)

    @property
    def is_unital(self) -> bool:
        return self.used_sizes() == self.target.sizes

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=object).reshape(len(self.target), len(self.source))

    @property
    def label(self) -> str:
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.matrix)
        return f"{self.source.label}->{self.target.label}:[{rows}]"

    def to_dict(self) -> dict:
        return {
            "source": self.source.to_list(),
            "target": self.target.to_list(),
            "matrix": [list(row) for row in self.matrix],
            "unital": self.is_unital,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MultiplicityMorphism":
        """Inverse of to_dict; the ``unital`` key is recomputed, not read."""
        try:
            return cls(AlgebraObject(tuple(data["source"])), AlgebraObject(tuple(data["target"])), data["matrix"])
        except (KeyError, TypeError) as e:
            raise SpecValidationError(f"malformed morphism document: {e}")


def compose(f: MultiplicityMorphism, g: MultiplicityMorphism) -> MultiplicityMorphism:
    """
    ``f then g``: matrix g.matrix . f.matrix.

    Raises:
        ShapeMismatchError: If f's target is not g's source.
    """
    if f.target != g.source:
        raise ShapeMismatchError(f"cannot compose {f.label} with {g.label}")
    return MultiplicityMorphism(f.source, g.target, matrix_product(g.matrix, f.matrix))


def identity(a: AlgebraObject) -> MultiplicityMorphism:
    return MultiplicityMorphism(a, a, identity_matrix(len(a)))


def zero_morphism(a: AlgebraObject, b: AlgebraObject) -> MultiplicityMorphism:
    return MultiplicityMorphism(a, b, tuple(tuple(0 for _ in a.sizes) for _ in b.sizes))


def _admissible_rows(sizes: Sequence[int], bound: int, unital: bool) -> Iterator[Tuple[int, ...]]:
    """Rows r in lexicographic order with r . sizes <= bound (== bound when unital)."""
    ranges = [range(bound // n + 1) for n in sizes]
    for row in itertools.product(*ranges):
        used = sum(x * n for x, n in zip(row, sizes))
        if used > bound:
            continue
        if unital and used != bound:
            continue
        yield row


def enumerate_homs(a: AlgebraObject, b: AlgebraObject, unital: bool = False,
                   allow_zero: bool = True) -> List[MultiplicityMorphism]:
    """
    Every admissible matrix a -> b, lexicographically ordered (row by row, entries left to right).

    Args:
        a: Source object.
        b: Target object.
        unital: Keep only matrices with M . a = b.
        allow_zero: Keep the all-zero matrix (irrelevant when unital).
    """
    per_row = [list(_admissible_rows(a.sizes, bound, unital)) for bound in b.sizes]
    homs: List[MultiplicityMorphism] = []
    for rows in itertools.product(*per_row):
        f = MultiplicityMorphism(a, b, rows)
        if f.is_zero and not allow_zero:
            continue
        homs.append(f)
    logger.debug(f"{len(homs)} {'unital ' if unital else ''}homs {a.label} -> {b.label}")
    return homs


def hom_exists(a: AlgebraObject, b: AlgebraObject, unital: bool = False, allow_zero: bool = True) -> bool:
    """
    Whether some admissible matrix a -> b exists.

    Unital: every row must solve r . a = b_j exactly (per-row coin change).
    Non-unital: the zero matrix always works when allowed; otherwise some
    summand of a must fit inside some summand of b.
    """
    if unital:
        return all(any(True for _ in _admissible_rows(a.sizes, bound, True)) for bound in b.sizes)
    if allow_zero:
        return True
    return min(a.sizes) <= max(b.sizes)


def is_isomorphism(f: MultiplicityMorphism) -> bool:
    """True iff the matrix is a permutation matrix carrying the source sizes onto the target sizes."""
    if len(f.source) != len(f.target):
        return False
    for row in f.matrix:
        if sorted(row) != [0] * (len(row) - 1) + [1]:
            return False
    columns = list(zip(*f.matrix))
    if any(sum(col) != 1 for col in columns):
        return False
    return f.used_sizes() == f.target.sizes


def inverse(f: MultiplicityMorphism) -> Optional[MultiplicityMorphism]:
    """The inverse of an isomorphism (the transposed permutation matrix), else None."""
    if not is_isomorphism(f):
        return None
    return MultiplicityMorphism(f.target, f.source, tuple(zip(*f.matrix)))


def objects_up_to(size_bound: int) -> List[AlgebraObject]:
    """All size vectors with sum <= size_bound, by number of summands and then lexicographically."""
    if size_bound < 1:
        raise SpecValidationError(f"size_bound must be at least 1, got {size_bound}")
    objects: List[AlgebraObject] = []
    for length in range(1, size_bound + 1):
        for sizes in itertools.product(range(1, size_bound + 1), repeat=length):
            if sum(sizes) <= size_bound:
                objects.append(AlgebraObject(sizes))
    return objects


_MORPHISM_RE = re.compile(r"^\(([\d,]+)\)->\(([\d,]+)\):\[(.*)\]$")


def morphism_from_id(f: MorphismId) -> MultiplicityMorphism:
    """Parse an identifier such as ``"(1)->(1,1):[[1],[0]]"``."""
    match = _MORPHISM_RE.match(f)
    if not match:
        raise SpecValidationError(f"not a multiplicity-morphism identifier: {f!r}")
    source = AlgebraObject(tuple(int(x) for x in match.group(1).split(",")))
    target = AlgebraObject(tuple(int(x) for x in match.group(2).split(",")))
    rows = re.findall(r"\[([\d,]*)\]", match.group(3))
    matrix = tuple(tuple(int(x) for x in row.split(",") if x) for row in rows)
    return MultiplicityMorphism(source, target, matrix)


def export_as_spec(size_bound: int) -> FiniteCategorySpec:
    """
    The full subcategory on objects with size sum <= size_bound, as a FiniteCategorySpec.

    Object ids are size labels like ``"(1,2)"``; morphism ids are ``label`` strings.
    The composition table is computed lazily; inner families are the identities.
    Zero matrices are always included; composites such as ``[[0],[1]]`` then
    ``[[1,0]]`` are zero.
    """
    objects = objects_up_to(size_bound)
    ids: Tuple[ObjectId, ...] = tuple(a.label for a in objects)
    homs = {}
    for a in objects:
        for b in objects:
            members = tuple(f.label for f in enumerate_homs(a, b, unital=False, allow_zero=True))
            if members:
                homs[(a.label, b.label)] = members

    def composer(f: MorphismId, g: MorphismId) -> MorphismId:
        return compose(morphism_from_id(f), morphism_from_id(g)).label

    spec = FiniteCategorySpec(
        objects=ids,
        homs=homs,
        composition=LazyCompositionTable(composer, lambda: iter_composable_pairs(ids, homs)),
        identities={a.label: identity(a).label for a in objects},
        name=f"matcat({size_bound})",
    )
    logger.info(f"Exported matcat up to size {size_bound}: {len(ids)} objects, {spec.morphism_count()} morphisms")
    return spec
