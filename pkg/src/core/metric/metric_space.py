"""
Metrics on finite hom-sets.

weighted_disagreement_metric numbers the domain elements 1, 2, 3, ... and
charges 2^-n for every element n on which two maps disagree, so the total
mass is below 1 and equal maps are at distance 0. Values are exact
fractions.

A MetricHomSpace bundles one hom-set of a FiniteCategorySpec with a distance
and the codomain-side action of inner automorphisms, which is what the
isometry check and the approximate-intertwining loop need. On a finite set
every metric is complete, so completeness is never checked.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from src.core.categories.finite_category import FiniteCategorySpec, ObjectId
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import CapExceededError, SpecValidationError

logger = logging.getLogger(__name__)

Distance = Callable[[Hashable, Hashable], Fraction]
MapLike = Union[Mapping, Callable]


def _evaluate(phi: MapLike, x) -> Hashable:
    if isinstance(phi, Mapping):
        return phi[x]
    return phi(x)


def weighted_disagreement_metric(enumeration: Sequence[Hashable],
                                 domain: Optional[Sequence[Hashable]] = None) -> Callable[[MapLike, MapLike], Fraction]:
    """
    d(phi, psi) = sum of 2^-n(x) over domain elements x with phi(x) != psi(x).

    Args:
        enumeration: The domain elements in numbering order; the first one is numbered 1.
        domain: When given, the enumeration must list exactly these elements.

    Returns:
        Callable: A distance on maps given as mappings or callables.

    Raises:
        SpecValidationError: If the enumeration repeats an element or misses part of ``domain``.
    """
    elements = list(enumeration)
    if len(set(elements)) != len(elements):
        raise SpecValidationError("domain enumeration repeats an element")
    if domain is not None and set(domain) != set(elements):
        raise SpecValidationError("domain enumeration is not a bijection onto the domain")
    weights = [(x, Fraction(1, 2 ** (i + 1))) for i, x in enumerate(elements)]

    def distance(phi: MapLike, psi: MapLike) -> Fraction:
        total = Fraction(0)
        for x, weight in weights:
            if _evaluate(phi, x) != _evaluate(psi, x):
                total += weight
        return total

    return distance


def discrete_metric(u: Hashable, v: Hashable) -> Fraction:
    """0 for equal points, 1 otherwise."""
    return Fraction(0) if u == v else Fraction(1)


@dataclass(frozen=True)
class MetricHomSpace:
    """
    A finite hom-set with a distance and the codomain-side action of inner automorphisms.

    Attributes:
        source / target: The objects of the hom-set.
        points: The morphisms, in hom-set order.
        distance: Rational-valued distance on points.
        post_compose: (u, k) -> u then k for k an inner automorphism of ``target``.
    """

    source: ObjectId
    target: ObjectId
    points: Tuple[Hashable, ...]
    distance: Distance
    post_compose: Callable[[Hashable, Hashable], Hashable]

    @classmethod
    def from_spec(cls, spec: FiniteCategorySpec, a: ObjectId, b: ObjectId,
                  distance: Distance = discrete_metric) -> "MetricHomSpace":
        return cls(a, b, spec.hom(a, b), distance, spec.compose)


@dataclass(frozen=True)
class MetricViolation:
    axiom: str
    points: Tuple[Hashable, ...]
    detail: str


@dataclass(frozen=True)
class IsometryViolation:
    """u then k and v then k are at a different distance than u and v."""

    inner_element: Hashable
    u: Hashable
    v: Hashable
    before: Fraction
    after: Fraction


def metric_axiom_violations(space: MetricHomSpace, config: Optional[ToolkitConfig] = None) -> List[MetricViolation]:
    """
    Exhaustive check of identity of indiscernibles, symmetry and the triangle inequality.

    Raises:
        CapExceededError: If the number of ordered pairs exceeds ToolkitConfig.metric_pair_limit.
    """
    cfg = resolve_config(config)
    points = space.points
    if len(points) ** 2 > cfg.metric_pair_limit:
        raise CapExceededError(
            f"hom({space.source}, {space.target}) has {len(points) ** 2} pairs, limit {cfg.metric_pair_limit}"
        )
    table = [[space.distance(u, v) for v in points] for u in points]
    violations: List[MetricViolation] = []
    for i, u in enumerate(points):
        for j, v in enumerate(points):
            d = table[i][j]
            if d < 0:
                violations.append(MetricViolation("nonnegativity", (u, v), f"d = {d}"))
            if (d == 0) != (i == j):
                violations.append(MetricViolation("identity", (u, v), f"d = {d}"))
            if d != table[j][i]:
                violations.append(MetricViolation("symmetry", (u, v), f"{d} != {table[j][i]}"))
    n = len(points)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[i][k] > table[i][j] + table[j][k]:
                    violations.append(MetricViolation(
                        "triangle", (points[i], points[j], points[k]),
                        f"{table[i][k]} > {table[i][j]} + {table[j][k]}",
                    ))
    logger.info(f"Metric axioms on hom({space.source}, {space.target}): {len(violations)} violation(s)")
    return violations


def verify_isometry(space: MetricHomSpace, inner: Sequence[Hashable]) -> List[IsometryViolation]:
    """Every (k, u, v) with d(u then k, v then k) != d(u, v), for k in ``inner``."""
    violations: List[IsometryViolation] = []
    points = space.points
    for k in inner:
        moved = [space.post_compose(u, k) for u in points]
        for i, u in enumerate(points):
            for j in range(i + 1, len(points)):
                before = space.distance(u, points[j])
                after = space.distance(moved[i], moved[j])
                if before != after:
                    violations.append(IsometryViolation(k, u, points[j], before, after))
    logger.info(
        f"Isometry check on hom({space.source}, {space.target}) over {len(inner)} inner element(s): "
        f"{len(violations)} violation(s)"
    )
    return violations
