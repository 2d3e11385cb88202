"""
Categories of finite groups as FiniteCategorySpecs.

group_hom_category closes a list of homs under composition, adds identities
and the inner automorphisms of every group (conjugations by the group's own
elements, or by the per-component symmetric groups for "generalized"), and
returns the result as a FiniteCategorySpec whose morphism identifiers encode
the generator images, e.g. ``"A3->A6[(1 2 3)]"``. Composites are computed
from generator images on demand, so the table stays lazy.

Every hom-set also gets the weighted disagreement metric built from the
enumeration of its source group.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.categories.finite_category import (
    FiniteCategorySpec,
    LazyCompositionTable,
    MorphismId,
    ObjectId,
    iter_composable_pairs,
)
from src.core.metric.intertwine import IntertwiningProblem
from src.core.metric.metric_space import MetricHomSpace, weighted_disagreement_metric
from src.core.permgrp.groups import FiniteGroup, alternating_group, symmetric_product
from src.core.permgrp.homomorphisms import GroupHom, enumerate_homs, identity_hom, inner_automorphism
from src.core.permgrp.permutations import cycle_notation, from_cycles
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import SpecValidationError

logger = logging.getLogger(__name__)

CONJUGATION = "conjugation"
GENERALIZED = "generalized"


def morphism_id(f: GroupHom) -> MorphismId:
    return f"{f.source.label}->{f.target.label}[{';'.join(cycle_notation(p) for p in f.images)}]"


class GroupCategory:
    """
    A FiniteCategorySpec of group homs together with the homs themselves.

    Attributes:
        spec: The category; objects are group labels.
        groups: Object id -> group.
    """

    def __init__(self, spec: FiniteCategorySpec, groups: Dict[ObjectId, FiniteGroup], homs: Dict[MorphismId, GroupHom]):
        self.spec = spec
        self.groups = groups
        self._homs = homs
        self._metrics = {}

    def hom_of(self, f: MorphismId) -> GroupHom:
        try:
            return self._homs[f]
        except KeyError:
            raise SpecValidationError(f"unknown morphism {f!r}")

    def id_of(self, f: GroupHom) -> MorphismId:
        fid = morphism_id(f)
        if fid not in self._homs:
            raise SpecValidationError(f"{f.describe()} is not a morphism of this category")
        return fid

    def distance(self, a: ObjectId, b: ObjectId):
        """Weighted disagreement metric on hom(a, b), numbering the source elements in enumeration order."""
        key = (a, b)
        if key not in self._metrics:
            weighted = weighted_disagreement_metric(self.groups[a].elements)

            def distance(u: MorphismId, v: MorphismId):
                return weighted(self._homs[u], self._homs[v])

            self._metrics[key] = distance
        return self._metrics[key]

    def metrics(self) -> Dict[Tuple[ObjectId, ObjectId], object]:
        return {key: self.distance(*key) for key in self.spec.homs}

    def metric_space(self, a: ObjectId, b: ObjectId) -> MetricHomSpace:
        return MetricHomSpace.from_spec(self.spec, a, b, self.distance(a, b))


def _inner_homs(group: FiniteGroup, inner: str, config: ToolkitConfig) -> Tuple[List[GroupHom], List[GroupHom]]:
    """All inner automorphisms of ``group`` (deduplicated, identity first) and those of the conjugator generators."""
    if inner == CONJUGATION:
        conjugators = group
    elif inner == GENERALIZED:
        conjugators = symmetric_product(group.kind.degrees, config=config)
    else:
        raise ValueError(f"Unknown inner family: {inner}")
    seen = set()
    family: List[GroupHom] = []
    for h in conjugators.elements:
        phi = inner_automorphism(group, h)
        if phi not in seen:
            seen.add(phi)
            family.append(phi)
    generators = [inner_automorphism(group, h) for h in conjugators.generators]
    return family, generators


def group_hom_category(groups: Sequence[FiniteGroup], generating_homs: Sequence[GroupHom] = (),
                       inner: str = CONJUGATION, name: str = "",
                       config: Optional[ToolkitConfig] = None) -> GroupCategory:
    """
    The category generated by ``generating_homs``, identities and inner automorphisms.

    Process:
    1. Collect the inner automorphisms of every group (deduplicated, identity first).
    2. Breadth-first search from the identities, post-composing with the
       generating homs and the conjugations by generators, until no new hom appears.
    3. Hom-sets list their members in discovery order.

    Args:
        groups: The objects; one per label.
        generating_homs: Homs between the given groups.
        inner: "conjugation" (by the group's elements) or "generalized" (by the
            per-component symmetric groups).
        name: Label of the resulting spec.
        config: Enumeration caps.

    Raises:
        SpecValidationError: If a generating hom mentions a group not in ``groups``.
    """
    cfg = resolve_config(config)
    by_label: Dict[ObjectId, FiniteGroup] = {}
    for g in groups:
        by_label.setdefault(g.label, g)
    for f in generating_homs:
        if f.source.label not in by_label or f.target.label not in by_label:
            raise SpecValidationError(f"{f.describe()} leaves the given groups")

    inner_families: Dict[ObjectId, List[GroupHom]] = {}
    steps: Dict[ObjectId, List[GroupHom]] = {}
    for label, g in by_label.items():
        inner_families[label], steps[label] = _inner_homs(g, inner, cfg)
    for f in generating_homs:
        steps[f.source.label].append(f)

    homs: Dict[MorphismId, GroupHom] = {}
    members: Dict[Tuple[ObjectId, ObjectId], List[MorphismId]] = {}

    def record(f: GroupHom) -> bool:
        fid = morphism_id(f)
        if fid in homs:
            return False
        homs[fid] = f
        members.setdefault((f.source.label, f.target.label), []).append(fid)
        return True

    queue = deque()
    for g in by_label.values():
        ident = identity_hom(g)
        record(ident)
        queue.append(ident)
    while queue:
        f = queue.popleft()
        for step in steps[f.target.label]:
            composite = f.then(step)
            if record(composite):
                queue.append(composite)
    logger.info(f"Group category {name or '<unnamed>'}: {len(by_label)} group(s), {len(homs)} homs")

    def composer(f: MorphismId, g: MorphismId) -> MorphismId:
        first, second = homs[f], homs[g]
        images = ";".join(cycle_notation(second(p)) for p in first.images)
        return f"{first.source.label}->{second.target.label}[{images}]"

    objects = tuple(by_label)
    hom_sets = {key: tuple(ids) for key, ids in members.items()}
    spec = FiniteCategorySpec(
        objects=objects,
        homs=hom_sets,
        composition=LazyCompositionTable(composer, lambda: iter_composable_pairs(objects, hom_sets)),
        identities={label: morphism_id(identity_hom(g)) for label, g in by_label.items()},
        inner={label: tuple(morphism_id(phi) for phi in family) for label, family in inner_families.items()},
        name=name,
    )
    return GroupCategory(spec, by_label, homs)


def endomorphism_category(group: FiniteGroup, config: Optional[ToolkitConfig] = None) -> GroupCategory:
    """One object ``group`` with all of its endomorphisms; inner = conjugations."""
    endos = enumerate_homs(group, group, config=config)
    return group_hom_category([group], endos, name=f"End({group.label})", config=config)


def group_as_category(group: FiniteGroup) -> FiniteCategorySpec:
    """
    ``group`` as a one-object category: the elements are the morphisms, x then y is x*y.

    Every morphism is an automorphism, and all of them are designated inner.
    """
    label = group.label
    ids = tuple(cycle_notation(x) for x in group.elements)
    by_id = dict(zip(ids, group.elements))
    hom_sets = {(label, label): ids}

    def composer(x: MorphismId, y: MorphismId) -> MorphismId:
        return cycle_notation(by_id[x] * by_id[y])

    return FiniteCategorySpec(
        objects=(label,),
        homs=hom_sets,
        composition=LazyCompositionTable(composer, lambda: iter_composable_pairs((label,), hom_sets)),
        identities={label: cycle_notation(group.identity)},
        inner={label: ids},
        name=f"B({label})",
    )


def a5_twisted_problem(config: Optional[ToolkitConfig] = None) -> Tuple[GroupCategory, IntertwiningProblem]:
    """
    The twisted pair on A5: f1 = conjugation by (1 2), g1 = f1^-1 then conjugation by (1 2 3 4 5).

    Both live in the one-object category generated by f1 with inner = conjugations by A5.
    """
    cfg = resolve_config(config)
    a5 = alternating_group(5, config=cfg)
    f1 = inner_automorphism(a5, from_cycles([(1, 2)], 5))
    g1 = f1.inverse().conjugated_by(from_cycles([(1, 2, 3, 4, 5)], 5))
    category = group_hom_category([a5], [f1, g1], name="A5-twisted", config=cfg)
    problem = IntertwiningProblem(
        spec=category.spec,
        source=a5.label,
        target=a5.label,
        forward=category.id_of(f1),
        backward=category.id_of(g1),
        metrics=category.metrics(),
    )
    return category, problem
