"""
Group homomorphisms between enumerated permutation groups.

A GroupHom stores its full element table, so evaluation, equality,
composition and conjugation are lookups. Homs are built either from an
explicit table (checked against the homomorphism law) or from images of the
source generators, extended breadth-first along the Cayley graph:

1. the identity goes to the identity,
2. every Cayley edge g -> g*s assigns or checks phi(g*s) = phi(g) * image(s),
3. any inconsistency means the images do not define a homomorphism.

Consistency on every edge already forces phi(xy) = phi(x)phi(y); the
pairwise law is additionally checked when |G|^2 is within
ToolkitConfig.pairwise_check_limit.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from src.core.permgrp.groups import FiniteGroup, alternating_group, symmetric_product
from src.core.permgrp.permutations import cycle_notation, image_array
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import PreconditionError, SpecValidationError

logger = logging.getLogger(__name__)


class GroupHom:
    """
    Element-wise homomorphism ``source -> target``.

    Equality compares source, target and the images of the source generators,
    which determine the whole table.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping: Mapping[Permutation, Permutation],
                 verify: bool = True, config: Optional[ToolkitConfig] = None):
        self.source = source
        self.target = target
        self._mapping: Dict[Permutation, Permutation] = dict(mapping)
        if verify:
            self._check(resolve_config(config))
        self.images: Tuple[Permutation, ...] = tuple(self._mapping[s] for s in source.generators)
        self._key = (source.kind, target.kind, tuple(tuple(p.array_form) for p in self.images))

    def _check(self, config: ToolkitConfig) -> None:
        elements = self.source.elements
        if len(self._mapping) != len(elements) or any(x not in self._mapping for x in elements):
            raise SpecValidationError(f"{self.source.label} -> {self.target.label}: table does not cover the source")
        bad = [x for x in elements if not self.target.contains(self._mapping[x])]
        if bad:
            raise SpecValidationError(
                f"{self.source.label} -> {self.target.label}: image of {cycle_notation(bad[0])} is not in the target"
            )
        if self._mapping[self.source.identity] != self.target.identity:
            raise SpecValidationError("identity is not sent to the identity")
        if len(elements) ** 2 <= config.pairwise_check_limit:
            for x in elements:
                fx = self._mapping[x]
                for y in elements:
                    if self._mapping[x * y] != fx * self._mapping[y]:
                        raise SpecValidationError(
                            f"homomorphism law fails at ({cycle_notation(x)}, {cycle_notation(y)})"
                        )

    def __call__(self, x: Permutation) -> Permutation:
        return self._mapping[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupHom) and other._key == self._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GroupHom({self.describe()})"

    @property
    def key(self) -> tuple:
        return self._key

    def items(self):
        return self._mapping.items()

    def describe(self) -> str:
        images = ", ".join(
            f"{cycle_notation(s)} -> {cycle_notation(img)}" for s, img in zip(self.source.generators, self.images)
        )
        return f"{self.source.label} -> {self.target.label}: {images or 'trivial'}"

    def then(self, other: "GroupHom") -> "GroupHom":
        """Composite ``self then other``: x -> other(self(x))."""
        if other.source != self.target:
            raise SpecValidationError(f"cannot compose {self.describe()} with {other.describe()}")
        return GroupHom(self.source, other.target, {x: other(y) for x, y in self._mapping.items()}, verify=False)

    def conjugated_by(self, h: Permutation) -> "GroupHom":
        """``self then conj_h``: x -> self(x)^h. The result must still land in the target."""
        mapping = {x: y ^ h for x, y in self._mapping.items()}
        images = [mapping[s] for s in self.source.generators]
        if not all(self.target.contains(p) for p in images):
            raise PreconditionError(f"conjugation by {cycle_notation(h)} leaves {self.target.label}")
        return GroupHom(self.source, self.target, mapping, verify=False)

    def is_injective(self) -> bool:
        return len(set(self._mapping.values())) == len(self._mapping)

    def is_trivial(self) -> bool:
        return all(p == self.target.identity for p in self.images)

    def inverse(self) -> "GroupHom":
        """Inverse of a bijective hom."""
        if not self.is_injective() or len(self._mapping) != self.target.order():
            raise PreconditionError(f"{self.describe()} is not bijective")
        return GroupHom(self.target, self.source, {y: x for x, y in self._mapping.items()}, verify=False)

    def to_dict(self) -> dict:
        return {
            "source": self.source.label,
            "target": self.target.label,
            "generators": [cycle_notation(s) for s in self.source.generators],
            "generator_images": [cycle_notation(p) for p in self.images],
            "generator_image_arrays": [image_array(p) for p in self.images],
        }


def extend_generator_images(source: FiniteGroup, target: FiniteGroup,
                            images: Sequence[Permutation]) -> Optional[Dict[Permutation, Permutation]]:
    """Breadth-first extension of generator images to a full table, or None on an inconsistent edge."""
    table: Dict[Permutation, Permutation] = {source.identity: target.identity}
    for g, j, gs in source.cayley_edges():
        value = table[g] * images[j]
        known = table.get(gs)
        if known is None:
            table[gs] = value
        elif known != value:
            return None
    return table


def hom_from_generator_images(source: FiniteGroup, target: FiniteGroup, images: Sequence[Permutation],
                              config: Optional[ToolkitConfig] = None) -> Optional[GroupHom]:
    """
    Build the hom sending the i-th generator of ``source`` to ``images[i]``.

    Args:
        source: Enumerated domain group.
        target: Codomain (enumeration not required).
        images: One image per generator of ``source``.
        config: Controls the pairwise law check.

    Returns:
        Optional[GroupHom]: The hom, or None when the images are inconsistent.

    Raises:
        SpecValidationError: On a wrong number of images, a degree mismatch, or an image outside the target.
    """
    if len(images) != len(source.generators):
        raise SpecValidationError(
            f"{source.label} has {len(source.generators)} generators, got {len(images)} images"
        )
    for p in images:
        if p.size != target.degree:
            raise SpecValidationError(f"image {cycle_notation(p)} has degree {p.size}, expected {target.degree}")
        if not target.contains(p):
            raise SpecValidationError(f"image {cycle_notation(p)} is not in {target.label}")
    table = extend_generator_images(source, target, images)
    if table is None:
        logger.debug(f"Generator images {[cycle_notation(p) for p in images]} do not extend")
        return None
    return GroupHom(source, target, table, verify=True, config=config)


def enumerate_homs(source: FiniteGroup, target: FiniteGroup,
                   config: Optional[ToolkitConfig] = None) -> List[GroupHom]:
    """
    All homs ``source -> target`` by generator-image search.

    Candidate images of a generator are the target elements whose order
    divides the generator's order; candidates are tried in enumeration order.
    """
    candidates = [
        [y for y in target.elements if source.element_order(s) % target.element_order(y) == 0]
        for s in source.generators
    ]
    logger.info(
        f"Searching homs {source.label} -> {target.label} over "
        f"{'x'.join(str(len(c)) for c in candidates) or '1'} generator-image candidates"
    )
    homs: List[GroupHom] = []
    for combo in itertools.product(*candidates):
        table = extend_generator_images(source, target, combo)
        if table is not None:
            homs.append(GroupHom(source, target, table, verify=False))
    logger.info(f"Found {len(homs)} homs {source.label} -> {target.label}")
    return homs


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, {x: x for x in group.elements}, verify=False)


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, {x: target.identity for x in source.elements}, verify=False)


def inner_automorphism(group: FiniteGroup, h: Permutation) -> GroupHom:
    """x -> x^h. ``h`` may lie outside the group as long as it normalizes it (odd h on A_n)."""
    return identity_hom(group).conjugated_by(h)


def inner_equivalent(f: GroupHom, g: GroupHom) -> Optional[Permutation]:
    """
    First h in the target's enumeration with g = f then conj_h, or None.

    Only the source generators are compared, which suffices for homs.
    """
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("inner_equivalent needs homs with the same source and target")
    pairs = list(zip(f.images, g.images))
    for h in f.target.elements:
        if all(a ^ h == b for a, b in pairs):
            return h
    return None


@dataclass(frozen=True)
class GeneralizedConjugator:
    """Conjugator from the per-component symmetric groups, with the parity of each component."""

    conjugator: Permutation
    component_parities: Tuple[bool, ...]

    @property
    def is_inner(self) -> bool:
        return all(self.component_parities)

    def to_dict(self) -> dict:
        return {
            "conjugator": cycle_notation(self.conjugator),
            "component_even": list(self.component_parities),
        }


def component_parities(h: Permutation, components: Sequence[Tuple[int, int]]) -> Tuple[bool, ...]:
    parities = []
    for offset, d in components:
        block = [image - offset for image in h.array_form[offset:offset + d]]
        parities.append(Permutation(block).is_even)
    return tuple(parities)


def generalized_inner_equivalent(f: GroupHom, g: GroupHom, components: Optional[Sequence[int]] = None,
                                 config: Optional[ToolkitConfig] = None) -> Optional[GeneralizedConjugator]:
    """
    Like inner_equivalent, but the conjugator ranges over S_{n1} x S_{n2} x ...

    Args:
        f, g: Homs with the same source and target.
        components: Degrees of the target's components (defaults to the target's own).
        config: Caps for enumerating the conjugator group.

    Returns:
        Optional[GeneralizedConjugator]: The first conjugator in enumeration order, or None.
    """
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("generalized_inner_equivalent needs homs with the same source and target")
    degrees = tuple(components) if components is not None else f.target.kind.degrees
    if sum(degrees) != f.target.degree:
        raise SpecValidationError(f"component degrees {degrees} do not cover {f.target.degree} points")
    conjugators = symmetric_product(degrees, config=config)
    pairs = list(zip(f.images, g.images))
    for h in conjugators.elements:
        if all(a ^ h == b for a, b in pairs):
            return GeneralizedConjugator(h, component_parities(h, conjugators.components()))
    return None


def standard_embedding(m: int, n: int, k: int, config: Optional[ToolkitConfig] = None) -> GroupHom:
    """
    Diagonal embedding A_m -> A_n with multiplicity k.

    The image of x acts as k disjoint copies of x on symbols 1..k*m and fixes
    the rest; k = 0 is the trivial map.

    Raises:
        ValueError: If k < 0 or k*m > n.
    """
    if k < 0 or m < 1 or k * m > n:
        raise ValueError(f"standard embedding needs k >= 0 and k*m <= n, got m={m}, n={n}, k={k}")
    cfg = resolve_config(config)
    source = alternating_group(m, config=cfg)
    target = alternating_group(n, config=cfg, enumerate=n <= cfg.enumeration_cap)
    table: Dict[Permutation, Permutation] = {}
    for x in source.elements:
        images = list(range(n))
        for copy in range(k):
            offset = copy * m
            for point, image in enumerate(x.array_form):
                images[offset + point] = offset + image
        table[x] = Permutation(images)
    return GroupHom(source, target, table, verify=True, config=cfg)
