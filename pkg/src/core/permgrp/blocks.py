"""
Multiplicities of maps between (products of) alternating groups.

The image of a hom f: A_m -> A_n cuts the n symbols into orbits. An orbit is
a natural copy when the image acts on it the way A_m acts on its own m
symbols (there is a bijection of symbols intertwining the two actions). A
hom is diagonal when every orbit is either a fixed symbol or a natural copy,
and its multiplicity is the number of natural copies. Transitive actions
such as A5 on 6 points, and the exceptional automorphism of A6, have orbits
of the right size that are not natural copies; multiplicity_of does not
count those and is_diagonal rejects them.

For products, the same bookkeeping is done per (source component, target
component) and collected in BlockMultiplicityData, the input of the two
sufficient conditions for equal-multiplicity maps to be inner-equivalent:
some source component of odd degree occurs at least twice, or at least two
symbols of the target component are fixed.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from src.core.permgrp.groups import ALTERNATING
from src.core.permgrp.homomorphisms import GeneralizedConjugator, GroupHom, component_parities
from src.core.permgrp.permutations import cycle_notation
from src.core.utils.errors import NonDiagonalHomError, PreconditionError, SpecValidationError

logger = logging.getLogger(__name__)


def image_orbits(f: GroupHom) -> List[Tuple[int, ...]]:
    """Orbits (0-based, sorted) of the image of ``f`` on the target symbols, ordered by least symbol."""
    seen = set()
    orbits: List[Tuple[int, ...]] = []
    forms = [p.array_form for p in f.images]
    for start in range(f.target.degree):
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            point = queue.popleft()
            for form in forms:
                image = form[point]
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def _acting_components(f: GroupHom, orbit: Sequence[int]) -> List[int]:
    moving = []
    for component, gen_indices in enumerate(f.source.component_generators):
        forms = [f.images[j].array_form for j in gen_indices]
        if any(form[point] != point for form in forms for point in orbit):
            moving.append(component)
    return moving


def natural_relabeling(f: GroupHom, component: int, orbit: Sequence[int]) -> Optional[Dict[int, int]]:
    """
    Equivariant bijection from the symbols of source component ``component`` onto ``orbit``, or None.

    Tries every orbit point o as the image of the component's first symbol b
    and checks that x(b) -> f(x)(o) is a well-defined bijection onto the orbit;
    such a map r satisfies r(y(p)) = f(y)(r(p)) for every source element y.
    """
    d = f.source.kind.degrees[component]
    if len(orbit) != d:
        return None
    base = f.source.offsets[component]
    elements = f.source.component_elements(component)
    for o in orbit:
        relabel: Dict[int, int] = {}
        consistent = True
        for x in elements:
            p = x.array_form[base]
            q = f(x).array_form[o]
            if relabel.setdefault(p, q) != q:
                consistent = False
                break
        if consistent and len(set(relabel.values())) == d:
            return relabel
    return None


def is_natural_copy(f: GroupHom, component: int, orbit: Sequence[int]) -> bool:
    """True when source component ``component`` acts on ``orbit`` like A_d on its own d symbols."""
    return natural_relabeling(f, component, orbit) is not None


@dataclass(frozen=True)
class OrbitAnalysis:
    """Orbit-by-orbit account of a hom's image: natural copies per source component, fixed symbols, the rest."""

    natural: Tuple[Tuple[int, Tuple[int, ...]], ...]
    fixed: Tuple[int, ...]
    other: Tuple[Tuple[int, ...], ...]


def analyze_orbits(f: GroupHom) -> OrbitAnalysis:
    if f.source.kind.family != ALTERNATING:
        raise PreconditionError(f"multiplicities are defined for alternating sources, got {f.source.label}")
    natural: List[Tuple[int, Tuple[int, ...]]] = []
    fixed: List[int] = []
    other: List[Tuple[int, ...]] = []
    for orbit in image_orbits(f):
        if len(orbit) == 1:
            fixed.append(orbit[0])
            continue
        acting = _acting_components(f, orbit)
        if len(acting) == 1 and f.source.kind.degrees[acting[0]] >= 3 and is_natural_copy(f, acting[0], orbit):
            natural.append((acting[0], orbit))
        else:
            other.append(orbit)
    return OrbitAnalysis(tuple(natural), tuple(fixed), tuple(other))


def is_diagonal(f: GroupHom) -> bool:
    """Every orbit of the image is a fixed symbol or a natural copy of one source component."""
    return not analyze_orbits(f).other


def multiplicity_of(f: GroupHom) -> int:
    """
    Number of natural copies of A_m among the orbits of f: A_m -> A_n.

    Raises:
        PreconditionError: If the source is not a single alternating group of degree at least 3.
    """
    kind = f.source.kind
    if kind.family != ALTERNATING or kind.is_product or kind.degrees[0] < 3:
        raise PreconditionError(f"multiplicity_of needs a source A_m with m >= 3, got {f.source.label}")
    return len(analyze_orbits(f).natural)


@dataclass(frozen=True)
class BlockMultiplicityData:
    """
    Component degrees, multiplicities and fixed-symbol counts of a map between products.

    Attributes:
        source_degrees: Degrees of the source components.
        target_degrees: Degrees of the target components.
        multiplicities: ``multiplicities[j][i]`` natural copies of source component i inside target component j.
        fixed: Fixed symbols of each target component.
    """

    source_degrees: Tuple[int, ...]
    target_degrees: Tuple[int, ...]
    multiplicities: Tuple[Tuple[int, ...], ...]
    fixed: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "source_degrees", tuple(self.source_degrees))
        object.__setattr__(self, "target_degrees", tuple(self.target_degrees))
        object.__setattr__(self, "multiplicities", tuple(tuple(row) for row in self.multiplicities))
        object.__setattr__(self, "fixed", tuple(self.fixed))
        problems = []
        if len(self.multiplicities) != len(self.target_degrees) or len(self.fixed) != len(self.target_degrees):
            problems.append("one multiplicity row and one fixed count per target component expected")
        for j, row in enumerate(self.multiplicities):
            if len(row) != len(self.source_degrees):
                problems.append(f"row {j} has {len(row)} entries for {len(self.source_degrees)} source components")
                continue
            if any(m < 0 for m in row) or (j < len(self.fixed) and self.fixed[j] < 0):
                problems.append(f"row {j} has negative entries")
                continue
            if j < len(self.fixed):
                used = sum(m * d for m, d in zip(row, self.source_degrees)) + self.fixed[j]
                if used != self.target_degrees[j]:
                    problems.append(f"component {j}: {used} symbols accounted for, degree is {self.target_degrees[j]}")
        if problems:
            raise SpecValidationError("inconsistent block multiplicity data", problems)

    def to_dict(self) -> dict:
        return {
            "source_degrees": list(self.source_degrees),
            "target_degrees": list(self.target_degrees),
            "multiplicities": [list(row) for row in self.multiplicities],
            "fixed": list(self.fixed),
        }


def block_data_of(f: GroupHom) -> BlockMultiplicityData:
    """
    Block data of a diagonal hom between (products of) alternating groups.

    Raises:
        NonDiagonalHomError: If some orbit is neither fixed nor a natural copy.
    """
    analysis = analyze_orbits(f)
    if analysis.other:
        raise NonDiagonalHomError(f"{f.describe()} has non-natural orbits {list(analysis.other)}")
    source_degrees = f.source.kind.degrees
    target_degrees = f.target.kind.degrees
    target_component_of: Dict[int, int] = {}
    for j, (offset, d) in enumerate(f.target.components()):
        for point in range(offset, offset + d):
            target_component_of[point] = j
    mult = [[0] * len(source_degrees) for _ in target_degrees]
    fixed = [0] * len(target_degrees)
    for component, orbit in analysis.natural:
        mult[target_component_of[orbit[0]]][component] += 1
    for point in analysis.fixed:
        fixed[target_component_of[point]] += 1
    return BlockMultiplicityData(source_degrees, target_degrees, tuple(map(tuple, mult)), tuple(fixed))


def inner_reducibility_condition(data: BlockMultiplicityData) -> bool:
    """
    True when every target component has an odd-degree source component of
    multiplicity at least two, or at least two fixed symbols.
    """
    for row, fixed in zip(data.multiplicities, data.fixed):
        odd_repeated = any(m >= 2 and d % 2 == 1 for m, d in zip(row, data.source_degrees))
        if not (odd_repeated or fixed >= 2):
            return False
    return True


def reducibility_for(f: GroupHom) -> Optional[bool]:
    """inner_reducibility_condition of ``f``'s block data, or None for non-diagonal homs."""
    try:
        return inner_reducibility_condition(block_data_of(f))
    except NonDiagonalHomError:
        return None


def _natural_orbits_by_block(f: GroupHom) -> Dict[Tuple[int, int], List[Tuple[int, ...]]]:
    """Natural-copy orbits of ``f`` keyed by (target component, source component), in orbit order."""
    analysis = analyze_orbits(f)
    if analysis.other:
        raise NonDiagonalHomError(f"{f.describe()} has non-natural orbits {list(analysis.other)}")
    blocks: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
    for component, orbit in analysis.natural:
        blocks.setdefault((_target_component(f, orbit[0]), component), []).append(orbit)
    return blocks


def _target_component(f: GroupHom, point: int) -> int:
    for j, (offset, d) in enumerate(f.target.components()):
        if offset <= point < offset + d:
            return j
    raise SpecValidationError(f"point {point} outside {f.target.label}")


def _fixed_by_component(f: GroupHom) -> Dict[int, List[int]]:
    fixed: Dict[int, List[int]] = {}
    for point in analyze_orbits(f).fixed:
        fixed.setdefault(_target_component(f, point), []).append(point)
    return fixed


def diagonal_conjugator(f: GroupHom, g: GroupHom, prefer_even: bool = True) -> Optional[GeneralizedConjugator]:
    """
    Construct h in S_{n1} x S_{n2} x ... with g = f then conj_h, for diagonal f and g.

    Process:
    1. Equal block data is required; otherwise no conjugator exists and None is returned.
    2. Natural copies are matched in orbit order and joined through their
       equivariant relabelings; fixed symbols are matched in order.
    3. With ``prefer_even``, every target component on which h is odd is
       repaired by a permutation commuting with g's image: a transposition of
       two fixed symbols, or the swap of two copies of an odd-degree component.

    Nothing is enumerated, so targets far beyond the enumeration cap work.

    Raises:
        NonDiagonalHomError: If f or g has a non-natural orbit.
    """
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("diagonal_conjugator needs homs with the same source and target")
    if block_data_of(f) != block_data_of(g):
        return None
    f_blocks, g_blocks = _natural_orbits_by_block(f), _natural_orbits_by_block(g)
    images = list(range(f.target.degree))
    for key, f_orbits in f_blocks.items():
        component = key[1]
        for f_orbit, g_orbit in zip(f_orbits, g_blocks[key]):
            r_f = natural_relabeling(f, component, f_orbit)
            r_g = natural_relabeling(g, component, g_orbit)
            for p, q in r_f.items():
                images[q] = r_g[p]
    f_fixed = _fixed_by_component(f)
    g_fixed_by_component = _fixed_by_component(g)
    for j, points in f_fixed.items():
        for a, b in zip(points, g_fixed_by_component[j]):
            images[a] = b
    h = Permutation(images)

    components = f.target.components()
    parities = component_parities(h, components)
    if prefer_even:
        for j, even in enumerate(parities):
            if even:
                continue
            repair = _parity_repair(g, j, g_fixed_by_component.get(j, []), g_blocks)
            if repair is not None:
                h = h * repair
        parities = component_parities(h, components)
    logger.debug(f"Constructed conjugator {cycle_notation(h)} (component parities {parities})")
    return GeneralizedConjugator(h, parities)


def _parity_repair(g: GroupHom, j: int, fixed: Sequence[int],
                   g_blocks: Dict[Tuple[int, int], List[Tuple[int, ...]]]) -> Optional[Permutation]:
    """An odd permutation of target component ``j`` commuting with the image of ``g``, or None."""
    degree = g.target.degree
    if len(fixed) >= 2:
        images = list(range(degree))
        images[fixed[0]], images[fixed[1]] = fixed[1], fixed[0]
        return Permutation(images)
    for (target_component, component), orbits in g_blocks.items():
        if target_component != j or len(orbits) < 2 or g.source.kind.degrees[component] % 2 == 0:
            continue
        first = natural_relabeling(g, component, orbits[0])
        second = natural_relabeling(g, component, orbits[1])
        images = list(range(degree))
        for p in first:
            images[first[p]] = second[p]
            images[second[p]] = first[p]
        return Permutation(images)
    return None
