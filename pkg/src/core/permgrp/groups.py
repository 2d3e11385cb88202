"""
Enumerated permutation groups: alternating and symmetric groups and finite
products of them acting on the disjoint union of their symbol sets.

A FiniteGroup keeps its element list in a fixed order (sorted by image array,
so the identity always comes first), its generators, and a kind tag recording
the component degrees. Groups are cached per kind, so repeated calls to
``alternating_group(6)`` return the same object and its derived tables
(element orders, conjugacy classes, Cayley edges) are computed once.

Enumeration is capped by ToolkitConfig.enumeration_cap. A group can also be
built without enumeration (``enumerate=False``) when it is only needed as a
codomain descriptor; such a group answers membership and order questions but
raises CapExceededError when its element list is requested.
"""

import logging
import math
import threading
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from src.core.permgrp.permutations import identity_permutation, shift
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import CapExceededError

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

ALTERNATING = "alternating"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class GroupKind:
    """Family ("alternating" or "symmetric") and component degrees; one degree for a simple kind."""

    family: str
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if self.family not in (ALTERNATING, SYMMETRIC):
            raise ValueError(f"Unknown group family: {self.family}")
        if not self.degrees or any(d < 1 for d in self.degrees):
            raise ValueError(f"Component degrees must be positive: {self.degrees}")

    @property
    def is_product(self) -> bool:
        return len(self.degrees) > 1

    @property
    def label(self) -> str:
        letter = "A" if self.family == ALTERNATING else "S"
        return "x".join(f"{letter}{d}" for d in self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def order(self) -> int:
        total = 1
        for d in self.degrees:
            factor = math.factorial(d)
            if self.family == ALTERNATING and d >= 2:
                factor //= 2
            total *= factor
        return total


def _component_generators(family: str, n: int) -> List[Permutation]:
    """Standard generators on n points: (1 2 3) with (1..n) or (2..n) for A_n, (1 2) with (1..n) for S_n."""
    gens: List[Permutation] = []
    if family == ALTERNATING and n >= 3:
        gens.append(Permutation([[0, 1, 2]], size=n))
        long_cycle = list(range(n)) if n % 2 == 1 else list(range(1, n))
        if len(long_cycle) > 1:
            gens.append(Permutation([long_cycle], size=n))
    elif family == SYMMETRIC and n >= 2:
        gens.append(Permutation([[0, 1]], size=n))
        gens.append(Permutation([list(range(n))], size=n))
    unique: List[Permutation] = []
    for g in gens:
        if g not in unique:
            unique.append(g)
    return unique


class FiniteGroup:
    """
    A permutation group with a fixed element order.

    Attributes:
        kind (GroupKind): Family and component degrees.
        degree (int): Total number of points acted on.
        offsets (Tuple[int, ...]): First point (0-based) of each component.
        generators (Tuple[Permutation, ...]): Generators, component by component.
        component_generators (Tuple[Tuple[int, ...], ...]): Indices into ``generators`` per component.
    """

    def __init__(self, kind: GroupKind, enumerate_elements: bool = True):
        self.kind = kind
        self.degree = kind.degree
        offsets: List[int] = []
        gens: List[Permutation] = []
        per_component: List[Tuple[int, ...]] = []
        offset = 0
        for d in kind.degrees:
            offsets.append(offset)
            start = len(gens)
            for g in _component_generators(kind.family, d):
                gens.append(shift(g, offset, self.degree))
            per_component.append(tuple(range(start, len(gens))))
            offset += d
        self.offsets = tuple(offsets)
        self.generators = tuple(gens)
        self.component_generators = tuple(per_component)
        self.identity = identity_permutation(self.degree)
        self._elements: Optional[Tuple[Permutation, ...]] = None
        self._index: Optional[Dict[Permutation, int]] = None
        self._orders: Optional[Dict[Permutation, int]] = None
        self._class_of: Optional[Dict[Permutation, int]] = None
        self._classes: Optional[List[Tuple[Permutation, ...]]] = None
        self._cayley_edges: Optional[List[Tuple[Permutation, int, Permutation]]] = None
        # guards every lazily filled cache below, reads included
        self._lock = threading.RLock()
        if enumerate_elements:
            self._enumerate()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and other.kind == self.kind

    def __hash__(self) -> int:
        return hash(self.kind)

    @property
    def label(self) -> str:
        return self.kind.label

    @property
    def enumerated(self) -> bool:
        with self._lock:
            return self._elements is not None

    def _enumerate(self) -> None:
        with self._lock:
            if self._elements is not None:
                return
            gens = list(self.generators) or [self.identity]
            elements = sorted(PermutationGroup(gens).generate(), key=lambda p: p.array_form)
            expected = self.kind.order()
            if len(elements) != expected:
                raise RuntimeError(f"{self.label}: enumerated {len(elements)} elements, expected {expected}")
            self._elements = tuple(elements)
            self._index = {p: i for i, p in enumerate(elements)}
        logger.debug(f"Enumerated {self.label}: {expected} elements")

    @property
    def elements(self) -> Tuple[Permutation, ...]:
        """All elements in the fixed enumeration order."""
        with self._lock:
            elements = self._elements
        if elements is None:
            raise CapExceededError(f"{self.label} was built without enumeration")
        return elements

    def order(self) -> int:
        return self.kind.order()

    def index(self, p: Permutation) -> int:
        """Position of ``p`` in the enumeration (0-based)."""
        with self._lock:
            index = self._index
        if index is None:
            raise CapExceededError(f"{self.label} was built without enumeration")
        return index[p]

    def components(self) -> List[Tuple[int, int]]:
        """(offset, degree) for each component."""
        return list(zip(self.offsets, self.kind.degrees))

    def component_points(self, component: int) -> range:
        offset = self.offsets[component]
        return range(offset, offset + self.kind.degrees[component])

    def contains(self, p: Permutation) -> bool:
        """Membership without enumeration: p preserves every component and is even on each for alternating kinds."""
        if p.size != self.degree:
            return False
        images = p.array_form
        for offset, d in self.components():
            block = images[offset:offset + d]
            if sorted(block) != list(range(offset, offset + d)):
                return False
            if self.kind.family == ALTERNATING and d >= 2:
                if not Permutation([image - offset for image in block]).is_even:
                    return False
        return True

    def element_order(self, p: Permutation) -> int:
        with self._lock:
            if self._orders is None:
                self._orders = {}
            order = self._orders.get(p)
            if order is None:
                order = p.order()
                self._orders[p] = order
            return order

    def conjugacy_classes(self) -> List[Tuple[Permutation, ...]]:
        """Conjugacy classes in enumeration order of their first element (orbits under conjugation by generators)."""
        with self._lock:
            if self._classes is None:
                class_of: Dict[Permutation, int] = {}
                classes: List[Tuple[Permutation, ...]] = []
                for x in self.elements:
                    if x in class_of:
                        continue
                    members = [x]
                    class_of[x] = len(classes)
                    queue = deque([x])
                    while queue:
                        y = queue.popleft()
                        for g in self.generators:
                            z = y ^ g
                            if z not in class_of:
                                class_of[z] = len(classes)
                                members.append(z)
                                queue.append(z)
                    classes.append(tuple(sorted(members, key=lambda p: p.array_form)))
                self._classes = classes
                self._class_of = class_of
            return self._classes

    def class_size(self, p: Permutation) -> int:
        with self._lock:
            classes = self.conjugacy_classes()
            return len(classes[self._class_of[p]])

    def cayley_edges(self) -> List[Tuple[Permutation, int, Permutation]]:
        """
        Edges (g, j, g * generator_j) of the Cayley graph in breadth-first order from the identity.

        Every source element of an edge is reached by an earlier edge (or is the
        identity), which is what the generator-image extension relies on.
        """
        with self._lock:
            if self._cayley_edges is None:
                edges: List[Tuple[Permutation, int, Permutation]] = []
                seen = {self.identity}
                queue = deque([self.identity])
                while queue:
                    g = queue.popleft()
                    for j, s in enumerate(self.generators):
                        gs = g * s
                        edges.append((g, j, gs))
                        if gs not in seen:
                            seen.add(gs)
                            queue.append(gs)
                self._cayley_edges = edges
            return self._cayley_edges

    def component_elements(self, component: int) -> Tuple[Permutation, ...]:
        d = self.kind.degrees[component]
        if not self.kind.is_product:
            return self.elements
        factor = _group(GroupKind(self.kind.family, (d,)), enumerate=True)
        return tuple(shift(x, self.offsets[component], self.degree) for x in factor.elements)


_REGISTRY: Dict[GroupKind, FiniteGroup] = {}
_REGISTRY_LOCK = threading.Lock()


def _group(kind: GroupKind, enumerate: bool) -> FiniteGroup:
    """One shared FiniteGroup per kind; a descriptor is enumerated in place when elements are first needed."""
    with _REGISTRY_LOCK:
        group = _REGISTRY.get(kind)
        if group is None:
            if enumerate:
                logger.info(f"Enumerating {kind.label} ({kind.order()} elements)")
            group = FiniteGroup(kind, enumerate_elements=enumerate)
            _REGISTRY[kind] = group
        elif enumerate and not group.enumerated:
            logger.info(f"Enumerating {kind.label} ({kind.order()} elements)")
            group._enumerate()
        return group


def _check_cap(kind: GroupKind, config: Optional[ToolkitConfig]) -> None:
    cap = resolve_config(config).enumeration_cap
    if any(d > cap for d in kind.degrees):
        raise CapExceededError(f"{kind.label}: degree exceeds enumeration cap {cap}")
    if kind.order() > math.factorial(cap):
        raise CapExceededError(f"{kind.label}: order {kind.order()} exceeds the cap for degree {cap}")


def _build(kind: GroupKind, config: Optional[ToolkitConfig], enumerate: bool) -> FiniteGroup:
    if enumerate:
        _check_cap(kind, config)
    return _group(kind, enumerate)


def alternating_group(n: int, config: Optional[ToolkitConfig] = None, enumerate: bool = True) -> FiniteGroup:
    """
    The alternating group A_n on points 1..n.

    Args:
        n: Degree, at least 1.
        config: Caps to apply (defaults to the active configuration).
        enumerate: When False, return a membership-only descriptor that skips the cap.

    Returns:
        FiniteGroup: The shared group object for A_n.

    Raises:
        ValueError: If n < 1.
        CapExceededError: If enumeration is requested beyond the configured cap.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return _build(GroupKind(ALTERNATING, (n,)), config, enumerate)


def symmetric_group(n: int, config: Optional[ToolkitConfig] = None, enumerate: bool = True) -> FiniteGroup:
    """The symmetric group S_n on points 1..n (same caps as alternating_group)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _build(GroupKind(SYMMETRIC, (n,)), config, enumerate)


def alternating_product(degrees: Sequence[int], config: Optional[ToolkitConfig] = None,
                        enumerate: bool = True) -> FiniteGroup:
    """A_{d1} x A_{d2} x ... acting on the disjoint union of d1 + d2 + ... points."""
    return _build(GroupKind(ALTERNATING, tuple(degrees)), config, enumerate)


def symmetric_product(degrees: Sequence[int], config: Optional[ToolkitConfig] = None,
                      enumerate: bool = True) -> FiniteGroup:
    """S_{d1} x S_{d2} x ...; the conjugators of generalized inner automorphisms."""
    return _build(GroupKind(SYMMETRIC, tuple(degrees)), config, enumerate)
