"""
Quotients of finite categories modulo inner automorphisms.

Given a FiniteCategorySpec whose designated inner families satisfy the
exchange axiom (for every f: a -> b and h in inner(a) there is k in inner(b)
with h then f = f then k), morphisms are identified with their orbits under
post-composition by inner(target). The axiom makes these orbits the same as
the two-sided orbits, and makes the element-wise product of two classes a
single class, so the classes form a category: the classifying category.

Process:
1. verify_inner_axiom lists every (f, h) pair without a matching k.
2. inner_closure replaces each inner family by the subgroup it generates.
3. quotient partitions every hom-set into codomain-side orbits.
4. is_super_strong / is_strong / cantor_bernstein_check inspect the result.

class_product_defect works without the axiom: it forms two-sided orbits
under the designated family and looks for a pair of classes whose product
meets two or more classes.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.categories.finite_category import (
    FiniteCategorySpec,
    MorphismId,
    ObjectId,
    validate_category,
)
from src.core.utils.errors import (
    InnerAxiomError,
    NonThinQuotientError,
    PreconditionError,
    SpecValidationError,
)

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MorphismClass:
    """A class of morphisms source -> target; ``representative`` is its first member in hom-set order."""

    source: ObjectId
    target: ObjectId
    members: FrozenSet[MorphismId]
    representative: MorphismId

    def __contains__(self, f: MorphismId) -> bool:
        return f in self.members

    def __len__(self) -> int:
        return len(self.members)

    @property
    def label(self) -> str:
        return f"[{self.representative}]"

    def sorted_members(self, spec: FiniteCategorySpec) -> List[MorphismId]:
        return [f for f in spec.hom(self.source, self.target) if f in self.members]


@dataclass(frozen=True)
class AxiomWitness:
    """f: source -> target and h in inner(source) such that no k in inner(target) has h then f = f then k."""

    morphism: MorphismId
    inner_element: MorphismId
    source: ObjectId
    target: ObjectId

    def __str__(self) -> str:
        return f"({self.inner_element} then {self.morphism}) has no inner match on {self.target}"


@dataclass(frozen=True)
class ClassProductDefect:
    """Two composable classes whose element-wise product meets two or more classes."""

    left: MorphismClass
    right: MorphismClass
    split: Tuple[MorphismClass, ...]
    composites: Tuple[Tuple[MorphismId, MorphismId, MorphismId], ...]

    def to_dict(self) -> dict:
        return {
            "left": self.left.label,
            "right": self.right.label,
            "split": [c.label for c in self.split],
            "composites": [list(t) for t in self.composites],
        }


@dataclass(frozen=True)
class SuperStrongViolation:
    """A non-invertible morphism whose class is invertible in the quotient."""

    morphism: MorphismId
    morphism_class: str


@dataclass(frozen=True)
class CantorBernsteinViolation:
    """Objects with morphisms both ways that are not isomorphic (``reason`` names the failed clause)."""

    first: ObjectId
    second: ObjectId
    reason: str


class QuotientCategory:
    """
    A category of morphism classes over a FiniteCategorySpec.

    Class products are computed element-wise; ``compose`` insists the product
    is one class. Products of invertibility questions use representatives,
    which agree with the element-wise product whenever that is a single class.
    """

    def __init__(self, spec: FiniteCategorySpec, classes: Mapping[Tuple[ObjectId, ObjectId], Sequence[MorphismClass]]):
        self.spec = spec
        self.objects = spec.objects
        self._classes: Dict[Tuple[ObjectId, ObjectId], Tuple[MorphismClass, ...]] = {}
        self._class_of: Dict[MorphismId, MorphismClass] = {}
        problems = []
        for (a, b), members in spec.homs.items():
            given = tuple(classes.get((a, b), ()))
            covered = set()
            for cls in given:
                if cls.source != a or cls.target != b:
                    problems.append(f"class {cls.label} filed under ({a}, {b})")
                if covered & cls.members:
                    problems.append(f"classes of hom({a}, {b}) overlap")
                covered |= cls.members
                for f in cls.members:
                    self._class_of[f] = cls
            if covered != set(members):
                problems.append(f"classes of hom({a}, {b}) do not partition it")
            self._classes[(a, b)] = given
        if problems:
            raise SpecValidationError("invalid quotient partition", problems)

    @classmethod
    def from_partition(cls, spec: FiniteCategorySpec,
                       partition: Mapping[Tuple[ObjectId, ObjectId], Sequence[Sequence[MorphismId]]]
                       ) -> "QuotientCategory":
        """Build a quotient from explicit blocks of morphism identifiers (blocks keep hom-set order)."""
        classes = {}
        for (a, b), blocks in partition.items():
            order = {f: i for i, f in enumerate(spec.hom(a, b))}
            classes[(a, b)] = [_make_class(a, b, block, order) for block in blocks]
        return cls(spec, classes)

    def hom(self, a: ObjectId, b: ObjectId) -> Tuple[MorphismClass, ...]:
        return self._classes.get((a, b), ())

    def classes(self) -> Iterable[MorphismClass]:
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def class_count(self) -> int:
        return sum(len(v) for v in self._classes.values())

    def class_of(self, f: MorphismId) -> MorphismClass:
        try:
            return self._class_of[f]
        except KeyError:
            raise SpecValidationError(f"unknown morphism {f!r}")

    def identity(self, a: ObjectId) -> MorphismClass:
        return self._class_of[self.spec.identity(a)]

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._classes.values())

    def class_product(self, left: MorphismClass, right: MorphismClass) -> Tuple[MorphismClass, ...]:
        """Distinct classes met by {f then g : f in left, g in right}, in order of discovery."""
        if left.target != right.source:
            raise SpecValidationError(f"classes {left.label} and {right.label} are not composable")
        met: Dict[MorphismClass, None] = {}
        for f in left.sorted_members(self.spec):
            for g in right.sorted_members(self.spec):
                met.setdefault(self._class_of[self.spec.compose(f, g)], None)
        return tuple(met)

    def compose(self, left: MorphismClass, right: MorphismClass) -> MorphismClass:
        """``left then right``; raises when the product is not a single class."""
        product = self.class_product(left, right)
        if len(product) != 1:
            raise SpecValidationError(
                f"product of {left.label} and {right.label} meets {len(product)} classes"
            )
        return product[0]

    def _representative_product(self, left: MorphismClass, right: MorphismClass) -> MorphismClass:
        return self._class_of[self.spec.compose(left.representative, right.representative)]

    def inverse(self, cls: MorphismClass) -> Optional[MorphismClass]:
        """The inverse class, or None when ``cls`` is not invertible."""
        id_a = self.identity(cls.source)
        id_b = self.identity(cls.target)
        for other in self.hom(cls.target, cls.source):
            if self._representative_product(cls, other) == id_a and self._representative_product(other, cls) == id_b:
                return other
        return None

    def is_invertible(self, cls: MorphismClass) -> bool:
        return self.inverse(cls) is not None

    def isomorphic(self, a: ObjectId, b: ObjectId) -> bool:
        return any(self.is_invertible(c) for c in self.hom(a, b))

    def law_violations(self) -> List[str]:
        """
        Exhaustive check of the quotient: every class product is one class,
        the canonical map preserves composition and identities, and composition
        of classes is associative with identity classes as units.
        """
        problems: List[str] = []
        spec = self.spec
        for a in self.objects:
            for b in self.objects:
                for left in self.hom(a, b):
                    for c in self.objects:
                        for right in self.hom(b, c):
                            if len(self.class_product(left, right)) != 1:
                                problems.append(f"product of {left.label} and {right.label} is not a class")
        if problems:
            return problems
        for f, g in spec.composable_pairs():
            if self._class_of[spec.compose(f, g)] != self.compose(self._class_of[f], self._class_of[g]):
                problems.append(f"class of ({f} then {g}) differs from the class product")
        for cls in self.classes():
            if self.compose(self.identity(cls.source), cls) != cls or self.compose(cls, self.identity(cls.target)) != cls:
                problems.append(f"identity classes are not units for {cls.label}")
        for a in self.objects:
            for b in self.objects:
                for x in self.hom(a, b):
                    for c in self.objects:
                        for y in self.hom(b, c):
                            xy = self.compose(x, y)
                            for d in self.objects:
                                for z in self.hom(c, d):
                                    if self.compose(xy, z) != self.compose(x, self.compose(y, z)):
                                        problems.append(f"associativity fails for ({x.label}, {y.label}, {z.label})")
        return problems

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "classes": [
                {
                    "source": cls.source,
                    "target": cls.target,
                    "representative": cls.representative,
                    "members": cls.sorted_members(self.spec),
                }
                for cls in self.classes()
            ],
        }


def _make_class(a: ObjectId, b: ObjectId, members: Iterable[MorphismId], order: Mapping[MorphismId, int]) -> MorphismClass:
    members = frozenset(members)
    if not members:
        raise SpecValidationError(f"empty class in hom({a}, {b})")
    unknown = [f for f in members if f not in order]
    if unknown:
        raise SpecValidationError(f"class members {sorted(unknown)} are not in hom({a}, {b})")
    representative = min(members, key=order.__getitem__)
    return MorphismClass(a, b, members, representative)


def _orbit(spec: FiniteCategorySpec, f: MorphismId, left: Sequence[MorphismId], right: Sequence[MorphismId]) -> List[MorphismId]:
    """Closure of {f} under pre-composition by ``left`` and post-composition by ``right``."""
    orbit = [f]
    seen = {f}
    queue = deque([f])
    while queue:
        u = queue.popleft()
        moved = [spec.compose(h, u) for h in left] + [spec.compose(u, k) for k in right]
        for v in moved:
            if v not in seen:
                seen.add(v)
                orbit.append(v)
                queue.append(v)
    return orbit


def _partition(spec: FiniteCategorySpec, two_sided: bool) -> Dict[Tuple[ObjectId, ObjectId], List[MorphismClass]]:
    partition: Dict[Tuple[ObjectId, ObjectId], List[MorphismClass]] = {}
    for (a, b), members in spec.homs.items():
        order = {f: i for i, f in enumerate(members)}
        assigned = set()
        classes: List[MorphismClass] = []
        left = spec.inner[a] if two_sided else ()
        for f in members:
            if f in assigned:
                continue
            orbit = _orbit(spec, f, left, spec.inner[b])
            assigned.update(orbit)
            classes.append(_make_class(a, b, orbit, order))
        partition[(a, b)] = classes
    return partition


def _check_inner_invertible(spec: FiniteCategorySpec) -> None:
    problems = []
    for a in spec.objects:
        for h in spec.inner[a]:
            if h not in spec.hom(a, a):
                problems.append(f"inner element {h} of {a} is not an endomorphism of {a}")
            elif not spec.is_invertible(h):
                problems.append(f"inner element {h} of {a} is not invertible")
    if problems:
        logger.error(f"Inner families of {spec.name or '<unnamed>'} contain non-automorphisms")
        raise SpecValidationError("inner families must consist of automorphisms", problems)


def verify_inner_axiom(spec: FiniteCategorySpec, check_associativity: bool = True) -> List[AxiomWitness]:
    """
    Every (f, h) pair violating the exchange axiom.

    Args:
        spec: The category; validated first (SpecValidationError on failure).
        check_associativity: Passed to validation.

    Returns:
        List[AxiomWitness]: Empty iff for every f: a -> b and h in inner(a)
        some k in inner(b) has h then f = f then k.
    """
    validate_category(spec, check_associativity=check_associativity)
    witnesses: List[AxiomWitness] = []
    for f in spec.morphisms():
        a, b = spec.source(f), spec.target(f)
        right = {spec.compose(f, k) for k in spec.inner[b]}
        for h in spec.inner[a]:
            if spec.compose(h, f) not in right:
                witnesses.append(AxiomWitness(f, h, a, b))
    logger.info(f"Inner axiom on {spec.name or '<unnamed>'}: {len(witnesses)} violation(s)")
    return witnesses


def inner_closure(spec: FiniteCategorySpec) -> FiniteCategorySpec:
    """
    Replace each inner family by the subgroup of Aut(a) it generates.

    Families that already are subgroups keep their order, so the operation
    is idempotent on the nose.

    Raises:
        SpecValidationError: If some designated element is not an automorphism.
    """
    _check_inner_invertible(spec)
    closed: Dict[ObjectId, Tuple[MorphismId, ...]] = {}
    for a in spec.objects:
        generators = spec.inner[a]
        elements = [spec.identity(a)]
        seen = set(elements)
        i = 0
        while i < len(elements):
            for g in generators:
                product = spec.compose(elements[i], g)
                if product not in seen:
                    seen.add(product)
                    elements.append(product)
            i += 1
        if seen == set(generators):
            closed[a] = tuple(generators)
        else:
            closed[a] = tuple(f for f in spec.hom(a, a) if f in seen)
            logger.debug(f"inner({a}): {len(set(generators))} generator(s) -> subgroup of order {len(seen)}")
    return spec.with_inner(closed)


def _is_subgroup(spec: FiniteCategorySpec, a: ObjectId) -> bool:
    members = set(spec.inner[a])
    if spec.identity(a) not in members:
        return False
    return all(spec.compose(h, k) in members for h in members for k in members)


def quotient(spec: FiniteCategorySpec, check_associativity: bool = True) -> QuotientCategory:
    """
    The classifying category of ``spec``: hom-sets modulo post-composition by inner automorphisms.

    Raises:
        SpecValidationError: If the spec is not a valid category.
        InnerAxiomError: If the exchange axiom fails (carries the witnesses).
        PreconditionError: If some inner family is not a subgroup (run inner_closure first).
    """
    witnesses = verify_inner_axiom(spec, check_associativity=check_associativity)
    if witnesses:
        logger.error(f"Refusing to build the quotient: {len(witnesses)} axiom violation(s)")
        raise InnerAxiomError(witnesses)
    not_closed = [a for a in spec.objects if not _is_subgroup(spec, a)]
    if not_closed:
        raise PreconditionError(f"inner families of {not_closed} are not subgroups; run inner_closure first")
    q = QuotientCategory(spec, _partition(spec, two_sided=False))
    logger.info(
        f"Quotient of {spec.name or '<unnamed>'}: {spec.morphism_count()} morphisms -> {q.class_count()} classes"
    )
    return q


def two_sided_classes(spec: FiniteCategorySpec) -> Dict[Tuple[ObjectId, ObjectId], List[MorphismClass]]:
    """Partition of every hom-set into orbits under pre- and post-composition with the inner families."""
    return _partition(spec, two_sided=True)


def class_product_defects(spec: FiniteCategorySpec, check_associativity: bool = True) -> List[ClassProductDefect]:
    """
    All pairs of two-sided classes whose product meets two or more classes.

    The inner families need not satisfy the exchange axiom here (for instance
    all bijections on sets with all maps).
    """
    validate_category(spec, check_associativity=check_associativity)
    partition = two_sided_classes(spec)
    class_of: Dict[MorphismId, MorphismClass] = {}
    for classes in partition.values():
        for cls in classes:
            for f in cls.members:
                class_of[f] = cls
    defects: List[ClassProductDefect] = []
    for a in spec.objects:
        for b in spec.objects:
            for left in partition.get((a, b), ()):
                for c in spec.objects:
                    for right in partition.get((b, c), ()):
                        met: Dict[MorphismClass, Tuple[MorphismId, MorphismId, MorphismId]] = {}
                        for f in left.sorted_members(spec):
                            for g in right.sorted_members(spec):
                                h = spec.compose(f, g)
                                met.setdefault(class_of[h], (f, g, h))
                        if len(met) >= 2:
                            defects.append(ClassProductDefect(left, right, tuple(met), tuple(met.values())))
    logger.info(f"Class products on {spec.name or '<unnamed>'}: {len(defects)} split product(s)")
    return defects


def class_product_defect(spec: FiniteCategorySpec, check_associativity: bool = True) -> Optional[ClassProductDefect]:
    """The first split class product in object/hom-set order, or None."""
    defects = class_product_defects(spec, check_associativity=check_associativity)
    return defects[0] if defects else None


def is_super_strong(spec: FiniteCategorySpec, q: QuotientCategory) -> List[SuperStrongViolation]:
    """Morphisms of ``spec`` that are not invertible although their class is invertible in ``q``."""
    violations: List[SuperStrongViolation] = []
    for cls in q.classes():
        if not q.is_invertible(cls):
            continue
        for f in cls.sorted_members(spec):
            if not spec.is_invertible(f):
                violations.append(SuperStrongViolation(f, cls.label))
    logger.info(f"Super-strong check: {len(violations)} violation(s)")
    return violations


def is_strong(spec: FiniteCategorySpec, q: QuotientCategory) -> List[MorphismClass]:
    """Invertible classes of ``q`` containing no invertible morphism of ``spec``."""
    return [
        cls for cls in q.classes()
        if q.is_invertible(cls) and not any(spec.is_invertible(f) for f in cls.sorted_members(spec))
    ]


def cantor_bernstein_check(q: QuotientCategory) -> List[CantorBernsteinViolation]:
    """
    Pairs of objects with morphisms both ways that are not isomorphic.

    For each unordered pair {a, b} with hom(a, b) and hom(b, a) nonempty, the
    unique classes must be mutually inverse, and some morphism a -> b of the
    underlying spec must be invertible.

    Raises:
        NonThinQuotientError: If some hom-set of ``q`` has two or more classes.
    """
    if not q.is_thin():
        raise NonThinQuotientError("Cantor-Bernstein check needs a thin quotient")
    violations: List[CantorBernsteinViolation] = []
    objects = q.objects
    for i, a in enumerate(objects):
        for b in objects[i + 1:]:
            forward, backward = q.hom(a, b), q.hom(b, a)
            if not forward or not backward:
                continue
            if not q.is_invertible(forward[0]):
                violations.append(CantorBernsteinViolation(a, b, "not isomorphic in the quotient"))
            elif not any(q.spec.is_invertible(f) for f in q.spec.hom(a, b)):
                violations.append(CantorBernsteinViolation(a, b, "no invertible morphism between them"))
    return violations
