"""
Explicit finite categories with a designated family of inner automorphisms.

A FiniteCategorySpec lists its objects, the morphism identifiers of every
hom-set, the composition table, one identity per object and, per object, a
set of designated inner automorphisms. Composition is written "f then g":
the entry for (f, g) is defined when target(f) = source(g) and is a morphism
source(f) -> target(g).

Generated instances with many composable pairs may back the table with a
LazyCompositionTable, which computes an entry on first lookup and caches it.
Iterating such a table still walks every composable pair, so it behaves as
the total finite table it stands for.
"""

import logging
import threading
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.core.utils.errors import SpecValidationError

logger = logging.getLogger(__name__)

ObjectId = str
MorphismId = str
Pair = Tuple[MorphismId, MorphismId]

MAX_REPORTED_PROBLEMS = 50


class LazyCompositionTable(Mapping):
    """
    Composition table whose entries are computed on first access.

    Args:
        composer: Returns the identifier of ``f then g`` for a composable pair.
        pairs: Zero-argument callable yielding every composable pair, in order.
    """

    def __init__(self, composer: Callable[[MorphismId, MorphismId], MorphismId],
                 pairs: Callable[[], Iterable[Pair]]):
        self._composer = composer
        self._pairs = pairs
        self._cache: Dict[Pair, MorphismId] = {}
        self._lock = threading.Lock()

    def __getitem__(self, key: Pair) -> MorphismId:
        with self._lock:
            value = self._cache.get(key)
        if value is None:
            # composed outside the lock; the first stored value wins
            value = self._composer(*key)
            with self._lock:
                value = self._cache.setdefault(key, value)
        return value

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._pairs())

    def __len__(self) -> int:
        return sum(1 for _ in self._pairs())

    def __contains__(self, key) -> bool:
        try:
            self[key]
        except (KeyError, SpecValidationError):
            return False
        return True


def iter_composable_pairs(objects: Sequence[ObjectId],
                          homs: Mapping[Tuple[ObjectId, ObjectId], Sequence[MorphismId]]) -> Iterator[Pair]:
    """Composable pairs of a table of hom-sets, in the order FiniteCategorySpec.composable_pairs uses."""
    for a in objects:
        for b in objects:
            for f in homs.get((a, b), ()):
                for c in objects:
                    for g in homs.get((b, c), ()):
                        yield f, g


@dataclass(frozen=True, eq=False)
class FiniteCategorySpec:
    """
    A finite category given by tables.

    Attributes:
        objects: Object identifiers in a fixed order.
        homs: (source, target) -> morphism identifiers; missing pairs are empty hom-sets.
        composition: (f, g) -> identifier of ``f then g``, total on composable pairs.
        identities: object -> identity morphism.
        inner: object -> designated inner automorphisms (defaults to the identity alone).
        name: Free-form label used in logs and JSON.
    """

    objects: Tuple[ObjectId, ...]
    homs: Mapping[Tuple[ObjectId, ObjectId], Tuple[MorphismId, ...]]
    composition: Mapping[Pair, MorphismId]
    identities: Mapping[ObjectId, MorphismId]
    inner: Mapping[ObjectId, Tuple[MorphismId, ...]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        objects = tuple(self.objects)
        if len(set(objects)) != len(objects):
            raise SpecValidationError("duplicate object identifiers")
        known = set(objects)
        homs: Dict[Tuple[ObjectId, ObjectId], Tuple[MorphismId, ...]] = {}
        for (a, b), members in self.homs.items():
            if a not in known or b not in known:
                raise SpecValidationError(f"hom-set ({a}, {b}) mentions an unknown object")
            if members:
                homs[(a, b)] = tuple(members)
        for a in self.identities:
            if a not in known:
                raise SpecValidationError(f"identity given for unknown object {a}")
        inner: Dict[ObjectId, Tuple[MorphismId, ...]] = {}
        for a in objects:
            if a in self.inner:
                inner[a] = tuple(self.inner[a])
            elif a in self.identities:
                inner[a] = (self.identities[a],)
            else:
                inner[a] = ()
        unknown_inner = [a for a in self.inner if a not in known]
        if unknown_inner:
            raise SpecValidationError(f"inner family given for unknown objects {unknown_inner}")

        source: Dict[MorphismId, ObjectId] = {}
        target: Dict[MorphismId, ObjectId] = {}
        duplicates: List[MorphismId] = []
        outgoing: Dict[ObjectId, List[MorphismId]] = {a: [] for a in objects}
        for a in objects:
            for b in objects:
                for f in homs.get((a, b), ()):
                    if f in source:
                        duplicates.append(f)
                        continue
                    source[f] = a
                    target[f] = b
                    outgoing[a].append(f)

        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "homs", homs)
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "_source", source)
        object.__setattr__(self, "_target", target)
        object.__setattr__(self, "_outgoing", {a: tuple(fs) for a, fs in outgoing.items()})
        object.__setattr__(self, "_duplicates", tuple(duplicates))

    # -- lookup -----------------------------------------------------------

    def hom(self, a: ObjectId, b: ObjectId) -> Tuple[MorphismId, ...]:
        return self.homs.get((a, b), ())

    def morphisms(self) -> Iterator[MorphismId]:
        for a in self.objects:
            yield from self._outgoing[a]

    def morphism_count(self) -> int:
        return len(self._source)

    def has_morphism(self, f: MorphismId) -> bool:
        return f in self._source

    def source(self, f: MorphismId) -> ObjectId:
        try:
            return self._source[f]
        except KeyError:
            raise SpecValidationError(f"unknown morphism {f!r}")

    def target(self, f: MorphismId) -> ObjectId:
        try:
            return self._target[f]
        except KeyError:
            raise SpecValidationError(f"unknown morphism {f!r}")

    def outgoing(self, a: ObjectId) -> Tuple[MorphismId, ...]:
        """All morphisms with source ``a``, in hom-set order."""
        return self._outgoing[a]

    def identity(self, a: ObjectId) -> MorphismId:
        try:
            return self.identities[a]
        except KeyError:
            raise SpecValidationError(f"no identity for object {a}")

    def compose(self, f: MorphismId, g: MorphismId) -> MorphismId:
        """``f then g``."""
        if self.target(f) != self.source(g):
            raise SpecValidationError(f"{f} and {g} are not composable")
        try:
            return self.composition[(f, g)]
        except KeyError:
            raise SpecValidationError(f"composition table has no entry for ({f}, {g})")

    def composable_pairs(self) -> Iterator[Pair]:
        for f in self.morphisms():
            for g in self._outgoing[self._target[f]]:
                yield f, g

    # -- invertibility ----------------------------------------------------

    def inverse(self, f: MorphismId) -> Optional[MorphismId]:
        """The two-sided inverse of ``f``, or None."""
        a, b = self.source(f), self.target(f)
        id_a, id_b = self.identity(a), self.identity(b)
        for g in self.hom(b, a):
            if self.compose(f, g) == id_a and self.compose(g, f) == id_b:
                return g
        return None

    def is_invertible(self, f: MorphismId) -> bool:
        return self.inverse(f) is not None

    def automorphisms(self, a: ObjectId) -> Tuple[MorphismId, ...]:
        return tuple(f for f in self.hom(a, a) if self.is_invertible(f))

    # -- derived specs ----------------------------------------------------

    def with_inner(self, inner: Mapping[ObjectId, Sequence[MorphismId]]) -> "FiniteCategorySpec":
        return replace(self, inner={a: tuple(members) for a, members in inner.items()})

    def materialized(self) -> "FiniteCategorySpec":
        """Copy with the composition table computed into a plain dict."""
        table = {pair: self.compose(*pair) for pair in self.composable_pairs()}
        return replace(self, composition=table)


def opposite(spec: FiniteCategorySpec) -> FiniteCategorySpec:
    """The opposite category: same identifiers, hom(a, b) of the result is hom(b, a), f then_op g = g then f."""
    homs = {(b, a): members for (a, b), members in spec.homs.items()}

    def composer(f: MorphismId, g: MorphismId) -> MorphismId:
        return spec.compose(g, f)

    def pairs() -> Iterator[Pair]:
        for g, f in spec.composable_pairs():
            yield f, g

    return FiniteCategorySpec(
        objects=spec.objects,
        homs=homs,
        composition=LazyCompositionTable(composer, pairs),
        identities=spec.identities,
        inner=spec.inner,
        name=f"op({spec.name})" if spec.name else "op",
    )


def category_law_violations(spec: FiniteCategorySpec, check_associativity: bool = True) -> List[str]:
    """
    Every category-law problem of ``spec``, as readable strings.

    Checks duplicated identifiers, identities, totality and typing of the
    composition table, both identity laws, associativity on every composable
    triple (optional) and that designated inner elements are invertible
    endomorphisms.
    """
    problems: List[str] = []

    def report(message: str) -> bool:
        problems.append(message)
        return len(problems) >= MAX_REPORTED_PROBLEMS

    for f in spec._duplicates:
        if report(f"morphism {f} appears in more than one hom-set"):
            return problems
    for a in spec.objects:
        ident = spec.identities.get(a)
        if ident is None:
            if report(f"object {a} has no identity"):
                return problems
        elif ident not in spec.hom(a, a):
            if report(f"identity {ident} of {a} is not in hom({a}, {a})"):
                return problems
    if problems:
        return problems

    table: Dict[Pair, MorphismId] = {}
    for f, g in spec.composable_pairs():
        try:
            h = spec.composition[(f, g)]
        except KeyError:
            if report(f"missing composite ({f}, {g})"):
                return problems
            continue
        if not spec.has_morphism(h) or spec.source(h) != spec.source(f) or spec.target(h) != spec.target(g):
            if report(f"composite of ({f}, {g}) is {h}, not a morphism {spec.source(f)} -> {spec.target(g)}"):
                return problems
            continue
        table[(f, g)] = h
    if problems:
        return problems

    for f in spec.morphisms():
        a, b = spec.source(f), spec.target(f)
        if table[(spec.identities[a], f)] != f or table[(f, spec.identities[b])] != f:
            if report(f"identity law fails for {f}"):
                return problems

    if check_associativity:
        for (f, g), fg in table.items():
            for h in spec.outgoing(spec.target(g)):
                if table[(fg, h)] != table[(f, table[(g, h)])]:
                    if report(f"associativity fails for ({f}, {g}, {h})"):
                        return problems

    for a in spec.objects:
        for h in spec.inner[a]:
            if h not in spec.hom(a, a):
                if report(f"inner element {h} of {a} is not an endomorphism of {a}"):
                    return problems
            elif not spec.is_invertible(h):
                if report(f"inner element {h} of {a} is not invertible"):
                    return problems
    return problems


def validate_category(spec: FiniteCategorySpec, check_associativity: bool = True) -> None:
    """
    Raise SpecValidationError listing every category-law problem of ``spec``.

    Args:
        spec: The category to check.
        check_associativity: Walk all composable triples (the expensive part).
    """
    problems = category_law_violations(spec, check_associativity=check_associativity)
    if problems:
        logger.error(f"Spec {spec.name or '<unnamed>'} failed validation with {len(problems)} problem(s)")
        raise SpecValidationError(f"invalid category spec {spec.name or '<unnamed>'}", problems)
    logger.debug(f"Spec {spec.name or '<unnamed>'} passed validation")
