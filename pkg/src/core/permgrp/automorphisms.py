"""
Automorphism search and the non-closure report for A3 -> A6 -> A7.

Automorphisms are found by generator-image search: each generator may only
go to elements of the same order and the same conjugacy-class size, the
candidate images are extended along the Cayley graph, and a consistent
extension is kept when it is a bijection. For A6 this visits 80 x 144
candidate pairs and finds 1440 automorphisms, twice |S6|; the extra ones send
3-cycles to products of two disjoint 3-cycles.

The non-closure report uses such an automorphism to show that composing
classes of maps modulo automorphisms is not well defined: the straight and
twisted composites A3 -> A7 below are both composites of class members, but
one sends (1 2 3) to a 3-cycle and the other to a product of two 3-cycles.
"""

import itertools
import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy.combinatorics import Permutation

from src.core.permgrp.groups import FiniteGroup, GroupKind, alternating_group
from src.core.permgrp.homomorphisms import (
    GeneralizedConjugator,
    GroupHom,
    extend_generator_images,
    generalized_inner_equivalent,
    inner_equivalent,
    standard_embedding,
)
from src.core.permgrp.permutations import cycle_notation, cycle_type, from_cycles
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import CapExceededError

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

_AUTOMORPHISM_CACHE: Dict[GroupKind, Tuple[GroupHom, ...]] = {}
_CACHE_LOCK = threading.Lock()


def automorphisms(group: FiniteGroup, config: Optional[ToolkitConfig] = None) -> List[GroupHom]:
    """
    All automorphisms of ``group`` in generator-image enumeration order.

    Args:
        group: An enumerated group.
        config: Supplies automorphism_cap.

    Returns:
        List[GroupHom]: The automorphisms; the identity is among them.

    Raises:
        CapExceededError: If |group| exceeds the automorphism cap.
    """
    cfg = resolve_config(config)
    if group.order() > cfg.automorphism_cap:
        raise CapExceededError(
            f"Aut({group.label}): order {group.order()} exceeds automorphism cap {cfg.automorphism_cap}"
        )
    with _CACHE_LOCK:
        cached = _AUTOMORPHISM_CACHE.get(group.kind)
    if cached is not None:
        return list(cached)

    candidates = [
        [
            y for y in group.elements
            if group.element_order(y) == group.element_order(s) and group.class_size(y) == group.class_size(s)
        ]
        for s in group.generators
    ]
    logger.info(
        f"Searching Aut({group.label}) over {'x'.join(str(len(c)) for c in candidates) or '1'} candidates"
    )
    found: List[GroupHom] = []
    n = group.order()
    for combo in itertools.product(*candidates):
        table = extend_generator_images(group, group, combo)
        if table is None:
            continue
        if len(set(table.values())) != n:
            continue
        found.append(GroupHom(group, group, table, verify=False))
    logger.info(f"|Aut({group.label})| = {len(found)}")
    with _CACHE_LOCK:
        _AUTOMORPHISM_CACHE[group.kind] = tuple(found)
    return found


def find_exceptional_a6_automorphism(config: Optional[ToolkitConfig] = None) -> GroupHom:
    """
    An automorphism of A6 sending (1 2 3) to (1 2 3)(4 5 6).

    Raises:
        RuntimeError: If the search finds none, which means the search itself is broken.
    """
    a6 = alternating_group(6, config=config)
    three_cycle = from_cycles([(1, 2, 3)], 6)
    double = from_cycles([(1, 2, 3), (4, 5, 6)], 6)
    for sigma in automorphisms(a6, config=config):
        if sigma(three_cycle) == double:
            logger.info(f"Exceptional automorphism: {sigma.describe()}")
            return sigma
    raise RuntimeError("no automorphism of A6 sends (1 2 3) to (1 2 3)(4 5 6); the automorphism search is broken")


@dataclass(frozen=True)
class NonclosureReport:
    """
    Evidence that a product of classes modulo automorphisms can contain two classes.

    Attributes:
        first_embedding: e1: A3 -> A6 on the first three symbols.
        second_embedding: e2: A6 -> A7 on the first six symbols.
        exceptional: sigma in Aut(A6) with sigma((1 2 3)) = (1 2 3)(4 5 6).
        twisted_factor: e1 then sigma, a member of e1's class modulo Aut(A6).
        straight: e1 then e2.
        twisted: e1 then sigma then e2.
        straight_cycle_type / twisted_cycle_type: cycle types of the images of (1 2 3).
        inner_conjugator: result of the conjugator search over A7 (None expected).
        generalized_conjugator: result of the search over S7 = Aut(A7) (None expected).
        search_bound / generalized_search_bound: sizes of the two searched groups.
    """

    first_embedding: GroupHom
    second_embedding: GroupHom
    exceptional: GroupHom
    twisted_factor: GroupHom
    straight: GroupHom
    twisted: GroupHom
    straight_cycle_type: Tuple[int, ...]
    twisted_cycle_type: Tuple[int, ...]
    inner_conjugator: Optional[Permutation]
    generalized_conjugator: Optional[GeneralizedConjugator]
    search_bound: int
    generalized_search_bound: int

    @property
    def class_product_membership(self) -> bool:
        """Both composites are composites of members of class(e1) x class(e2)."""
        straight_ok = self.straight == self.first_embedding.then(self.second_embedding)
        twisted_ok = (
            self.twisted_factor == self.first_embedding.then(self.exceptional)
            and self.twisted == self.twisted_factor.then(self.second_embedding)
        )
        return straight_ok and twisted_ok

    @property
    def cycle_types_differ(self) -> bool:
        return self.straight_cycle_type != self.twisted_cycle_type

    @property
    def verified(self) -> bool:
        return (
            self.class_product_membership
            and self.cycle_types_differ
            and self.inner_conjugator is None
            and self.generalized_conjugator is None
        )

    def to_dict(self) -> dict:
        three_cycle = self.first_embedding.source.generators[0]
        return {
            "first_embedding": self.first_embedding.to_dict(),
            "second_embedding": self.second_embedding.to_dict(),
            "exceptional": self.exceptional.to_dict(),
            "exceptional_sends": {
                "from": "(1 2 3)",
                "to": cycle_notation(self.exceptional(from_cycles([(1, 2, 3)], 6))),
            },
            "straight": self.straight.to_dict(),
            "twisted": self.twisted.to_dict(),
            "straight_image": cycle_notation(self.straight(three_cycle)),
            "twisted_image": cycle_notation(self.twisted(three_cycle)),
            "straight_cycle_type": list(self.straight_cycle_type),
            "twisted_cycle_type": list(self.twisted_cycle_type),
            "class_product_membership": self.class_product_membership,
            "inner_conjugator": None if self.inner_conjugator is None else cycle_notation(self.inner_conjugator),
            "generalized_conjugator": None if self.generalized_conjugator is None
            else self.generalized_conjugator.to_dict(),
            "search_bound": self.search_bound,
            "generalized_search_bound": self.generalized_search_bound,
            "verified": self.verified,
        }


def verify_nonclosure_A3_A6_A7(config: Optional[ToolkitConfig] = None) -> NonclosureReport:
    """
    Build the A3 -> A6 -> A7 non-closure report.

    Process:
    1. e1 = standard_embedding(3, 6, 1), e2 = standard_embedding(6, 7, 1).
    2. sigma = find_exceptional_a6_automorphism().
    3. Compare e1 then e2 with e1 then sigma then e2: cycle types and conjugator searches over A7 and S7.
    """
    cfg = resolve_config(config)
    e1 = standard_embedding(3, 6, 1, config=cfg)
    e2 = standard_embedding(6, 7, 1, config=cfg)
    sigma = find_exceptional_a6_automorphism(config=cfg)
    twisted_factor = e1.then(sigma)
    straight = e1.then(e2)
    twisted = twisted_factor.then(e2)
    three_cycle = e1.source.generators[0]
    a7 = alternating_group(7, config=cfg)
    report = NonclosureReport(
        first_embedding=e1,
        second_embedding=e2,
        exceptional=sigma,
        twisted_factor=twisted_factor,
        straight=straight,
        twisted=twisted,
        straight_cycle_type=cycle_type(straight(three_cycle)),
        twisted_cycle_type=cycle_type(twisted(three_cycle)),
        inner_conjugator=inner_equivalent(straight, twisted),
        generalized_conjugator=generalized_inner_equivalent(straight, twisted, config=cfg),
        search_bound=a7.order(),
        generalized_search_bound=a7.order() * 2,
    )
    if report.verified:
        logger.info(
            f"Non-closure verified: (1 2 3) -> {cycle_notation(straight(three_cycle))} vs "
            f"{cycle_notation(twisted(three_cycle))}"
        )
    else:
        logger.error("Non-closure report failed to verify")
    return report
