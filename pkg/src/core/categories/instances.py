"""
Finite categories of finite sets.

Objects are the sets {1..k} for k = 1..max_size, named "set1", "set2", ...
A map is named by its source, target and value tuple, e.g.
"set2->set3:(1,3)" sends 1 to 1 and 2 to 3. Both instances designate all
bijections of a set as its inner automorphisms.

- finite_sets_injections_instance: injective maps only. Its quotient is the
  preorder of cardinals.
- finite_sets_all_maps_instance: every map. Products of classes modulo
  bijections can split here (two non-constant maps with a constant composite).
"""

import itertools
import re
from typing import Dict, List, Tuple

from src.core.categories.finite_category import FiniteCategorySpec, MorphismId
from src.core.utils.errors import SpecValidationError

_MAP_RE = re.compile(r"^set(\d+)->set(\d+):\(([\d,]*)\)$")


def object_name(k: int) -> str:
    return f"set{k}"


def map_id(source_size: int, target_size: int, values: Tuple[int, ...]) -> MorphismId:
    return f"{object_name(source_size)}->{object_name(target_size)}:({','.join(str(v) for v in values)})"


def map_values(f: MorphismId) -> Tuple[int, ...]:
    """Value tuple of a map identifier."""
    match = _MAP_RE.match(f)
    if not match:
        raise SpecValidationError(f"not a finite-set map identifier: {f!r}")
    return tuple(int(v) for v in match.group(3).split(",") if v)


def is_constant(f: MorphismId) -> bool:
    return len(set(map_values(f))) == 1


def _compose_maps(f: MorphismId, g: MorphismId) -> MorphismId:
    fm, gm = _MAP_RE.match(f), _MAP_RE.match(g)
    source, target = int(fm.group(1)), int(gm.group(2))
    f_values, g_values = map_values(f), map_values(g)
    return map_id(source, target, tuple(g_values[v - 1] for v in f_values))


def _sets_instance(max_size: int, injective_only: bool, name: str) -> FiniteCategorySpec:
    if max_size < 1:
        raise SpecValidationError(f"max_size must be at least 1, got {max_size}")
    sizes = range(1, max_size + 1)
    objects = tuple(object_name(k) for k in sizes)
    homs: Dict[Tuple[str, str], Tuple[MorphismId, ...]] = {}
    for m in sizes:
        for n in sizes:
            if injective_only:
                values = itertools.permutations(range(1, n + 1), m)
            else:
                values = itertools.product(range(1, n + 1), repeat=m)
            members = tuple(map_id(m, n, v) for v in values)
            if members:
                homs[(object_name(m), object_name(n))] = members
    identities = {object_name(k): map_id(k, k, tuple(range(1, k + 1))) for k in sizes}
    inner = {
        object_name(k): tuple(map_id(k, k, p) for p in itertools.permutations(range(1, k + 1)))
        for k in sizes
    }
    table = {}
    for (a, b), fs in homs.items():
        for (b2, c), gs in homs.items():
            if b2 != b:
                continue
            for f in fs:
                for g in gs:
                    table[(f, g)] = _compose_maps(f, g)
    return FiniteCategorySpec(objects, homs, table, identities, inner, name=name)


def finite_sets_injections_instance(max_size: int) -> FiniteCategorySpec:
    """
    Sets {1..k}, k <= max_size, with all injective maps; inner = all bijections.

    Raises:
        SpecValidationError: If max_size < 1.
    """
    return _sets_instance(max_size, injective_only=True, name=f"injections({max_size})")


def finite_sets_all_maps_instance(max_size: int) -> FiniteCategorySpec:
    """Sets {1..k}, k <= max_size, with all maps; inner = all bijections."""
    return _sets_instance(max_size, injective_only=False, name=f"all-maps({max_size})")


def walking_retraction_instance() -> Tuple[FiniteCategorySpec, Dict[Tuple[str, str], List[List[MorphismId]]]]:
    """
    Objects a, b with f: a -> b and g: b -> a such that f then g then f = f and g then f then g = g.

    Returns the spec (trivial inner families) and a thin partition of its
    hom-sets that identifies each idempotent with the identity. In the
    resulting quotient a and b are isomorphic although neither f nor g is
    invertible.
    """
    homs = {
        ("a", "a"): ("id_a", "e_a"),
        ("a", "b"): ("f",),
        ("b", "a"): ("g",),
        ("b", "b"): ("id_b", "e_b"),
    }
    idempotent_rules = {
        ("f", "g"): "e_a", ("g", "f"): "e_b",
        ("e_a", "e_a"): "e_a", ("e_b", "e_b"): "e_b",
        ("e_a", "f"): "f", ("f", "e_b"): "f",
        ("e_b", "g"): "g", ("g", "e_a"): "g",
    }

    table = {}
    for (x, y), fs in homs.items():
        for (y2, _), gs in homs.items():
            if y2 != y:
                continue
            for f in fs:
                for g in gs:
                    if f.startswith("id_"):
                        table[(f, g)] = g
                    elif g.startswith("id_"):
                        table[(f, g)] = f
                    else:
                        table[(f, g)] = idempotent_rules[(f, g)]
    spec = FiniteCategorySpec(
        objects=("a", "b"),
        homs=homs,
        composition=table,
        identities={"a": "id_a", "b": "id_b"},
        name="walking-retraction",
    )
    partition = {
        ("a", "a"): [["id_a", "e_a"]],
        ("a", "b"): [["f"]],
        ("b", "a"): [["g"]],
        ("b", "b"): [["id_b", "e_b"]],
    }
    return spec, partition
