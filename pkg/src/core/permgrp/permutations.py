"""
Permutation helpers on top of sympy.

Permutations are sympy ``Permutation`` objects acting on points 0..n-1
internally; everything user-facing (cycle notation, image arrays, JSON) uses
points 1..n. sympy multiplies left to right, so ``p * q`` means "p then q",
which is the composition order used throughout the toolkit, and
``x ^ h`` is ``~h * x * h``: conjugation relabels every symbol s of x as h(s).
"""

import re
from typing import List, Sequence, Tuple

from sympy.combinatorics import Permutation

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity_permutation(degree: int) -> Permutation:
    """Identity on ``degree`` points."""
    if degree < 1:
        raise ValueError("degree must be positive")
    return Permutation(list(range(degree)))


def from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
    """
    Build a permutation from 1-based cycles.

    Args:
        cycles: Cycles on points 1..degree, e.g. ``[(1, 2, 3), (4, 5, 6)]``.
        degree: Number of points acted on.

    Returns:
        Permutation: The product of the (disjoint) cycles.

    Raises:
        ValueError: If a point is outside 1..degree or appears twice.
    """
    seen = set()
    zero_based: List[List[int]] = []
    for cycle in cycles:
        for point in cycle:
            if not 1 <= point <= degree:
                raise ValueError(f"point {point} outside 1..{degree}")
            if point in seen:
                raise ValueError(f"point {point} appears in two cycles")
            seen.add(point)
        if len(cycle) > 1:
            zero_based.append([point - 1 for point in cycle])
    if not zero_based:
        return identity_permutation(degree)
    return Permutation(zero_based, size=degree)


def image_array(p: Permutation) -> List[int]:
    """1-based image array of ``p``."""
    return [image + 1 for image in p.array_form]


def parse_cycles(text: str, degree: int) -> Permutation:
    """
    Parse cycle notation such as ``"(1 2 3)(4 5 6)"`` or the compact ``"(123)(456)"``.

    Compact cycles (no separators) read one digit per point, so they are only
    unambiguous for degree at most 9. ``"()"`` and ``"e"`` denote the identity.
    """
    stripped = text.strip()
    if stripped in ("", "()", "e", "id"):
        return identity_permutation(degree)
    if _CYCLE_RE.sub("", stripped).strip():
        raise ValueError(f"Invalid cycle notation: {text!r}")
    cycles: List[Tuple[int, ...]] = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            points = tuple(int(token) for token in re.split(r"[\s,]+", body) if token)
        else:
            if degree > 9:
                raise ValueError(f"Compact cycle {body!r} is ambiguous for degree {degree}")
            points = tuple(int(ch) for ch in body)
        cycles.append(points)
    return from_cycles(cycles, degree)


def cycle_notation(p: Permutation) -> str:
    """1-based cycle notation with spaces, ``"()"`` for the identity."""
    cycles = p.cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(point + 1) for point in cycle) + ")" for cycle in cycles)


def cycle_type(p: Permutation) -> Tuple[int, ...]:
    """Sorted lengths of the nontrivial cycles, e.g. ``(3, 3)`` for (123)(456)."""
    return tuple(sorted(len(cycle) for cycle in p.cyclic_form))


def shift(p: Permutation, offset: int, degree: int) -> Permutation:
    """Copy of ``p`` acting on points offset..offset+size-1 of a set of ``degree`` points."""
    if offset + p.size > degree:
        raise ValueError(f"cannot shift a degree-{p.size} permutation by {offset} into degree {degree}")
    images = list(range(degree))
    for point, image in enumerate(p.array_form):
        images[offset + point] = offset + image
    return Permutation(images)
