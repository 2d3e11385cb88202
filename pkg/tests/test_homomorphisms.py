import pytest

from src.core.permgrp.groups import alternating_group, alternating_product, symmetric_group
from src.core.permgrp.homomorphisms import (
    GroupHom,
    enumerate_homs,
    generalized_inner_equivalent,
    hom_from_generator_images,
    identity_hom,
    inner_automorphism,
    inner_equivalent,
    standard_embedding,
    trivial_hom,
)
from src.core.permgrp.permutations import cycle_notation, from_cycles, identity_permutation
from src.core.utils.errors import PreconditionError, SpecValidationError


def test_hom_counts_from_a3():
    """A3 is cyclic of order 3: homs correspond to elements of order 1 or 3."""
    a3 = alternating_group(3)
    assert len(enumerate_homs(a3, alternating_group(4))) == 9
    assert len(enumerate_homs(a3, alternating_group(6))) == 81


def test_trivial_map_is_valid():
    a3, a6 = alternating_group(3), alternating_group(6)
    f = hom_from_generator_images(a3, a6, [a6.identity])
    assert f is not None
    assert f == trivial_hom(a3, a6)
    assert f.is_trivial()


def test_inclusion_a3_a6_is_valid():
    a3, a6 = alternating_group(3), alternating_group(6)
    f = hom_from_generator_images(a3, a6, [from_cycles([(1, 2, 3)], 6)])
    assert f == standard_embedding(3, 6, 1)
    assert f.is_injective()


def test_order_obstruction_gives_none():
    a3, a4 = alternating_group(3), alternating_group(4)
    assert hom_from_generator_images(a3, a4, [from_cycles([(1, 2), (3, 4)], 4)]) is None


def test_generator_image_validation():
    a3, a4 = alternating_group(3), alternating_group(4)
    with pytest.raises(SpecValidationError):
        hom_from_generator_images(a3, a4, [])
    with pytest.raises(SpecValidationError):
        hom_from_generator_images(a3, a4, [from_cycles([(1, 2, 3)], 5)])
    with pytest.raises(SpecValidationError):
        hom_from_generator_images(a3, a4, [from_cycles([(1, 2)], 4)])


def test_explicit_table_checked_against_the_law():
    a3, s3 = alternating_group(3), symmetric_group(3)
    bad = {x: s3.elements[1] for x in a3.elements}
    with pytest.raises(SpecValidationError):
        GroupHom(a3, s3, bad)


def test_standard_embedding_images():
    f = standard_embedding(5, 10, 2)
    five_cycle = alternating_group(5).generators[1]
    assert cycle_notation(f(five_cycle)) == "(1 2 3 4 5)(6 7 8 9 10)"
    assert standard_embedding(3, 7, 0).is_trivial()
    with pytest.raises(ValueError):
        standard_embedding(3, 6, 3)


def test_composition_then():
    e1 = standard_embedding(3, 4, 1)
    e2 = standard_embedding(4, 6, 1)
    three_cycle = alternating_group(3).generators[0]
    assert e1.then(e2)(three_cycle) == from_cycles([(1, 2, 3)], 6)
    with pytest.raises(SpecValidationError):
        e2.then(e1)


def test_inner_equivalent_recovers_a_conjugator():
    f = standard_embedding(3, 6, 1)
    h = from_cycles([(1, 2), (3, 4)], 6)
    g = f.conjugated_by(h)
    found = inner_equivalent(f, g)
    assert found is not None
    assert f.conjugated_by(found) == g


def test_inner_equivalent_of_a_hom_with_itself_is_identity():
    f = standard_embedding(3, 6, 1)
    assert inner_equivalent(f, f) == identity_permutation(6)


def test_different_multiplicities_are_not_conjugate():
    f = standard_embedding(3, 7, 1)
    g = standard_embedding(3, 7, 2)
    assert inner_equivalent(f, g) is None
    assert generalized_inner_equivalent(f, g) is None


def test_domain_side_reduces_to_codomain_side():
    """(conj_h then f) equals f then conj_{f(h)} for every h in the source."""
    f = standard_embedding(4, 6, 1)
    a4 = f.source
    for h in a4.elements:
        assert inner_automorphism(a4, h).then(f) == f.conjugated_by(f(h))


def test_generalized_conjugator_may_be_odd():
    a3, a4 = alternating_group(3), alternating_group(4)
    f = standard_embedding(3, 4, 1)
    g = hom_from_generator_images(a3, a4, [from_cycles([(1, 3, 2)], 4)])
    assert inner_equivalent(f, g) is None
    witness = generalized_inner_equivalent(f, g)
    assert witness is not None
    assert witness.component_parities == (False,)
    assert not witness.is_inner
    assert f.conjugated_by(witness.conjugator) == g


def test_conjugation_leaving_the_target_is_rejected():
    f = identity_hom(alternating_product([3, 3]))
    swapped = f.conjugated_by(from_cycles([(1, 4), (2, 5), (3, 6)], 6))
    first, second = f.source.generators
    assert swapped(first) == second
    with pytest.raises(PreconditionError):
        f.conjugated_by(from_cycles([(1, 4)], 6))


def test_inner_automorphism_inverse():
    a5 = alternating_group(5)
    f = inner_automorphism(a5, from_cycles([(1, 2)], 5))
    assert f.then(f.inverse()) == identity_hom(a5)
    with pytest.raises(PreconditionError):
        trivial_hom(a5, a5).inverse()


def test_to_dict_lists_generator_images():
    data = standard_embedding(3, 6, 2).to_dict()
    assert data["source"] == "A3"
    assert data["target"] == "A6"
    assert data["generator_images"] == ["(1 2 3)(4 5 6)"]
    assert data["generator_image_arrays"] == [[2, 3, 1, 5, 6, 4]]
