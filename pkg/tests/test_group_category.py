from fractions import Fraction

import pytest

from src.core.categories.finite_category import category_law_violations
from src.core.categories.quotient import is_super_strong, quotient, verify_inner_axiom
from src.core.metric.metric_space import metric_axiom_violations, verify_isometry
from src.core.permgrp.group_category import (
    GENERALIZED,
    a5_twisted_problem,
    endomorphism_category,
    group_as_category,
    group_hom_category,
    morphism_id,
)
from src.core.permgrp.groups import alternating_group
from src.core.permgrp.homomorphisms import inner_automorphism, standard_embedding, trivial_hom
from src.core.permgrp.permutations import from_cycles
from src.core.utils.errors import SpecValidationError


@pytest.fixture
def a3_a4_category():
    a3, a4 = alternating_group(3), alternating_group(4)
    return group_hom_category([a3, a4], [standard_embedding(3, 4, 1)], name="A3-A4")


class TestGroupHomCategory:
    def test_hom_set_sizes(self, a3_a4_category):
        spec = a3_a4_category.spec
        assert len(spec.hom("A3", "A3")) == 1
        # (1 2 3) has 4 conjugates in A4
        assert len(spec.hom("A3", "A4")) == 4
        assert len(spec.hom("A4", "A4")) == 12
        assert spec.hom("A4", "A3") == ()

    def test_morphism_ids_encode_generator_images(self, a3_a4_category):
        e = standard_embedding(3, 4, 1)
        assert morphism_id(e) == "A3->A4[(1 2 3)]"
        assert a3_a4_category.id_of(e) == "A3->A4[(1 2 3)]"
        assert a3_a4_category.hom_of("A3->A4[(1 2 3)]") == e

    def test_is_a_valid_category_with_quotient(self, a3_a4_category):
        spec = a3_a4_category.spec
        assert category_law_violations(spec) == []
        assert verify_inner_axiom(spec) == []
        q = quotient(spec)
        assert q.class_count() == 3
        assert q.is_thin()

    def test_composition_matches_hom_composition(self, a3_a4_category):
        spec = a3_a4_category.spec
        e = standard_embedding(3, 4, 1)
        for k in spec.inner["A4"]:
            expected = e.then(a3_a4_category.hom_of(k))
            assert spec.compose(morphism_id(e), k) == morphism_id(expected)

    def test_unknown_morphisms_rejected(self, a3_a4_category):
        with pytest.raises(SpecValidationError):
            a3_a4_category.hom_of("A3->A4[(1 2)]")
        with pytest.raises(SpecValidationError):
            a3_a4_category.id_of(trivial_hom(alternating_group(3), alternating_group(4)))

    def test_generating_hom_outside_the_groups(self):
        with pytest.raises(SpecValidationError):
            group_hom_category([alternating_group(3)], [standard_embedding(3, 4, 1)])

    def test_unknown_inner_family(self):
        with pytest.raises(ValueError):
            group_hom_category([alternating_group(3)], inner="outer")

    def test_generalized_inner_family(self):
        a3, a4 = alternating_group(3), alternating_group(4)
        category = group_hom_category([a3, a4], [standard_embedding(3, 4, 1)], inner=GENERALIZED)
        spec = category.spec
        assert len(spec.hom("A3", "A3")) == 2
        assert len(spec.hom("A3", "A4")) == 8
        assert len(spec.inner["A4"]) == 24
        assert quotient(spec).class_count() == 3


class TestMetrics:
    def test_weighted_metric_on_a3(self, a3_a4_category):
        """Two maps out of A3 that only agree on the identity are 1/4 + 1/8 apart."""
        u, v = a3_a4_category.spec.hom("A3", "A4")[:2]
        assert a3_a4_category.distance("A3", "A4")(u, v) == Fraction(3, 8)

    def test_hom_space_is_a_metric_with_isometric_inner_action(self, a3_a4_category):
        space = a3_a4_category.metric_space("A3", "A4")
        assert metric_axiom_violations(space) == []
        assert verify_isometry(space, a3_a4_category.spec.inner["A4"]) == []


def test_endomorphisms_of_a3():
    category = endomorphism_category(alternating_group(3))
    spec = category.spec
    assert spec.morphism_count() == 3
    q = quotient(spec)
    assert q.class_count() == 3
    assert is_super_strong(spec, q) == []


def test_group_as_one_object_category():
    spec = group_as_category(alternating_group(3))
    assert spec.morphism_count() == 3
    assert spec.compose("(1 2 3)", "(1 2 3)") == "(1 3 2)"
    assert category_law_violations(spec) == []
    assert quotient(spec).class_count() == 1


def test_a5_twisted_problem_setup():
    category, problem = a5_twisted_problem()
    spec = category.spec
    assert len(spec.inner["A5"]) == 60
    # conjugations by all of S5
    assert len(spec.hom("A5", "A5")) == 120
    f1 = inner_automorphism(alternating_group(5), from_cycles([(1, 2)], 5))
    assert problem.forward == morphism_id(f1)
    assert category.hom_of(problem.backward) == f1.inverse().conjugated_by(from_cycles([(1, 2, 3, 4, 5)], 5))
