"""
Acceptance scenarios for the classification toolkit.

Each class is one end-to-end scenario over exact finite instances. Heavy
enumerations are additionally marked ``slow``; run them with
``python scripts/dev.py acceptance``.
"""

import itertools
import logging
from fractions import Fraction

import numpy as np
import pytest

from src.core.bratteli.diagram import stationary_diagram, telescope
from src.core.bratteli.equivalence import DISTINCT, check_divisibility_certificate, equivalent
from src.core.bratteli.intertwining import check_intertwining, find_intertwining
from src.core.categories.instances import (
    finite_sets_all_maps_instance,
    finite_sets_injections_instance,
    is_constant,
    walking_retraction_instance,
)
from src.core.categories.quotient import (
    QuotientCategory,
    cantor_bernstein_check,
    class_product_defect,
    is_super_strong,
    quotient,
    verify_inner_axiom,
)
from src.core.matcat.matrix_category import (
    AlgebraObject,
    compose,
    enumerate_homs as enumerate_matrix_homs,
    export_as_spec,
    hom_exists,
    is_isomorphism,
    morphism_from_id,
    objects_up_to,
)
from src.core.metric.intertwine import IntertwiningProblem, IntertwiningResult, approximate_intertwine
from src.core.metric.metric_space import metric_axiom_violations, verify_isometry
from src.core.permgrp.automorphisms import automorphisms, verify_nonclosure_A3_A6_A7
from src.core.permgrp.blocks import (
    block_data_of,
    diagonal_conjugator,
    is_diagonal,
    multiplicity_of,
    reducibility_for,
)
from src.core.permgrp.group_category import (
    GENERALIZED,
    a5_twisted_problem,
    endomorphism_category,
    group_hom_category,
)
from src.core.permgrp.groups import alternating_group
from src.core.permgrp.homomorphisms import (
    GroupHom,
    enumerate_homs,
    extend_generator_images,
    identity_hom,
    standard_embedding,
    trivial_hom,
)
from src.core.permgrp.permutations import cycle_type, from_cycles
from src.core.utils.errors import NonDiagonalHomError, NotMutuallyInverseError

pytestmark = pytest.mark.acceptance

scenario_logger = logging.getLogger("AcceptanceScenarios")


def assert_well_defined_quotient(spec, check_associativity=True):
    """Axiom holds, the quotient builds, and every class product is a single class."""
    assert verify_inner_axiom(spec, check_associativity=check_associativity) == []
    q = quotient(spec, check_associativity=check_associativity)
    for left in q.classes():
        for c in q.objects:
            for right in q.hom(left.target, c):
                assert len(q.class_product(left, right)) == 1
    return q


class TestQuotientWellDefined:
    def test_twisted_a5_category(self):
        scenario_logger.info("Scenario: one-object A5 category, inner = all conjugations")
        category, _ = a5_twisted_problem()
        assert category.spec.morphism_count() == 120
        q = assert_well_defined_quotient(category.spec, check_associativity=False)
        # inner and outer automorphisms
        assert q.class_count() == 2

    @pytest.mark.slow
    def test_endomorphisms_of_a5(self):
        category = endomorphism_category(alternating_group(5))
        assert category.spec.morphism_count() == 121
        q = assert_well_defined_quotient(category.spec, check_associativity=False)
        assert q.class_count() == 3

    @pytest.mark.slow
    def test_matrix_category_export(self):
        spec = export_as_spec(3)
        q = assert_well_defined_quotient(spec, check_associativity=False)
        assert q.class_count() == spec.morphism_count()

    def test_injections_of_four_sets(self):
        q = assert_well_defined_quotient(finite_sets_injections_instance(4))
        assert q.class_count() == 10
        assert q.is_thin()


class TestNonclosureOfClassProducts:
    def test_sets_with_all_maps(self):
        scenario_logger.info("Scenario: two non-constant maps with a constant composite")
        defect = class_product_defect(finite_sets_all_maps_instance(3))
        assert defect is not None
        assert not any(is_constant(f) for f in defect.left.members)
        assert not any(is_constant(g) for g in defect.right.members)
        assert any(is_constant(c.representative) for c in defect.split)
        assert any(is_constant(h) for _, _, h in defect.composites)
        assert any(not is_constant(h) for _, _, h in defect.composites)

    @pytest.mark.slow
    def test_alternating_groups(self):
        scenario_logger.info("Scenario: A3 -> A6 -> A7 through the exceptional automorphism of A6")
        report = verify_nonclosure_A3_A6_A7()
        assert report.verified
        data = report.to_dict()
        assert data["exceptional_sends"]["to"] == "(1 2 3)(4 5 6)"
        assert report.straight_cycle_type == (3,)
        assert report.twisted_cycle_type == (3, 3)
        assert report.class_product_membership


class TestMatrixCategoryFacts:
    def test_unital_existence(self):
        assert hom_exists(AlgebraObject((2,)), AlgebraObject((6,)), unital=True)
        assert not hom_exists(AlgebraObject((2,)), AlgebraObject((5,)), unital=True)

    def test_unital_rows_into_five(self):
        homs = enumerate_matrix_homs(AlgebraObject((1, 2)), AlgebraObject((5,)), unital=True)
        assert {f.matrix[0] for f in homs} == {(5, 0), (3, 1), (1, 2)}
        assert len(homs) == 3

    def test_random_associativity(self):
        objects = objects_up_to(3)
        homs = {(a, b): enumerate_matrix_homs(a, b) for a in objects for b in objects}
        rng = np.random.default_rng(20240601)
        failures = 0
        for _ in range(10_000):
            a, b, c, d = (objects[i] for i in rng.integers(len(objects), size=4))
            f = homs[(a, b)][rng.integers(len(homs[(a, b)]))]
            g = homs[(b, c)][rng.integers(len(homs[(b, c)]))]
            h = homs[(c, d)][rng.integers(len(homs[(c, d)]))]
            if compose(compose(f, g), h) != compose(f, compose(g, h)):
                failures += 1
        assert failures == 0


class TestSuperStrong:
    @pytest.mark.parametrize("bound", [
        2,
        3,
        pytest.param(4, marks=pytest.mark.slow),
    ])
    def test_matrix_category_is_super_strong(self, bound):
        spec = export_as_spec(bound)
        q = quotient(spec, check_associativity=False)
        assert is_super_strong(spec, q) == []
        for cls in q.classes():
            assert q.is_invertible(cls) == is_isomorphism(morphism_from_id(cls.representative))


class TestDiagramIntertwining:
    def test_diagram_against_its_telescope(self):
        car = stationary_diagram([[2]], [1])
        by_pairs = telescope(car, [0, 2, 4])
        witness = find_intertwining(car, by_pairs, depth=3, level_bound=8, entry_bound=16)
        assert witness is not None
        assert check_intertwining(car, by_pairs, witness)

    def test_doubling_against_quadrupling(self):
        car, quadrupling = stationary_diagram([[2]], [1]), stationary_diagram([[4]], [1])
        witness = find_intertwining(car, quadrupling, depth=3, level_bound=8, entry_bound=16)
        assert check_intertwining(car, quadrupling, witness)

    def test_doubling_against_tripling(self):
        car, tripling = stationary_diagram([[2]], [1]), stationary_diagram([[3]], [1])
        verdict = equivalent(car, tripling)
        assert verdict.kind == DISTINCT
        assert check_divisibility_certificate(car, tripling, verdict.certificate)


class TestApproximateIntertwining:
    def test_twisted_pair_converges_exactly(self):
        scenario_logger.info("Scenario: approximate intertwining on the twisted A5 pair")
        category, problem = a5_twisted_problem()
        result = approximate_intertwine(problem)
        assert isinstance(result, IntertwiningResult)
        spec = category.spec
        assert spec.compose(result.forward, result.backward) == spec.identity("A5")
        assert spec.compose(result.backward, result.forward) == spec.identity("A5")
        assert result.forward_in_class and result.backward_in_class
        for step in result.steps:
            assert step.forward_shift <= Fraction(2) ** (-2 * step.n + 2)
        assert result.cauchy_bounds_hold

    def test_classes_that_are_not_inverse(self):
        a5, a6 = alternating_group(5), alternating_group(6)
        category = group_hom_category([a5, a6], [standard_embedding(5, 6, 1), trivial_hom(a6, a5)])
        problem = IntertwiningProblem(
            spec=category.spec,
            source="A5",
            target="A6",
            forward=category.id_of(standard_embedding(5, 6, 1)),
            backward=category.id_of(trivial_hom(a6, a5)),
        )
        with pytest.raises(NotMutuallyInverseError):
            approximate_intertwine(problem)


class TestHomMetric:
    @pytest.mark.parametrize("n, size", [(4, 9), pytest.param(6, 81, marks=pytest.mark.slow)])
    def test_metric_and_isometric_conjugation(self, n, size):
        a3, target = alternating_group(3), alternating_group(n)
        homs = enumerate_homs(a3, target)
        assert len(homs) == size
        category = group_hom_category([a3, target], homs)
        space = category.metric_space("A3", target.label)
        assert len(space.points) == size
        assert metric_axiom_violations(space) == []
        assert verify_isometry(space, category.spec.inner[target.label]) == []

    def test_generalized_inner_family_is_isometric(self):
        a3, a4 = alternating_group(3), alternating_group(4)
        category = group_hom_category([a3, a4], enumerate_homs(a3, a4), inner=GENERALIZED)
        space = category.metric_space("A3", "A4")
        assert len(space.points) == 9
        assert verify_isometry(space, category.spec.inner["A4"]) == []

    def test_worked_value(self):
        a3, a4 = alternating_group(3), alternating_group(4)
        category = group_hom_category([a3, a4], [standard_embedding(3, 4, 1)])
        u, v = category.spec.hom("A3", "A4")[:2]
        assert category.distance("A3", "A4")(u, v) == Fraction(3, 8)


def check_multiplicity_classification(homs):
    """
    Diagonal homs of equal multiplicity are conjugate by the constructed conjugator,
    which is even whenever the reducibility condition holds.
    """
    diagonal = [f for f in homs if is_diagonal(f)]
    representatives = {}
    for f in diagonal:
        k = multiplicity_of(f)
        rep = representatives.setdefault(k, f)
        conjugator = diagonal_conjugator(rep, f)
        assert conjugator is not None
        assert rep.conjugated_by(conjugator.conjugator) == f
        if reducibility_for(rep):
            assert conjugator.is_inner
    for k, rep in representatives.items():
        for other_k, other in representatives.items():
            if k != other_k:
                assert diagonal_conjugator(rep, other) is None
    return representatives


def check_multiplicity_invariance(homs, degree):
    even = from_cycles([(1, 2, 3)], degree)
    odd = from_cycles([(1, 2)], degree)
    for f in homs:
        if is_diagonal(f):
            assert multiplicity_of(f.conjugated_by(even)) == multiplicity_of(f)
            assert multiplicity_of(f.conjugated_by(odd)) == multiplicity_of(f)


def homs_up_to_target_conjugacy(source, target):
    """
    One hom per S_n-conjugacy class at least: the first generator is sent to a single
    element of each cycle type, the others range over every element of fitting order.
    """
    first, *rest = source.generators
    representatives = {}
    for y in target.elements:
        if source.element_order(first) % target.element_order(y) == 0:
            representatives.setdefault(cycle_type(y), y)
    candidates = [
        [y for y in target.elements if source.element_order(s) % target.element_order(y) == 0]
        for s in rest
    ]
    homs = []
    for images in itertools.product(list(representatives.values()), *candidates):
        table = extend_generator_images(source, target, images)
        if table is not None:
            homs.append(GroupHom(source, target, table, verify=False))
    return homs


class TestMultiplicityClassification:

    def test_endomorphisms_of_a5(self):
        a5 = alternating_group(5)
        homs = enumerate_homs(a5, a5)
        assert len(homs) == 121
        assert sorted(check_multiplicity_classification(homs)) == [0, 1]
        check_multiplicity_invariance(homs, 5)

    @pytest.mark.slow
    def test_a5_into_a6(self):
        homs = enumerate_homs(alternating_group(5), alternating_group(6))
        assert sorted(check_multiplicity_classification(homs)) == [0, 1]
        # the transitive copies of A5 in A6 are not diagonal
        assert any(not is_diagonal(f) for f in homs)
        check_multiplicity_invariance(homs, 6)

    @pytest.mark.slow
    def test_automorphisms_of_a6(self):
        a6 = alternating_group(6)
        homs = automorphisms(a6) + [trivial_hom(a6, a6)]
        assert identity_hom(a6) in homs
        assert sorted(check_multiplicity_classification(homs)) == [0, 1]
        assert sum(1 for f in homs if is_diagonal(f)) == 721

    @pytest.mark.slow
    @pytest.mark.parametrize("m, n", [(5, 7), (5, 8), (6, 7), (6, 8)])
    def test_every_hom_into_a7_and_a8(self, m, n):
        source, target = alternating_group(m), alternating_group(n)
        homs = homs_up_to_target_conjugacy(source, target)
        scenario_logger.info(f"Scenario: {len(homs)} homs {source.label} -> {target.label} up to S{n}-conjugacy")
        multiplicities = set()
        non_diagonal = 0
        for f in homs:
            if not is_diagonal(f):
                non_diagonal += 1
                with pytest.raises(NonDiagonalHomError):
                    block_data_of(f)
                continue
            k = multiplicity_of(f)
            multiplicities.add(k)
            standard = standard_embedding(m, n, k)
            assert block_data_of(f) == block_data_of(standard)
            conjugator = diagonal_conjugator(standard, f)
            assert conjugator is not None
            assert standard.conjugated_by(conjugator.conjugator) == f
            if reducibility_for(standard):
                assert conjugator.is_inner
        assert multiplicities == {0, 1}
        # the transitive degree-6 actions (PSL(2,5) on the projective line, A6 twisted) are not diagonal
        assert non_diagonal > 0



class TestCantorBernstein:
    @pytest.mark.slow
    def test_cardinals_up_to_five(self):
        q = quotient(finite_sets_injections_instance(5), check_associativity=False)
        assert q.is_thin()
        assert cantor_bernstein_check(q) == []

    def test_shipped_thin_quotients(self):
        assert cantor_bernstein_check(quotient(finite_sets_injections_instance(3))) == []
        a3, a4 = alternating_group(3), alternating_group(4)
        category = group_hom_category([a3, a4], [standard_embedding(3, 4, 1)])
        q = quotient(category.spec)
        assert q.is_thin()
        assert cantor_bernstein_check(q) == []

    def test_negative_control(self):
        spec, partition = walking_retraction_instance()
        violations = cantor_bernstein_check(QuotientCategory.from_partition(spec, partition))
        assert len(violations) == 1
        assert (violations[0].first, violations[0].second) == ("a", "b")
