from fractions import Fraction

import pytest

from src.core.categories.instances import finite_sets_injections_instance
from src.core.metric.intertwine import (
    ExhaustiveCorrector,
    IntertwiningFailure,
    IntertwiningProblem,
    IntertwiningResult,
    approximate_intertwine,
    default_schedule,
    in_inner_orbit,
)
from src.core.metric.metric_space import weighted_disagreement_metric
from src.core.permgrp.group_category import a5_twisted_problem, group_hom_category
from src.core.permgrp.groups import alternating_group
from src.core.permgrp.homomorphisms import standard_embedding, trivial_hom
from src.core.utils.errors import NotMutuallyInverseError, SpecValidationError


def set3_problem(**kwargs):
    spec = finite_sets_injections_instance(3)
    return IntertwiningProblem(
        spec=spec,
        source="set3",
        target="set3",
        forward="set3->set3:(2,3,1)",
        backward="set3->set3:(2,1,3)",
        **kwargs,
    )


class TestProblem:
    def test_schedule_defaults_to_powers_of_two(self):
        problem = set3_problem(schedule=[Fraction(1, 3)])
        assert problem.epsilon(1) == Fraction(1, 3)
        assert problem.epsilon(2) == Fraction(1, 4)
        assert default_schedule(5) == Fraction(1, 32)

    def test_morphisms_must_match_the_objects(self):
        with pytest.raises(SpecValidationError):
            IntertwiningProblem(finite_sets_injections_instance(3), "set2", "set3",
                                "set3->set3:(1,2,3)", "set3->set2:(1,2)")

    def test_schedule_must_be_positive(self):
        with pytest.raises(SpecValidationError):
            set3_problem(schedule=[Fraction(1, 2), 0])

    def test_iteration_bound_must_be_positive(self):
        with pytest.raises(SpecValidationError):
            set3_problem(max_iterations=0)


class TestApproximateIntertwine:
    def test_bijections_converge_in_one_round(self):
        result = approximate_intertwine(set3_problem())
        assert isinstance(result, IntertwiningResult)
        assert len(result.steps) == 1
        spec = set3_problem().spec
        assert spec.compose(result.forward, result.backward) == spec.identity("set3")
        assert spec.compose(result.backward, result.forward) == spec.identity("set3")
        assert result.forward_in_class and result.backward_in_class
        assert result.cauchy_bounds_hold

    def test_literal_schedule_with_weighted_metric(self):
        weighted = weighted_disagreement_metric([1, 2, 3])

        def as_map(f):
            values = tuple(int(v) for v in f.split(":(")[1].rstrip(")").split(","))
            return dict(zip((1, 2, 3), values))

        def d(u, v):
            return weighted(as_map(u), as_map(v))

        problem = set3_problem(metrics={("set3", "set3"): d}, exact_corrections=False)
        result = approximate_intertwine(problem)
        assert isinstance(result, IntertwiningResult)
        assert result.steps[-1].residual_source == 0
        assert result.steps[-1].residual_target == 0
        assert all(step.residual_source <= step.epsilon_odd for step in result.steps)

    def test_a5_twisted_pair(self):
        category, problem = a5_twisted_problem()
        result = approximate_intertwine(problem)
        assert isinstance(result, IntertwiningResult)
        assert result.forward == problem.forward
        # conjugation by (1 2) is its own inverse
        assert result.backward == problem.forward
        assert result.forward_in_class and result.backward_in_class
        assert result.cauchy_bounds_hold
        data = result.to_dict()
        assert data["status"] == "converged"
        assert data["rounds"] == 1
        assert data["steps"][0]["forward_shift"] == "0"

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

    def test_failing_oracle_gives_a_failure_record(self):
        exhaustive = ExhaustiveCorrector()
        calls = []

        def oracle(spec, u, v, tolerance, distance):
            calls.append(u)
            if len(calls) > 2:
                return None
            return exhaustive(spec, u, v, tolerance, distance)

        failure = approximate_intertwine(set3_problem(), oracle=oracle)
        assert isinstance(failure, IntertwiningFailure)
        assert failure.reason == "no inner correction on set3 at round 1"
        assert failure.to_dict()["status"] == "failed"
        assert failure.steps == ()


def test_in_inner_orbit():
    spec = finite_sets_injections_instance(3)
    assert in_inner_orbit(spec, "set2->set3:(1,2)", "set2->set3:(3,1)")
    assert not in_inner_orbit(spec, "set2->set3:(1,2)", "set2->set2:(1,2)")
