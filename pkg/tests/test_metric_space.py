from fractions import Fraction

import pytest

from src.core.categories.instances import finite_sets_injections_instance
from src.core.metric.metric_space import (
    MetricHomSpace,
    discrete_metric,
    metric_axiom_violations,
    verify_isometry,
    weighted_disagreement_metric,
)
from src.core.permgrp.groups import alternating_group
from src.core.permgrp.permutations import from_cycles, identity_permutation
from src.core.utils.config import ToolkitConfig
from src.core.utils.errors import CapExceededError, SpecValidationError

E = identity_permutation(3)
R = from_cycles([(1, 2, 3)], 3)
R2 = from_cycles([(1, 3, 2)], 3)


def table_distance(table):
    def distance(u, v):
        if u == v:
            return Fraction(0)
        return Fraction(table.get((u, v), table.get((v, u))))
    return distance


class TestWeightedDisagreement:
    def test_worked_value_on_a3(self):
        """Identity and inversion of A3 agree only on e: 1/4 + 1/8."""
        d = weighted_disagreement_metric([E, R, R2])
        identity = {E: E, R: R, R2: R2}
        inversion = {E: E, R: R2, R2: R}
        assert d(identity, inversion) == Fraction(3, 8)
        assert d(identity, identity) == 0

    def test_first_element_weighs_most(self):
        d = weighted_disagreement_metric(["x", "y"])
        assert d({"x": 1, "y": 1}, {"x": 2, "y": 1}) == Fraction(1, 2)
        assert d({"x": 1, "y": 1}, {"x": 1, "y": 2}) == Fraction(1, 4)

    def test_callables_are_accepted(self):
        a3 = alternating_group(3)
        d = weighted_disagreement_metric(a3.elements)
        assert d(lambda x: x, lambda x: x) == 0
        assert d(lambda x: x, lambda x: E) == Fraction(3, 8)

    def test_enumeration_must_be_a_bijection(self):
        with pytest.raises(SpecValidationError):
            weighted_disagreement_metric([E, E, R])
        with pytest.raises(SpecValidationError):
            weighted_disagreement_metric([E, R], domain=[E, R, R2])

    def test_discrete_metric(self):
        assert discrete_metric("u", "u") == 0
        assert discrete_metric("u", "v") == 1


class TestAxiomChecks:
    def test_injection_hom_set_is_a_metric_space(self):
        spec = finite_sets_injections_instance(3)
        space = MetricHomSpace.from_spec(spec, "set2", "set3")
        assert len(space.points) == 6
        assert metric_axiom_violations(space) == []
        assert verify_isometry(space, spec.inner["set3"]) == []

    def test_triangle_violation_reported(self):
        d = table_distance({("p", "q"): 1, ("q", "r"): 1, ("p", "r"): 3})
        space = MetricHomSpace("a", "b", ("p", "q", "r"), d, lambda u, k: u)
        axioms = {v.axiom for v in metric_axiom_violations(space)}
        assert axioms == {"triangle"}

    def test_asymmetry_and_indiscernibles(self):
        def d(u, v):
            return Fraction(0) if (u, v) == ("p", "q") else Fraction(1)

        space = MetricHomSpace("a", "b", ("p", "q"), d, lambda u, k: u)
        axioms = {v.axiom for v in metric_axiom_violations(space)}
        assert {"identity", "symmetry"} <= axioms

    def test_pair_limit(self):
        space = MetricHomSpace("a", "b", tuple(range(5)), discrete_metric, lambda u, k: u)
        with pytest.raises(CapExceededError):
            metric_axiom_violations(space, config=ToolkitConfig(metric_pair_limit=10))

    def test_non_isometric_action_reported(self):
        d = table_distance({("p", "q"): 1, ("p", "r"): 2, ("q", "r"): 2})
        swap = {"p": "p", "q": "r", "r": "q"}
        space = MetricHomSpace("a", "b", ("p", "q", "r"), d, lambda u, k: swap[u])
        violations = verify_isometry(space, ["k"])
        assert violations
        first = violations[0]
        assert (first.u, first.v, first.before, first.after) == ("p", "q", 1, 2)
