import pytest

from src.core.bratteli.diagram import BratteliDiagram, stationary_diagram
from src.core.bratteli.k0 import K0Element, k0_equal, k0_positive, push_forward
from src.core.matcat.matrix_category import AlgebraObject, MultiplicityMorphism
from src.core.utils.config import ToolkitConfig
from src.core.utils.errors import ShapeMismatchError, SpecValidationError


@pytest.fixture
def car():
    return stationary_diagram([[2]], [1])


@pytest.fixture
def fibonacci():
    return stationary_diagram([[1, 1], [1, 0]], [1, 1])


def truncated():
    one, two = AlgebraObject((1,)), AlgebraObject((2,))
    return BratteliDiagram((one, two), (MultiplicityMorphism(one, two, [[2]]),))


class TestPushForward:
    def test_images(self, car, fibonacci):
        assert push_forward(car, K0Element(0, [1]), 3) == (8,)
        assert push_forward(fibonacci, K0Element(0, [1, -1]), 1) == (0, 1)
        assert push_forward(fibonacci, K0Element(1, [2, 1]), 1) == (2, 1)

    def test_vector_must_fit_the_level(self, car):
        with pytest.raises(ShapeMismatchError):
            push_forward(car, K0Element(0, [1, 1]), 2)

    def test_element_to_dict(self):
        assert K0Element(2, (3, -1)).to_dict() == {"level": 2, "vector": [3, -1]}

    @pytest.mark.parametrize("level, vector", [(0, [1.5]), (0, [True]), (0, ["2"]), (-1, [1]), (1.0, [1])])
    def test_element_rejects_non_integers(self, level, vector):
        with pytest.raises(SpecValidationError):
            K0Element(level, vector)


class TestEquality:
    def test_same_element_at_different_levels(self, car):
        assert k0_equal(car, K0Element(0, [1]), K0Element(1, [2])) is True

    def test_invertible_stationary_matrix_proves_inequality(self, car):
        assert k0_equal(car, K0Element(0, [1]), K0Element(0, [-1])) is False

    def test_singular_stationary_matrix_merges_or_leaves_open(self):
        d = stationary_diagram([[1, 1], [1, 1]], [1, 1])
        assert k0_equal(d, K0Element(0, [1, 0]), K0Element(0, [0, 1])) is True
        assert k0_equal(d, K0Element(0, [1, 0]), K0Element(0, [2, 0])) is None

    def test_truncated_diagram_is_undecided(self):
        assert k0_equal(truncated(), K0Element(0, [1]), K0Element(0, [2])) is None

    def test_depth_limits_the_search(self):
        assert k0_equal(truncated(), K0Element(0, [1]), K0Element(1, [2]), depth=0) is None
        assert k0_equal(truncated(), K0Element(0, [1]), K0Element(1, [2]), depth=1) is True

    def test_stationary_tail_decides_past_the_depth(self, car):
        assert k0_equal(car, K0Element(0, [1]), K0Element(3, [8]), depth=2) is True
        assert k0_equal(car, K0Element(0, [1]), K0Element(3, [4]), depth=2) is False
        assert k0_equal(car, K0Element(0, [1]), K0Element(3, [8]), config=ToolkitConfig(k0_depth=4)) is True



class TestPositivity:
    def test_fibonacci_element_becomes_positive(self, fibonacci):
        assert k0_positive(fibonacci, K0Element(0, [1, -1])) is True

    def test_negative_element_of_car(self, car):
        assert k0_positive(car, K0Element(0, [-1])) is False

    def test_positive_at_its_own_level(self, car):
        assert k0_positive(car, K0Element(2, [0])) is True

    def test_undecided_without_a_positive_stationary_matrix(self):
        assert k0_positive(truncated(), K0Element(0, [-1])) is None
        d = stationary_diagram([[1, 0], [0, 1]], [1, 1])
        assert k0_positive(d, K0Element(0, [1, -1]), depth=4) is None
