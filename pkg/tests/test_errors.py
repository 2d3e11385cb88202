import pytest

from src.core.utils.errors import (
    CapExceededError,
    InnerAxiomError,
    LevelRangeError,
    NonThinQuotientError,
    PreconditionError,
    ShapeMismatchError,
    SpecValidationError,
    ToolkitError,
)


def test_hierarchy():
    assert issubclass(ShapeMismatchError, SpecValidationError)
    assert issubclass(SpecValidationError, ValueError)
    assert issubclass(NonThinQuotientError, PreconditionError)
    assert issubclass(LevelRangeError, IndexError)
    for error in (SpecValidationError, PreconditionError, CapExceededError, LevelRangeError):
        assert issubclass(error, ToolkitError)


def test_problem_list_is_summarised():
    problems = [f"problem {i}" for i in range(7)]
    error = SpecValidationError("spec is broken", problems)
    assert error.problems == problems
    assert str(error) == "spec is broken: problem 0; problem 1; problem 2; problem 3; problem 4 (+2 more)"
    assert str(SpecValidationError("plain")) == "plain"


def test_inner_axiom_error_keeps_witnesses():
    error = InnerAxiomError(["w1", "w2"])
    assert error.witnesses == ["w1", "w2"]
    assert "2 (morphism, inner) pair(s)" in str(error)
    with pytest.raises(PreconditionError):
        raise error
