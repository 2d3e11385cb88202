"""
Typed errors shared by every toolkit module.

Library code raises these instead of exiting; the command-line front end maps
each class to an exit code (usage errors are handled separately by argparse).
"""

from typing import Iterable, List, Optional, Sequence


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class SpecValidationError(ToolkitError, ValueError):
    """Malformed input: broken category laws, bad shapes, invalid JSON documents."""

    def __init__(self, message: str, problems: Optional[Iterable[str]] = None):
        self.problems: List[str] = list(problems or [])
        if self.problems:
            preview = "; ".join(self.problems[:5])
            more = f" (+{len(self.problems) - 5} more)" if len(self.problems) > 5 else ""
            message = f"{message}: {preview}{more}"
        super().__init__(message)


class ShapeMismatchError(SpecValidationError):
    """Matrix or level shapes that cannot be combined."""


class PreconditionError(ToolkitError):
    """A well-formed input that violates an operation's precondition."""


class InnerAxiomError(PreconditionError):
    """Raised when a quotient is requested for a spec that fails the inner-automorphism axiom."""

    def __init__(self, witnesses: Sequence):
        self.witnesses = list(witnesses)
        super().__init__(
            f"inner-automorphism axiom fails for {len(self.witnesses)} (morphism, inner) pair(s); "
            f"first: {self.witnesses[0] if self.witnesses else None}"
        )


class NotMutuallyInverseError(PreconditionError):
    """Classes of the two starting morphisms are not inverse to each other in the quotient."""


class NonThinQuotientError(PreconditionError):
    """Cantor-Bernstein check requested on a quotient with a hom-set of two or more classes."""


class NonDiagonalHomError(PreconditionError):
    """Block data requested for a hom whose image has a non-natural orbit."""


class CapExceededError(ToolkitError):
    """A configured enumeration or search cap would be exceeded."""


class LevelRangeError(ToolkitError, IndexError):
    """Diagram level outside the truncation, with no stationary extension to fall back on."""
