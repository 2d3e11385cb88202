"""
Approximate intertwining of two morphisms whose classes are mutually inverse.

Given f1: a -> b and g1: b -> a whose classes modulo inner automorphisms are
inverse to each other, the loop below corrects one arrow of each triangle
of the zig-zag

    a == a == a == ...
    |  /  |  /  |
    b == b == b == ...

by an inner automorphism on its codomain side:

1. odd step 2n-1: g_n starts as g1 and becomes g1 then h, with h in inner(a)
   chosen so that d(f_n then g_n, id_a) <= eps_{2n-1};
2. even step 2n: f_{n+1} starts as f1 and becomes f1 then k, with k in
   inner(b) chosen so that d(g_n then f_{n+1}, id_b) <= eps_{2n}.

Earlier triangles are never touched again. On finite instances the corrector
is an exhaustive search over the inner family, so asking for eps = 0 makes
both triangles commute exactly and the sequence stops moving after one
round; the literal schedule eps_k = 2^-k (``exact_corrections=False``) gets
there once eps_k drops below the least positive distance.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

from src.core.categories.finite_category import FiniteCategorySpec, MorphismId, ObjectId
from src.core.metric.metric_space import discrete_metric
from src.core.utils.config import ToolkitConfig, resolve_config
from src.core.utils.errors import NotMutuallyInverseError, SpecValidationError

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

Distance = Callable[[MorphismId, MorphismId], Fraction]


class CorrectorOracle(Protocol):
    def __call__(self, spec: FiniteCategorySpec, u: MorphismId, v: MorphismId,
                 tolerance: Fraction, distance: Distance) -> Optional[MorphismId]:
        """Some h in inner(target(u)) with d(u then h, v) <= tolerance, or None."""
        ...


class ExhaustiveCorrector:
    """Returns the first inner element, in designated order, that brings u within tolerance of v."""

    def __call__(self, spec: FiniteCategorySpec, u: MorphismId, v: MorphismId,
                 tolerance: Fraction, distance: Distance) -> Optional[MorphismId]:
        for h in spec.inner[spec.target(u)]:
            if distance(spec.compose(u, h), v) <= tolerance:
                return h
        return None


def default_schedule(k: int) -> Fraction:
    """eps_k = 2^-k."""
    return Fraction(1, 2 ** k)


@dataclass(frozen=True)
class IntertwiningProblem:
    """
    Starting data for approximate_intertwine.

    Attributes:
        spec: Ambient category with inner families.
        source / target: Objects a and b.
        forward / backward: f1: a -> b and g1: b -> a.
        metrics: Distance per hom-set (x, y); missing hom-sets use the discrete metric.
        schedule: eps_1, eps_2, ...; entries beyond its length fall back to 2^-k.
        max_iterations: Cap on rounds (defaults to ToolkitConfig.intertwine_max_iterations).
        exact_corrections: Ask the corrector for eps = 0 instead of eps_k.
    """

    spec: FiniteCategorySpec
    source: ObjectId
    target: ObjectId
    forward: MorphismId
    backward: MorphismId
    metrics: Mapping[Tuple[ObjectId, ObjectId], Distance] = field(default_factory=dict)
    schedule: Optional[Sequence[Fraction]] = None
    max_iterations: Optional[int] = None
    exact_corrections: bool = True

    def __post_init__(self):
        if self.forward not in self.spec.hom(self.source, self.target):
            raise SpecValidationError(f"{self.forward} is not a morphism {self.source} -> {self.target}")
        if self.backward not in self.spec.hom(self.target, self.source):
            raise SpecValidationError(f"{self.backward} is not a morphism {self.target} -> {self.source}")
        if self.schedule is not None and any(Fraction(e) <= 0 for e in self.schedule):
            raise SpecValidationError("schedule entries must be positive")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise SpecValidationError(f"max_iterations must be at least 1, got {self.max_iterations}")

    def metric(self, x: ObjectId, y: ObjectId) -> Distance:
        return self.metrics.get((x, y), discrete_metric)

    def epsilon(self, k: int) -> Fraction:
        if self.schedule is not None and k <= len(self.schedule):
            return Fraction(self.schedule[k - 1])
        return default_schedule(k)


@dataclass(frozen=True)
class IntertwiningStep:
    """
    One round of the loop.

    ``forward_shift`` is d(f_{n+1}, f_n); ``backward_shift`` is d(g_n, g_{n-1})
    and None in the first round.
    """

    n: int
    forward: MorphismId
    backward: MorphismId
    next_forward: MorphismId
    residual_source: Fraction
    residual_target: Fraction
    forward_shift: Fraction
    backward_shift: Optional[Fraction]
    epsilon_odd: Fraction
    epsilon_even: Fraction

    @property
    def forward_bound(self) -> Fraction:
        return Fraction(2) ** (-2 * self.n + 2)

    @property
    def backward_bound(self) -> Optional[Fraction]:
        if self.backward_shift is None:
            return None
        return Fraction(2) ** (-2 * (self.n - 1) + 1)

    def within_bounds(self) -> bool:
        if self.forward_shift > self.forward_bound:
            return False
        return self.backward_shift is None or self.backward_shift <= self.backward_bound

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "forward": self.forward,
            "backward": self.backward,
            "next_forward": self.next_forward,
            "residual_source": str(self.residual_source),
            "residual_target": str(self.residual_target),
            "forward_shift": str(self.forward_shift),
            "backward_shift": None if self.backward_shift is None else str(self.backward_shift),
            "epsilon_odd": str(self.epsilon_odd),
            "epsilon_even": str(self.epsilon_even),
        }


@dataclass(frozen=True)
class IntertwiningResult:
    """Mutually inverse f: a -> b and g: b -> a obtained from f1 and g1 by inner corrections."""

    forward: MorphismId
    backward: MorphismId
    steps: Tuple[IntertwiningStep, ...]
    forward_in_class: bool
    backward_in_class: bool

    @property
    def cauchy_bounds_hold(self) -> bool:
        return all(step.within_bounds() for step in self.steps)

    def to_dict(self) -> dict:
        return {
            "status": "converged",
            "forward": self.forward,
            "backward": self.backward,
            "rounds": len(self.steps),
            "forward_in_class": self.forward_in_class,
            "backward_in_class": self.backward_in_class,
            "cauchy_bounds_hold": self.cauchy_bounds_hold,
            "steps": [step.to_dict() for step in self.steps],
        }


@dataclass(frozen=True)
class IntertwiningFailure:
    """The loop stopped without exact convergence; carries the last iterates and residuals."""

    reason: str
    forward: MorphismId
    backward: MorphismId
    residual_source: Optional[Fraction]
    residual_target: Optional[Fraction]
    steps: Tuple[IntertwiningStep, ...]

    def to_dict(self) -> dict:
        return {
            "status": "failed",
            "reason": self.reason,
            "forward": self.forward,
            "backward": self.backward,
            "residual_source": None if self.residual_source is None else str(self.residual_source),
            "residual_target": None if self.residual_target is None else str(self.residual_target),
            "rounds": len(self.steps),
            "steps": [step.to_dict() for step in self.steps],
        }


def in_inner_orbit(spec: FiniteCategorySpec, f: MorphismId, g: MorphismId) -> bool:
    """True when g = f then k for some k in inner(target(f))."""
    return any(spec.compose(f, k) == g for k in spec.inner[spec.target(f)])


def approximate_intertwine(problem: IntertwiningProblem, oracle: Optional[CorrectorOracle] = None,
                           config: Optional[ToolkitConfig] = None
                           ) -> Union[IntertwiningResult, IntertwiningFailure]:
    """
    Run the triangle-correction loop until both triangles commute and f stops moving.

    Args:
        problem: Starting morphisms, metrics and schedule.
        oracle: Corrector; defaults to ExhaustiveCorrector.
        config: Supplies the default iteration cap.

    Returns:
        IntertwiningResult on exact convergence, IntertwiningFailure otherwise.

    Raises:
        NotMutuallyInverseError: If f1 then g1 is not in the class of id_a or
            g1 then f1 is not in the class of id_b.
    """
    cfg = resolve_config(config)
    oracle = oracle or ExhaustiveCorrector()
    spec = problem.spec
    a, b = problem.source, problem.target
    f1, g1 = problem.forward, problem.backward
    id_a, id_b = spec.identity(a), spec.identity(b)
    d_aa, d_bb = problem.metric(a, a), problem.metric(b, b)
    d_ab, d_ba = problem.metric(a, b), problem.metric(b, a)

    zero = Fraction(0)
    if oracle(spec, spec.compose(f1, g1), id_a, zero, d_aa) is None:
        logger.error(f"Class of {f1} then {g1} is not the identity class of {a}")
        raise NotMutuallyInverseError(f"classes of {f1} and {g1} are not mutually inverse (at {a})")
    if oracle(spec, spec.compose(g1, f1), id_b, zero, d_bb) is None:
        logger.error(f"Class of {g1} then {f1} is not the identity class of {b}")
        raise NotMutuallyInverseError(f"classes of {f1} and {g1} are not mutually inverse (at {b})")

    max_iterations = cfg.intertwine_max_iterations if problem.max_iterations is None else problem.max_iterations
    logger.info(f"Intertwining {f1} / {g1}: up to {max_iterations} rounds")
    steps: List[IntertwiningStep] = []
    f_n = f1
    g_prev: Optional[MorphismId] = None
    for n in range(1, max_iterations + 1):
        eps_odd, eps_even = problem.epsilon(2 * n - 1), problem.epsilon(2 * n)
        tol_odd = zero if problem.exact_corrections else eps_odd
        tol_even = zero if problem.exact_corrections else eps_even

        h = oracle(spec, spec.compose(f_n, g1), id_a, tol_odd, d_aa)
        if h is None:
            return IntertwiningFailure(f"no inner correction on {a} at round {n}", f_n, g_prev or g1,
                                       None, None, tuple(steps))
        g_n = spec.compose(g1, h)

        k = oracle(spec, spec.compose(g_n, f1), id_b, tol_even, d_bb)
        if k is None:
            return IntertwiningFailure(f"no inner correction on {b} at round {n}", f_n, g_n,
                                       d_aa(spec.compose(f_n, g_n), id_a), None, tuple(steps))
        f_next = spec.compose(f1, k)

        step = IntertwiningStep(
            n=n,
            forward=f_n,
            backward=g_n,
            next_forward=f_next,
            residual_source=d_aa(spec.compose(f_n, g_n), id_a),
            residual_target=d_bb(spec.compose(g_n, f_next), id_b),
            forward_shift=d_ab(f_next, f_n),
            backward_shift=None if g_prev is None else d_ba(g_n, g_prev),
            epsilon_odd=eps_odd,
            epsilon_even=eps_even,
        )
        steps.append(step)
        logger.debug(
            f"Round {n}: residuals {step.residual_source}, {step.residual_target}; shift {step.forward_shift}"
        )
        if step.residual_source == 0 and step.residual_target == 0 and f_next == f_n:
            logger.info(f"Converged after {n} round(s): {f_n} / {g_n}")
            return IntertwiningResult(
                forward=f_n,
                backward=g_n,
                steps=tuple(steps),
                forward_in_class=in_inner_orbit(spec, f1, f_n),
                backward_in_class=in_inner_orbit(spec, g1, g_n),
            )
        f_n, g_prev = f_next, g_n

    last = steps[-1]
    logger.warning(f"Intertwining did not converge within {max_iterations} rounds")
    return IntertwiningFailure(
        f"iteration cap {max_iterations} reached", last.next_forward, last.backward,
        last.residual_source, last.residual_target, tuple(steps),
    )
