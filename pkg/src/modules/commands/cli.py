"""
Batch command-line front end for the classification toolkit.

Every subcommand is a thin wrapper around one library operation. ``run(argv)``
parses, dispatches and returns a CommandResult without exiting; ``main(argv)``
prints the result (JSON with sorted keys, or DOT text) and returns the exit code.

Exit codes depend only on the verdict:

    0   success / equivalent / true
    1   distinct / false
    2   unknown (search bounds exhausted)
    64  usage error (unknown subcommand, bad flag or argument syntax)
    65  invalid input (malformed documents, failed preconditions, exceeded caps)
    66  input file missing or unreadable

Logs go to stderr, so stdout is byte-stable for fixed inputs and bounds.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.core.bratteli.diagram import telescope, to_dot
from src.core.bratteli.diagram_io import diagram_to_dict, load_diagram
from src.core.bratteli.equivalence import SearchBounds, equivalent
from src.core.bratteli.k0 import K0Element, k0_equal, k0_positive
from src.core.categories.instances import finite_sets_all_maps_instance
from src.core.categories.quotient import (
    cantor_bernstein_check,
    class_product_defect,
    is_strong,
    is_super_strong,
    quotient,
    verify_inner_axiom,
)
from src.core.categories.spec_io import load_spec
from src.core.matcat.matrix_category import (
    AlgebraObject,
    MultiplicityMorphism,
    compose,
    enumerate_homs,
    hom_exists,
)
from src.core.metric.intertwine import IntertwiningProblem, IntertwiningResult, approximate_intertwine
from src.core.permgrp.automorphisms import verify_nonclosure_A3_A6_A7
from src.core.permgrp.group_category import a5_twisted_problem
from src.core.utils.config import ToolkitConfig
from src.core.utils.errors import PreconditionError, SpecValidationError, ToolkitError

logger = logging.getLogger(__name__)

SUCCESS = "success"
TRUE = "true"
FALSE = "false"
EQUIVALENT = "equivalent"
DISTINCT = "distinct"
UNKNOWN = "unknown"
USAGE_ERROR = "usage-error"
INPUT_ERROR = "input-error"
UNREADABLE = "unreadable"

EXIT_CODES: Dict[str, int] = {
    SUCCESS: 0,
    TRUE: 0,
    EQUIVALENT: 0,
    FALSE: 1,
    DISTINCT: 1,
    UNKNOWN: 2,
    USAGE_ERROR: 64,
    INPUT_ERROR: 65,
    UNREADABLE: 66,
}


@dataclass
class CommandResult:
    """
    Outcome of one subcommand.

    Attributes:
        command: Subcommand name.
        verdict: One of the EXIT_CODES keys.
        value: The answer itself (matrix, boolean, verdict document, DOT text, ...).
        payload: Witness or certificate documents.
        diagnostics: Human-readable notes and error messages.
        bounds: Search bounds used, echoed for reproducibility.
        text_output: Emit ``value`` as plain text instead of JSON (DOT export).
        written_to: File the rendered result was written to, if any.
    """

    command: str
    verdict: str
    value: Any = None
    payload: Dict[str, Any] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)
    bounds: Optional[Dict[str, Any]] = None
    text_output: bool = False
    written_to: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "verdict": self.verdict,
            "value": self.value,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
            "bounds": self.bounds,
            "exit_code": self.exit_code,
        }

    def render(self) -> str:
        if self.text_output and self.verdict == SUCCESS:
            return self.value
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


class UsageError(Exception):
    """Bad command-line syntax."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _tri_state(value: Optional[bool]) -> str:
    return UNKNOWN if value is None else (TRUE if value else FALSE)


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = -1
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _or_default(value: Optional[int], default: int) -> int:
    return default if value is None else value


def _parse_sizes(text: str) -> AlgebraObject:

    try:
        return AlgebraObject(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated positive sizes, got {text!r}")


def _parse_element(text: str) -> K0Element:
    """``LEVEL:v1,v2,...`` such as ``0:1,-1``."""
    level, sep, vector = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return K0Element(int(level), tuple(int(x) for x in vector.split(",")))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LEVEL:v1,v2,..., got {text!r}")


def _parse_indices(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated level indices, got {text!r}")


def _read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as e:
            raise SpecValidationError(f"{path} is not valid JSON: {e}")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_compose(args, config: ToolkitConfig) -> CommandResult:
    f = MultiplicityMorphism.from_dict(_read_json(args.left))
    g = MultiplicityMorphism.from_dict(_read_json(args.right))
    h = compose(f, g)
    return CommandResult("compose", SUCCESS, value=h.to_dict())


def cmd_hom_exists(args, config: ToolkitConfig) -> CommandResult:
    exists = hom_exists(args.source, args.target, unital=args.unital, allow_zero=not args.no_zero)
    return CommandResult("hom-exists", TRUE if exists else FALSE, value=exists)


def cmd_enumerate_homs(args, config: ToolkitConfig) -> CommandResult:
    homs = enumerate_homs(args.source, args.target, unital=args.unital, allow_zero=not args.no_zero)
    return CommandResult(
        "enumerate-homs",
        SUCCESS,
        value=[[list(row) for row in f.matrix] for f in homs],
        diagnostics=[f"{len(homs)} morphism(s) {args.source.label} -> {args.target.label}"],
    )


def cmd_telescope(args, config: ToolkitConfig) -> CommandResult:
    d = load_diagram(args.diagram)
    return CommandResult("telescope", SUCCESS, value=diagram_to_dict(telescope(d, args.indices)))


def cmd_equiv(args, config: ToolkitConfig) -> CommandResult:
    d, e = load_diagram(args.first), load_diagram(args.second)
    bounds = SearchBounds(
        depth=_or_default(args.depth, config.intertwining_depth),
        level_bound=_or_default(args.level_bound, config.level_bound),
        entry_bound=_or_default(args.entry_bound, config.entry_bound),
    )
    verdict = equivalent(d, e, bounds=bounds, config=config)
    payload: Dict[str, Any] = {}
    if verdict.witness is not None:
        payload["witness"] = verdict.witness.to_dict()
    if verdict.certificate is not None:
        payload["certificate"] = verdict.certificate.to_dict()
    return CommandResult("equiv", verdict.kind, value=verdict.kind, payload=payload, bounds=bounds.to_dict())


def cmd_k0_eq(args, config: ToolkitConfig) -> CommandResult:
    d = load_diagram(args.diagram)
    depth = _or_default(args.depth, config.k0_depth)
    answer = k0_equal(d, args.x, args.y, depth=depth)
    return CommandResult("k0-eq", _tri_state(answer), value=answer, bounds={"depth": depth})


def cmd_k0_pos(args, config: ToolkitConfig) -> CommandResult:
    d = load_diagram(args.diagram)
    depth = _or_default(args.depth, config.k0_depth)
    answer = k0_positive(d, args.x, depth=depth)
    return CommandResult("k0-pos", _tri_state(answer), value=answer, bounds={"depth": depth})


def cmd_dot(args, config: ToolkitConfig) -> CommandResult:
    d = load_diagram(args.diagram)
    return CommandResult("dot", SUCCESS, value=to_dot(d, name=args.name), text_output=True)


def cmd_intertwine(args, config: ToolkitConfig) -> CommandResult:
    if args.builtin:
        _, problem = a5_twisted_problem(config=config)
    else:
        missing = [flag for flag, value in (("--source", args.source), ("--target", args.target),
                                            ("--forward", args.forward), ("--backward", args.backward))
                   if value is None]
        if missing:
            raise UsageError(f"intertwine with --spec needs {', '.join(missing)}")
        problem = IntertwiningProblem(
            spec=load_spec(args.spec),
            source=args.source,
            target=args.target,
            forward=args.forward,
            backward=args.backward,
        )
    if args.max_iterations is not None:
        problem = IntertwiningProblem(
            spec=problem.spec, source=problem.source, target=problem.target,
            forward=problem.forward, backward=problem.backward, metrics=problem.metrics,
            max_iterations=args.max_iterations,
        )
    outcome = approximate_intertwine(problem, config=config)
    bounds = {"max_iterations": _or_default(problem.max_iterations, config.intertwine_max_iterations)}
    if isinstance(outcome, IntertwiningResult):
        ok = outcome.forward_in_class and outcome.backward_in_class and outcome.cauchy_bounds_hold
        return CommandResult("intertwine", SUCCESS if ok else FALSE, value=outcome.to_dict(), bounds=bounds)
    return CommandResult("intertwine", UNKNOWN, value=outcome.to_dict(), diagnostics=[outcome.reason], bounds=bounds)


def cmd_verify_counterexample(args, config: ToolkitConfig) -> CommandResult:
    report = verify_nonclosure_A3_A6_A7(config=config)
    payload = {"groups": report.to_dict()}
    verified = report.verified
    if not args.groups_only:
        defect = class_product_defect(finite_sets_all_maps_instance(3))
        payload["sets"] = None if defect is None else defect.to_dict()
        verified = verified and defect is not None
    return CommandResult(
        "verify-counterexample",
        TRUE if verified else FALSE,
        value=verified,
        payload=payload,
        diagnostics=[f"(1 2 3) -> {payload['groups']['exceptional_sends']['to']} under the exceptional automorphism"],
    )


def cmd_quotient_check(args, config: ToolkitConfig) -> CommandResult:
    spec = load_spec(args.spec)
    witnesses = verify_inner_axiom(spec)
    if witnesses:
        return CommandResult(
            "quotient-check",
            FALSE,
            value=False,
            payload={"axiom_witnesses": [
                {"morphism": w.morphism, "inner_element": w.inner_element, "source": w.source, "target": w.target}
                for w in witnesses
            ]},
            diagnostics=[str(witnesses[0])],
        )
    q = quotient(spec, check_associativity=False)
    violations = is_super_strong(spec, q)
    payload: Dict[str, Any] = {
        "quotient": q.to_dict(),
        "super_strong_violations": [{"morphism": v.morphism, "class": v.morphism_class} for v in violations],
        "strong_violations": [c.label for c in is_strong(spec, q)],
    }
    if q.is_thin():
        payload["cantor_bernstein_violations"] = [
            {"first": v.first, "second": v.second, "reason": v.reason} for v in cantor_bernstein_check(q)
        ]
    return CommandResult(
        "quotient-check",
        FALSE if violations else TRUE,
        value=not violations,
        payload=payload,
        diagnostics=[f"{q.class_count()} class(es) over {spec.morphism_count()} morphism(s)"],
    )


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML file with ToolkitConfig fields")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--output", help="Write the result to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="classify", description="Finite classification toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        _add_common(p)
        return p

    p = add("compose", cmd_compose, "Compose two multiplicity morphisms (left then right)")
    p.add_argument("--left", required=True, help="Morphism JSON: {source, target, matrix}")
    p.add_argument("--right", required=True, help="Morphism JSON applied second")

    for name, handler, help_text in (
        ("hom-exists", cmd_hom_exists, "Is there an admissible matrix SOURCE -> TARGET?"),
        ("enumerate-homs", cmd_enumerate_homs, "List admissible matrices SOURCE -> TARGET"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("source", type=_parse_sizes, help="Sizes such as 1,2")
        p.add_argument("target", type=_parse_sizes, help="Sizes such as 5")
        p.add_argument("--unital", action="store_true", help="Require M . source = target")
        p.add_argument("--no-zero", action="store_true", help="Exclude the zero matrix")

    p = add("telescope", cmd_telescope, "Telescope a diagram along level indices")
    p.add_argument("diagram")
    p.add_argument("--indices", type=_parse_indices, required=True, help="Strictly increasing, e.g. 0,2")

    p = add("equiv", cmd_equiv, "Decide equivalence of two diagrams within bounds")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--depth", type=_positive_int, help="Zig-zag segments to find")
    p.add_argument("--level-bound", type=_non_negative_int, help="Largest level index visited")
    p.add_argument("--entry-bound", type=_positive_int, help="Largest matrix entry tried")

    p = add("k0-eq", cmd_k0_eq, "Do two K0 elements agree at some level?")
    p.add_argument("diagram")
    p.add_argument("x", type=_parse_element, help="LEVEL:v1,v2,...")
    p.add_argument("y", type=_parse_element, help="LEVEL:v1,v2,...")
    p.add_argument("--depth", type=_non_negative_int)

    p = add("k0-pos", cmd_k0_pos, "Is a K0 element positive at some level?")
    p.add_argument("diagram")
    p.add_argument("x", type=_parse_element, help="LEVEL:v1,v2,...")
    p.add_argument("--depth", type=_non_negative_int)

    p = add("dot", cmd_dot, "Render a diagram as DOT")
    p.add_argument("diagram")
    p.add_argument("--name", default="bratteli")

    p = add("intertwine", cmd_intertwine, "Run the approximate intertwining loop")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin", choices=["a5-twisted"])
    source.add_argument("--spec", help="Category spec JSON; the discrete metric is used")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--forward")
    p.add_argument("--backward")
    p.add_argument("--max-iterations", type=_positive_int)

    p = add("verify-counterexample", cmd_verify_counterexample, "Non-closure of class products")
    p.add_argument("--groups-only", action="store_true", help="Skip the finite-sets defect")

    p = add("quotient-check", cmd_quotient_check, "Axiom, quotient and super-strong check for a spec file")
    p.add_argument("spec")
    return parser


def _resolve_config(args) -> ToolkitConfig:
    config = ToolkitConfig()
    if args.config:
        config = ToolkitConfig.from_yaml(args.config, base=config)
    config = ToolkitConfig.from_env(base=config)
    if args.log_level:
        config = config.with_overrides(log_level=args.log_level.upper())
    return config


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        CommandResult: Never raises for usage, input or file errors; they become verdicts.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else ""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return CommandResult(command, USAGE_ERROR, diagnostics=[str(e)])
    except SystemExit as e:
        # --help
        return CommandResult(command or "help", SUCCESS if not e.code else USAGE_ERROR)

    try:
        config = _resolve_config(args)
    except OSError as e:
        return CommandResult(args.command, UNREADABLE, diagnostics=[str(e)])
    except ValueError as e:
        return CommandResult(args.command, USAGE_ERROR, diagnostics=[str(e)])
    logging.getLogger().setLevel(config.log_level.upper())

    try:
        result = args.handler(args, config)
    except UsageError as e:
        return CommandResult(args.command, USAGE_ERROR, diagnostics=[str(e)])
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"Cannot read input: {e}")
        return CommandResult(args.command, UNREADABLE, diagnostics=[str(e)])
    except (ToolkitError, ValueError) as e:
        kind = "precondition" if isinstance(e, PreconditionError) else type(e).__name__
        logger.error(f"{args.command} failed ({kind}): {e}")
        return CommandResult(args.command, INPUT_ERROR, diagnostics=[f"{type(e).__name__}: {e}"])

    if args.output:
        Path(args.output).write_text(result.render(), encoding="utf-8")
        result.written_to = args.output
    return result


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run, print and return the exit code."""
    result = run(argv)
    if result.written_to is not None:
        return result.exit_code
    stream = sys.stdout if result.exit_code < 64 else sys.stderr
    stream.write(result.render())
    return result.exit_code
