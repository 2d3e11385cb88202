"""
Equivalence verdicts for Bratteli diagrams.

equivalent() first looks for an obstruction and then for an intertwining:

1. For two diagrams that are stationary with 1x1 matrices [m] and [n], the
   primes dividing the path products infinitely often are exactly the primes
   of m (resp. n). Any zig-zag with two or more segments forces these prime
   sets to agree, so a prime dividing one multiplier but not the other
   certifies that the diagrams are distinct.
2. Otherwise find_intertwining runs within the given bounds.
3. If neither succeeds the verdict is "unknown"; completeness is not claimed.

Both decided verdicts carry evidence that is checked independently of the
code that produced it.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from sympy import factorint, isprime, multiplicity

from src.core.bratteli.diagram import BratteliDiagram, path_product
from src.core.bratteli.intertwining import IntertwiningWitness, check_intertwining, find_intertwining
from src.core.utils.config import ToolkitConfig, resolve_config

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EQUIVALENT = "equivalent"
DISTINCT = "distinct"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBounds:
    depth: int
    level_bound: int
    entry_bound: int

    @classmethod
    def from_config(cls, config: Optional[ToolkitConfig] = None) -> "SearchBounds":
        cfg = resolve_config(config)
        return cls(cfg.intertwining_depth, cfg.level_bound, cfg.entry_bound)

    def to_dict(self) -> dict:
        return {"depth": self.depth, "level_bound": self.level_bound, "entry_bound": self.entry_bound}


@dataclass(frozen=True)
class DivisibilityCertificate:
    """
    ``prime`` divides the stationary multiplier of one diagram and not the other.

    Attributes:
        prime: The separating prime.
        divides_first: True when it divides the first diagram's multiplier.
        first_multiplier / second_multiplier: The 1x1 stationary entries.
        first_valuation / second_valuation: Exponent of ``prime`` in each multiplier.
    """

    prime: int
    divides_first: bool
    first_multiplier: int
    second_multiplier: int
    first_valuation: int
    second_valuation: int

    @property
    def description(self) -> str:
        return f"{self.prime}-divisibility of the unit differs"

    def to_dict(self) -> dict:
        return {
            "kind": "supernatural",
            "description": self.description,
            "prime": self.prime,
            "divides": "first" if self.divides_first else "second",
            "first_multiplier": self.first_multiplier,
            "second_multiplier": self.second_multiplier,
            "first_valuation": self.first_valuation,
            "second_valuation": self.second_valuation,
        }


def _scalar_multiplier(d: BratteliDiagram) -> Optional[int]:
    if d.stationary is None or len(d.stationary) != 1:
        return None
    return d.stationary[0][0]


def find_divisibility_certificate(d: BratteliDiagram, e: BratteliDiagram) -> Optional[DivisibilityCertificate]:
    """The least prime dividing exactly one of the two 1x1 stationary multipliers, or None."""
    m, n = _scalar_multiplier(d), _scalar_multiplier(e)
    if m is None or n is None:
        return None
    primes_m, primes_n = set(factorint(m)), set(factorint(n))
    separating = sorted(primes_m ^ primes_n)
    if not separating:
        return None
    p = separating[0]
    return DivisibilityCertificate(
        prime=int(p),
        divides_first=p in primes_m,
        first_multiplier=m,
        second_multiplier=n,
        first_valuation=int(multiplicity(p, m)),
        second_valuation=int(multiplicity(p, n)),
    )


def check_divisibility_certificate(d: BratteliDiagram, e: BratteliDiagram, cert: DivisibilityCertificate) -> bool:
    """
    Re-check a certificate from the diagrams alone.

    The path product across the first stationary step of the dividing diagram
    must be divisible by the prime, and the other one must not be; the
    stationary rule repeats that step forever.
    """
    if not isprime(cert.prime):
        return False
    if _scalar_multiplier(d) is None or _scalar_multiplier(e) is None:
        return False
    dividing, other = (d, e) if cert.divides_first else (e, d)
    start_dividing, start_other = dividing.length - 1, other.length - 1
    step_dividing = path_product(dividing, start_dividing, start_dividing + 1).matrix[0][0]
    step_other = path_product(other, start_other, start_other + 1).matrix[0][0]
    return step_dividing % cert.prime == 0 and step_other % cert.prime != 0


@dataclass(frozen=True)
class Verdict:
    """equivalent (with a witness), distinct (with a certificate) or unknown (bounds exhausted)."""

    kind: str
    bounds: SearchBounds
    witness: Optional[IntertwiningWitness] = None
    certificate: Optional[DivisibilityCertificate] = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind,
            "bounds": self.bounds.to_dict(),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def equivalent(d: BratteliDiagram, e: BratteliDiagram, bounds: Optional[SearchBounds] = None,
               config: Optional[ToolkitConfig] = None) -> Verdict:
    """
    Decide equivalence of two diagrams as far as the bounds allow.

    Args:
        d, e: The diagrams.
        bounds: Search bounds (defaults from the configuration).
        config: Active configuration override.

    Returns:
        Verdict: equivalent / distinct with checked evidence, or unknown.
    """
    bounds = bounds or SearchBounds.from_config(config)
    certificate = find_divisibility_certificate(d, e)
    if certificate is not None and check_divisibility_certificate(d, e, certificate):
        logger.info(f"Distinct: {certificate.description}")
        return Verdict(DISTINCT, bounds, certificate=certificate)
    witness = find_intertwining(d, e, bounds.depth, bounds.level_bound, bounds.entry_bound, config=config)
    if witness is not None and check_intertwining(d, e, witness):
        return Verdict(EQUIVALENT, bounds, witness=witness)
    logger.warning(f"Equivalence undecided within {bounds.to_dict()}")
    return Verdict(UNKNOWN, bounds)
