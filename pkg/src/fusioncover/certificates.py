"""Machine-checkable verdicts for fusion-cover verification.

A certificate is either a PASS, or a FAIL carrying a concrete witness that
can be re-checked independently of the verifier that produced it: a pair of
group elements whose sum lands outside the admissible triples (closure
violation), or an admissible sector triple no pair of elements realizes
(uncovered triple).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .minimal_model import Sector

PASS = "PASS"
FAIL = "FAIL"

# Group elements in witnesses are ints (cosets of a 2-group quotient) or
# digit tuples (general abelian groups).
Element = Union[int, tuple]


@dataclass(frozen=True)
class ClosureViolation:
    """Elements g1 + g2 = g3 whose sector triple is not admissible."""

    g1: Element
    g2: Element
    g3: Element
    sectors: tuple[Sector, Sector, Sector]

    def describe(self) -> str:
        i, j, k = self.sectors
        return (
            f"{self.g1} + {self.g2} = {self.g3} maps to {i.name} x {j.name} -> {k.name}, "
            f"but {k.name} does not occur in {i.name} x {j.name}"
        )


@dataclass(frozen=True)
class UncoveredTriple:
    """An admissible sector triple realized by no pair g1 + g2 = g3."""

    sectors: tuple[Sector, Sector, Sector]

    def describe(self) -> str:
        i, j, k = self.sectors
        return (
            f"admissible triple {i.name} x {j.name} -> {k.name} is realized by "
            f"no pair of group elements"
        )


Witness = Union[ClosureViolation, UncoveredTriple]


@dataclass(frozen=True)
class CoverCertificate:
    """PASS/FAIL verdict of a cover check, with witness on FAIL and scan stats."""

    verdict: str
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict not in (PASS, FAIL):
            raise ValueError(f"verdict must be PASS or FAIL, got {self.verdict!r}")
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a FAIL certificate requires a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS
