"""Pydantic schemas for verification reports"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    """Outcome of a single law check"""

    OK = "OK"
    FAIL = "FAIL"


class LawResult(BaseModel):
    """One verified law on one object or morphism"""

    verdict: Verdict
    law: str
    subject: str
    counterexample: Optional[str] = None

    def line(self) -> str:
        parts = [self.verdict.value, self.law, self.subject]
        if self.counterexample:
            parts.append(self.counterexample)
        return " ".join(parts)


class AxiomViolation(BaseModel):
    """A failing instance of one of the four Wajsberg identities"""

    identity: int = Field(ge=1, le=4)
    witness: Tuple[int, ...]

    def __str__(self) -> str:
        return f"identity {self.identity} fails at {self.witness}"


class AxiomReport(BaseModel):
    """Result of scanning an algebra for identity violations"""

    size: int
    exhaustive: bool
    triples_checked: int
    violations: List[AxiomViolation] = []

    @property
    def ok(self) -> bool:
        return not self.violations


class ObjectViolation(BaseModel):
    """A violated object condition; `pair` is None for the h(n) condition"""

    pair: Optional[Tuple[int, int]] = None
    message: str


class ObjectReport(BaseModel):
    """Validity report for a filter map"""

    n: int
    violations: List[ObjectViolation] = []

    @property
    def ok(self) -> bool:
        return not self.violations


class AlgebraTable(BaseModel):
    """Operation tables of a finite algebra, with element labels"""

    name: str
    size: int
    top: int
    elements: List[str]
    neg: List[int]
    imp: List[List[int]]


class FilterMapView(BaseModel):
    """A filter map with each filter given by its generator"""

    n: int
    atoms: int
    h: Dict[int, str]


class PrimeView(BaseModel):
    """A prime filter with its quotient chain L_{length+1}"""

    generator: str
    length: int
    members: List[str]

    def line(self) -> str:
        return f"prime {self.generator} quotient=L{self.length + 1} members={{{','.join(self.members)}}}"


class PhiEntry(BaseModel):
    element: str
    image: str


class ReconstructionReport(BaseModel):
    """phi on every element of A with the laws checked for it"""

    phi: List[PhiEntry]
    results: List[LawResult]

    @property
    def ok(self) -> bool:
        return all(r.verdict == Verdict.OK for r in self.results)


class SuiteReport(BaseModel):
    """Aggregated law results"""

    results: List[LawResult] = []

    @property
    def ok(self) -> bool:
        return all(r.verdict == Verdict.OK for r in self.results)

    @property
    def failures(self) -> List[LawResult]:
        return [r for r in self.results if r.verdict == Verdict.FAIL]

    def extend(self, results: List[LawResult]) -> None:
        self.results.extend(results)

    def ordered(self) -> "SuiteReport":
        return SuiteReport(results=sorted(self.results, key=lambda r: (r.law, r.subject)))

    def lines(self) -> List[str]:
        return [r.line() for r in self.results]
