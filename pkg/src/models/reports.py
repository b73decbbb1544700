"""Report models returned by validators and structural checks."""

from typing import List, Optional

from pydantic import BaseModel, Field


class CheckFailure(BaseModel):
    """The first diagram that failed to commute."""

    diagram: str  # functoriality, identity, naturality, associativity, unit, ...
    detail: str
    spans: List[str] = Field(default_factory=list)


class ValidationReport(BaseModel):
    """Outcome of an exhaustive axiom check."""

    subject: str
    passed: bool
    checked: int = 0
    failure: Optional[CheckFailure] = None


class CohomologicalPair(BaseModel):
    """transfer o restriction compared with [H:K] for one pair K <= H."""

    h_class: int
    h: List[int]
    k: List[int]
    index: int
    passed: bool
    composite: List[List[str]]


class CohomologicalReport(BaseModel):
    passed: bool
    pairs: List[CohomologicalPair] = Field(default_factory=list)

    def failures(self) -> List[CohomologicalPair]:
        return [p for p in self.pairs if not p.passed]


class DimensionComparison(BaseModel):
    """Two independently computed dimensions that should agree."""

    label: str
    left: int
    right: int

    @property
    def equal(self) -> bool:
        return self.left == self.right


class DimensionReport(BaseModel):
    subject: str
    passed: bool
    comparisons: List[DimensionComparison] = Field(default_factory=list)

    @classmethod
    def from_comparisons(cls, subject: str, comparisons: List[DimensionComparison]) -> "DimensionReport":
        return cls(subject=subject, passed=all(c.equal for c in comparisons), comparisons=comparisons)
