"""Certificates: explicit witnesses that can be re-checked without rebuilding anything."""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field

from .formats import FunctorModel, GreenModel, GroupModel, MatrixRows
from .reports import DimensionComparison, ValidationReport


class IsoCertificate(BaseModel):
    """A Mackey isomorphism with its inverse, component by component."""

    kind: Literal["mackey-iso"] = "mackey-iso"
    label: str
    source: FunctorModel
    target: FunctorModel
    components: List[MatrixRows]
    inverse: List[MatrixRows]


class BijectionCertificate(BaseModel):
    """An equivariant bijection between two G-sets given by action arrays."""

    kind: Literal["gset-iso"] = "gset-iso"
    label: str
    group: GroupModel
    source_action: List[List[int]]
    target_action: List[List[int]]
    values: List[int]


class CohomologicalWitness(BaseModel):
    h: List[int]
    k: List[int]
    index: int
    restriction: MatrixRows
    transfer: MatrixRows


class CohomologicalCertificate(BaseModel):
    """A functor with its restriction and transfer matrices for every K <= H_i."""

    kind: Literal["cohomological"] = "cohomological"
    label: str
    functor: FunctorModel
    pairs: List[CohomologicalWitness]


class AxiomCertificate(BaseModel):
    """A functor (or Green functor) together with the report of its axiom check."""

    kind: Literal["axioms"] = "axioms"
    label: str
    functor: Optional[FunctorModel] = None
    green: Optional[GreenModel] = None
    report: ValidationReport


class DimensionCertificate(BaseModel):
    """Dimension comparisons backed by an explicit isomorphism."""

    kind: Literal["dimensions"] = "dimensions"
    label: str
    comparisons: List[DimensionComparison]
    iso: Optional[IsoCertificate] = None


class CertificateFile(BaseModel):
    certificate: Union[
        IsoCertificate,
        BijectionCertificate,
        CohomologicalCertificate,
        AxiomCertificate,
        DimensionCertificate,
    ] = Field(discriminator="kind")
