"""Data models for Mackey Workbench."""

from .certificates import (
    AxiomCertificate,
    BijectionCertificate,
    CertificateFile,
    CohomologicalCertificate,
    DimensionCertificate,
    IsoCertificate,
)
from .formats import (
    CrossedGSetModel,
    FunctorModel,
    GreenModel,
    GroupModel,
    GSetModel,
    RepresentationModel,
)
from .reports import CheckFailure, CohomologicalReport, DimensionComparison, DimensionReport, ValidationReport

__all__ = [
    "AxiomCertificate",
    "BijectionCertificate",
    "CertificateFile",
    "CohomologicalCertificate",
    "DimensionCertificate",
    "IsoCertificate",
    "CrossedGSetModel",
    "FunctorModel",
    "GreenModel",
    "GroupModel",
    "GSetModel",
    "RepresentationModel",
    "CheckFailure",
    "CohomologicalReport",
    "DimensionComparison",
    "DimensionReport",
    "ValidationReport",
]
