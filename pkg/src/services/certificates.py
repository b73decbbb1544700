"""Emit and independently re-verify certificates.

Verification works from the data stored in a certificate: explicit matrices
are multiplied out against the defining equations, and the functors a
certificate carries are re-evaluated on spans. It never reruns the
construction that produced them.
"""

import logging
from typing import List, Optional, Sequence

from pydantic import ValidationError

from ..exceptions import CertificateError, EquivarianceError, GSetValidationError, MackeyError
from ..models.certificates import (
    AxiomCertificate,
    BijectionCertificate,
    CertificateFile,
    CohomologicalCertificate,
    CohomologicalWitness,
    DimensionCertificate,
    IsoCertificate,
)
from ..models.reports import CheckFailure, CohomologicalReport, DimensionComparison, ValidationReport
from ..utils.exact_linalg import RatMatrix
from ..utils.file_parser import (
    functor_from_model,
    functor_to_model,
    green_from_model,
    green_to_model,
    group_from_model,
    group_to_model,
    matrix_rows,
)
from .green import GreenFunctor, validate_green
from .finite_group import all_subgroups, is_subgroup
from .gset import GMap, GSet, is_bijective
from .mackey import MackeyFunctor, MackeyMorphism, invert_morphism, is_natural, restriction, transfer, validate

logger = logging.getLogger(__name__)


# Emitting

def iso_certificate(theta: MackeyMorphism, label: str) -> IsoCertificate:
    """Raises CertificateError if ``theta`` has a singular component."""
    inv = invert_morphism(theta)
    if inv is None:
        raise CertificateError(f"{label}: morphism is not invertible")
    return IsoCertificate(
        label=label,
        source=functor_to_model(theta.source),
        target=functor_to_model(theta.target),
        components=[matrix_rows(c) for c in theta.components],
        inverse=[matrix_rows(c) for c in inv.components],
    )


def bijection_certificate(f: GMap, label: str) -> BijectionCertificate:
    return BijectionCertificate(
        label=label,
        group=group_to_model(f.source.group),
        source_action=[list(r) for r in f.source.rows],
        target_action=[list(r) for r in f.target.rows],
        values=list(f.values),
    )


def cohomological_certificate(functor: MackeyFunctor, report: CohomologicalReport, label: str) -> CohomologicalCertificate:
    pairs = [
        CohomologicalWitness(
            h=p.h,
            k=p.k,
            index=p.index,
            restriction=matrix_rows(restriction(functor, p.h, p.k)),
            transfer=matrix_rows(transfer(functor, p.h, p.k)),
        )
        for p in report.pairs
    ]
    return CohomologicalCertificate(label=label, functor=functor_to_model(functor), pairs=pairs)


def axiom_certificate(report: ValidationReport, label: str,
                      functor: Optional[MackeyFunctor] = None,
                      green: Optional[GreenFunctor] = None) -> AxiomCertificate:
    return AxiomCertificate(
        label=label,
        functor=functor_to_model(functor) if functor is not None else None,
        green=green_to_model(green) if green is not None else None,
        report=report,
    )


def dimension_certificate(comparisons: Sequence[DimensionComparison], label: str,
                          iso: Optional[IsoCertificate] = None) -> DimensionCertificate:
    return DimensionCertificate(label=label, comparisons=list(comparisons), iso=iso)


# Verifying

def _fail(label: str, checked: int, diagram: str, detail: str) -> ValidationReport:
    return ValidationReport(subject=label, passed=False, checked=checked,
                            failure=CheckFailure(diagram=diagram, detail=detail))


def _as_matrix(rows: List[List], n_rows: int, n_cols: int) -> RatMatrix:
    if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
        raise CertificateError(f"expected a {n_rows}x{n_cols} matrix")
    return RatMatrix(n_rows, n_cols, rows)


def verify_iso(cert: IsoCertificate) -> ValidationReport:
    source = functor_from_model(cert.source)
    target = functor_from_model(cert.target)
    if source.level_dims != target.level_dims or len(cert.components) != source.num_levels:
        return _fail(cert.label, 0, "shape", "source and target levels differ")
    dims = source.level_dims
    try:
        forward = [_as_matrix(c, d, d) for c, d in zip(cert.components, dims)]
        backward = [_as_matrix(c, d, d) for c, d in zip(cert.inverse, dims)]
    except CertificateError as e:
        return _fail(cert.label, 0, "shape", str(e))
    if len(backward) != len(forward):
        return _fail(cert.label, 0, "shape", "inverse has the wrong number of components")
    theta = MackeyMorphism(source, target, forward)
    if not is_natural(theta):
        return _fail(cert.label, 1, "naturality", "components do not commute with the generators")
    for i, (f, b) in enumerate(zip(forward, backward)):
        if not (f @ b).is_identity() or not (b @ f).is_identity():
            return _fail(cert.label, 2, "invertibility", f"component {i} and its inverse do not compose to I")
    return ValidationReport(subject=cert.label, passed=True, checked=2)


def verify_bijection(cert: BijectionCertificate) -> ValidationReport:
    group = group_from_model(cert.group)
    try:
        f = GMap(GSet(group, cert.source_action), GSet(group, cert.target_action), cert.values)
    except (EquivarianceError, GSetValidationError) as e:
        return _fail(cert.label, 1, "equivariance", str(e))
    if not is_bijective(f):
        return _fail(cert.label, 2, "bijectivity", "map is not a bijection")
    return ValidationReport(subject=cert.label, passed=True, checked=2)


def verify_cohomological(cert: CohomologicalCertificate) -> ValidationReport:
    """Recompute restriction and transfer from the embedded functor for every K <= H_i.

    The stored matrices must match the recomputed ones, the pairs must cover
    every representative H_i and every subgroup K of it, and each composite
    must be [H:K] times the identity.
    """
    functor = functor_from_model(cert.functor)
    group = functor.group
    table = all_subgroups(group)
    required = {
        (table.rep(c), k) for c in range(table.num_classes) for k in table.subgroups if k <= table.rep(c)
    }
    seen = set()
    for n, pair in enumerate(cert.pairs, start=1):
        h, k = frozenset(pair.h), frozenset(pair.k)
        if not (is_subgroup(group, h) and is_subgroup(group, k) and k <= h):
            return _fail(cert.label, n, "subgroup", f"{pair.k} is not a subgroup of {pair.h} in {group.name}")
        if (h, k) not in required:
            return _fail(cert.label, n, "coverage", f"{pair.h} is not a representative subgroup")
        seen.add((h, k))
        res = restriction(functor, h, k)
        tr = transfer(functor, h, k)
        try:
            stored_res = _as_matrix(pair.restriction, res.rows, res.cols)
            stored_tr = _as_matrix(pair.transfer, tr.rows, tr.cols)
        except CertificateError as e:
            return _fail(cert.label, n, "shape", f"{pair.h} > {pair.k}: {e}")
        if stored_res != res or stored_tr != tr:
            return _fail(cert.label, n, "witness", f"stored matrices for {pair.h} > {pair.k} are not M(sigma)")
        index = len(h) // len(k)
        if pair.index != index:
            return _fail(cert.label, n, "index", f"[{pair.h}:{pair.k}] is {index}, not {pair.index}")
        if tr @ res != RatMatrix.identity(res.cols).scale(index):
            return _fail(cert.label, n, "cohomological", f"transfer o restriction != {index} for {pair.h} > {pair.k}")
    missing = required - seen
    if missing:
        h, k = min((sorted(h), sorted(k)) for h, k in missing)
        return _fail(cert.label, len(cert.pairs), "coverage", f"no witness for {h} > {k}")
    return ValidationReport(subject=cert.label, passed=True, checked=len(cert.pairs))


def verify_axioms(cert: AxiomCertificate) -> ValidationReport:
    if cert.green is not None:
        report = validate_green(green_from_model(cert.green))
    elif cert.functor is not None:
        report = validate(functor_from_model(cert.functor))
    else:
        return _fail(cert.label, 0, "missing", "certificate carries no functor")
    if report.passed != cert.report.passed:
        return _fail(cert.label, report.checked, "report", "recorded outcome does not match the axioms")
    return report.model_copy(update={"subject": cert.label})


def verify_dimensions(cert: DimensionCertificate) -> ValidationReport:
    for n, c in enumerate(cert.comparisons, start=1):
        if not c.equal:
            return _fail(cert.label, n, "dimension", f"{c.label}: {c.left} != {c.right}")
    if cert.iso is None:
        return _fail(cert.label, len(cert.comparisons), "missing", "comparisons are not backed by an isomorphism")
    report = verify_iso(cert.iso)
    if not report.passed:
        return report.model_copy(update={"subject": cert.label})
    return ValidationReport(subject=cert.label, passed=True, checked=len(cert.comparisons) + 1)


def verify_certificate(document: CertificateFile) -> ValidationReport:
    """Dispatch on the certificate kind; functor data errors count as failures."""
    cert = document.certificate
    verifiers = {
        "mackey-iso": verify_iso,
        "gset-iso": verify_bijection,
        "cohomological": verify_cohomological,
        "axioms": verify_axioms,
        "dimensions": verify_dimensions,
    }
    try:
        report = verifiers[cert.kind](cert)
    except (MackeyError, ValidationError) as e:
        report = _fail(cert.label, 0, "format", str(e))
    logger.info(f"Certificate {cert.label} ({cert.kind}): {'valid' if report.passed else 'invalid'}")
    return report
