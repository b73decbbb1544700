"""Tests for emitting and independently verifying certificates."""

import pytest
from pydantic import ValidationError

from src.exceptions import CertificateError
from src.models.certificates import CertificateFile
from src.models.reports import DimensionComparison
from src.services.certificates import (
    axiom_certificate,
    bijection_certificate,
    cohomological_certificate,
    dimension_certificate,
    iso_certificate,
    verify_certificate,
)
from src.services.green import burnside_green, end_of_homs, validate_green
from src.services.mackey import (
    MackeyMorphism,
    cohomological_check,
    find_isomorphism,
    fixed_point_functor,
    regular_representation,
    validate,
)
from src.utils.exact_linalg import RatMatrix


def _round_trip(cert) -> CertificateFile:
    """Serialize and parse back, as the command line does."""
    return CertificateFile.model_validate_json(CertificateFile(certificate=cert).model_dump_json())


@pytest.mark.unit
class TestIsoCertificates:
    """Tests for Mackey isomorphism certificates."""

    def test_valid(self, burnside_c2):
        """Test that a found isomorphism verifies."""
        theta = find_isomorphism(burnside_c2, burnside_c2)

        report = verify_certificate(_round_trip(iso_certificate(theta, "J=J")))

        assert report.passed
        assert report.subject == "J=J"

    def test_singular_morphism_is_refused(self, burnside_c2):
        """Test that a non-invertible morphism cannot be certified."""
        zero = MackeyMorphism(burnside_c2, burnside_c2, [RatMatrix.zeros(d, d) for d in burnside_c2.level_dims])

        with pytest.raises(CertificateError):
            iso_certificate(zero, "zero")

    def test_tampered_inverse(self, burnside_c2):
        """Test that a wrong inverse fails invertibility."""
        cert = iso_certificate(find_isomorphism(burnside_c2, burnside_c2), "tampered")
        cert.inverse[1] = [[0]]

        report = verify_certificate(_round_trip(cert))

        assert not report.passed
        assert report.failure.diagram == "invertibility"

    def test_non_natural_components(self, fixpt_regular_c2):
        """Test that components that ignore the generators fail naturality."""
        cert = iso_certificate(find_isomorphism(fixpt_regular_c2, fixpt_regular_c2), "shear")
        cert.components = [[[1]], [[1, 1], [0, 1]]]
        cert.inverse = [[[1]], [[1, -1], [0, 1]]]

        report = verify_certificate(_round_trip(cert))

        assert not report.passed
        assert report.failure.diagram == "naturality"

    def test_wrong_shape(self, burnside_c2):
        """Test that mis-shaped components are reported rather than raised."""
        cert = iso_certificate(find_isomorphism(burnside_c2, burnside_c2), "shape")
        cert.components[0] = [[1]]

        report = verify_certificate(_round_trip(cert))

        assert not report.passed
        assert report.failure.diagram == "shape"


@pytest.mark.unit
class TestOtherCertificates:
    """Tests for bijection, cohomological, axiom and dimension certificates."""

    def test_bijection(self, s3):
        """Test the certificate of End([X, X]) = G_c."""
        cert = bijection_certificate(end_of_homs(s3).iso, "centre")

        assert verify_certificate(_round_trip(cert)).passed

    def test_tampered_bijection(self, s3):
        """Test that a non-equivariant map fails."""
        cert = bijection_certificate(end_of_homs(s3).iso, "centre")
        cert.values[0], cert.values[1] = cert.values[1], cert.values[0]

        report = verify_certificate(_round_trip(cert))

        assert not report.passed
        assert report.failure.diagram == "equivariance"

    def test_cohomological(self, s3):
        """Test restriction and transfer witnesses for a fixed-point functor."""
        functor = fixed_point_functor(regular_representation(s3))
        cert = cohomological_certificate(functor, cohomological_check(functor), "kS3")

        assert verify_certificate(_round_trip(cert)).passed

    def test_cohomological_failure_is_detected(self, burnside_c2):
        """Test that the Burnside functor's witnesses do not verify."""
        cert = cohomological_certificate(burnside_c2, cohomological_check(burnside_c2), "J")

        report = verify_certificate(_round_trip(cert))

        assert not report.passed
        assert report.failure.diagram == "cohomological"

    def test_axioms(self, burnside_c2, c2):
        """Test functor and Green functor axiom certificates."""
        green = burnside_green(c2)
        functor_cert = axiom_certificate(validate(burnside_c2), "J", functor=burnside_c2)
        green_cert = axiom_certificate(validate_green(green), "A", green=green)

        assert verify_certificate(_round_trip(functor_cert)).passed
        assert verify_certificate(_round_trip(green_cert)).passed

    def test_axioms_with_false_report(self, burnside_c2):
        """Test that a recorded outcome must match the re-run check."""
        report = validate(burnside_c2).model_copy(update={"passed": False})

        result = verify_certificate(_round_trip(axiom_certificate(report, "J", functor=burnside_c2)))

        assert not result.passed
        assert result.failure.diagram == "report"

    def test_axioms_without_functor(self, burnside_c2):
        """Test that an axiom certificate needs a functor."""
        result = verify_certificate(_round_trip(axiom_certificate(validate(burnside_c2), "empty")))

        assert result.failure.diagram == "missing"

    def test_dimensions(self, burnside_c2):
        """Test dimension comparisons with and without an iso."""
        iso = iso_certificate(find_isomorphism(burnside_c2, burnside_c2), "iso")
        good = dimension_certificate([DimensionComparison(label="a", left=2, right=2)], "dims", iso=iso)
        bad = dimension_certificate([DimensionComparison(label="b", left=2, right=3)], "dims")

        assert verify_certificate(_round_trip(good)).passed
        assert verify_certificate(_round_trip(bad)).failure.diagram == "dimension"

    def test_broken_functor_data(self, burnside_c2):
        """Test that unreadable functor data is a format failure."""
        cert = iso_certificate(find_isomorphism(burnside_c2, burnside_c2), "broken")
        cert.source.levels = [2]

        report = verify_certificate(_round_trip(cert))

        assert not report.passed
        assert report.failure.diagram == "format"


@pytest.mark.unit
class TestForgedCertificates:
    """Tests that hand-made certificate data is not taken on trust."""

    @pytest.fixture
    def coh_cert(self, c2):
        functor = fixed_point_functor(regular_representation(c2))
        return cohomological_certificate(functor, cohomological_check(functor), "kC2")

    def test_cohomological_needs_a_functor(self):
        """Test that witnesses without their functor do not parse."""
        data = {"certificate": {
            "kind": "cohomological", "label": "made up",
            "pairs": [{"h": [0, 1], "k": [0], "index": 2, "restriction": [["1"]], "transfer": [["2"]]}],
        }}

        with pytest.raises(ValidationError):
            CertificateFile.model_validate(data)

    def test_stored_matrices_are_recomputed(self, coh_cert):
        """Test that matrices that satisfy t r = [H:K] but are not M(sigma) fail."""
        pair = next(p for p in coh_cert.pairs if p.h == [0, 1] and p.k == [0])
        pair.restriction = [[2], [0]]
        pair.transfer = [[1, 5]]

        report = verify_certificate(_round_trip(coh_cert))

        assert not report.passed
        assert report.failure.diagram == "witness"

    def test_every_pair_is_required(self, coh_cert):
        """Test that dropping a pair K <= H fails coverage."""
        coh_cert.pairs = [p for p in coh_cert.pairs if not (p.h == [0, 1] and p.k == [0])]

        report = verify_certificate(_round_trip(coh_cert))

        assert not report.passed
        assert report.failure.diagram == "coverage"

    def test_pairs_must_be_subgroups(self, coh_cert):
        """Test that a subset that is not a subgroup is refused."""
        coh_cert.pairs[0].k = [1]

        report = verify_certificate(_round_trip(coh_cert))

        assert report.failure.diagram == "subgroup"

    def test_wrong_index(self, coh_cert):
        """Test that the recorded index must be [H:K]."""
        pair = next(p for p in coh_cert.pairs if p.h == [0, 1] and p.k == [0])
        pair.index = 3

        assert verify_certificate(_round_trip(coh_cert)).failure.diagram == "index"

    def test_dimensions_without_iso(self):
        """Test that equal numbers alone certify nothing."""
        data = {"certificate": {
            "kind": "dimensions", "label": "made up",
            "comparisons": [{"label": "made up", "left": 7, "right": 7}],
        }}

        report = verify_certificate(CertificateFile.model_validate(data))

        assert not report.passed
        assert report.failure.diagram == "missing"
