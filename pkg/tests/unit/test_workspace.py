"""Tests for the named-object workspace."""

import pytest

from src.exceptions import WorkspaceError
from src.models.certificates import CertificateFile
from src.services.certificates import iso_certificate
from src.services.green import burnside_green
from src.services.mackey import identity_morphism
from src.services.workspace import Workspace, detect_kind
from src.utils.file_parser import functor_to_model, green_to_model


@pytest.mark.unit
class TestDetectKind:
    """Tests for file classification."""

    @pytest.mark.parametrize("keys,kind", [
        ({"builtin": "C2"}, "group"),
        ({"table": [[0]]}, "group"),
        ({"group": {}, "subgroup": [0]}, "gset"),
        ({"group": {}, "action": [[0]]}, "gset"),
        ({"group": {}, "dim": 1, "matrices": []}, "representation"),
        ({"group": {}, "levels": [], "generators": []}, "functor"),
        ({"group": {}, "levels": [], "generators": [], "mult": [], "unit": []}, "green"),
        ({"gset": {}, "grading": []}, "crossed"),
        ({"certificate": {}}, "certificate"),
    ])
    def test_kinds(self, keys, kind):
        """Test classification by top-level keys."""
        assert detect_kind(keys) == kind

    def test_unknown(self):
        """Test that unrecognized files raise."""
        with pytest.raises(WorkspaceError):
            detect_kind({"colour": "blue"})


@pytest.mark.unit
class TestWorkspace:
    """Tests for loading and looking up named objects."""

    def test_load_functor_by_model_name(self, burnside_c2, write_json):
        """Test that the name field of the file names the object."""
        ws = Workspace()
        path = write_json("j.json", functor_to_model(burnside_c2).model_dump())

        name, functor = ws.load(path)

        assert name == burnside_c2.name
        assert ws.functor(name) == burnside_c2
        assert ws.group(name) == burnside_c2.group
        assert name in ws and len(ws) == 1

    def test_file_stem_and_explicit_names(self, write_json):
        """Test the fallback to the file stem and explicit names."""
        ws = Workspace()
        path = write_json("klein.json", {"builtin": "C2xC2"})

        assert ws.load(path)[0] == "klein"
        assert ws.load(path, name="V4")[0] == "V4"
        assert ws.names("group") == ["klein", "V4"]

    def test_duplicate_names(self, write_json):
        """Test that names are unique in a workspace."""
        ws = Workspace()
        path = write_json("c2.json", {"name": "C2", "builtin": "C2"})
        ws.load(path)

        with pytest.raises(WorkspaceError):
            ws.load(path)

    def test_kind_mismatch(self, write_json):
        """Test that typed getters refuse other kinds."""
        ws = Workspace()
        ws.load(write_json("c3.json", {"builtin": "C3"}))

        with pytest.raises(WorkspaceError):
            ws.functor("c3")
        with pytest.raises(WorkspaceError):
            ws.get("missing")

    def test_green_stands_for_its_functor(self, c2, write_json):
        """Test that a Green functor can be used where a functor is expected."""
        green = burnside_green(c2)
        ws = Workspace()
        ws.load(write_json("a.json", green_to_model(green).model_dump()), name="A")

        assert ws.green("A") == green
        assert ws.functor("A") == green.underlying

    def test_gset_and_representation(self, write_json):
        """Test G-set and representation files."""
        ws = Workspace()
        ws.load(write_json("x.json", {"group": {"builtin": "S3"}, "subgroup": [0, 1]}))
        ws.load(write_json("sign.json", {"group": {"builtin": "C2"}, "dim": 1, "matrices": [[[1]], [[-1]]]}))

        assert ws.gset("x").size == 3
        assert ws.representation("sign").dim == 1
        assert ws.group("x").order == 6

    def test_certificate(self, burnside_c2, write_json):
        """Test that certificate files load as CertificateFile and have no group."""
        cert = CertificateFile(certificate=iso_certificate(identity_morphism(burnside_c2), "id"))
        ws = Workspace()
        ws.load(write_json("id.cert.json", cert.model_dump(mode="json")), name="cert")

        assert ws.certificate("cert").certificate.kind == "mackey-iso"
        with pytest.raises(WorkspaceError):
            ws.group("cert")

    def test_invalid_file(self, write_json):
        """Test that schema errors surface as WorkspaceError."""
        ws = Workspace()

        with pytest.raises(WorkspaceError):
            ws.load(write_json("bad.json", {"group": {"builtin": "C2"}, "levels": "two", "generators": []}))
