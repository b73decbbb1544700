"""Named objects loaded from definition files."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..exceptions import WorkspaceError
from ..models.certificates import CertificateFile
from ..models.formats import (
    CrossedGSetModel,
    FunctorModel,
    GreenModel,
    GroupModel,
    GSetModel,
    RepresentationModel,
)
from ..utils.file_parser import (
    crossed_from_model,
    functor_from_model,
    green_from_model,
    group_from_model,
    gset_from_model,
    parse_model,
    read_json,
    representation_from_model,
)
from .finite_group import Group
from .green import CrossedGSet, GreenFunctor
from .gset import GSet
from .mackey import MackeyFunctor, Representation

logger = logging.getLogger(__name__)


def detect_kind(data: Dict[str, Any]) -> str:
    """Classify a definition file by its top-level keys."""
    if "certificate" in data:
        return "certificate"
    if "levels" in data:
        return "green" if "mult" in data else "functor"
    if "grading" in data:
        return "crossed"
    if "matrices" in data:
        return "representation"
    if "action" in data or "subgroup" in data:
        return "gset"
    if {"table", "permutations", "builtin"} & data.keys():
        return "group"
    raise WorkspaceError(f"Cannot tell what kind of object has keys {sorted(data)}")


_LOADERS = {
    "group": (GroupModel, group_from_model),
    "gset": (GSetModel, gset_from_model),
    "representation": (RepresentationModel, representation_from_model),
    "functor": (FunctorModel, functor_from_model),
    "green": (GreenModel, green_from_model),
    "crossed": (CrossedGSetModel, crossed_from_model),
    "certificate": (CertificateFile, lambda model: model),
}


class Workspace:
    """Holds validated groups, G-sets, representations and functors under unique names."""

    def __init__(self):
        self._objects: Dict[str, Tuple[str, Any]] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._objects

    def __len__(self) -> int:
        return len(self._objects)

    def names(self, kind: Optional[str] = None) -> List[str]:
        return [n for n, (k, _) in self._objects.items() if kind is None or k == kind]

    def add(self, name: str, kind: str, obj: Any) -> Any:
        if name in self._objects:
            raise WorkspaceError(f"Name '{name}' is already defined")
        self._objects[name] = (kind, obj)
        logger.debug(f"Workspace: {kind} '{name}' added")
        return obj

    def load(self, path: Union[str, Path], name: Optional[str] = None) -> Tuple[str, Any]:
        """Load and validate one file; returns (name, object).

        The name defaults to the "name" field of the file, then the file stem.
        """
        data = read_json(path)
        kind = detect_kind(data)
        model_cls, build = _LOADERS[kind]
        model = parse_model(model_cls, data, source=str(path))
        obj = build(model)
        key = name or getattr(model, "name", None) or Path(path).stem
        self.add(key, kind, obj)
        logger.info(f"Loaded {kind} '{key}' from {path}")
        return key, obj

    def get(self, name: str, kind: Optional[str] = None) -> Any:
        if name not in self._objects:
            raise WorkspaceError(f"Unknown name '{name}'")
        stored_kind, obj = self._objects[name]
        if kind is not None and stored_kind != kind:
            raise WorkspaceError(f"'{name}' is a {stored_kind}, not a {kind}")
        return obj

    def group(self, name: str) -> Group:
        """A group, or the group underlying any other loaded object."""
        kind, obj = self._objects.get(name, (None, None))
        if kind is None:
            raise WorkspaceError(f"Unknown name '{name}'")
        if kind == "group":
            return obj
        if kind == "certificate":
            raise WorkspaceError(f"'{name}' is a certificate, not a group")
        return obj.group

    def gset(self, name: str) -> GSet:
        return self.get(name, "gset")

    def representation(self, name: str) -> Representation:
        return self.get(name, "representation")

    def functor(self, name: str) -> MackeyFunctor:
        """A Mackey functor; a Green functor stands for its underlying functor."""
        kind, obj = self._objects.get(name, (None, None))
        if kind == "green":
            return obj.underlying
        return self.get(name, "functor")

    def green(self, name: str) -> GreenFunctor:
        return self.get(name, "green")

    def crossed(self, name: str) -> CrossedGSet:
        return self.get(name, "crossed")

    def certificate(self, name: str) -> CertificateFile:
        return self.get(name, "certificate")
