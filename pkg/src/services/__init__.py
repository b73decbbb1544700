"""Services for Mackey Workbench."""

from .finite_group import Group, all_subgroups
from .gset import GSet, representatives
from .mackey import MackeyFunctor, MackeyMorphism, Representation
from .green import GreenFunctor, CrossedGSet

__all__ = [
    "Group",
    "all_subgroups",
    "GSet",
    "representatives",
    "MackeyFunctor",
    "MackeyMorphism",
    "Representation",
    "GreenFunctor",
    "CrossedGSet",
]
