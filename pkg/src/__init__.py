"""Mackey Workbench - exact computations with Mackey and Green functors of finite groups."""

__version__ = "0.1.0"
