"""Pytest configuration and fixtures."""

import json
from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from src.services.finite_group import Group, cyclic_group, direct_product, symmetric_group
from src.services.gset import representatives
from src.services.mackey import (
    MackeyFunctor,
    burnside_functor,
    fixed_point_functor,
    regular_representation,
    trivial_representation,
)


@pytest.fixture(scope="session")
def c1() -> Group:
    return cyclic_group(1)


@pytest.fixture(scope="session")
def c2() -> Group:
    return cyclic_group(2)


@pytest.fixture(scope="session")
def c3() -> Group:
    return cyclic_group(3)


@pytest.fixture(scope="session")
def c2xc2() -> Group:
    return direct_product(cyclic_group(2), cyclic_group(2))


@pytest.fixture(scope="session")
def s3() -> Group:
    return symmetric_group(3)


@pytest.fixture(scope="session")
def burnside_c2(c2) -> MackeyFunctor:
    return burnside_functor(c2)


@pytest.fixture(scope="session")
def burnside_c3(c3) -> MackeyFunctor:
    return burnside_functor(c3)


@pytest.fixture(scope="session")
def fixpt_regular_c2(c2) -> MackeyFunctor:
    return fixed_point_functor(regular_representation(c2))


@pytest.fixture(scope="session")
def fixpt_trivial_c2(c2) -> MackeyFunctor:
    return fixed_point_functor(trivial_representation(c2))


@pytest.fixture(scope="session")
def fixpt_regular_c3(c3) -> MackeyFunctor:
    return fixed_point_functor(regular_representation(c3))


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Dict[str, Any]], str]:
    """Write a dict as JSON under tmp_path and return the path as a string."""

    def _write(name: str, data: Dict[str, Any]) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def top_and_free(c2):
    """C2/C2 and C2/e, the two representative C2-sets."""
    reps = representatives(c2)
    return reps[0], reps[-1]
