"""Load and dump definition files (groups, G-sets, representations, functors)."""

import json
import logging
import re
from functools import reduce
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from ..exceptions import FunctorFormatError, SpanMismatchError, WorkspaceError
from ..models.formats import (
    CrossedGSetModel,
    FunctorModel,
    GeneratorModel,
    GreenModel,
    GroupModel,
    GSetModel,
    ProductModel,
    RepresentationModel,
    SpanComponentModel,
)
from ..services.finite_group import (
    Group,
    cyclic_group,
    direct_product,
    group_from_permutations,
    group_from_table,
    symmetric_group,
)
from ..services.green import CrossedGSet, GreenFunctor
from ..services.gset import GSet, coset_gset, make_gset, representatives
from ..services.mackey import GeneratorKey, MackeyFunctor, Representation, generator_keys
from ..services.span_category import ConnectedSpan, component_from_legs, component_legs
from .exact_linalg import RatMatrix, format_fraction

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

_BUILTIN = re.compile(r"^([CS])(\d+)$")


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise WorkspaceError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise WorkspaceError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise WorkspaceError(f"{path}: top level must be an object")
    return data


def parse_model(model_cls: Type[ModelT], data: Dict[str, Any], source: str = "<input>") -> ModelT:
    try:
        return model_cls.model_validate(data)
    except ValidationError as e:
        raise WorkspaceError(f"{source}: invalid {model_cls.__name__}: {e}") from e


def load_model(model_cls: Type[ModelT], path: Union[str, Path]) -> ModelT:
    return parse_model(model_cls, read_json(path), source=str(path))


def dump_model(model: BaseModel, path: Union[str, Path]) -> None:
    Path(path).write_text(model.model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote {type(model).__name__} to {path}")


# Conversions

def _matrix(rows: Sequence[Sequence[Any]], expected_rows: int, expected_cols: int, what: str) -> RatMatrix:
    if len(rows) != expected_rows or any(len(r) != expected_cols for r in rows):
        raise FunctorFormatError(f"{what}: expected a {expected_rows}x{expected_cols} matrix")
    return RatMatrix(expected_rows, expected_cols, rows)


def matrix_rows(matrix: RatMatrix) -> List[List[Union[int, str]]]:
    return [[int(x) if x.denominator == 1 else format_fraction(x) for x in row] for row in matrix.tolist()]


def builtin_group(label: str) -> Group:
    """C<n>, S<n>, or products of those joined by 'x' (e.g. C2xC2)."""
    factors = []
    for part in label.split("x"):
        m = _BUILTIN.match(part.strip())
        if not m:
            raise WorkspaceError(f"Unknown builtin group '{label}'")
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise WorkspaceError(f"Unknown builtin group '{label}'")
        factors.append(cyclic_group(n) if kind == "C" else symmetric_group(n))
    return reduce(direct_product, factors)


def group_from_model(model: GroupModel) -> Group:
    if model.builtin is not None:
        group = builtin_group(model.builtin)
        if model.name:
            group.name = model.name
        return group
    if model.permutations is not None:
        return group_from_permutations(model.permutations, name=model.name)
    return group_from_table(model.table, name=model.name)


def group_to_model(group: Group) -> GroupModel:
    return GroupModel(name=group.name, table=[list(r) for r in group.rows()])


def gset_from_model(model: GSetModel) -> GSet:
    group = group_from_model(model.group)
    if model.subgroup is not None:
        return coset_gset(group, model.subgroup)
    return make_gset(group, model.action)


def gset_to_model(x_set: GSet, name: Optional[str] = None) -> GSetModel:
    return GSetModel(name=name, group=group_to_model(x_set.group), action=[list(r) for r in x_set.rows])


def representation_from_model(model: RepresentationModel) -> Representation:
    group = group_from_model(model.group)
    mats = [_matrix(m, model.dim, model.dim, f"rho({g})") for g, m in enumerate(model.matrices)]
    return Representation(group, model.dim, mats)


def functor_from_model(model: FunctorModel) -> MackeyFunctor:
    """Build a functor, putting each generator span into normal form first.

    Raises:
        FunctorFormatError: unknown classes, disconnected spans, duplicates or bad shapes
    """
    group = group_from_model(model.group)
    reps = representatives(group)
    name = model.name or "M"
    if len(model.levels) != len(reps):
        raise FunctorFormatError(f"{name}: {len(model.levels)} levels for {len(reps)} classes")
    action: Dict[GeneratorKey, RatMatrix] = {}
    for gen in model.generators:
        key = _generator_key(reps, gen, name)
        if key in action:
            raise FunctorFormatError(f"{name}: generator C{gen.source} -> C{gen.target} given twice")
        action[key] = _matrix(
            gen.matrix, model.levels[gen.target], model.levels[gen.source],
            f"{name}: generator C{gen.source} -> C{gen.target}",
        )
    return MackeyFunctor(group, model.levels, action, name=name)


def _generator_key(reps: Sequence[GSet], gen: GeneratorModel, name: str) -> GeneratorKey:
    if gen.source >= len(reps) or gen.target >= len(reps):
        raise FunctorFormatError(f"{name}: class index out of range in C{gen.source} -> C{gen.target}")
    if len(gen.span) != 1:
        raise FunctorFormatError(f"{name}: generator spans must be connected, got {len(gen.span)} components")
    comp = gen.span[0]
    ci, cj = reps[gen.source], reps[gen.target]
    try:
        component = component_from_legs(ci, cj, comp.apex_class, comp.left, comp.right)
    except SpanMismatchError as e:
        raise FunctorFormatError(f"{name}: span component {comp.model_dump()}: {e}") from e
    return gen.source, gen.target, component


def span_component_model(source: GSet, target: GSet, component: ConnectedSpan) -> SpanComponentModel:
    left, right = component_legs(source, target, component)
    return SpanComponentModel(apex_class=component.apex_class, left=list(left.values), right=list(right.values))


def functor_to_model(functor: MackeyFunctor) -> FunctorModel:
    reps = representatives(functor.group)
    generators = [
        GeneratorModel(
            source=i,
            target=j,
            span=[span_component_model(reps[i], reps[j], comp)],
            matrix=matrix_rows(functor.action[(i, j, comp)]),
        )
        for i, j, comp in generator_keys(functor.group)
    ]
    return FunctorModel(
        name=functor.name,
        group=group_to_model(functor.group),
        levels=list(functor.level_dims),
        generators=generators,
    )


def green_from_model(model: GreenModel) -> GreenFunctor:
    underlying = functor_from_model(model)
    levels = model.levels
    mult = {}
    for entry in model.mult:
        if entry.left >= len(levels) or entry.right >= len(levels):
            raise FunctorFormatError(f"{underlying.name}: product ({entry.left}, {entry.right}) is out of range")
        cols = levels[entry.left] * levels[entry.right]
        what = f"{underlying.name}: product ({entry.left}, {entry.right})"
        mult[(entry.left, entry.right)] = _matrix(entry.matrix, len(entry.matrix), cols, what)
    unit = _matrix([[x] for x in model.unit], len(model.unit), 1, "unit")
    return GreenFunctor(underlying, mult, unit, name=underlying.name)


def green_to_model(green: GreenFunctor) -> GreenModel:
    base = functor_to_model(green.underlying)
    mult = [
        ProductModel(left=i, right=j, matrix=matrix_rows(m))
        for (i, j), m in sorted(green.mult.items())
    ]
    unit = [row[0] for row in matrix_rows(green.unit)]
    return GreenModel(**base.model_dump(), mult=mult, unit=unit)


def crossed_from_model(model: CrossedGSetModel) -> CrossedGSet:
    carrier = gset_from_model(model.gset)
    return CrossedGSet(carrier, model.grading, mult=model.mult, unit=model.unit)


def load_group(path: Union[str, Path]) -> Group:
    return group_from_model(load_model(GroupModel, path))


def load_functor(path: Union[str, Path]) -> MackeyFunctor:
    return functor_from_model(load_model(FunctorModel, path))


def load_green(path: Union[str, Path]) -> GreenFunctor:
    return green_from_model(load_model(GreenModel, path))


def load_representation(path: Union[str, Path]) -> Representation:
    return representation_from_model(load_model(RepresentationModel, path))
