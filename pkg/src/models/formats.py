"""JSON file formats for groups, G-sets, representations and functors."""

from fractions import Fraction
from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

Rational = Union[int, str]
MatrixRows = List[List[Rational]]


def _check_rational(value: Rational) -> Rational:
    if isinstance(value, str):
        try:
            Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"{value!r} is not a rational 'p/q'") from e
    return value


def _check_rows(rows: MatrixRows) -> MatrixRows:
    for row in rows:
        for x in row:
            _check_rational(x)
    return rows


class GroupModel(BaseModel):
    """Exactly one of a Cayley table, permutation generators or a builtin name (C<n>, S<n>)."""

    name: Optional[str] = None
    table: Optional[List[List[int]]] = None
    permutations: Optional[List[List[int]]] = None
    builtin: Optional[str] = None

    @model_validator(mode="after")
    def one_source(self) -> "GroupModel":
        given = [x is not None for x in (self.table, self.permutations, self.builtin)]
        if sum(given) != 1:
            raise ValueError("give exactly one of 'table', 'permutations' or 'builtin'")
        return self


class GSetModel(BaseModel):
    """An action array (action[g][x] = g.x) or a coset space of a subgroup."""

    name: Optional[str] = None
    group: GroupModel
    action: Optional[List[List[int]]] = None
    subgroup: Optional[List[int]] = None

    @model_validator(mode="after")
    def one_source(self) -> "GSetModel":
        if (self.action is None) == (self.subgroup is None):
            raise ValueError("give exactly one of 'action' or 'subgroup'")
        return self


class RepresentationModel(BaseModel):
    name: Optional[str] = None
    group: GroupModel
    dim: int = Field(ge=0)
    matrices: List[MatrixRows]

    @field_validator("matrices")
    @classmethod
    def rationals(cls, value: List[MatrixRows]) -> List[MatrixRows]:
        for m in value:
            _check_rows(m)
        return value


class SpanComponentModel(BaseModel):
    """A connected span: apex class and its two legs as arrays over the apex points."""

    apex_class: int = Field(ge=0)
    left: List[int] = Field(min_length=1)
    right: List[int] = Field(min_length=1)


class GeneratorModel(BaseModel):
    source: int = Field(ge=0)
    target: int = Field(ge=0)
    span: List[SpanComponentModel]
    matrix: MatrixRows

    @field_validator("matrix")
    @classmethod
    def rationals(cls, value: MatrixRows) -> MatrixRows:
        return _check_rows(value)


class FunctorModel(BaseModel):
    """A Mackey functor: level dimensions plus one matrix per generator span."""

    name: Optional[str] = None
    group: GroupModel
    levels: List[int]
    generators: List[GeneratorModel]


class ProductModel(BaseModel):
    left: int = Field(ge=0)
    right: int = Field(ge=0)
    matrix: MatrixRows

    @field_validator("matrix")
    @classmethod
    def rationals(cls, value: MatrixRows) -> MatrixRows:
        return _check_rows(value)


class GreenModel(FunctorModel):
    mult: List[ProductModel]
    unit: List[Rational]

    @field_validator("unit")
    @classmethod
    def rationals(cls, value: List[Rational]) -> List[Rational]:
        for x in value:
            _check_rational(x)
        return value


class CrossedGSetModel(BaseModel):
    """A G-set with grading; ``mult`` is indexed by x*|Y| + y."""

    name: Optional[str] = None
    gset: GSetModel
    grading: List[int]
    mult: Optional[List[int]] = None
    unit: Optional[int] = None
