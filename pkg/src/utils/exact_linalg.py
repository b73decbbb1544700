"""Exact linear algebra over the rationals.

Matrices act on column vectors and hold ``fractions.Fraction`` entries in
lowest terms. Gaussian elimination always takes the leftmost nonzero pivot so
that kernels, quotient bases and solutions are reproducible.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value: Scalar) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"Unsupported matrix entry {value!r} of type {type(value).__name__}")


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as "p/q" (or "p" for integers)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RatMatrix:
    """Immutable rows x cols matrix of exact rationals.

    Degenerate 0 x n and n x 0 matrices are legal and keep their shape.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[Scalar]]):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"Negative shape {rows}x{cols}")
        if len(data) != rows:
            raise DimensionMismatchError(f"Expected {rows} rows, got {len(data)}")
        converted = []
        for row in data:
            if len(row) != cols:
                raise DimensionMismatchError(f"Expected {cols} columns, got {len(row)}")
            converted.append(tuple(to_fraction(x) for x in row))
        self.rows = rows
        self.cols = cols
        self._data: Tuple[Tuple[Fraction, ...], ...] = tuple(converted)
        self._hash: Optional[int] = None

    # Construction helpers

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "RatMatrix":
        """Build from a list of rows; ``cols`` is needed only for 0-row input."""
        if cols is None:
            if not data:
                raise DimensionMismatchError("Column count required for a matrix without rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls._trusted(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._trusted(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence[Scalar]) -> "RatMatrix":
        return cls(len(values), 1, [[v] for v in values])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> "RatMatrix":
        """Build a rows x len(columns) matrix from column vectors."""
        for col in columns:
            if len(col) != rows:
                raise DimensionMismatchError(f"Column of length {len(col)} in a {rows}-row matrix")
        data = [[to_fraction(columns[j][i]) for j in range(len(columns))] for i in range(rows)]
        return cls._trusted(rows, len(columns), data)

    @classmethod
    def unit_column(cls, n: int, index: int) -> "RatMatrix":
        return cls._trusted(n, 1, [[ONE if i == index else ZERO] for i in range(n)])

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: List[List[Fraction]]) -> "RatMatrix":
        """Wrap already-converted Fraction rows without re-checking them."""
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._data = tuple(tuple(r) for r in data)
        obj._hash = None
        return obj

    # Access

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self._data[i]

    def column_at(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self._data]

    def to_strings(self) -> List[List[str]]:
        return [[format_fraction(x) for x in r] for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == RatMatrix.identity(self.rows)

    # Arithmetic

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_rows = other._data
        result = []
        for r in self._data:
            acc = [ZERO] * other.cols
            for k, a in enumerate(r):
                if a == 0:
                    continue
                brow = other_rows[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b != 0:
                        acc[j] += a * b
            result.append(acc)
        return RatMatrix._trusted(self.rows, other.cols, result)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._trusted(
            self.rows, self.cols,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        return RatMatrix._trusted(
            self.rows, self.cols,
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
        )

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def scale(self, factor: Scalar) -> "RatMatrix":
        c = to_fraction(factor)
        return RatMatrix._trusted(self.rows, self.cols, [[c * x for x in r] for r in self._data])

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._trusted(
            self.cols, self.rows, [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, {self.to_strings()})"

    def submatrix(self, row_range: range, col_range: range) -> "RatMatrix":
        return RatMatrix._trusted(
            len(row_range), len(col_range),
            [[self._data[i][j] for j in col_range] for i in row_range],
        )

    def rank(self) -> int:
        _, pivots = _row_reduce(self.tolist(), self.cols)
        return len(pivots)


@dataclass(frozen=True)
class QuotientSpace:
    """A cokernel with a chosen basis.

    ``projection`` maps the ambient space onto the quotient and ``section``
    lifts quotient coordinates back; projection @ section is the identity.
    """

    ambient_dim: int
    projection: RatMatrix
    section: RatMatrix

    @property
    def dim(self) -> int:
        return self.projection.rows


def _row_reduce(rows: List[List[Fraction]], ncols: int, limit: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form with the leftmost-nonzero pivot rule.

    Only columns below ``limit`` (default: all) are eligible as pivots.
    Returns the nonzero rows of the reduced matrix and their pivot columns.
    """
    limit = ncols if limit is None else limit
    work = [list(r) for r in rows]
    pivots: List[int] = []
    lead = 0
    for col in range(limit):
        pivot_row = None
        for i in range(lead, len(work)):
            if work[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[lead], work[pivot_row] = work[pivot_row], work[lead]
        prow = work[lead]
        inv = 1 / prow[col]
        if inv != 1:
            for j in range(col, ncols):
                if prow[j] != 0:
                    prow[j] *= inv
        for i in range(len(work)):
            if i == lead:
                continue
            factor = work[i][col]
            if factor == 0:
                continue
            r = work[i]
            for j in range(col, ncols):
                if prow[j] != 0:
                    r[j] -= factor * prow[j]
        pivots.append(col)
        lead += 1
        if lead == len(work):
            break
    return work[:lead], pivots


def solve(a: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """Return some X with a @ X == b, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.

    Raises:
        DimensionMismatchError: if a and b have different row counts
    """
    if a.rows != b.rows:
        raise DimensionMismatchError(f"solve: A has {a.rows} rows but B has {b.rows}")
    n = a.cols
    augmented = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    reduced, pivots = _row_reduce(augmented, n + b.cols)
    if any(p >= n for p in pivots):
        return None
    solution = [[ZERO] * b.cols for _ in range(n)]
    for r, p in zip(reduced, pivots):
        solution[p] = list(r[n:])
    return RatMatrix._trusted(n, b.cols, solution)


def kernel_basis(a: RatMatrix) -> RatMatrix:
    """Columns form a basis of {x : a @ x == 0}, one per free column."""
    reduced, pivots = _row_reduce(a.tolist(), a.cols)
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    columns = []
    for f in free:
        vec = [ZERO] * a.cols
        vec[f] = ONE
        for r, p in zip(reduced, pivots):
            if r[f] != 0:
                vec[p] = -r[f]
        columns.append(vec)
    return RatMatrix.from_columns(columns, a.cols)


def quotient_by(relations: RatMatrix) -> QuotientSpace:
    """Quotient of the ambient space by the column span of ``relations``.

    The quotient basis is the set of non-pivot coordinates of the row-reduced
    relation rows, so the section is a coordinate inclusion.
    """
    ambient = relations.rows
    reduced, pivots = _row_reduce(relations.T.tolist(), ambient)
    pivot_set = set(pivots)
    kept = [c for c in range(ambient) if c not in pivot_set]
    projection = []
    for c in kept:
        prow = [ZERO] * ambient
        prow[c] = ONE
        for r, p in zip(reduced, pivots):
            if r[c] != 0:
                prow[p] = -r[c]
        projection.append(prow)
    section = [[ONE if i == c else ZERO for c in kept] for i in range(ambient)]
    logger.debug(f"Quotient of {ambient}-dim space by rank {len(pivots)} relations")
    return QuotientSpace(
        ambient_dim=ambient,
        projection=RatMatrix._trusted(len(kept), ambient, projection),
        section=RatMatrix._trusted(ambient, len(kept), section),
    )


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product; a's indices are outer, b's inner."""
    data = []
    for i in range(a.rows):
        arow = a.row(i)
        for k in range(b.rows):
            brow = b.row(k)
            data.append([x * y for x in arow for y in brow])
    return RatMatrix._trusted(a.rows * b.rows, a.cols * b.cols, data)


def direct_sum(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Block-diagonal matrix [[a, 0], [0, b]]."""
    return block_matrix(a.rows + b.rows, a.cols + b.cols, [(0, 0, a), (a.rows, a.cols, b)])


def block_matrix(rows: int, cols: int, blocks: Iterable[Tuple[int, int, RatMatrix]]) -> RatMatrix:
    """Sum the given blocks, placed at (row offset, column offset), into a zero matrix."""
    data = [[ZERO] * cols for _ in range(rows)]
    for r0, c0, block in blocks:
        if r0 + block.rows > rows or c0 + block.cols > cols:
            raise DimensionMismatchError(
                f"Block {block.shape} at ({r0},{c0}) does not fit in {rows}x{cols}"
            )
        for i in range(block.rows):
            target = data[r0 + i]
            for j, x in enumerate(block.row(i)):
                if x != 0:
                    target[c0 + j] += x
    return RatMatrix._trusted(rows, cols, data)


def hstack(matrices: Sequence[RatMatrix], rows: int) -> RatMatrix:
    """Concatenate matrices side by side; ``rows`` fixes the shape of an empty list."""
    for m in matrices:
        if m.rows != rows:
            raise DimensionMismatchError(f"hstack: {m.rows} rows where {rows} expected")
    data = [[x for m in matrices for x in m.row(i)] for i in range(rows)]
    return RatMatrix._trusted(rows, sum(m.cols for m in matrices), data)


def vstack(matrices: Sequence[RatMatrix], cols: int) -> RatMatrix:
    """Stack matrices vertically; ``cols`` fixes the shape of an empty list."""
    for m in matrices:
        if m.cols != cols:
            raise DimensionMismatchError(f"vstack: {m.cols} columns where {cols} expected")
    data = [list(m.row(i)) for m in matrices for i in range(m.rows)]
    return RatMatrix._trusted(len(data), cols, data)


def inverse(a: RatMatrix) -> Optional[RatMatrix]:
    """Two-sided inverse of a square matrix, or None if singular."""
    if a.rows != a.cols:
        return None
    result = solve(a, RatMatrix.identity(a.rows))
    if result is None or not (result @ a).is_identity():
        return None
    return result


def commutation_matrix(m: int, n: int) -> RatMatrix:
    """Permutation taking x (x) y to y (x) x for dim x = m, dim y = n."""
    data = [[ZERO] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            data[j * m + i][i * n + j] = ONE
    return RatMatrix._trusted(m * n, m * n, data)


def flatten(matrix: RatMatrix) -> List[Fraction]:
    """Row-major entries."""
    return [x for i in range(matrix.rows) for x in matrix.row(i)]


def unflatten(values: Sequence[Fraction], rows: int, cols: int) -> RatMatrix:
    if len(values) != rows * cols:
        raise DimensionMismatchError(f"{len(values)} values cannot fill {rows}x{cols}")
    return RatMatrix._trusted(rows, cols, [list(values[i * cols:(i + 1) * cols]) for i in range(rows)])


def from_entries(rows: int, cols: int, entries: Mapping[Tuple[int, int], Scalar]) -> RatMatrix:
    """Matrix with the given (row, col) entries and zeros elsewhere."""
    data = [[ZERO] * cols for _ in range(rows)]
    for (r, c), value in entries.items():
        data[r][c] += to_fraction(value)
    return RatMatrix._trusted(rows, cols, data)
