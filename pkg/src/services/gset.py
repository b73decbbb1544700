"""Finite G-sets, equivariant maps and their canonical decompositions."""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import EquivarianceError, GroupMismatchError, GSetValidationError
from ..utils.cache import cached, get_gset_cache
from .finite_group import (
    Group,
    Subgroup,
    all_subgroups,
    conjugating_element,
    require_subgroup,
)

logger = logging.getLogger(__name__)


class GSet:
    """A finite set {0, ..., size-1} with a left action of ``group``.

    ``action[g][x]`` is g.x. The action axioms are checked at construction
    unless ``check`` is False (used for sets built from already valid data).
    """

    def __init__(self, group: Group, action: Sequence[Sequence[int]], check: bool = True):
        self.group = group
        if check:
            try:
                arr = np.array(action, dtype=np.int64)
            except (TypeError, ValueError) as e:
                raise GSetValidationError(f"Action is not a {group.order}-row integer array: {e}") from e
            _validate_action(group, arr)
        self._rows: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in action)
        self.size = len(self._rows[0]) if self._rows else 0
        self._hash = hash((group, self._rows))

    @property
    def points(self) -> range:
        return range(self.size)

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    def act(self, g: int, x: int) -> int:
        return self._rows[g][x]

    def as_array(self) -> np.ndarray:
        return np.array(self._rows, dtype=np.int64).reshape(self.group.order, self.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GSet):
            return NotImplemented
        return self._hash == other._hash and self.group == other.group and self._rows == other._rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GSet({self.group.name}, size={self.size})"


def _validate_action(group: Group, arr: np.ndarray) -> None:
    n = group.order
    if arr.ndim != 2 or arr.shape[0] != n:
        raise GSetValidationError(f"Action must have {n} rows, got shape {arr.shape}")
    size = arr.shape[1]
    bad = np.argwhere((arr < 0) | (arr >= size))
    if bad.size:
        g, x = (int(v) for v in bad[0])
        raise GSetValidationError(f"{g}.{x} = {int(arr[g, x])} is not a point")
    if size == 0:
        return
    moved = np.flatnonzero(arr[0] != np.arange(size))
    if moved.size:
        raise GSetValidationError(f"Identity moves point {int(moved[0])}")
    gi = np.arange(n)
    lhs = arr[gi[:, None, None], arr[None, :, :]]  # g.(h.x)
    rhs = arr[group.table]  # (gh).x
    failures = np.argwhere(lhs != rhs)
    if failures.size:
        g, h, x = (int(v) for v in failures[0])
        raise GSetValidationError(f"Action is not compatible with the product at g={g}, h={h}, x={x}")


class GMap:
    """An equivariant map source -> target given by its value array."""

    def __init__(self, source: GSet, target: GSet, values: Sequence[int], check: bool = True):
        if source.group != target.group:
            raise GroupMismatchError("Map between G-sets over different groups")
        self.source = source
        self.target = target
        self.values: Tuple[int, ...] = tuple(int(v) for v in values)
        if check:
            self._check()

    def _check(self) -> None:
        if len(self.values) != self.source.size:
            raise EquivarianceError(f"Map has {len(self.values)} values for {self.source.size} points")
        if self.source.size == 0:
            return
        vals = np.array(self.values, dtype=np.int64)
        if (vals < 0).any() or (vals >= self.target.size).any():
            raise EquivarianceError("Map value outside the target")
        n = self.source.group.order
        lhs = vals[self.source.as_array()]  # f(g.x)
        rhs = self.target.as_array()[np.arange(n)[:, None], vals[None, :]]  # g.f(x)
        failures = np.argwhere(lhs != rhs)
        if failures.size:
            g, x = (int(v) for v in failures[0])
            raise EquivarianceError(f"f({g}.{x}) != {g}.f({x})")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.values))

    def __repr__(self) -> str:
        return f"GMap({list(self.values)})"


# Basic constructions

def orbit(x_set: GSet, x: int) -> List[int]:
    return sorted({x_set.act(g, x) for g in x_set.group.elements})


def orbits(x_set: GSet) -> List[List[int]]:
    """Orbits ordered by least point, each sorted."""
    seen = set()
    result = []
    for x in x_set.points:
        if x in seen:
            continue
        orb = orbit(x_set, x)
        seen.update(orb)
        result.append(orb)
    return result


def stabilizer(x_set: GSet, x: int) -> Subgroup:
    return frozenset(g for g in x_set.group.elements if x_set.act(g, x) == x)


def transporter(x_set: GSet, x: int, y: int) -> Optional[int]:
    """Least g with g.x = y."""
    for g in x_set.group.elements:
        if x_set.act(g, x) == y:
            return g
    return None


def coset_gset(group: Group, subgroup: Iterable[int]) -> GSet:
    """Left cosets gH with left multiplication; point 0 is H itself.

    Cosets are numbered in order of their least element.
    """
    return _coset_gset(group, require_subgroup(group, subgroup))


@cached(get_gset_cache())
def _coset_gset(group: Group, h: Subgroup) -> GSet:
    index: Dict[frozenset, int] = {}
    cosets: List[frozenset] = []
    for g in group.elements:
        c = frozenset(group.mul(g, x) for x in h)
        if c not in index:
            index[c] = len(cosets)
            cosets.append(c)
    action = [[index[frozenset(group.mul(g, x) for x in c)] for c in cosets] for g in group.elements]
    return GSet(group, action, check=False)


def coset_representatives(x_set: GSet) -> Tuple[int, ...]:
    """For a transitive G-set, the least g with g.0 = p for every point p."""
    reps: List[Optional[int]] = [None] * x_set.size
    for g in x_set.group.elements:
        p = x_set.act(g, 0)
        if reps[p] is None:
            reps[p] = g
    return tuple(r if r is not None else -1 for r in reps)


def representatives(group: Group) -> Tuple[GSet, ...]:
    """The representative transitive G-sets C_i = G/H_i in canonical class order."""
    table = all_subgroups(group)
    return tuple(coset_gset(group, table.rep(i)) for i in range(table.num_classes))


def terminal_gset(group: Group) -> GSet:
    return GSet(group, [[0] for _ in group.elements], check=False)


def empty_gset(group: Group) -> GSet:
    return GSet(group, [[] for _ in group.elements], check=False)


def conjugation_gset(group: Group) -> GSet:
    """G_c: the group acting on itself by conjugation."""
    return GSet(group, [[group.conjugate(g, x) for x in group.elements] for g in group.elements], check=False)


def _same_group(*sets: GSet) -> Group:
    group = sets[0].group
    for s in sets[1:]:
        if s.group != group:
            raise GroupMismatchError("G-sets over different groups")
    return group


@cached(get_gset_cache())
def product(x_set: GSet, y_set: GSet) -> GSet:
    """Diagonal action on pairs; (x, y) is point x*|Y| + y."""
    group = _same_group(x_set, y_set)
    m = y_set.size
    action = [
        [gx * m + gy for gx in x_set.rows[g] for gy in y_set.rows[g]]
        for g in group.elements
    ]
    return GSet(group, action, check=False)


def pair_index(y_set: GSet, x: int, y: int) -> int:
    return x * y_set.size + y


def split_pair(y_set: GSet, p: int) -> Tuple[int, int]:
    return divmod(p, y_set.size)


def coproduct(x_set: GSet, y_set: GSet) -> GSet:
    """Disjoint union: points of X first, then points of Y shifted by |X|."""
    group = _same_group(x_set, y_set)
    shift = x_set.size
    action = [list(x_set.rows[g]) + [shift + v for v in y_set.rows[g]] for g in group.elements]
    return GSet(group, action, check=False)


def coproduct_injections(x_set: GSet, y_set: GSet) -> Tuple[GMap, GMap]:
    total = coproduct(x_set, y_set)
    left = GMap(x_set, total, list(x_set.points), check=False)
    right = GMap(y_set, total, [x_set.size + y for y in y_set.points], check=False)
    return left, right


def identity_map(x_set: GSet) -> GMap:
    return GMap(x_set, x_set, list(x_set.points), check=False)


def compose_maps(f: GMap, g: GMap) -> GMap:
    """g after f."""
    if f.target != g.source:
        raise EquivarianceError("Maps are not composable")
    return GMap(f.source, g.target, [g.values[v] for v in f.values], check=False)


def terminal_map(x_set: GSet) -> GMap:
    return GMap(x_set, terminal_gset(x_set.group), [0] * x_set.size, check=False)


def product_map(f: GMap, g: GMap) -> GMap:
    """f x g : X x Y -> X' x Y'."""
    source = product(f.source, g.source)
    target = product(f.target, g.target)
    m = g.target.size
    values = [f.values[x] * m + g.values[y] for x in f.source.points for y in g.source.points]
    return GMap(source, target, values, check=False)


def projections(x_set: GSet, y_set: GSet) -> Tuple[GMap, GMap]:
    p = product(x_set, y_set)
    m = y_set.size
    first = GMap(p, x_set, [i // m for i in p.points], check=False)
    second = GMap(p, y_set, [i % m for i in p.points], check=False)
    return first, second


def swap_map(x_set: GSet, y_set: GSet) -> GMap:
    """(x, y) -> (y, x)."""
    source = product(x_set, y_set)
    target = product(y_set, x_set)
    n = x_set.size
    values = [y * n + x for x in x_set.points for y in y_set.points]
    return GMap(source, target, values, check=False)


def diagonal_map(x_set: GSet) -> GMap:
    target = product(x_set, x_set)
    return GMap(x_set, target, [x * x_set.size + x for x in x_set.points], check=False)


def pullback(f: GMap, g: GMap) -> Tuple[GSet, GMap, GMap]:
    """P = {(x, y) : f(x) = g(y)} in lexicographic order, with its projections.

    Raises:
        EquivarianceError: if f and g have different targets
    """
    if f.target != g.target:
        raise EquivarianceError("Pullback of maps with different targets")
    group = f.source.group
    pairs = [(x, y) for x in f.source.points for y in g.source.points if f.values[x] == g.values[y]]
    index = {p: i for i, p in enumerate(pairs)}
    action = [
        [index[(f.source.act(h, x), g.source.act(h, y))] for (x, y) in pairs]
        for h in group.elements
    ]
    apex = GSet(group, action, check=False)
    first = GMap(apex, f.source, [x for x, _ in pairs], check=False)
    second = GMap(apex, g.source, [y for _, y in pairs], check=False)
    return apex, first, second


def is_bijective(f: GMap) -> bool:
    return f.source.size == f.target.size and len(set(f.values)) == f.source.size


def inverse_map(f: GMap) -> GMap:
    if not is_bijective(f):
        raise EquivarianceError("Map is not invertible")
    values = [0] * f.target.size
    for x, y in enumerate(f.values):
        values[y] = x
    return GMap(f.target, f.source, values, check=False)


def hom_gset(x_set: GSet, y_set: GSet) -> List[GMap]:
    """All equivariant maps X -> Y, lexicographically ordered by values.

    A map is fixed by the image of one point per orbit, which must be fixed
    by that point's stabilizer.
    """
    _same_group(x_set, y_set)
    group = x_set.group
    choices = []
    for orb in orbits(x_set):
        base = orb[0]
        stab = stabilizer(x_set, base)
        targets = [y for y in y_set.points if all(y_set.act(s, y) == y for s in stab)]
        choices.append((base, targets))
    maps = []
    for images in itertools.product(*(t for _, t in choices)):
        values = [0] * x_set.size
        for (base, _), y in zip(choices, images):
            for g in group.elements:
                values[x_set.act(g, base)] = y_set.act(g, y)
        maps.append(values)
    maps.sort()
    return [GMap(x_set, y_set, v, check=False) for v in maps]


# Canonical decomposition

@dataclass(frozen=True, eq=False)
class CanonicalDecomposition:
    """X as a coproduct of representative coset spaces.

    ``orbits[k]`` is (class index, sorted points); ``base_points[k]`` is a
    point of orbit k whose stabilizer is exactly the class representative,
    and ``embeddings[k]`` is the induced injective map C_class -> X.
    """

    gset: GSet
    orbits: Tuple[Tuple[int, Tuple[int, ...]], ...]
    base_points: Tuple[int, ...]
    embeddings: Tuple[GMap, ...]
    iso: GMap

    @property
    def classes(self) -> Tuple[int, ...]:
        return tuple(c for c, _ in self.orbits)

    def locate(self, x: int) -> Tuple[int, int]:
        """(orbit index, point of the representative) corresponding to x."""
        return self._locator[x]

    @cached_property
    def _locator(self) -> Dict[int, Tuple[int, int]]:
        table = {}
        for k, emb in enumerate(self.embeddings):
            for p, x in enumerate(emb.values):
                table[x] = (k, p)
        return table


@cached(get_gset_cache())
def decompose(x_set: GSet) -> CanonicalDecomposition:
    """Split X into orbits ordered by (class index, least point).

    The returned iso from the coproduct of coset spaces is checked for
    equivariance and bijectivity before it is handed out.
    """
    group = x_set.group
    table = all_subgroups(group)
    reps = representatives(group)
    found = []
    for orb in orbits(x_set):
        x0 = orb[0]
        stab = stabilizer(x_set, x0)
        c = table.class_index(stab)
        g = conjugating_element(group, stab, table.rep(c))
        found.append((c, x0, tuple(orb), x_set.act(g, x0)))
    found.sort(key=lambda t: (t[0], t[1]))

    embeddings = []
    iso_values: List[int] = []
    for c, _, _, y in found:
        coset_space = reps[c]
        values = [x_set.act(r, y) for r in coset_representatives(coset_space)]
        embeddings.append(GMap(coset_space, x_set, values, check=False))
        iso_values.extend(values)

    source = empty_gset(group)
    for c, _, _, _ in found:
        source = coproduct(source, reps[c])
    iso = GMap(source, x_set, iso_values)
    if not is_bijective(iso):
        raise GSetValidationError("Decomposition map is not a bijection")
    logger.debug(f"Decomposed G-set of size {x_set.size} into classes {[c for c, *_ in found]}")
    return CanonicalDecomposition(
        gset=x_set,
        orbits=tuple((c, orb) for c, _, orb, _ in found),
        base_points=tuple(y for *_, y in found),
        embeddings=tuple(embeddings),
        iso=iso,
    )


def find_iso(x_set: GSet, y_set: GSet) -> Optional[GMap]:
    """An equivariant bijection X -> Y if the class multisets agree."""
    if x_set.group != y_set.group or x_set.size != y_set.size:
        return None
    dx, dy = decompose(x_set), decompose(y_set)
    if dx.classes != dy.classes:
        return None
    values = [0] * x_set.size
    for ex, ey in zip(dx.embeddings, dy.embeddings):
        for p, x in enumerate(ex.values):
            values[x] = ey.values[p]
    return GMap(x_set, y_set, values)


def make_gset(group: Group, action: Iterable[Iterable[int]]) -> GSet:
    """Validate an action array from user input."""
    rows = [list(r) for r in action]
    return GSet(group, rows)
