"""Finite groups given by Cayley tables and their subgroup data."""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import GroupValidationError, OrderBoundExceededError, SubgroupError
from ..utils.cache import cached, get_gset_cache
from ..utils.settings import get_order_bound

logger = logging.getLogger(__name__)

Subgroup = FrozenSet[int]


class Group:
    """A finite group on the elements 0..order-1 with 0 as identity.

    The table is validated at construction: identity, two-sided inverses and
    associativity are checked with vectorised numpy comparisons.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: Optional[str] = None):
        try:
            arr = np.array(table, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise GroupValidationError(f"Cayley table is not a rectangular integer array: {e}") from e
        _validate_table(arr)
        arr.setflags(write=False)
        self.table = arr
        self.order = int(arr.shape[0])
        self.name = name or f"G{self.order}"
        self._rows: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in arr)
        self.inverse: Tuple[int, ...] = tuple(int(np.argmax(arr[g] == 0)) for g in range(self.order))
        self._hash = hash(self._rows)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self._rows[self._rows[g][x]][self.inverse[g]]

    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Group({self.name}, order={self.order})"


def _validate_table(arr: np.ndarray) -> None:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupValidationError(f"Cayley table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if bad.size:
        a, b = (int(x) for x in bad[0])
        raise GroupValidationError(f"Entry {a}*{b} = {int(arr[a, b])} is out of range", witness=(a, b))
    ids = np.arange(n)
    not_left = np.flatnonzero(arr[0] != ids)
    not_right = np.flatnonzero(arr[:, 0] != ids)
    if not_left.size or not_right.size:
        x = int(not_left[0]) if not_left.size else int(not_right[0])
        raise GroupValidationError(f"Element 0 is not a two-sided identity (fails at {x})", witness=(0, x))
    has_right_inverse = (arr == 0).any(axis=1)
    missing = np.flatnonzero(~has_right_inverse)
    if missing.size:
        g = int(missing[0])
        raise GroupValidationError(f"Element {g} has no inverse", witness=(g,))
    right_inverse = np.argmax(arr == 0, axis=1)
    two_sided = arr[right_inverse, ids] == 0
    one_sided = np.flatnonzero(~two_sided)
    if one_sided.size:
        g = int(one_sided[0])
        raise GroupValidationError(
            f"Element {g} has right inverse {int(right_inverse[g])} that is not a left inverse",
            witness=(g,),
        )
    lhs = arr[arr]  # (ab)c
    rhs = arr[ids[:, None, None], arr[None, :, :]]  # a(bc)
    failures = np.argwhere(lhs != rhs)
    if failures.size:
        a, b, c = (int(x) for x in failures[0])
        raise GroupValidationError(f"Associativity fails for ({a}, {b}, {c})", witness=(a, b, c))


def group_from_table(table: Sequence[Sequence[int]], name: Optional[str] = None) -> Group:
    """Validate a Cayley table and wrap it as a Group.

    Raises:
        GroupValidationError: naming the failing element or triple
    """
    group = Group(table, name=name)
    logger.debug(f"Loaded group {group.name} of order {group.order}")
    return group


def cyclic_group(n: int) -> Group:
    return Group([[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


def _permutation_table(perms: List[Tuple[int, ...]]) -> List[List[int]]:
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(len(p)))] for q in perms] for p in perms]


def symmetric_group(n: int) -> Group:
    """S_n on lexicographically ordered permutations; (pq)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(n)))
    return Group(_permutation_table(perms), name=f"S{n}")


def group_from_permutations(generators: Sequence[Sequence[int]], name: Optional[str] = None) -> Group:
    """Expand permutation generators into a Cayley table.

    Elements are the generated permutations in lexicographic order, so the
    identity is element 0.
    """
    if not generators:
        raise GroupValidationError("At least one generator is required")
    degree = len(generators[0])
    gens = []
    for g in generators:
        if sorted(g) != list(range(degree)):
            raise GroupValidationError(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(tuple(g))
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    perms = sorted(seen)
    return Group(_permutation_table(perms), name=name)


def direct_product(g: Group, h: Group) -> Group:
    """G x H with element (a, b) stored as a*|H| + b."""
    n, m = g.order, h.order
    table = [
        [g.mul(a1, a2) * m + h.mul(b1, b2) for a2 in range(n) for b2 in range(m)]
        for a1 in range(n) for b1 in range(m)
    ]
    return Group(table, name=f"{g.name}x{h.name}")


# Subgroups

def is_subgroup(group: Group, subset: Iterable[int]) -> bool:
    elems = frozenset(subset)
    if 0 not in elems or any(x < 0 or x >= group.order for x in elems):
        return False
    return all(group.mul(a, b) in elems for a in elems for b in elems)


def require_subgroup(group: Group, subset: Iterable[int]) -> Subgroup:
    elems = frozenset(subset)
    if not is_subgroup(group, elems):
        raise SubgroupError(f"{sorted(elems)} is not a subgroup of {group.name}")
    return elems


def generate(group: Group, generators: Iterable[int], start: Iterable[int] = (0,)) -> Subgroup:
    """Smallest subgroup containing ``start`` and ``generators``."""
    elems = set(start) | {0}
    gens = set(generators) | set(elems)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = group.mul(a, g)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(elems)


def conjugate_subgroup(group: Group, g: int, subgroup: Subgroup) -> Subgroup:
    """g H g^-1."""
    return frozenset(group.conjugate(g, h) for h in subgroup)


def normalizer(group: Group, subgroup: Subgroup) -> Subgroup:
    return frozenset(g for g in group.elements if conjugate_subgroup(group, g, subgroup) == subgroup)


def conjugating_element(group: Group, source: Subgroup, target: Subgroup) -> Optional[int]:
    """Least g with g source g^-1 = target, if any."""
    for g in group.elements:
        if conjugate_subgroup(group, g, source) == target:
            return g
    return None


def subgroup_sort_key(subgroup: Subgroup) -> Tuple[int, Tuple[int, ...]]:
    """Canonical order: larger subgroups first, then lexicographic element tuple."""
    return (-len(subgroup), tuple(sorted(subgroup)))


@dataclass(frozen=True, eq=False)
class SubgroupClassTable:
    """All subgroups of a group grouped into conjugacy classes.

    Class 0 is the whole group and the last class is the trivial subgroup.
    """

    subgroups: Tuple[Subgroup, ...]
    class_of: Dict[Subgroup, int]
    class_reps: Tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)

    def rep(self, class_index: int) -> Subgroup:
        return self.subgroups[self.class_reps[class_index]]

    def members(self, class_index: int) -> List[Subgroup]:
        return [h for h in self.subgroups if self.class_of[h] == class_index]

    def class_index(self, subgroup: Iterable[int]) -> int:
        key = frozenset(subgroup)
        if key not in self.class_of:
            raise SubgroupError(f"{sorted(key)} is not a subgroup")
        return self.class_of[key]


@cached(get_gset_cache())
def _subgroup_table(group: Group) -> SubgroupClassTable:
    found = {generate(group, [g]) for g in group.elements}
    queue = list(found)
    while queue:
        h = queue.pop()
        for g in group.elements:
            if g in h:
                continue
            k = generate(group, [g], start=h)
            if k not in found:
                found.add(k)
                queue.append(k)
    subgroups = tuple(sorted(found, key=subgroup_sort_key))

    reps: List[Subgroup] = []
    rep_of: Dict[Subgroup, Subgroup] = {}
    for h in subgroups:
        if h in rep_of:
            continue
        conjugates = {conjugate_subgroup(group, g, h) for g in group.elements}
        least = min(conjugates, key=subgroup_sort_key)
        for c in conjugates:
            rep_of[c] = least
        reps.append(least)
    reps.sort(key=subgroup_sort_key)
    rep_index = {r: i for i, r in enumerate(reps)}
    position = {h: i for i, h in enumerate(subgroups)}
    table = SubgroupClassTable(
        subgroups=subgroups,
        class_of={h: rep_index[rep_of[h]] for h in subgroups},
        class_reps=tuple(position[r] for r in reps),
    )
    logger.info(f"{group.name}: {len(subgroups)} subgroups in {len(reps)} conjugacy classes")
    return table


def all_subgroups(group: Group, bound: Optional[int] = None) -> SubgroupClassTable:
    """Enumerate subgroups and their conjugacy classes in canonical order.

    Args:
        group: The group
        bound: Largest accepted order (defaults to MACKEY_ORDER_BOUND, 24)

    Raises:
        OrderBoundExceededError: if the group is larger than the bound
    """
    limit = bound if bound is not None else get_order_bound()
    if group.order > limit:
        raise OrderBoundExceededError(
            f"Group {group.name} has order {group.order} > bound {limit}; "
            f"pass --bound (or set MACKEY_ORDER_BOUND) to override"
        )
    return _subgroup_table(group)


def double_cosets(group: Group, h: Iterable[int], k: Iterable[int]) -> List[FrozenSet[int]]:
    """Partition of G into double cosets HgK ordered by least element."""
    hs = require_subgroup(group, h)
    ks = require_subgroup(group, k)
    covered = set()
    result = []
    for g in group.elements:
        if g in covered:
            continue
        coset = frozenset(group.mul(group.mul(a, g), b) for a in hs for b in ks)
        covered |= coset
        result.append(coset)
    return result


def index(group: Group, h: Iterable[int], k: Iterable[int]) -> int:
    """[H:K] for K <= H <= G.

    Raises:
        SubgroupError: if either set is not a subgroup or K is not inside H
    """
    hs = require_subgroup(group, h)
    ks = require_subgroup(group, k)
    if not ks <= hs:
        raise SubgroupError(f"{sorted(ks)} is not contained in {sorted(hs)}")
    return len(hs) // len(ks)
