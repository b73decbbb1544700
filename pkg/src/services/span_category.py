"""The span category of finite G-sets.

A connected span U <- G/L -> V is determined by the images (u, v) of the
base coset L, up to the automorphisms of G/L, which act through the
normalizer N(L) by (u, v) -> (n.u, n.v). The normal form of a connected
span is therefore (class of L, lexicographically least such pair), and a
span class is the sorted multiset of its connected components.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

from ..exceptions import GroupMismatchError, SpanMismatchError
from ..utils.cache import cached, get_span_cache
from .finite_group import Group, all_subgroups, normalizer
from .gset import (
    GMap,
    GSet,
    coproduct,
    coset_representatives,
    decompose,
    empty_gset,
    identity_map,
    product,
    product_map,
    pullback,
    representatives,
    compose_maps,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ConnectedSpan:
    """One connected component: apex G/L_c with base point sent to (left, right)."""

    apex_class: int
    left: int
    right: int


@dataclass(frozen=True)
class Span:
    """A concrete span U <- S -> V."""

    left: GMap
    right: GMap

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise SpanMismatchError("Span legs must share their apex")

    @property
    def apex(self) -> GSet:
        return self.left.source

    @property
    def source(self) -> GSet:
        return self.left.target

    @property
    def target(self) -> GSet:
        return self.right.target


@dataclass(frozen=True)
class SpanClass:
    """An isomorphism class of spans source -> target in normal form."""

    source: GSet
    target: GSet
    components: Tuple[ConnectedSpan, ...] = ()

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise GroupMismatchError("Span endpoints over different groups")
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @property
    def group(self) -> Group:
        return self.source.group

    def is_zero(self) -> bool:
        return not self.components

    def multiplicities(self) -> Counter:
        return Counter(self.components)


@dataclass(frozen=True, eq=False)
class LinearizedHom:
    """Basis of the k-linearized hom space of spans source -> target."""

    source: GSet
    target: GSet
    basis: Tuple[ConnectedSpan, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, component: ConnectedSpan) -> int:
        return self._positions[component]

    @cached_property
    def _positions(self) -> Dict[ConnectedSpan, int]:
        return {c: i for i, c in enumerate(self.basis)}

    def span(self, i: int) -> SpanClass:
        return SpanClass(self.source, self.target, (self.basis[i],))


# Orbit data of the representative coset spaces

@cached(get_span_cache())
def _normalizer_of_class(group: Group, apex_class: int) -> Tuple[int, ...]:
    table = all_subgroups(group)
    return tuple(sorted(normalizer(group, table.rep(apex_class))))


def fixed_points(x_set: GSet, subgroup: Iterable[int]) -> List[int]:
    elems = list(subgroup)
    return [x for x in x_set.points if all(x_set.act(h, x) == x for h in elems)]


def canonical_component(source: GSet, target: GSet, apex_class: int, u: int, v: int) -> ConnectedSpan:
    """Least relabeling of (u, v) over the automorphisms of the apex."""
    best = None
    for n in _normalizer_of_class(source.group, apex_class):
        pair = (source.act(n, u), target.act(n, v))
        if best is None or pair < best:
            best = pair
    return ConnectedSpan(apex_class, best[0], best[1])


def leg_values(x_set: GSet, apex_class: int, base_image: int) -> List[int]:
    """Values of the leg G/L_c -> X sending the base coset to ``base_image``."""
    apex = representatives(x_set.group)[apex_class]
    return [x_set.act(g, base_image) for g in coset_representatives(apex)]


def component_legs(source: GSet, target: GSet, component: ConnectedSpan) -> Tuple[GMap, GMap]:
    apex = representatives(source.group)[component.apex_class]
    left = GMap(apex, source, leg_values(source, component.apex_class, component.left), check=False)
    right = GMap(apex, target, leg_values(target, component.apex_class, component.right), check=False)
    return left, right


def component_from_legs(
    source: GSet, target: GSet, apex_class: int, left: Sequence[int], right: Sequence[int]
) -> ConnectedSpan:
    """Rebuild a component from explicit leg arrays, checking they are equivariant legs.

    Raises:
        SpanMismatchError: if the arrays are not legs from the representative apex
    """
    group = source.group
    table = all_subgroups(group)
    if not 0 <= apex_class < table.num_classes:
        raise SpanMismatchError(f"Unknown apex class {apex_class}")
    if not left or not right:
        raise SpanMismatchError("Leg arrays must be non-empty")
    rep = table.rep(apex_class)
    u, v = int(left[0]), int(right[0])
    if not (0 <= u < source.size and 0 <= v < target.size):
        raise SpanMismatchError("Leg value outside the endpoint")
    if any(source.act(h, u) != u for h in rep) or any(target.act(h, v) != v for h in rep):
        raise SpanMismatchError(f"Base images are not fixed by the apex stabilizer of class {apex_class}")
    if list(left) != leg_values(source, apex_class, u) or list(right) != leg_values(target, apex_class, v):
        raise SpanMismatchError("Leg arrays are not the equivariant extensions of their base images")
    return canonical_component(source, target, apex_class, u, v)


# Normal forms and the category structure

def normal_form(span: Span) -> SpanClass:
    """Decompose the apex into orbits and canonicalize each component."""
    decomposition = decompose(span.apex)
    components = [
        canonical_component(span.source, span.target, c, span.left(y), span.right(y))
        for c, y in zip(decomposition.classes, decomposition.base_points)
    ]
    return SpanClass(span.source, span.target, tuple(components))


def realize(span_class: SpanClass) -> Span:
    """A concrete span in the class: coproduct of representative apexes."""
    group = span_class.group
    apex = empty_gset(group)
    left_values: List[int] = []
    right_values: List[int] = []
    for comp in span_class.components:
        left, right = component_legs(span_class.source, span_class.target, comp)
        apex = coproduct(apex, left.source)
        left_values.extend(left.values)
        right_values.extend(right.values)
    return Span(
        GMap(apex, span_class.source, left_values, check=False),
        GMap(apex, span_class.target, right_values, check=False),
    )


def identity_span(x_set: GSet) -> SpanClass:
    return lower(identity_map(x_set))


def zero_span(source: GSet, target: GSet) -> SpanClass:
    return SpanClass(source, target, ())


def lower(f: GMap) -> SpanClass:
    """f_* = (1, U, f) : U -> V."""
    return normal_form(Span(identity_map(f.source), f))


def upper(f: GMap) -> SpanClass:
    """f^* = (f, U, 1) : V -> U."""
    return normal_form(Span(f, identity_map(f.source)))


@cached(get_span_cache())
def _compose_components(
    u_set: GSet, v_set: GSet, w_set: GSet, first: ConnectedSpan, second: ConnectedSpan
) -> Tuple[ConnectedSpan, ...]:
    s_left, s_right = component_legs(u_set, v_set, first)
    t_left, t_right = component_legs(v_set, w_set, second)
    _, p1, p2 = pullback(s_right, t_left)
    return normal_form(Span(compose_maps(p1, s_left), compose_maps(p2, t_right))).components


def compose(s: SpanClass, t: SpanClass) -> SpanClass:
    """t after s, by pullback, extended bilinearly over components.

    Raises:
        SpanMismatchError: if s.target differs from t.source
    """
    if s.target != t.source:
        raise SpanMismatchError("Cannot compose spans: middle objects differ")
    components: List[ConnectedSpan] = []
    for a in s.components:
        for b in t.components:
            components.extend(_compose_components(s.source, s.target, t.target, a, b))
    return SpanClass(s.source, t.target, tuple(components))


def add(s: SpanClass, t: SpanClass) -> SpanClass:
    if s.source != t.source or s.target != t.target:
        raise SpanMismatchError("Cannot add spans with different endpoints")
    return SpanClass(s.source, s.target, s.components + t.components)


@cached(get_span_cache())
def _tensor_components(
    u1: GSet, v1: GSet, u2: GSet, v2: GSet, first: ConnectedSpan, second: ConnectedSpan
) -> Tuple[ConnectedSpan, ...]:
    a_left, a_right = component_legs(u1, v1, first)
    b_left, b_right = component_legs(u2, v2, second)
    return normal_form(Span(product_map(a_left, b_left), product_map(a_right, b_right))).components


def tensor(s: SpanClass, t: SpanClass) -> SpanClass:
    """Cartesian product of spans: source s.source x t.source, target s.target x t.target."""
    if s.group != t.group:
        raise GroupMismatchError("Cannot tensor spans over different groups")
    components: List[ConnectedSpan] = []
    for a in s.components:
        for b in t.components:
            components.extend(_tensor_components(s.source, s.target, t.source, t.target, a, b))
    return SpanClass(product(s.source, t.source), product(s.target, t.target), tuple(components))


def transpose(s: SpanClass) -> SpanClass:
    components = [canonical_component(s.target, s.source, c.apex_class, c.right, c.left) for c in s.components]
    return SpanClass(s.target, s.source, tuple(components))


@cached(get_span_cache())
def hom_basis(source: GSet, target: GSet) -> LinearizedHom:
    """All connected spans source <- G/L -> target up to isomorphism, sorted."""
    group = source.group
    if target.group != group:
        raise GroupMismatchError("hom_basis over different groups")
    table = all_subgroups(group)
    basis = set()
    for c in range(table.num_classes):
        rep = table.rep(c)
        us = fixed_points(source, rep)
        if not us:
            continue
        vs = fixed_points(target, rep)
        for u in us:
            for v in vs:
                basis.add(canonical_component(source, target, c, u, v))
    hom = LinearizedHom(source, target, tuple(sorted(basis)))
    logger.debug(f"hom_basis: {source.size}-point -> {target.size}-point has dimension {hom.dimension}")
    return hom


def coordinates(hom: LinearizedHom, span_class: SpanClass) -> List[Fraction]:
    """A span class as a vector in the basis of ``hom``.

    Raises:
        SpanMismatchError: if the endpoints differ from those of ``hom``
    """
    if span_class.source != hom.source or span_class.target != hom.target:
        raise SpanMismatchError("Span endpoints differ from the hom space")
    vec = [Fraction(0)] * hom.dimension
    for comp, mult in span_class.multiplicities().items():
        vec[hom.index(comp)] += mult
    return vec


def closure_bijection(u_set: GSet, v_set: GSet, w_set: GSet) -> List[int]:
    """Index map from the basis of hom(U x V, W) to the basis of hom(U, V x W).

    A component with base image ((u, v), w) goes to (u, (v, w)).
    """
    left_hom = hom_basis(product(u_set, v_set), w_set)
    right_target = product(v_set, w_set)
    right_hom = hom_basis(u_set, right_target)
    result = []
    for comp in left_hom.basis:
        u, v = divmod(comp.left, v_set.size)
        moved = canonical_component(u_set, right_target, comp.apex_class, u, v * w_set.size + comp.right)
        result.append(right_hom.index(moved))
    return result


def span_points(source: GSet, target: GSet, component: ConnectedSpan) -> List[Tuple[int, int]]:
    """(left, right) images of every apex point of a component."""
    left, right = component_legs(source, target, component)
    return list(zip(left.values, right.values))


def describe_component(component: ConnectedSpan) -> str:
    return f"[apex C{component.apex_class}: {component.left} <- L -> {component.right}]"


def describe(span_class: SpanClass, source_label: str = "U", target_label: str = "V") -> str:
    """Short text form used in reports."""
    if span_class.is_zero():
        return f"{source_label} -> {target_label}: 0"
    parts = " + ".join(describe_component(c) for c in span_class.components)
    return f"{source_label} -> {target_label}: {parts}"
