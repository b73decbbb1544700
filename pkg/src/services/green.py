"""Green functors, crossed G-sets, Green algebras and modules.

A Green functor stores its product only on pairs of representatives,
mu_ij: A(C_i) (x) A(C_j) -> A(C_i x C_j), with the codomain in the
coordinates of eval_object. Products at other G-sets are induced through
the decomposition embeddings, the same way eval_span routes components.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import (
    CertificateError,
    CrossedMonoidError,
    FunctorFormatError,
    GroupMismatchError,
    OrderBoundExceededError,
)
from ..models.reports import (
    CheckFailure,
    CohomologicalReport,
    DimensionComparison,
    DimensionReport,
    ValidationReport,
)
from ..utils.exact_linalg import (
    RatMatrix,
    flatten,
    from_entries,
    kernel_basis,
    kron,
    solve,
)
from ..utils.settings import get_order_bound
from .convolution import internal_hom
from .finite_group import Group, all_subgroups
from .gset import (
    GMap,
    GSet,
    conjugation_gset,
    decompose,
    diagonal_map,
    hom_gset,
    identity_map,
    is_bijective,
    product,
    product_map,
    representatives,
    terminal_gset,
    terminal_map,
)
from .mackey import (
    MackeyFunctor,
    MackeyMorphism,
    burnside_functor,
    cohomological_check,
    component_at,
    dress,
    dress_transport,
    eval_object,
    eval_span,
    generator_keys,
    generator_span,
    hom_space,
    identity_generator,
    linear_combination,
    validate,
)
from .span_category import Span, hom_basis, identity_span, lower, normal_form, tensor, upper

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class GreenFunctor:
    """A monoid in Mackey functors: products on representative pairs and a unit in A(1)."""

    def __init__(
        self,
        underlying: MackeyFunctor,
        mult: Mapping[Pair, RatMatrix],
        unit: RatMatrix,
        name: Optional[str] = None,
    ):
        self.underlying = underlying
        self.name = name or underlying.name
        reps = representatives(underlying.group)
        dims = underlying.level_dims
        for i, ci in enumerate(reps):
            for j, cj in enumerate(reps):
                if (i, j) not in mult:
                    raise FunctorFormatError(f"{self.name}: no product for levels ({i}, {j})")
                expected = (eval_object(underlying, product(ci, cj)).dim, dims[i] * dims[j])
                if mult[(i, j)].shape != expected:
                    raise FunctorFormatError(
                        f"{self.name}: product ({i}, {j}) has shape {mult[(i, j)].shape}, expected {expected}"
                    )
        if unit.shape != (dims[0], 1):
            raise FunctorFormatError(f"{self.name}: unit must be a {dims[0]}x1 column")
        self.mult: Dict[Pair, RatMatrix] = dict(mult)
        self.unit = unit

    @property
    def group(self) -> Group:
        return self.underlying.group

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GreenFunctor):
            return NotImplemented
        return self.underlying == other.underlying and self.mult == other.mult and self.unit == other.unit

    def __hash__(self) -> int:
        return hash(self.underlying)

    def __repr__(self) -> str:
        return f"GreenFunctor({self.name}, levels={list(self.underlying.level_dims)})"


def _bilinear_on(
    left: MackeyFunctor,
    right: MackeyFunctor,
    target: MackeyFunctor,
    table: Mapping[Pair, RatMatrix],
    x_set: GSet,
    y_set: GSet,
) -> RatMatrix:
    """Extend a pairing given on representatives to L(X) (x) R(Y) -> T(X x Y).

    The block of orbits (a, b) is T(phi_a x psi_b)_* applied after the stored
    matrix of their classes.
    """
    dx, dy = decompose(x_set), decompose(y_set)
    ex, ey = eval_object(left, x_set), eval_object(right, y_set)
    out = eval_object(target, product(x_set, y_set))
    entries: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for a, (ca, emb_a) in enumerate(zip(dx.classes, dx.embeddings)):
        for b, (cb, emb_b) in enumerate(zip(dy.classes, dy.embeddings)):
            db = right.level_dims[cb]
            if left.level_dims[ca] == 0 or db == 0:
                continue
            block = eval_span(target, lower(product_map(emb_a, emb_b))) @ table[(ca, cb)]
            for alpha in range(left.level_dims[ca]):
                for beta in range(db):
                    col = (ex.offsets[a] + alpha) * ey.dim + ey.offsets[b] + beta
                    src = alpha * db + beta
                    for row in range(block.rows):
                        if block[row, src]:
                            entries[(row, col)] += block[row, src]
    return from_entries(out.dim, ex.dim * ey.dim, entries)


def mult_on(green: GreenFunctor, x_set: GSet, y_set: GSet) -> RatMatrix:
    """mu_{X,Y}: A(X) (x) A(Y) -> A(X x Y) in eval_object coordinates."""
    a = green.underlying
    return _bilinear_on(a, a, a, green.mult, x_set, y_set)


def _failed(subject: str, checked: int, diagram: str, detail: str, spans: Sequence[str] = ()) -> ValidationReport:
    logger.info(f"{subject}: {diagram} fails ({detail})")
    return ValidationReport(
        subject=subject, passed=False, checked=checked,
        failure=CheckFailure(diagram=diagram, detail=detail, spans=list(spans)),
    )


def validate_green(green: GreenFunctor) -> ValidationReport:
    """Mackey axioms, naturality of mu in both variables, associativity and unit laws."""
    base = validate(green.underlying)
    if not base.passed:
        return base.model_copy(update={"subject": green.name})
    a = green.underlying
    group = a.group
    reps = representatives(group)
    dims = a.level_dims
    r = len(reps)
    checked = base.checked
    for key in generator_keys(group):
        i, i2, _ = key
        s = generator_span(group, key)
        m_s = a.action[key]
        for j in range(r):
            checked += 2
            ident = RatMatrix.identity(dims[j])
            lhs = green.mult[(i2, j)] @ kron(m_s, ident)
            rhs = eval_span(a, tensor(s, identity_span(reps[j]))) @ green.mult[(i, j)]
            if lhs != rhs:
                return _failed(green.name, checked, "naturality",
                               f"first variable, generator C{i} -> C{i2} against C{j}")
            lhs = green.mult[(j, i2)] @ kron(ident, m_s)
            rhs = eval_span(a, tensor(identity_span(reps[j]), s)) @ green.mult[(j, i)]
            if lhs != rhs:
                return _failed(green.name, checked, "naturality",
                               f"second variable, generator C{i} -> C{i2} against C{j}")
    for j in range(r):
        checked += 2
        ident = RatMatrix.identity(dims[j])
        if green.mult[(0, j)] @ kron(green.unit, ident) != ident:
            return _failed(green.name, checked, "unit", f"left unit at C{j}")
        if green.mult[(j, 0)] @ kron(ident, green.unit) != ident:
            return _failed(green.name, checked, "unit", f"right unit at C{j}")
    for i in range(r):
        for j in range(r):
            for l in range(r):
                checked += 1
                lhs = mult_on(green, product(reps[i], reps[j]), reps[l]) @ kron(
                    green.mult[(i, j)], RatMatrix.identity(dims[l]))
                rhs = mult_on(green, reps[i], product(reps[j], reps[l])) @ kron(
                    RatMatrix.identity(dims[i]), green.mult[(j, l)])
                if lhs != rhs:
                    return _failed(green.name, checked, "associativity", f"levels ({i}, {j}, {l})")
    logger.info(f"{green.name}: Green axioms hold ({checked} checks)")
    return ValidationReport(subject=green.name, passed=True, checked=checked)


def burnside_green(group: Group) -> GreenFunctor:
    """J with mu(a (x) b) = J(a x b) applied to the identity span of the point."""
    burnside = burnside_functor(group)
    reps = representatives(group)
    levels = [hom_basis(reps[0], c) for c in reps]
    point = RatMatrix.unit_column(levels[0].dimension, levels[0].index(identity_generator(0)))
    mult = {}
    for i, ci in enumerate(reps):
        for j, cj in enumerate(reps):
            columns = [
                (eval_span(burnside, tensor(levels[i].span(a), levels[j].span(b))) @ point).column_at(0)
                for a in range(levels[i].dimension)
                for b in range(levels[j].dimension)
            ]
            mult[(i, j)] = RatMatrix.from_columns(columns, eval_object(burnside, product(ci, cj)).dim)
    return GreenFunctor(burnside, mult, point, name=f"J({group.name})")


def burnside_ring_table(green: GreenFunctor) -> List[List[List[Fraction]]]:
    """Products of the top-level basis: entry [a][b] is the coordinate vector of a.b."""
    mu = green.mult[(0, 0)]
    d = green.underlying.level_dims[0]
    return [[list(mu.column_at(a * d + b)) for b in range(d)] for a in range(d)]


def cohomological_green_report(green: GreenFunctor) -> CohomologicalReport:
    return cohomological_check(green.underlying)


# Endomorphism Green functor

def green_from_rep_end(functor: MackeyFunctor) -> GreenFunctor:
    """Hom(M, M) with composition as product.

    For theta in Hom(M,M)(V) and theta' in Hom(M,M)(W) the product in
    Hom(M,M)(V x W) has components theta_U o theta'_{U x V}.
    """
    group = functor.group
    reps = representatives(group)
    end = internal_hom(functor, functor)
    bases = [hom_space(dress(functor, c), functor) for c in reps]
    slots = [sum(functor.level_dims[u] * d for u, d in enumerate(dress(functor, c).level_dims)) for c in reps]
    stacked = [RatMatrix.from_columns([t.vector() for t in basis], slots[i]) for i, basis in enumerate(bases)]

    def level_coordinates(components: Sequence[RatMatrix], level: int) -> List[Fraction]:
        vector = [x for comp in components for x in flatten(comp)]
        coords = solve(stacked[level], RatMatrix.column(vector))
        if coords is None:
            raise CertificateError(f"Composite is not a morphism out of M_C{level}")
        return list(coords.column_at(0))

    def eval_coordinates(components: Sequence[RatMatrix], x_set: GSet) -> List[Fraction]:
        result: List[Fraction] = []
        dec = decompose(x_set)
        for c, emb in zip(dec.classes, dec.embeddings):
            restricted = [
                comp @ eval_span(functor, tensor(identity_span(cu), lower(emb)))
                for comp, cu in zip(components, reps)
            ]
            result.extend(level_coordinates(restricted, c))
        return result

    mult = {}
    for i, ci in enumerate(reps):
        for j, cj in enumerate(reps):
            x_set = product(ci, cj)
            columns = []
            for theta in bases[i]:
                for theta2 in bases[j]:
                    components = []
                    for u, cu in enumerate(reps):
                        ux = product(cu, ci)
                        inner = component_at(theta2, ux) @ dress_transport(functor, ux, cj)
                        components.append(theta.components[u] @ inner)
                    columns.append(eval_coordinates(components, x_set))
            mult[(i, j)] = RatMatrix.from_columns(columns, eval_object(end, x_set).dim)
    unit = RatMatrix.column(level_coordinates([RatMatrix.identity(d) for d in functor.level_dims], 0))
    return GreenFunctor(end, mult, unit, name=f"End({functor.name})")


# Crossed G-sets

class CrossedGSet:
    """A G-set with an equivariant grading into G_c, optionally with a monoid structure.

    ``mult`` lists m(x, y) at the product index x*|Y| + y and ``unit`` is the
    unit point.
    """

    def __init__(
        self,
        carrier: GSet,
        grading: Sequence[int],
        mult: Optional[Sequence[int]] = None,
        unit: Optional[int] = None,
    ):
        group = carrier.group
        if len(grading) != carrier.size:
            raise CrossedMonoidError(f"{len(grading)} grades for {carrier.size} points")
        if any(not 0 <= int(d) < group.order for d in grading):
            raise CrossedMonoidError("Grade outside the group")
        self.carrier = carrier
        self.grading: Tuple[int, ...] = tuple(int(d) for d in grading)
        for g in group.elements:
            for x in carrier.points:
                if self.grading[carrier.act(g, x)] != group.conjugate(g, self.grading[x]):
                    raise CrossedMonoidError(f"|{g}.{x}| != {g}|{x}|{g}^-1")
        if mult is not None and len(mult) != carrier.size ** 2:
            raise CrossedMonoidError(f"Multiplication needs {carrier.size ** 2} values")
        if mult is not None and any(not 0 <= int(v) < carrier.size for v in mult):
            raise CrossedMonoidError("Product outside the carrier")
        self.mult: Optional[Tuple[int, ...]] = tuple(int(v) for v in mult) if mult is not None else None
        self.unit = unit

    @property
    def group(self) -> Group:
        return self.carrier.group

    def grade(self, x: int) -> int:
        return self.grading[x]

    def times(self, x: int, y: int) -> int:
        return self.mult[x * self.carrier.size + y]


def is_crossed_monoid(crossed: CrossedGSet) -> ValidationReport:
    """Monoid axioms plus |m(x, y)| = |x||y| and |e| = 1."""
    subject = "crossed monoid"
    group = crossed.group
    y = crossed.carrier
    if crossed.mult is None or crossed.unit is None:
        return _failed(subject, 0, "structure", "no multiplication or unit given")
    e = crossed.unit
    if not 0 <= e < y.size:
        return _failed(subject, 0, "unit", f"unit point {e} outside the carrier")
    checked = 1
    if any(y.act(g, e) != e for g in group.elements):
        return _failed(subject, checked, "unit", f"unit point {e} is not fixed by G")
    checked += 1
    if crossed.grade(e) != 0:
        return _failed(subject, checked, "grading", f"|e| = {crossed.grade(e)} is not the identity")
    for g in group.elements:
        for a in y.points:
            for b in y.points:
                checked += 1
                if crossed.times(y.act(g, a), y.act(g, b)) != y.act(g, crossed.times(a, b)):
                    return _failed(subject, checked, "equivariance", f"m({g}.{a}, {g}.{b}) != {g}.m({a}, {b})")
    for a in y.points:
        checked += 1
        if crossed.times(e, a) != a or crossed.times(a, e) != a:
            return _failed(subject, checked, "unit", f"e is not a unit for {a}")
        for b in y.points:
            checked += 1
            if crossed.grade(crossed.times(a, b)) != group.mul(crossed.grade(a), crossed.grade(b)):
                return _failed(subject, checked, "grading", f"|m({a}, {b})| != |{a}||{b}|")
            for c in y.points:
                checked += 1
                if crossed.times(crossed.times(a, b), c) != crossed.times(a, crossed.times(b, c)):
                    return _failed(subject, checked, "associativity", f"({a}, {b}, {c})")
    return ValidationReport(subject=subject, passed=True, checked=checked)


def crossed_from_monoid(carrier: GSet, mult: Sequence[int], unit: int) -> CrossedGSet:
    """A monoid in G-sets graded trivially."""
    return CrossedGSet(carrier, [0] * carrier.size, mult, unit)


def terminal_crossed(group: Group) -> CrossedGSet:
    return CrossedGSet(terminal_gset(group), [0], [0], 0)


def conjugation_crossed(group: Group) -> CrossedGSet:
    """G_c graded by the identity, with the group law."""
    mult = [group.mul(x, y) for x in group.elements for y in group.elements]
    return CrossedGSet(conjugation_gset(group), list(group.elements), mult, 0)


def braiding(crossed: CrossedGSet, x_set: GSet) -> GMap:
    """Y x X -> X x Y, (a, x) -> (|a|x, a)."""
    y = crossed.carrier
    values = [x_set.act(crossed.grade(a), x) * y.size + a for a in y.points for x in x_set.points]
    return GMap(product(y, x_set), product(x_set, y), values)


def braiding_inverse(crossed: CrossedGSet, x_set: GSet) -> GMap:
    """X x Y -> Y x X, (x, a) -> (a, |a|^-1 x)."""
    y = crossed.carrier
    group = crossed.group
    values = [
        a * x_set.size + x_set.act(group.inv(crossed.grade(a)), x) for x in x_set.points for a in y.points
    ]
    return GMap(product(x_set, y), product(y, x_set), values)


def _crossed_contraction(ci: GSet, cj: GSet, crossed: CrossedGSet) -> GMap:
    """(C_i x Y) x (C_j x Y) -> (C_i x C_j) x Y, (u, y, v, y') -> (u, |y|v, m(y, y'))."""
    y = crossed.carrier
    values = []
    for u in ci.points:
        for a in y.points:
            for v in cj.points:
                for b in y.points:
                    values.append((u * cj.size + cj.act(crossed.grade(a), v)) * y.size + crossed.times(a, b))
    return GMap(product(product(ci, y), product(cj, y)), product(product(ci, cj), y), values)


def dress_green(green: GreenFunctor, crossed: CrossedGSet) -> GreenFunctor:
    """A_Y for a crossed monoid Y: multiply in A, braid the middle factors, multiply in Y."""
    report = is_crossed_monoid(crossed)
    if not report.passed:
        raise CrossedMonoidError(f"Not a crossed monoid: {report.failure.detail}")
    a = green.underlying
    y = crossed.carrier
    reps = representatives(green.group)
    mult = {}
    for i, ci in enumerate(reps):
        for j, cj in enumerate(reps):
            mu = mult_on(green, product(ci, y), product(cj, y))
            contract = eval_span(a, lower(_crossed_contraction(ci, cj, crossed)))
            mult[(i, j)] = dress_transport(a, product(ci, cj), y) @ contract @ mu
    unit_point = GMap(terminal_gset(green.group), y, [crossed.unit])
    unit = eval_span(a, lower(unit_point)) @ green.unit
    result = GreenFunctor(dress(a, y), mult, unit, name=f"{green.name}_Y")
    logger.info(f"Dressed Green functor {result.name}: levels {list(result.underlying.level_dims)}")
    return result


# The end of [X, X] over transitive G-sets

@dataclass(frozen=True)
class EndOfHoms:
    """Natural families r_X: X -> X with the conjugation-style action and a certified iso to G_c."""

    gset: GSet
    families: Tuple[Tuple[Tuple[int, ...], ...], ...]
    iso: GMap


def end_of_homs(group: Group, bound: Optional[int] = None) -> EndOfHoms:
    """Compute the end of the endofunction sets [X, X] over representatives.

    Naturality against the maps G/e -> C_i, g -> g.0 forces every family to
    be r_X(x) = c.x with c = r_G(1); each candidate c is then checked against
    every equivariant map between representatives.

    Raises:
        OrderBoundExceededError: if the group is larger than the bound
        CertificateError: if the resulting comparison with G_c is not an iso
    """
    limit = bound if bound is not None else get_order_bound()
    if group.order > limit:
        raise OrderBoundExceededError(f"Group {group.name} has order {group.order} > bound {limit}")
    all_subgroups(group, limit)
    reps = representatives(group)
    maps = [(a, b, f) for a, ca in enumerate(reps) for b, cb in enumerate(reps) for f in hom_gset(ca, cb)]
    families = []
    for c in group.elements:
        family = tuple(tuple(ci.act(c, p) for p in ci.points) for ci in reps)
        if all(f.values[family[a][x]] == family[b][f.values[x]] for a, b, f in maps for x in reps[a].points):
            families.append(family)
    index = {fam: n for n, fam in enumerate(families)}
    action = []
    for g in group.elements:
        g_inv = group.inv(g)
        row = []
        for fam in families:
            moved = tuple(
                tuple(ci.act(g, fam[i][ci.act(g_inv, p)]) for p in ci.points) for i, ci in enumerate(reps)
            )
            row.append(index[moved])
        action.append(row)
    end_set = GSet(group, action)
    # G/e is the last representative and its point p is the element p.
    iso = GMap(end_set, conjugation_gset(group), [fam[-1][0] for fam in families])
    if not is_bijective(iso):
        raise CertificateError("End of homs is not in bijection with G_c")
    logger.info(f"End of homs over {group.name}: {len(families)} natural families")
    return EndOfHoms(gset=end_set, families=tuple(families), iso=iso)


# Green algebra

def identity_element(green: GreenFunctor, class_index: int) -> RatMatrix:
    """A_*(diagonal) A^*(!) eta in A(C x C)."""
    c = representatives(green.group)[class_index]
    a = green.underlying
    return eval_span(a, lower(diagonal_map(c))) @ eval_span(a, upper(terminal_map(c))) @ green.unit


def _composition_span(cx: GSet, cy: GSet, cz: GSet):
    """X x Y x Y x Z <- X x Y x Z -> X x Z, diagonal on Y then projection."""
    left = product_map(product_map(identity_map(cx), diagonal_map(cy)), identity_map(cz))
    apex = left.source
    right = GMap(apex, product(cx, cz), [x * cz.size + z for x in cx.points for _ in cy.points for z in cz.points],
                 check=False)
    return normal_form(Span(left, right))


@dataclass(frozen=True, eq=False)
class GreenAlgebra:
    """Matrix algebra with (x, y) entry space A(C_x x C_y).

    ``structure`` is dim x dim^2: the product of u and v is structure @ (u (x) v),
    with (x, y)(y, z) landing in (x, z) and other products zero.
    """

    green: GreenFunctor
    blocks: Tuple[Pair, ...]
    offsets: Dict[Pair, int]
    block_dims: Dict[Pair, int]
    structure: RatMatrix
    identities: Tuple[RatMatrix, ...]

    @property
    def dim(self) -> int:
        return self.structure.rows

    def basis_vector(self, n: int) -> RatMatrix:
        return RatMatrix.unit_column(self.dim, n)

    def block_of(self, n: int) -> Pair:
        for block in self.blocks:
            if self.offsets[block] <= n < self.offsets[block] + self.block_dims[block]:
                return block
        raise IndexError(n)

    def embed(self, block: Pair, vector: RatMatrix) -> RatMatrix:
        entries = {(self.offsets[block] + r, 0): vector[r, 0] for r in range(vector.rows) if vector[r, 0]}
        return from_entries(self.dim, 1, entries)

    def multiply(self, u: RatMatrix, v: RatMatrix) -> RatMatrix:
        return self.structure @ kron(u, v)

    @property
    def unit(self) -> RatMatrix:
        total = RatMatrix.zeros(self.dim, 1)
        for e in self.identities:
            total = total + e
        return total

    def labels(self) -> List[str]:
        return [f"({x},{y})#{k}" for (x, y) in self.blocks for k in range(self.block_dims[(x, y)])]


def green_algebra(green: GreenFunctor) -> GreenAlgebra:
    """W_A: products are A(Comp)(mu(f (x) g)) for f in A(X x Y) and g in A(Y x Z)."""
    a = green.underlying
    reps = representatives(green.group)
    r = len(reps)
    blocks = tuple((x, y) for x in range(r) for y in range(r))
    block_dims = {(x, y): eval_object(a, product(reps[x], reps[y])).dim for x, y in blocks}
    offsets: Dict[Pair, int] = {}
    total = 0
    for block in blocks:
        offsets[block] = total
        total += block_dims[block]
    entries: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
    for x in range(r):
        for y in range(r):
            for z in range(r):
                d1, d2 = block_dims[(x, y)], block_dims[(y, z)]
                if d1 == 0 or d2 == 0:
                    continue
                mu = mult_on(green, product(reps[x], reps[y]), product(reps[y], reps[z]))
                block = eval_span(a, _composition_span(reps[x], reps[y], reps[z])) @ mu
                for alpha in range(d1):
                    for beta in range(d2):
                        col = (offsets[(x, y)] + alpha) * total + offsets[(y, z)] + beta
                        for row in range(block.rows):
                            if block[row, alpha * d2 + beta]:
                                entries[(offsets[(x, z)] + row, col)] += block[row, alpha * d2 + beta]
    structure = from_entries(total, total * total, entries)
    identities = []
    for x in range(r):
        element = identity_element(green, x)
        identities.append(from_entries(
            total, 1, {(offsets[(x, x)] + k, 0): element[k, 0] for k in range(element.rows)}
        ))
    algebra = GreenAlgebra(green, blocks, offsets, block_dims, structure, tuple(identities))
    logger.info(f"Green algebra of {green.name} has dimension {total}")
    return algebra


def green_algebra_unit(algebra: GreenAlgebra) -> RatMatrix:
    """The two-sided unit of W_A, the sum of the identities of the representatives."""
    return algebra.unit


def validate_algebra(algebra: GreenAlgebra) -> ValidationReport:
    """Associativity on composable basis triples, two-sided unit and orthogonal idempotents."""
    subject = f"W({algebra.green.name})"
    checked = 0
    basis = [algebra.basis_vector(n) for n in range(algebra.dim)]
    where = [algebra.block_of(n) for n in range(algebra.dim)]
    unit = algebra.unit
    for n, u in enumerate(basis):
        checked += 1
        if algebra.multiply(unit, u) != u or algebra.multiply(u, unit) != u:
            return _failed(subject, checked, "unit", f"unit fails on basis element {n}")
    for x, e in enumerate(algebra.identities):
        for y, f in enumerate(algebra.identities):
            checked += 1
            expected = e if x == y else RatMatrix.zeros(algebra.dim, 1)
            if algebra.multiply(e, f) != expected:
                return _failed(subject, checked, "idempotents", f"e_{x} e_{y}")
    for n1, u in enumerate(basis):
        for n2, v in enumerate(basis):
            if where[n1][1] != where[n2][0]:
                continue
            uv = algebra.multiply(u, v)
            for n3, w in enumerate(basis):
                if where[n2][1] != where[n3][0]:
                    continue
                checked += 1
                if algebra.multiply(uv, w) != algebra.multiply(u, algebra.multiply(v, w)):
                    return _failed(subject, checked, "associativity", f"basis elements ({n1}, {n2}, {n3})")
    return ValidationReport(subject=subject, passed=True, checked=checked)


# Modules

class GreenModule:
    """A Mackey functor M with alpha_ij: A(C_i) (x) M(C_j) -> M(C_i x C_j)."""

    def __init__(
        self,
        algebra: GreenFunctor,
        underlying: MackeyFunctor,
        action: Mapping[Pair, RatMatrix],
        name: Optional[str] = None,
    ):
        if algebra.group != underlying.group:
            raise GroupMismatchError("Module and Green functor over different groups")
        self.algebra = algebra
        self.underlying = underlying
        self.name = name or underlying.name
        reps = representatives(underlying.group)
        da, dm = algebra.underlying.level_dims, underlying.level_dims
        for i, ci in enumerate(reps):
            for j, cj in enumerate(reps):
                if (i, j) not in action:
                    raise FunctorFormatError(f"{self.name}: no action for levels ({i}, {j})")
                expected = (eval_object(underlying, product(ci, cj)).dim, da[i] * dm[j])
                if action[(i, j)].shape != expected:
                    raise FunctorFormatError(
                        f"{self.name}: action ({i}, {j}) has shape {action[(i, j)].shape}, expected {expected}"
                    )
        self.action: Dict[Pair, RatMatrix] = dict(action)


def action_on(module: GreenModule, x_set: GSet, y_set: GSet) -> RatMatrix:
    return _bilinear_on(module.algebra.underlying, module.underlying, module.underlying, module.action, x_set, y_set)


def validate_module(module: GreenModule) -> ValidationReport:
    base = validate(module.underlying)
    if not base.passed:
        return base.model_copy(update={"subject": module.name})
    algebra = module.algebra
    a, m = algebra.underlying, module.underlying
    group = m.group
    reps = representatives(group)
    r = len(reps)
    checked = base.checked
    for key in generator_keys(group):
        i, i2, _ = key
        s = generator_span(group, key)
        for j in range(r):
            checked += 2
            lhs = module.action[(i2, j)] @ kron(a.action[key], RatMatrix.identity(m.level_dims[j]))
            rhs = eval_span(m, tensor(s, identity_span(reps[j]))) @ module.action[(i, j)]
            if lhs != rhs:
                return _failed(module.name, checked, "naturality",
                               f"algebra variable, generator C{i} -> C{i2} against C{j}")
            lhs = module.action[(j, i2)] @ kron(RatMatrix.identity(a.level_dims[j]), m.action[key])
            rhs = eval_span(m, tensor(identity_span(reps[j]), s)) @ module.action[(j, i)]
            if lhs != rhs:
                return _failed(module.name, checked, "naturality",
                               f"module variable, generator C{i} -> C{i2} against C{j}")
    for j in range(r):
        checked += 1
        ident = RatMatrix.identity(m.level_dims[j])
        if module.action[(0, j)] @ kron(algebra.unit, ident) != ident:
            return _failed(module.name, checked, "unit", f"unit acts non-trivially at C{j}")
    for i in range(r):
        for j in range(r):
            for l in range(r):
                checked += 1
                lhs = action_on(module, product(reps[i], reps[j]), reps[l]) @ kron(
                    algebra.mult[(i, j)], RatMatrix.identity(m.level_dims[l]))
                rhs = action_on(module, reps[i], product(reps[j], reps[l])) @ kron(
                    RatMatrix.identity(a.level_dims[i]), module.action[(j, l)])
                if lhs != rhs:
                    return _failed(module.name, checked, "associativity", f"levels ({i}, {j}, {l})")
    logger.info(f"{module.name}: module axioms hold ({checked} checks)")
    return ValidationReport(subject=module.name, passed=True, checked=checked)


def module_over_itself(green: GreenFunctor) -> GreenModule:
    return GreenModule(green, green.underlying, green.mult, name=green.name)


def dress_module(module: GreenModule, u_set: GSet) -> GreenModule:
    """M_U with alpha^{M_U}_{V,W} = alpha^M_{V, W x U}."""
    m = module.underlying
    reps = representatives(m.group)
    action = {
        (i, j): dress_transport(m, product(ci, cj), u_set) @ action_on(module, ci, product(cj, u_set))
        for i, ci in enumerate(reps)
        for j, cj in enumerate(reps)
    }
    return GreenModule(module.algebra, dress(m, u_set), action, name=f"{module.name}_U")


def burnside_module(functor: MackeyFunctor) -> GreenModule:
    """Every Mackey functor is a J-module: a acts through M(a x 1)."""
    group = functor.group
    reps = representatives(group)
    green = burnside_green(group)
    action = {}
    for i, ci in enumerate(reps):
        points = hom_basis(reps[0], ci)
        for j, cj in enumerate(reps):
            rows = eval_object(functor, product(ci, cj)).dim
            dj = functor.level_dims[j]
            columns = []
            for a in range(points.dimension):
                moved = eval_span(functor, tensor(points.span(a), identity_span(cj)))
                columns.extend(moved.column_at(m) for m in range(dj))
            action[(i, j)] = RatMatrix.from_columns(columns, rows)
    return GreenModule(green, functor, action, name=functor.name)


def module_hom(first: GreenModule, second: GreenModule) -> List[MackeyMorphism]:
    """Mackey morphisms theta with theta_{C_i x C_j}(a.m) = a.theta_j(m) on representatives."""
    if first.algebra != second.algebra:
        raise GroupMismatchError("Modules over different Green functors")
    reps = representatives(first.underlying.group)
    basis = hom_space(first.underlying, second.underlying)
    da = first.algebra.underlying.level_dims
    columns = []
    for theta in basis:
        column: List[Fraction] = []
        for i, ci in enumerate(reps):
            for j, cj in enumerate(reps):
                lhs = component_at(theta, product(ci, cj)) @ first.action[(i, j)]
                rhs = second.action[(i, j)] @ kron(RatMatrix.identity(da[i]), theta.components[j])
                column.extend(flatten(lhs - rhs))
        columns.append(column)
    rows = len(columns[0]) if columns else 0
    kernel = kernel_basis(RatMatrix.from_columns(columns, rows))
    return [
        linear_combination(basis, kernel.column_at(c), first.underlying, second.underlying)
        for c in range(kernel.cols)
    ]


def module_category_check(green: GreenFunctor) -> DimensionReport:
    """dim Mod_A(A_U, A_V) against dim A(U x V) for representatives U, V."""
    reps = representatives(green.group)
    itself = module_over_itself(green)
    dressed = [dress_module(itself, c) for c in reps]
    comparisons = [
        DimensionComparison(
            label=f"Mod(A_C{u}, A_C{v}) vs A(C{u} x C{v})",
            left=len(module_hom(dressed[u], dressed[v])),
            right=eval_object(green.underlying, product(cu, cv)).dim,
        )
        for u, cu in enumerate(reps)
        for v, cv in enumerate(reps)
    ]
    return DimensionReport.from_comparisons(f"module category of {green.name}", comparisons)


def burnside_module_check(first: MackeyFunctor, second: MackeyFunctor) -> DimensionComparison:
    """J-module homs coincide with Mackey morphisms."""
    left = len(module_hom(burnside_module(first), burnside_module(second)))
    right = len(hom_space(first, second))
    return DimensionComparison(label=f"Mod_J({first.name}, {second.name}) vs Mky", left=left, right=right)
