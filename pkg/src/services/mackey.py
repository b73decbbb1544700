"""Mackey functors in Lindner form.

A Mackey functor is stored as a vector space dimension for every
representative transitive G-set C_i = G/H_i together with one matrix per
connected generator span C_i -> C_j. Values at arbitrary G-sets and spans are
obtained by routing each connected component through the canonical
decompositions of its endpoints.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import (
    CertificateError,
    FunctorFormatError,
    GroupMismatchError,
    RepresentationError,
)
from ..models.reports import (
    CheckFailure,
    CohomologicalPair,
    CohomologicalReport,
    DimensionComparison,
    DimensionReport,
    ValidationReport,
)
from ..utils.cache import cached, get_span_cache
from ..utils.exact_linalg import (
    RatMatrix,
    block_matrix,
    direct_sum,
    flatten,
    inverse,
    kernel_basis,
    kron,
    quotient_by,
    solve,
    unflatten,
    vstack,
)
from ..utils.settings import get_iso_attempts
from .finite_group import Group, all_subgroups, index, require_subgroup
from .gset import (
    CanonicalDecomposition,
    GMap,
    GSet,
    coset_gset,
    coset_representatives,
    decompose,
    identity_map,
    product,
    product_map,
    pullback,
    representatives,
)
from .span_category import (
    ConnectedSpan,
    SpanClass,
    canonical_component,
    compose,
    coordinates,
    describe,
    hom_basis,
    identity_span,
    lower,
    span_points,
    tensor,
    upper,
)

logger = logging.getLogger(__name__)

GeneratorKey = Tuple[int, int, ConnectedSpan]


@cached(get_span_cache())
def generator_keys(group: Group) -> Tuple[GeneratorKey, ...]:
    """(i, j, component) for every connected generator C_i -> C_j."""
    reps = representatives(group)
    keys = []
    for i, ci in enumerate(reps):
        for j, cj in enumerate(reps):
            keys.extend((i, j, comp) for comp in hom_basis(ci, cj).basis)
    return tuple(keys)


def generator_span(group: Group, key: GeneratorKey) -> SpanClass:
    reps = representatives(group)
    i, j, comp = key
    return SpanClass(reps[i], reps[j], (comp,))


def identity_generator(class_index: int) -> ConnectedSpan:
    """The identity of C_i: apex C_i, both legs sending the base coset to 0."""
    return ConnectedSpan(class_index, 0, 0)


class MackeyFunctor:
    """Level dimensions on the representatives plus one matrix per generator.

    ``action[(i, j, component)]`` is a dim_j x dim_i matrix. Construction
    checks that every generator is present with the right shape; the
    functoriality axioms are checked separately by :func:`validate`.
    """

    def __init__(
        self,
        group: Group,
        level_dims: Sequence[int],
        action: Mapping[GeneratorKey, RatMatrix],
        name: Optional[str] = None,
    ):
        self.group = group
        self.level_dims: Tuple[int, ...] = tuple(int(d) for d in level_dims)
        self.name = name or "M"
        keys = generator_keys(group)
        if len(self.level_dims) != all_subgroups(group).num_classes:
            raise FunctorFormatError(
                f"{self.name}: {len(self.level_dims)} levels for {all_subgroups(group).num_classes} classes"
            )
        missing = [k for k in keys if k not in action]
        if missing:
            i, j, comp = missing[0]
            raise FunctorFormatError(f"{self.name}: no matrix for generator C{i} -> C{j} {comp}")
        if len(action) != len(keys):
            raise FunctorFormatError(f"{self.name}: {len(action) - len(keys)} matrices for unknown generators")
        for (i, j, comp), mat in action.items():
            if mat.shape != (self.level_dims[j], self.level_dims[i]):
                raise FunctorFormatError(
                    f"{self.name}: generator C{i} -> C{j} has a {mat.rows}x{mat.cols} matrix, "
                    f"expected {self.level_dims[j]}x{self.level_dims[i]}"
                )
        self.action: Dict[GeneratorKey, RatMatrix] = dict(action)

    @property
    def num_levels(self) -> int:
        return len(self.level_dims)

    def matrix(self, i: int, j: int, component: ConnectedSpan) -> RatMatrix:
        return self.action[(i, j, component)]

    def is_zero(self) -> bool:
        return not any(self.level_dims)

    def renamed(self, name: str) -> "MackeyFunctor":
        return MackeyFunctor(self.group, self.level_dims, self.action, name=name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MackeyFunctor):
            return NotImplemented
        return (
            self.group == other.group
            and self.level_dims == other.level_dims
            and self.action == other.action
        )

    def __hash__(self) -> int:
        return hash((self.group, self.level_dims))

    def __repr__(self) -> str:
        return f"MackeyFunctor({self.name}, levels={list(self.level_dims)})"


class MackeyMorphism:
    """A family of matrices theta_i: M(C_i) -> N(C_i)."""

    def __init__(self, source: MackeyFunctor, target: MackeyFunctor, components: Sequence[RatMatrix]):
        if source.group != target.group:
            raise GroupMismatchError("Morphism between functors over different groups")
        if len(components) != source.num_levels:
            raise FunctorFormatError(f"{len(components)} components for {source.num_levels} levels")
        for i, theta in enumerate(components):
            if theta.shape != (target.level_dims[i], source.level_dims[i]):
                raise FunctorFormatError(
                    f"Component {i} is {theta.rows}x{theta.cols}, expected "
                    f"{target.level_dims[i]}x{source.level_dims[i]}"
                )
        self.source = source
        self.target = target
        self.components: Tuple[RatMatrix, ...] = tuple(components)

    def vector(self) -> List[Fraction]:
        return [x for theta in self.components for x in flatten(theta)]

    def is_zero(self) -> bool:
        return all(theta.is_zero() for theta in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MackeyMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)


class Representation:
    """Matrices rho(g), one per group element, with rho(e) = I and rho(g)rho(h) = rho(gh)."""

    def __init__(self, group: Group, dim: int, matrices: Sequence[RatMatrix], check: bool = True):
        if len(matrices) != group.order:
            raise RepresentationError(f"{len(matrices)} matrices for a group of order {group.order}")
        for g, m in enumerate(matrices):
            if m.shape != (dim, dim):
                raise RepresentationError(f"rho({g}) is {m.rows}x{m.cols}, expected {dim}x{dim}")
        self.group = group
        self.dim = dim
        self.matrices: Tuple[RatMatrix, ...] = tuple(matrices)
        if check:
            self._check()

    def _check(self) -> None:
        if not self.matrices[0].is_identity():
            raise RepresentationError("rho(e) is not the identity")
        for g in self.group.elements:
            for h in self.group.elements:
                if self.matrices[g] @ self.matrices[h] != self.matrices[self.group.mul(g, h)]:
                    raise RepresentationError(f"rho({g}) rho({h}) != rho({g}*{h})")

    def __call__(self, g: int) -> RatMatrix:
        return self.matrices[g]


# Evaluation

@dataclass(frozen=True)
class ObjectEvaluation:
    """dim M(X) together with the decomposition that fixes its coordinates."""

    dim: int
    decomposition: CanonicalDecomposition
    offsets: Tuple[int, ...]


def eval_object(functor: MackeyFunctor, x_set: GSet) -> ObjectEvaluation:
    """M(X) as the direct sum of the levels of the orbits of X."""
    if x_set.group != functor.group:
        raise GroupMismatchError("G-set and functor over different groups")
    decomposition = decompose(x_set)
    offsets = []
    total = 0
    for c in decomposition.classes:
        offsets.append(total)
        total += functor.level_dims[c]
    return ObjectEvaluation(dim=total, decomposition=decomposition, offsets=tuple(offsets))


def eval_span(functor: MackeyFunctor, span_class: SpanClass) -> RatMatrix:
    """The matrix M(s): M(source) -> M(target).

    Each connected component lands in one orbit of the source and one of the
    target; transported along the decomposition isos it becomes a generator
    between representatives, whose stored matrix fills one block.
    """
    src = eval_object(functor, span_class.source)
    tgt = eval_object(functor, span_class.target)
    reps = representatives(functor.group)
    blocks = []
    for comp, mult in span_class.multiplicities().items():
        k, p = src.decomposition.locate(comp.left)
        m, q = tgt.decomposition.locate(comp.right)
        a = src.decomposition.classes[k]
        b = tgt.decomposition.classes[m]
        generator = canonical_component(reps[a], reps[b], comp.apex_class, p, q)
        mat = functor.matrix(a, b, generator)
        blocks.append((tgt.offsets[m], src.offsets[k], mat if mult == 1 else mat.scale(mult)))
    return block_matrix(tgt.dim, src.dim, blocks)


def validate(functor: MackeyFunctor) -> ValidationReport:
    """Check identities and functoriality over all composable generator pairs.

    Functoriality along pullback composition covers the Mackey squares, and
    additivity is built into evaluation.
    """
    group = functor.group
    reps = representatives(group)
    checked = 0
    for i in range(functor.num_levels):
        checked += 1
        if not functor.matrix(i, i, identity_generator(i)).is_identity():
            logger.info(f"{functor.name}: identity of C{i} not preserved")
            return ValidationReport(
                subject=functor.name, passed=False, checked=checked,
                failure=CheckFailure(diagram="identity", detail=f"M(1_C{i}) is not the identity",
                                     spans=[f"C{i} -> C{i}: identity"]),
            )
    by_source: Dict[int, List[GeneratorKey]] = {}
    for key in generator_keys(group):
        by_source.setdefault(key[0], []).append(key)
    for first in generator_keys(group):
        i, j, s_comp = first
        s = SpanClass(reps[i], reps[j], (s_comp,))
        m_s = functor.matrix(i, j, s_comp)
        for second in by_source.get(j, []):
            _, k, t_comp = second
            checked += 1
            t = SpanClass(reps[j], reps[k], (t_comp,))
            composite = compose(s, t)
            hom = hom_basis(reps[i], reps[k])
            expected = block_matrix(functor.level_dims[k], functor.level_dims[i], [])
            for idx, coeff in enumerate(coordinates(hom, composite)):
                if coeff:
                    expected = expected + functor.matrix(i, k, hom.basis[idx]).scale(coeff)
            if functor.matrix(j, k, t_comp) @ m_s != expected:
                logger.info(f"{functor.name}: functoriality fails for C{i} -> C{j} -> C{k}")
                return ValidationReport(
                    subject=functor.name, passed=False, checked=checked,
                    failure=CheckFailure(
                        diagram="functoriality",
                        detail=f"M(T o S) != M(T) M(S) for C{i} -> C{j} -> C{k}",
                        spans=[describe(s, f"C{i}", f"C{j}"), describe(t, f"C{j}", f"C{k}")],
                    ),
                )
    logger.info(f"{functor.name}: {checked} functoriality checks passed")
    return ValidationReport(subject=functor.name, passed=True, checked=checked)


# Standard functors

def zero_functor(group: Group, name: str = "0") -> MackeyFunctor:
    dims = [0] * all_subgroups(group).num_classes
    return MackeyFunctor(group, dims, {k: RatMatrix.zeros(0, 0) for k in generator_keys(group)}, name=name)


def burnside_functor(group: Group) -> MackeyFunctor:
    """J(C_i) is the linearized hom from the one-point G-set to C_i."""
    reps = representatives(group)
    levels = [hom_basis(reps[0], c) for c in reps]
    action = {}
    for key in generator_keys(group):
        i, j, _ = key
        s = generator_span(group, key)
        columns = [coordinates(levels[j], compose(levels[i].span(b), s)) for b in range(levels[i].dimension)]
        action[key] = RatMatrix.from_columns(columns, levels[j].dimension)
    functor = MackeyFunctor(group, [h.dimension for h in levels], action, name=f"J({group.name})")
    logger.info(f"Burnside functor of {group.name}: levels {list(functor.level_dims)}")
    return functor


def linearize_gset(x_set: GSet) -> Representation:
    """The permutation representation kX."""
    matrices = []
    for g in x_set.group.elements:
        data = [[0] * x_set.size for _ in x_set.points]
        for x in x_set.points:
            data[x_set.act(g, x)][x] = 1
        matrices.append(RatMatrix(x_set.size, x_set.size, data))
    return Representation(x_set.group, x_set.size, matrices, check=False)


def regular_representation(group: Group) -> Representation:
    return linearize_gset(coset_gset(group, [0]))


def trivial_representation(group: Group, dim: int = 1) -> Representation:
    return Representation(group, dim, [RatMatrix.identity(dim)] * group.order, check=False)


def k_star_span(span_class: SpanClass) -> RatMatrix:
    """The contravariant map kY -> kX, e_y -> sum over apex points s with v(s) = y of e_u(s)."""
    data = [[0] * span_class.target.size for _ in span_class.source.points]
    for comp, mult in span_class.multiplicities().items():
        for x, y in span_points(span_class.source, span_class.target, comp):
            data[x][y] += mult
    return RatMatrix(span_class.source.size, span_class.target.size, data)


def fixed_point_functor(rep: Representation) -> MackeyFunctor:
    """R^X = Rep(kX, R): level i is the H_i-fixed subspace of R.

    A generator (u, S, v): C_i -> C_j sends the fixed vector r to
    sum over s with v(s) = base of rho(a_{u(s)}) r, where a_x is the coset
    representative of x.
    """
    group = rep.group
    reps = representatives(group)
    table = all_subgroups(group)
    ident = RatMatrix.identity(rep.dim)
    bases = []
    for i in range(table.num_classes):
        conditions = [rep(h) - ident for h in sorted(table.rep(i))]
        bases.append(kernel_basis(vstack(conditions, rep.dim)))
    coset_reps = [coset_representatives(c) for c in reps]
    action = {}
    for key in generator_keys(group):
        i, j, comp = key
        phi = RatMatrix.zeros(rep.dim, rep.dim)
        for x, y in span_points(reps[i], reps[j], comp):
            if y == 0:
                phi = phi + rep(coset_reps[i][x])
        coords = solve(bases[j], phi @ bases[i])
        if coords is None:
            raise RepresentationError(f"Image of generator C{i} -> C{j} is not a fixed vector")
        action[key] = coords
    functor = MackeyFunctor(group, [b.cols for b in bases], action, name="R^-")
    logger.info(f"Fixed-point functor of a {rep.dim}-dim representation: levels {list(functor.level_dims)}")
    return functor


# Restriction, transfer and the cohomological property

def _canonical_projection(group: Group, h: Iterable[int], k: Iterable[int]) -> GMap:
    """sigma: G/K -> G/H, gK -> gH."""
    hs = require_subgroup(group, h)
    ks = require_subgroup(group, k)
    index(group, hs, ks)
    big = coset_gset(group, hs)
    small = coset_gset(group, ks)
    return GMap(small, big, [big.act(g, 0) for g in coset_representatives(small)])


def restriction(functor: MackeyFunctor, h: Iterable[int], k: Iterable[int]) -> RatMatrix:
    """M(G/H) -> M(G/K): the contravariant image of sigma^H_K."""
    return eval_span(functor, upper(_canonical_projection(functor.group, h, k)))


def transfer(functor: MackeyFunctor, h: Iterable[int], k: Iterable[int]) -> RatMatrix:
    """M(G/K) -> M(G/H): the covariant image of sigma^H_K."""
    return eval_span(functor, lower(_canonical_projection(functor.group, h, k)))


def cohomological_check(functor: MackeyFunctor) -> CohomologicalReport:
    """Compare transfer o restriction with [H:K] for every representative H and every K <= H."""
    group = functor.group
    table = all_subgroups(group)
    pairs = []
    for c in range(table.num_classes):
        h = table.rep(c)
        for k in table.subgroups:
            if not k <= h:
                continue
            composite = transfer(functor, h, k) @ restriction(functor, h, k)
            idx = len(h) // len(k)
            passed = composite == RatMatrix.identity(functor.level_dims[c]).scale(idx)
            pairs.append(CohomologicalPair(
                h_class=c, h=sorted(h), k=sorted(k), index=idx, passed=passed,
                composite=composite.to_strings(),
            ))
    report = CohomologicalReport(passed=all(p.passed for p in pairs), pairs=pairs)
    logger.info(f"{functor.name}: cohomological check {'passed' if report.passed else 'failed'} on {len(pairs)} pairs")
    return report


def _conjugation_map(group: Group, x: int, a: frozenset, b: frozenset) -> GMap:
    """G/B -> G/A, gB -> g x^-1 A, for B = x^-1 A x."""
    source = coset_gset(group, b)
    target = coset_gset(group, a)
    x_inv = group.inv(x)
    return GMap(source, target, [target.act(group.mul(g, x_inv), 0) for g in coset_representatives(source)])


def double_coset_check(functor: MackeyFunctor, h: Iterable[int], k: Iterable[int], l_sub: Iterable[int]) -> bool:
    """r^H_L t^H_K = sum over x in L\\H/K of t^L_{L n xKx^-1} c_x r^K_{x^-1Lx n K}."""
    group = functor.group
    hs, ks, ls = (require_subgroup(group, s) for s in (h, k, l_sub))
    lhs = restriction(functor, hs, ls) @ transfer(functor, hs, ks)
    rhs = RatMatrix.zeros(lhs.rows, lhs.cols)
    covered = set()
    for x in sorted(hs):
        if x in covered:
            continue
        covered |= {group.mul(group.mul(a, x), b) for a in ls for b in ks}
        conj_k = frozenset(group.conjugate(x, y) for y in ks)
        a_sub = ls & conj_k
        b_sub = frozenset(group.conjugate(group.inv(x), y) for y in a_sub)
        conj = eval_span(functor, lower(_conjugation_map(group, x, a_sub, b_sub)))
        rhs = rhs + transfer(functor, ls, a_sub) @ conj @ restriction(functor, ks, b_sub)
    return lhs == rhs


def mackey_square_check(functor: MackeyFunctor, f: GMap, g: GMap) -> bool:
    """For a cospan X -f-> Z <-g- Y with pullback P, compare M(g^*) M(f_*) with M(q_*) M(p^*)."""
    _, p, q = pullback(f, g)
    around_cospan = eval_span(functor, upper(g)) @ eval_span(functor, lower(f))
    through_pullback = eval_span(functor, lower(q)) @ eval_span(functor, upper(p))
    return around_cospan == through_pullback


# Morphisms

def identity_morphism(functor: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(functor, functor, [RatMatrix.identity(d) for d in functor.level_dims])


def compose_morphisms(first: MackeyMorphism, second: MackeyMorphism) -> MackeyMorphism:
    """second after first."""
    if first.target != second.source:
        raise FunctorFormatError("Morphisms are not composable")
    return MackeyMorphism(
        first.source, second.target, [b @ a for a, b in zip(first.components, second.components)]
    )


def linear_combination(basis: Sequence[MackeyMorphism], coefficients: Sequence[Fraction],
                       source: MackeyFunctor, target: MackeyFunctor) -> MackeyMorphism:
    components = [RatMatrix.zeros(target.level_dims[i], source.level_dims[i]) for i in range(source.num_levels)]
    for theta, c in zip(basis, coefficients):
        if c:
            components = [acc + t.scale(c) for acc, t in zip(components, theta.components)]
    return MackeyMorphism(source, target, components)


def is_natural(theta: MackeyMorphism) -> bool:
    for i, j, comp in generator_keys(theta.source.group):
        lhs = theta.components[j] @ theta.source.matrix(i, j, comp)
        rhs = theta.target.matrix(i, j, comp) @ theta.components[i]
        if lhs != rhs:
            return False
    return True


def is_invertible(theta: MackeyMorphism) -> bool:
    return invert_morphism(theta) is not None


def invert_morphism(theta: MackeyMorphism) -> Optional[MackeyMorphism]:
    inverses = []
    for component in theta.components:
        inv = inverse(component)
        if inv is None:
            return None
        inverses.append(inv)
    return MackeyMorphism(theta.target, theta.source, inverses)


def component_at(theta: MackeyMorphism, x_set: GSet) -> RatMatrix:
    """theta_X in the coordinates of eval_object: block diagonal over the orbits of X."""
    result = RatMatrix.zeros(0, 0)
    for c in decompose(x_set).classes:
        result = direct_sum(result, theta.components[c])
    return result


def hom_space(source: MackeyFunctor, target: MackeyFunctor) -> List[MackeyMorphism]:
    """Basis of natural transformations, the joint kernel of all naturality constraints."""
    if source.group != target.group:
        raise GroupMismatchError("hom_space between functors over different groups")
    dm, dn = source.level_dims, target.level_dims
    offsets = []
    total = 0
    for i in range(source.num_levels):
        offsets.append(total)
        total += dn[i] * dm[i]
    blocks = []
    row = 0
    for i, j, comp in generator_keys(source.group):
        height = dn[j] * dm[i]
        if height == 0:
            continue
        blocks.append((row, offsets[j], kron(RatMatrix.identity(dn[j]), source.matrix(i, j, comp).T)))
        blocks.append((row, offsets[i], -kron(target.matrix(i, j, comp), RatMatrix.identity(dm[i]))))
        row += height
    kernel = kernel_basis(block_matrix(row, total, blocks))
    morphisms = []
    for col in range(kernel.cols):
        vec = kernel.column_at(col)
        components = [
            unflatten(vec[offsets[i]:offsets[i] + dn[i] * dm[i]], dn[i], dm[i])
            for i in range(source.num_levels)
        ]
        morphisms.append(MackeyMorphism(source, target, components))
    logger.debug(f"hom_space({source.name}, {target.name}) has dimension {len(morphisms)}")
    return morphisms


@dataclass(frozen=True)
class IsoSearch:
    """Outcome of an isomorphism search.

    ``morphism`` is None when nothing was found. ``ruled_out`` is True only
    when the functors are provably not isomorphic (level dimensions differ or
    there are no morphisms at all); otherwise a miss says nothing.
    """

    morphism: Optional[MackeyMorphism]
    ruled_out: bool
    attempts: int

    @property
    def found(self) -> bool:
        return self.morphism is not None


def search_isomorphism(source: MackeyFunctor, target: MackeyFunctor,
                       attempts: Optional[int] = None) -> IsoSearch:
    """Look for an invertible element of hom_space(source, target).

    The search is incomplete. Candidates are sum_b t^b theta_b for
    t = 1 .. attempts//2 + 1, then seeded random combinations with
    coefficients in [-9, 9]. An invertible morphism that none of these hits
    is missed, so an exhausted search is reported as not found rather than
    as a proof that no isomorphism exists.
    """
    if source.level_dims != target.level_dims:
        return IsoSearch(None, ruled_out=True, attempts=0)
    if source.is_zero():
        return IsoSearch(MackeyMorphism(source, target, [RatMatrix.zeros(0, 0) for _ in source.level_dims]), False, 0)
    basis = hom_space(source, target)
    if not basis:
        return IsoSearch(None, ruled_out=True, attempts=0)
    tries = attempts if attempts is not None else get_iso_attempts()
    rng = random.Random(len(basis))
    for t in range(1, tries + 1):
        if t <= tries // 2 + 1:
            coeffs = [Fraction(t) ** b for b in range(len(basis))]
        else:
            coeffs = [Fraction(rng.randint(-9, 9)) for _ in basis]
        theta = linear_combination(basis, coeffs, source, target)
        if invert_morphism(theta) is not None:
            logger.info(f"Isomorphism {source.name} -> {target.name} found on attempt {t}")
            return IsoSearch(theta, ruled_out=False, attempts=t)
    logger.info(f"No isomorphism {source.name} -> {target.name} among {tries} candidates; search is incomplete")
    return IsoSearch(None, ruled_out=False, attempts=tries)


def find_isomorphism(source: MackeyFunctor, target: MackeyFunctor,
                     attempts: Optional[int] = None) -> Optional[MackeyMorphism]:
    """The morphism found by ``search_isomorphism``, or None if the search missed.

    None means "not found", not "not isomorphic"; use ``search_isomorphism``
    to tell the two apart.
    """
    return search_isomorphism(source, target, attempts).morphism


# Dress construction

def dress(functor: MackeyFunctor, y_set: GSet) -> MackeyFunctor:
    """M_Y(U) = M(U x Y), acting on generators by s x 1_Y."""
    reps = representatives(functor.group)
    dims = [eval_object(functor, product(c, y_set)).dim for c in reps]
    identity_y = identity_span(y_set)
    action = {
        key: eval_span(functor, tensor(generator_span(functor.group, key), identity_y))
        for key in generator_keys(functor.group)
    }
    return MackeyFunctor(functor.group, dims, action, name=f"{functor.name}_Y")


def dress_transport(functor: MackeyFunctor, x_set: GSet, y_set: GSet) -> RatMatrix:
    """Change of coordinates eval_object(M, X x Y) -> eval_object(M_Y, X).

    Orbit a of X, embedded by phi_a: C -> X, contributes the rows
    M((phi_a x 1)^*).
    """
    identity_y = identity_map(y_set)
    rows = [
        eval_span(functor, upper(product_map(embedding, identity_y)))
        for embedding in decompose(x_set).embeddings
    ]
    return vstack(rows, eval_object(functor, product(x_set, y_set)).dim)


def dress_morphism(functor: MackeyFunctor, span_class: SpanClass) -> MackeyMorphism:
    """M_Y -> M_Y' induced by a span Y -> Y' in the dressed slot."""
    reps = representatives(functor.group)
    components = [eval_span(functor, tensor(identity_span(c), span_class)) for c in reps]
    return MackeyMorphism(dress(functor, span_class.source), dress(functor, span_class.target), components)


# Representations

def intertwiners(first: Representation, second: Representation) -> List[RatMatrix]:
    """Basis of linear maps X with rho2(g) X = X rho1(g) for all g."""
    d1, d2 = first.dim, second.dim
    conditions = [
        kron(second(g), RatMatrix.identity(d1)) - kron(RatMatrix.identity(d2), first(g).T)
        for g in first.group.elements
    ]
    kernel = kernel_basis(vstack(conditions, d1 * d2))
    return [unflatten(kernel.column_at(c), d2, d1) for c in range(kernel.cols)]


def colim_k(functor: MackeyFunctor) -> Representation:
    """The coend of M(C) (x) kC over the representatives, as a G-representation."""
    group = functor.group
    reps = representatives(group)
    sizes = [c.size for c in reps]
    dims = functor.level_dims
    offsets = []
    total = 0
    for d, s in zip(dims, sizes):
        offsets.append(total)
        total += d * s
    blocks = []
    col = 0
    for key in generator_keys(group):
        i, j, comp = key
        width = dims[i] * sizes[j]
        if width == 0:
            continue
        blocks.append((offsets[j], col, kron(functor.matrix(i, j, comp), RatMatrix.identity(sizes[j]))))
        blocks.append((offsets[i], col, -kron(RatMatrix.identity(dims[i]), k_star_span(generator_span(group, key)))))
        col += width
    relations = block_matrix(total, col, blocks)
    quotient = quotient_by(relations)
    perms = [linearize_gset(c) for c in reps]
    matrices = []
    for g in group.elements:
        ambient = block_matrix(total, total, [
            (offsets[i], offsets[i], kron(RatMatrix.identity(dims[i]), perms[i](g))) for i in range(len(reps))
        ])
        if not (quotient.projection @ ambient @ relations).is_zero():
            raise CertificateError(f"Group element {g} does not preserve the coend relations")
        matrices.append(quotient.projection @ ambient @ quotient.section)
    logger.info(f"colim({functor.name}, k_*) has dimension {quotient.dim}")
    return Representation(group, quotient.dim, matrices)


def colim_adjunction_check(functor: MackeyFunctor, rep: Representation) -> DimensionComparison:
    """dim Rep(colim(M, k_*), R) against dim Mky(M, R^-)."""
    left = len(intertwiners(colim_k(functor), rep))
    right = len(hom_space(functor, fixed_point_functor(rep)))
    return DimensionComparison(label=f"Rep(colim({functor.name}), R) vs Mky({functor.name}, R^-)",
                               left=left, right=right)


def fully_faithful_check(first: Representation, second: Representation) -> DimensionComparison:
    """dim Mky(R1^-, R2^-) against dim Rep(R1, R2)."""
    left = len(hom_space(fixed_point_functor(first), fixed_point_functor(second)))
    right = len(intertwiners(first, second))
    return DimensionComparison(label="Mky(R1^-, R2^-) vs Rep(R1, R2)", left=left, right=right)


def fully_faithful_report(pairs: Sequence[Tuple[Representation, Representation]]) -> DimensionReport:
    return DimensionReport.from_comparisons("fully faithful", [fully_faithful_check(a, b) for a, b in pairs])
