"""Day convolution of Mackey functors over the representative subcategory.

(M1 * ... * Mn)(C_k) is the coend of hom(C_i1 x ... x C_in, C_k) (x) M1(C_i1)
(x) ... (x) Mn(C_in) taken over representative tuples. The ambient space of a
tuple block is ordered (hom basis element, m1, ..., mn) with the hom index
outermost, and the quotient by the coend relations is computed exactly.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import CertificateError, GroupMismatchError
from ..models.reports import DimensionComparison, DimensionReport
from ..utils.exact_linalg import (
    QuotientSpace,
    RatMatrix,
    flatten,
    from_entries,
    inverse,
    quotient_by,
    solve,
)
from .gset import GSet, product, representatives, swap_map
from .mackey import (
    MackeyFunctor,
    MackeyMorphism,
    burnside_functor,
    colim_k,
    dress,
    dress_morphism,
    eval_span,
    find_isomorphism,
    generator_keys,
    generator_span,
    hom_space,
    identity_morphism,
    invert_morphism,
    is_natural,
)
from .span_category import (
    LinearizedHom,
    SpanClass,
    compose,
    coordinates,
    hom_basis,
    identity_span,
    lower,
    tensor,
    transpose,
)

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]
Entries = Dict[Tuple[int, int], Fraction]


def _multi_indices(dims: Sequence[int]) -> List[Tuple[int, ...]]:
    """Row-major enumeration matching kron ordering."""
    return list(cartesian(*(range(d) for d in dims)))


def tuple_product(group_reps: Sequence[GSet], block: Block) -> GSet:
    return reduce(product, (group_reps[i] for i in block))


def _insert_span(group_reps: Sequence[GSet], block: Block, position: int, span_class: SpanClass) -> SpanClass:
    """1 x ... x S x ... x 1 with S in ``position`` and identities of the block elsewhere."""
    factors = [
        span_class if q == position else identity_span(group_reps[c]) for q, c in enumerate(block)
    ]
    return reduce(tensor, factors)


@dataclass(frozen=True, eq=False)
class CoendLayout:
    """Coordinates of the ambient space: one block per representative tuple."""

    functors: Tuple[MackeyFunctor, ...]
    target: int
    blocks: Tuple[Block, ...]
    homs: Dict[Block, LinearizedHom]
    offsets: Dict[Block, int]
    ambient_dim: int

    def local_dims(self, block: Block) -> Tuple[int, ...]:
        return tuple(f.level_dims[i] for f, i in zip(self.functors, block))

    def width(self, block: Block) -> int:
        w = 1
        for d in self.local_dims(block):
            w *= d
        return w

    def index(self, block: Block, phi: int, local: Sequence[int]) -> int:
        flat = 0
        for d, x in zip(self.local_dims(block), local):
            flat = flat * d + x
        return self.offsets[block] + phi * self.width(block) + flat

    def decode(self, i: int) -> Tuple[Block, int, Tuple[int, ...]]:
        """(block, hom index, local indices) of ambient coordinate i."""
        return self._decoder[i]

    @cached_property
    def _decoder(self) -> List[Tuple[Block, int, Tuple[int, ...]]]:
        table = []
        for block in self.blocks:
            locals_ = _multi_indices(self.local_dims(block))
            for phi in range(self.homs[block].dimension):
                table.extend((block, phi, loc) for loc in locals_)
        return table


@dataclass(frozen=True, eq=False)
class CoendSpace(CoendLayout):
    """The coend at one representative target with its chosen quotient basis."""

    relations: RatMatrix
    quotient: QuotientSpace

    @property
    def dim(self) -> int:
        return self.quotient.dim


def _layout(functors: Sequence[MackeyFunctor], target: int) -> CoendLayout:
    reps = representatives(functors[0].group)
    blocks = tuple(cartesian(*(range(len(reps)) for _ in functors)))
    homs = {b: hom_basis(tuple_product(reps, b), reps[target]) for b in blocks}
    offsets: Dict[Block, int] = {}
    total = 0
    for b in blocks:
        offsets[b] = total
        width = 1
        for f, i in zip(functors, b):
            width *= f.level_dims[i]
        total += homs[b].dimension * width
    return CoendLayout(tuple(functors), target, blocks, homs, offsets, total)


def coend_space(functors: Sequence[MackeyFunctor], target: int) -> CoendSpace:
    """Ambient space and coend relations at C_target.

    For a generator S: C_a -> C_b in position p and phi in hom(.. x C_b x .., C_k)
    the relation is (phi o (1 x S x 1), m) - (phi, M_p(S) m).
    """
    group = functors[0].group
    for f in functors[1:]:
        if f.group != group:
            raise GroupMismatchError("Convolution of functors over different groups")
    reps = representatives(group)
    layout = _layout(functors, target)
    homs = layout.homs
    columns: List[Dict[int, Fraction]] = []
    for position, functor in enumerate(functors):
        for key in generator_keys(group):
            a, b_cls, _ = key
            s = generator_span(group, key)
            m_s = functor.action[key]
            for block in layout.blocks:
                if block[position] != b_cls:
                    continue
                src_block = block[:position] + (a,) + block[position + 1:]
                if homs[block].dimension == 0 or layout.width(src_block) == 0:
                    continue
                lifted = _insert_span(reps, block, position, s)
                for phi in range(homs[block].dimension):
                    pre = coordinates(homs[src_block], compose(lifted, homs[block].span(phi)))
                    for loc in _multi_indices(layout.local_dims(src_block)):
                        col: Dict[int, Fraction] = defaultdict(Fraction)
                        for phi2, c in enumerate(pre):
                            if c:
                                col[layout.index(src_block, phi2, loc)] += c
                        for row in range(m_s.rows):
                            v = m_s[row, loc[position]]
                            if v:
                                moved = loc[:position] + (row,) + loc[position + 1:]
                                col[layout.index(block, phi, moved)] -= v
                        columns.append(col)
    relations = from_entries(layout.ambient_dim, len(columns), {
        (row, c): v for c, col in enumerate(columns) for row, v in col.items() if v
    })
    quotient = quotient_by(relations)
    logger.debug(
        f"Coend at C{target}: ambient {layout.ambient_dim}, {len(columns)} relations, dimension {quotient.dim}"
    )
    return CoendSpace(
        layout.functors, target, layout.blocks, homs, layout.offsets, layout.ambient_dim, relations, quotient
    )


def _induce(source: CoendSpace, ambient_map: RatMatrix, projection: Optional[RatMatrix], label: str) -> RatMatrix:
    """Push an ambient map through the quotient, checking it kills the relations."""
    through = ambient_map if projection is None else projection @ ambient_map
    if not (through @ source.relations).is_zero():
        raise CertificateError(f"{label} does not respect the coend relations")
    return through @ source.quotient.section


def _postcompose_map(source: CoendSpace, target: CoendSpace, span_class: SpanClass) -> RatMatrix:
    """Ambient map (phi, m) -> (U o phi, m) for U: C_source -> C_target."""
    entries: Entries = defaultdict(Fraction)
    for block in source.blocks:
        if source.width(block) == 0:
            continue
        locals_ = _multi_indices(source.local_dims(block))
        for phi in range(source.homs[block].dimension):
            post = coordinates(target.homs[block], compose(source.homs[block].span(phi), span_class))
            for phi2, c in enumerate(post):
                if c:
                    for loc in locals_:
                        entries[(target.index(block, phi2, loc), source.index(block, phi, loc))] += c
    return from_entries(target.ambient_dim, source.ambient_dim, entries)


def convolve_many(functors: Sequence[MackeyFunctor], name: Optional[str] = None) -> MackeyFunctor:
    """The n-fold convolution, with generator actions induced on the quotients."""
    group = functors[0].group
    reps = representatives(group)
    spaces = [coend_space(functors, k) for k in range(len(reps))]
    action = {}
    for key in generator_keys(group):
        k, l, _ = key
        ambient = _postcompose_map(spaces[k], spaces[l], generator_span(group, key))
        action[key] = _induce(spaces[k], ambient, spaces[l].quotient.projection, f"generator C{k} -> C{l}")
    label = name or "*".join(f.name for f in functors)
    result = MackeyFunctor(group, [s.dim for s in spaces], action, name=label)
    logger.info(f"Convolution {label}: levels {list(result.level_dims)}")
    return result


def convolve(first: MackeyFunctor, second: MackeyFunctor) -> MackeyFunctor:
    return convolve_many([first, second], name=f"{first.name}*{second.name}")


def _certify(theta: MackeyMorphism, label: str) -> MackeyMorphism:
    if not is_natural(theta):
        raise CertificateError(f"{label} is not natural")
    if invert_morphism(theta) is None:
        raise CertificateError(f"{label} is not invertible")
    logger.info(f"{label} certified")
    return theta


def unit_iso(functor: MackeyFunctor) -> MackeyMorphism:
    """J * M -> M, (phi, a, m) -> M((a x 1) then phi) m."""
    group = functor.group
    reps = representatives(group)
    burnside = burnside_functor(group)
    spaces = [coend_space([burnside, functor], k) for k in range(len(reps))]
    components = []
    for k, space in enumerate(spaces):
        entries: Entries = defaultdict(Fraction)
        for block in space.blocks:
            i, j = block
            if space.width(block) == 0:
                continue
            points = hom_basis(reps[0], reps[i])
            for phi in range(space.homs[block].dimension):
                phi_span = space.homs[block].span(phi)
                for a in range(points.dimension):
                    moved = eval_span(functor, compose(tensor(points.span(a), identity_span(reps[j])), phi_span))
                    for m in range(functor.level_dims[j]):
                        col = space.index(block, phi, (a, m))
                        for row in range(moved.rows):
                            if moved[row, m]:
                                entries[(row, col)] += moved[row, m]
        ambient = from_entries(functor.level_dims[k], space.ambient_dim, entries)
        components.append(_induce(space, ambient, None, f"unit map at C{k}"))
    return _certify(MackeyMorphism(convolve(burnside, functor), functor, components), f"unit iso J*{functor.name}")


def symmetry_iso(first: MackeyFunctor, second: MackeyFunctor) -> MackeyMorphism:
    """M * N -> N * M, (phi, m, n) -> (phi o swap, n, m)."""
    group = first.group
    reps = representatives(group)
    components = []
    for k in range(len(reps)):
        source = coend_space([first, second], k)
        target = coend_space([second, first], k)
        entries: Entries = defaultdict(Fraction)
        for block in source.blocks:
            i, j = block
            flipped = (j, i)
            if source.width(block) == 0:
                continue
            swap = lower(swap_map(reps[j], reps[i]))
            for phi in range(source.homs[block].dimension):
                coords = coordinates(target.homs[flipped], compose(swap, source.homs[block].span(phi)))
                for m, n in _multi_indices(source.local_dims(block)):
                    col = source.index(block, phi, (m, n))
                    for phi2, c in enumerate(coords):
                        if c:
                            entries[(target.index(flipped, phi2, (n, m)), col)] += c
        ambient = from_entries(target.ambient_dim, source.ambient_dim, entries)
        components.append(_induce(source, ambient, target.quotient.projection, f"symmetry at C{k}"))
    theta = MackeyMorphism(convolve(first, second), convolve(second, first), components)
    return _certify(theta, f"symmetry {first.name}*{second.name}")


def _to_triple(outer: CoendSpace, inner: List[CoendSpace], triple: CoendSpace, inner_first: bool) -> RatMatrix:
    """Ambient map from a nested coend into the triple coend.

    With ``inner_first`` the outer blocks are (p, c) with p indexing the
    inner convolution; otherwise they are (a, q) with q indexing it.
    """
    reps = representatives(outer.functors[0].group)
    entries: Entries = defaultdict(Fraction)
    for block in outer.blocks:
        if outer.width(block) == 0:
            continue
        nested = block[0] if inner_first else block[1]
        other = block[1] if inner_first else block[0]
        space = inner[nested]
        section = space.quotient.section
        for phi in range(outer.homs[block].dimension):
            phi_span = outer.homs[block].span(phi)
            for x in range(space.dim):
                for amb in range(space.ambient_dim):
                    v = section[amb, x]
                    if not v:
                        continue
                    (s, t), psi, (y, z) = space.decode(amb)
                    psi_span = space.homs[(s, t)].span(psi)
                    if inner_first:
                        lifted = tensor(psi_span, identity_span(reps[other]))
                        target_block = (s, t, other)
                    else:
                        lifted = tensor(identity_span(reps[other]), psi_span)
                        target_block = (other, s, t)
                    coords = coordinates(triple.homs[target_block], compose(lifted, phi_span))
                    for w in range(outer.functors[1 if inner_first else 0].level_dims[other]):
                        if inner_first:
                            col = outer.index(block, phi, (x, w))
                            loc = (y, z, w)
                        else:
                            col = outer.index(block, phi, (w, x))
                            loc = (w, y, z)
                        for phi2, c in enumerate(coords):
                            if c:
                                entries[(triple.index(target_block, phi2, loc), col)] += v * c
    return from_entries(triple.ambient_dim, outer.ambient_dim, entries)


def associator_iso(first: MackeyFunctor, second: MackeyFunctor, third: MackeyFunctor) -> MackeyMorphism:
    """(L*M)*N -> L*(M*N) through the triple coend of L, M and N."""
    group = first.group
    r = len(representatives(group))
    left_inner = [coend_space([first, second], k) for k in range(r)]
    right_inner = [coend_space([second, third], k) for k in range(r)]
    left_functor = convolve(first, second)
    right_functor = convolve(second, third)
    components = []
    for k in range(r):
        triple = coend_space([first, second, third], k)
        left_outer = coend_space([left_functor, third], k)
        right_outer = coend_space([first, right_functor], k)
        alpha = _induce(left_outer, _to_triple(left_outer, left_inner, triple, True),
                        triple.quotient.projection, f"(L*M)*N -> T at C{k}")
        beta = _induce(right_outer, _to_triple(right_outer, right_inner, triple, False),
                       triple.quotient.projection, f"L*(M*N) -> T at C{k}")
        beta_inv = inverse(beta)
        if beta_inv is None:
            raise CertificateError(f"Triple coend comparison at C{k} is not invertible")
        components.append(beta_inv @ alpha)
    theta = MackeyMorphism(convolve(left_functor, third), convolve(first, right_functor), components)
    return _certify(theta, "associator")


def associativity_report(first: MackeyFunctor, second: MackeyFunctor, third: MackeyFunctor) -> DimensionReport:
    left = convolve(convolve(first, second), third)
    right = convolve(first, convolve(second, third))
    comparisons = [
        DimensionComparison(label=f"level C{k}", left=a, right=b)
        for k, (a, b) in enumerate(zip(left.level_dims, right.level_dims))
    ]
    return DimensionReport.from_comparisons("associativity", comparisons)


# Internal hom and duality

def internal_hom(source: MackeyFunctor, target: MackeyFunctor) -> MackeyFunctor:
    """Hom(M, N)(C_i) = Mky(M_{C_i}, N).

    A span S: C_i -> C_j acts by precomposition with the morphism
    M_{C_j} -> M_{C_i} induced by the transpose of S.
    """
    if source.group != target.group:
        raise GroupMismatchError("internal_hom between functors over different groups")
    group = source.group
    reps = representatives(group)
    dressed = [dress(source, c) for c in reps]
    bases = [hom_space(d, target) for d in dressed]
    stacked = [
        RatMatrix.from_columns([theta.vector() for theta in basis], _morphism_slots(dressed[i], target))
        for i, basis in enumerate(bases)
    ]
    action = {}
    for key in generator_keys(group):
        i, j, _ = key
        pre = dress_morphism(source, transpose(generator_span(group, key)))
        moved = [
            [x for a, b in zip(theta.components, pre.components) for x in flatten(a @ b)]
            for theta in bases[i]
        ]
        coords = solve(stacked[j], RatMatrix.from_columns(moved, stacked[j].rows))
        if coords is None:
            raise CertificateError(f"Precomposition along C{i} -> C{j} leaves the hom space")
        action[key] = coords
    result = MackeyFunctor(group, [len(b) for b in bases], action, name=f"Hom({source.name},{target.name})")
    logger.info(f"{result.name}: levels {list(result.level_dims)}")
    return result


def _morphism_slots(source: MackeyFunctor, target: MackeyFunctor) -> int:
    return sum(m * n for m, n in zip(source.level_dims, target.level_dims))


def star_dual(functor: MackeyFunctor) -> MackeyFunctor:
    """S(M)(X) = M(X)^*, with S acting by the transpose of M(transpose(S))."""
    action = {
        key: eval_span(functor, transpose(generator_span(functor.group, key))).T
        for key in generator_keys(functor.group)
    }
    return MackeyFunctor(functor.group, functor.level_dims, action, name=f"S({functor.name})")


def double_dual_iso(functor: MackeyFunctor) -> MackeyMorphism:
    """S(S(M)) -> M."""
    twice = star_dual(star_dual(functor))
    if twice == functor:
        return identity_morphism(functor)
    theta = find_isomorphism(twice, functor)
    if theta is None:
        raise CertificateError(f"S(S({functor.name})) is not isomorphic to {functor.name}")
    return theta


def star_pairing_check(first: MackeyFunctor, second: MackeyFunctor, third: MackeyFunctor) -> DimensionComparison:
    """dim Mky(M*N, S(L)) against dim Mky(N*L, S(M))."""
    left = len(hom_space(convolve(first, second), star_dual(third)))
    right = len(hom_space(convolve(second, third), star_dual(first)))
    return DimensionComparison(
        label=f"Mky({first.name}*{second.name}, S({third.name})) vs Mky({second.name}*{third.name}, S({first.name}))",
        left=left, right=right,
    )


def tensor_hom_check(first: MackeyFunctor, second: MackeyFunctor, third: MackeyFunctor) -> DimensionComparison:
    """dim Mky(L*M, N) against dim Mky(L, Hom(M, N))."""
    left = len(hom_space(convolve(first, second), third))
    right = len(hom_space(first, internal_hom(second, third)))
    return DimensionComparison(label=f"Mky({first.name}*{second.name}, {third.name}) adjunction",
                               left=left, right=right)


def internal_hom_morphism_dims(source: MackeyFunctor, target: MackeyFunctor) -> DimensionReport:
    """Compare Hom(M, N)(C_i) with Mky(M, N_{C_i}) level by level."""
    hom = internal_hom(source, target)
    comparisons = [
        DimensionComparison(label=f"level C{i}", left=hom.level_dims[i],
                            right=len(hom_space(source, dress(target, c))))
        for i, c in enumerate(representatives(source.group))
    ]
    return DimensionReport.from_comparisons(hom.name, comparisons)


def colim_monoidal_check(first: MackeyFunctor, second: MackeyFunctor) -> DimensionComparison:
    left = colim_k(convolve(first, second)).dim
    right = colim_k(first).dim * colim_k(second).dim
    return DimensionComparison(label=f"colim({first.name}*{second.name}) vs colim x colim", left=left, right=right)


def dress_monoidal_check(first: MackeyFunctor, second: MackeyFunctor, x_set: GSet, y_set: GSet) -> DimensionReport:
    """dim (M_X * N_Y)(Z) against dim (M * N)_{X x Y}(Z) at every representative Z."""
    left = convolve(dress(first, x_set), dress(second, y_set))
    right = dress(convolve(first, second), product(x_set, y_set))
    comparisons = [
        DimensionComparison(label=f"level C{k}", left=a, right=b)
        for k, (a, b) in enumerate(zip(left.level_dims, right.level_dims))
    ]
    return DimensionReport.from_comparisons("dress monoidal", comparisons)


def dress_monoidal_iso(first: MackeyFunctor, second: MackeyFunctor, x_set: GSet, y_set: GSet) -> Optional[MackeyMorphism]:
    left = convolve(dress(first, x_set), dress(second, y_set))
    right = dress(convolve(first, second), product(x_set, y_set))
    return find_isomorphism(left, right)
