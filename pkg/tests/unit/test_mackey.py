"""Tests for Mackey functors, morphisms and the fixed-point construction."""

import pytest

from src.exceptions import FunctorFormatError, RepresentationError
from src.services.gset import coset_gset, product, representatives, terminal_gset, terminal_map
from src.services.mackey import (
    MackeyFunctor,
    Representation,
    burnside_functor,
    colim_adjunction_check,
    colim_k,
    cohomological_check,
    component_at,
    compose_morphisms,
    double_coset_check,
    dress,
    dress_morphism,
    dress_transport,
    eval_object,
    eval_span,
    find_isomorphism,
    fixed_point_functor,
    fully_faithful_report,
    generator_keys,
    hom_space,
    identity_generator,
    identity_morphism,
    intertwiners,
    invert_morphism,
    is_invertible,
    is_natural,
    k_star_span,
    linearize_gset,
    mackey_square_check,
    regular_representation,
    restriction,
    search_isomorphism,
    transfer,
    trivial_representation,
    validate,
    zero_functor,
)
from src.services.span_category import identity_span, lower
from src.utils.exact_linalg import RatMatrix, inverse


@pytest.mark.unit
class TestConstruction:
    """Tests for building and validating functors."""

    def test_burnside_levels(self, burnside_c2, s3):
        """Test that J has one basis element per subgroup class of each H_i."""
        assert burnside_c2.level_dims == (2, 1)
        assert burnside_functor(s3).level_dims == (4, 2, 2, 1)

    def test_burnside_is_valid(self, burnside_c2, burnside_c3):
        """Test that J passes the functoriality check."""
        for functor in (burnside_c2, burnside_c3):
            report = validate(functor)
            assert report.passed
            assert report.checked > functor.num_levels

    def test_fixed_point_levels(self, fixpt_regular_c2, fixpt_trivial_c2, fixpt_regular_c3):
        """Test dim R^{H_i} for trivial and regular representations."""
        assert fixpt_trivial_c2.level_dims == (1, 1)
        assert fixpt_regular_c2.level_dims == (1, 2)
        assert fixpt_regular_c3.level_dims == (1, 3)
        assert validate(fixpt_regular_c2).passed

    def test_broken_identity_is_reported(self, burnside_c2, c2):
        """Test that a scaled identity generator fails validation."""
        action = dict(burnside_c2.action)
        key = (0, 0, identity_generator(0))
        action[key] = action[key].scale(2)

        report = validate(MackeyFunctor(c2, burnside_c2.level_dims, action, name="bad"))

        assert not report.passed
        assert report.failure.diagram == "identity"

    def test_broken_generator_is_reported(self, fixpt_regular_c2, c2):
        """Test that a perturbed non-identity generator fails functoriality."""
        action = dict(fixpt_regular_c2.action)
        key = next(k for k in generator_keys(c2) if k[0] == 1 and k[1] == 0)
        action[key] = action[key].scale(3)

        report = validate(MackeyFunctor(c2, fixpt_regular_c2.level_dims, action))

        assert not report.passed
        assert report.failure.diagram == "functoriality"
        assert report.failure.spans

    def test_missing_generator(self, burnside_c2, c2):
        """Test that every generator must carry a matrix."""
        action = dict(burnside_c2.action)
        action.pop(generator_keys(c2)[0])

        with pytest.raises(FunctorFormatError):
            MackeyFunctor(c2, burnside_c2.level_dims, action)

    def test_wrong_shape(self, burnside_c2, c2):
        """Test that matrices must be dim_j x dim_i."""
        action = dict(burnside_c2.action)
        action[(0, 0, identity_generator(0))] = RatMatrix.identity(3)

        with pytest.raises(FunctorFormatError):
            MackeyFunctor(c2, burnside_c2.level_dims, action)

    def test_wrong_level_count(self, c2):
        """Test that one level per subgroup class is required."""
        with pytest.raises(FunctorFormatError):
            MackeyFunctor(c2, [1], {})

    def test_zero_functor(self, s3):
        """Test the zero functor."""
        assert zero_functor(s3).is_zero()
        assert not burnside_functor(s3).is_zero()

    def test_bad_representation(self, c2):
        """Test that rho(e) must be the identity and rho must be multiplicative."""
        with pytest.raises(RepresentationError):
            Representation(c2, 1, [RatMatrix(1, 1, [[2]]), RatMatrix.identity(1)])
        with pytest.raises(RepresentationError):
            Representation(c2, 1, [RatMatrix.identity(1), RatMatrix(1, 1, [[2]])])
        with pytest.raises(RepresentationError):
            Representation(c2, 1, [RatMatrix.identity(1)])


@pytest.mark.unit
class TestEvaluation:
    """Tests for values on arbitrary G-sets and spans."""

    def test_eval_object_sums_orbits(self, burnside_c2, top_and_free):
        """Test that M(C2/e x C2/e) is two copies of M(C2/e)."""
        _, free = top_and_free

        assert eval_object(burnside_c2, product(free, free)).dim == 2

    def test_identity_span_evaluates_to_identity(self, fixpt_regular_c3, c3):
        """Test M(1_X) = I on a non-representative X."""
        free = representatives(c3)[-1]
        x_set = product(free, free)

        assert eval_span(fixpt_regular_c3, identity_span(x_set)).is_identity()

    def test_mackey_square(self, burnside_c2, fixpt_regular_c3, c3, top_and_free):
        """Test g^* f_* = q_* p^* for terminal cospans."""
        top, free = top_and_free
        assert mackey_square_check(burnside_c2, terminal_map(free), terminal_map(free))
        assert mackey_square_check(burnside_c2, terminal_map(top), terminal_map(free))

        free3 = representatives(c3)[-1]
        assert mackey_square_check(fixpt_regular_c3, terminal_map(free3), terminal_map(free3))


@pytest.mark.unit
class TestRestrictionTransfer:
    """Tests for restriction, transfer and the cohomological property."""

    def test_shapes(self, burnside_c2, c2):
        """Test that restriction goes M(G/H) -> M(G/K) and transfer goes back."""
        g, e = set(c2.elements), {0}

        assert restriction(burnside_c2, g, e).shape == (1, 2)
        assert transfer(burnside_c2, g, e).shape == (2, 1)

    def test_fixed_points_are_cohomological(self, fixpt_trivial_c2, fixpt_regular_c3, s3):
        """Test transfer o restriction = [H:K] on fixed-point functors."""
        assert cohomological_check(fixpt_trivial_c2).passed
        assert cohomological_check(fixpt_regular_c3).passed
        assert cohomological_check(fixed_point_functor(regular_representation(s3))).passed
        assert cohomological_check(fixed_point_functor(trivial_representation(s3))).passed

    def test_trivial_composite_is_index(self, fixpt_trivial_c2, c2):
        """Test that for C2 and k the composite at G/G is multiplication by 2."""
        g, e = set(c2.elements), {0}

        composite = transfer(fixpt_trivial_c2, g, e) @ restriction(fixpt_trivial_c2, g, e)

        assert composite == RatMatrix(1, 1, [[2]])

    def test_burnside_is_not_cohomological(self, burnside_c2):
        """Test that J(C2) fails at the pair (G, e)."""
        report = cohomological_check(burnside_c2)

        assert not report.passed
        failing = [(p.h, p.k) for p in report.failures()]
        assert ([0, 1], [0]) in failing

    def test_double_coset_formula(self, s3):
        """Test the double coset formula for H = S3, K = L = C2."""
        functor = burnside_functor(s3)

        assert double_coset_check(functor, s3.elements, {0, 1}, {0, 1})
        assert double_coset_check(functor, s3.elements, {0, 3, 4}, {0, 1})


@pytest.mark.unit
class TestMorphisms:
    """Tests for hom spaces and isomorphism search."""

    def test_yoneda_dimensions(self, burnside_c2, fixpt_regular_c2):
        """Test dim Mky(J, M) = dim M(G/G)."""
        assert len(hom_space(burnside_c2, burnside_c2)) == 2
        assert len(hom_space(burnside_c2, fixpt_regular_c2)) == 1

    def test_hom_space_is_natural(self, fixpt_regular_c2, fixpt_trivial_c2):
        """Test that every basis element is natural."""
        basis = hom_space(fixpt_trivial_c2, fixpt_regular_c2)

        assert basis
        assert all(is_natural(theta) for theta in basis)

    def test_find_isomorphism(self, burnside_c2):
        """Test that an iso J -> J is found and inverts."""
        theta = find_isomorphism(burnside_c2, burnside_c2)

        assert theta is not None
        assert is_invertible(theta)
        back = invert_morphism(theta)
        assert compose_morphisms(theta, back) == identity_morphism(burnside_c2)

    def test_no_isomorphism_between_different_levels(self, fixpt_regular_c2, fixpt_trivial_c2):
        """Test that functors with different level dimensions are not isomorphic."""
        assert find_isomorphism(fixpt_trivial_c2, fixpt_regular_c2) is None
        search = search_isomorphism(fixpt_trivial_c2, fixpt_regular_c2)
        assert search.ruled_out
        assert not search.found

    def test_exhausted_search_is_not_a_proof(self, burnside_c2):
        """Test that a search with no candidates reports not found without ruling the iso out."""
        search = search_isomorphism(burnside_c2, burnside_c2, attempts=0)

        assert not search.found
        assert not search.ruled_out
        assert find_isomorphism(burnside_c2, burnside_c2, attempts=0) is None
        assert search_isomorphism(burnside_c2, burnside_c2).found

    def test_identity_is_natural(self, burnside_c3):
        """Test the identity morphism."""
        ident = identity_morphism(burnside_c3)

        assert is_natural(ident)
        assert is_invertible(ident)
        assert not ident.is_zero()


@pytest.mark.unit
class TestDressAndColimit:
    """Tests for the Dress construction, colim(M, k_*) and representations."""

    def test_dress_levels(self, burnside_c2, top_and_free):
        """Test that J_{G/e} has levels J(C_i x G/e)."""
        _, free = top_and_free

        dressed = dress(burnside_c2, free)

        assert dressed.level_dims == (1, 2)
        assert validate(dressed).passed

    def test_dress_by_terminal_is_identity(self, burnside_c2, c2):
        """Test M_1 = M."""
        assert dress(burnside_c2, terminal_gset(c2)) == burnside_c2

    def test_colimit_of_burnside_is_trivial(self, burnside_c2, c2):
        """Test that colim(J, k_*) is the one-dimensional trivial representation."""
        rep = colim_k(burnside_c2)

        assert rep.dim == 1
        assert all(rep(g).is_identity() for g in c2.elements)

    def test_colimit_adjunction(self, burnside_c2, fixpt_trivial_c2, c2):
        """Test dim Rep(colim M, R) = dim Mky(M, R^-)."""
        regular = regular_representation(c2)

        assert colim_adjunction_check(burnside_c2, regular).equal
        assert colim_adjunction_check(fixpt_trivial_c2, regular).equal

    def test_intertwiners(self, c2):
        """Test dim Rep(k, kC2) = 1 and dim End(kC2) = 2."""
        trivial = trivial_representation(c2)
        regular = regular_representation(c2)

        assert len(intertwiners(trivial, regular)) == 1
        assert len(intertwiners(regular, regular)) == 2

    def test_fixed_points_fully_faithful(self, c2, c3):
        """Test Mky(R1^-, R2^-) = Rep(R1, R2) over Q."""
        pairs = [
            (regular_representation(c2), regular_representation(c2)),
            (trivial_representation(c2), regular_representation(c2)),
            (regular_representation(c3), trivial_representation(c3, 2)),
        ]

        report = fully_faithful_report(pairs)

        assert report.passed
        assert [c.left for c in report.comparisons] == [2, 1, 2]

    @pytest.mark.slow
    def test_fixed_points_fully_faithful_s3(self, s3):
        """Test full faithfulness over S3 with the regular, trivial, sign and permutation representations."""
        odd = {1, 2, 5}
        sign = Representation(s3, 1, [RatMatrix(1, 1, [[-1 if g in odd else 1]]) for g in s3.elements])
        trivial = trivial_representation(s3)
        permutation = linearize_gset(coset_gset(s3, [0, 1]))
        pairs = [
            (regular_representation(s3), regular_representation(s3)),
            (trivial, trivial),
            (sign, sign),
            (trivial, sign),
            (permutation, permutation),
            (trivial, permutation),
        ]

        report = fully_faithful_report(pairs)

        assert report.passed
        assert [(c.left, c.right) for c in report.comparisons] == [(6, 6), (1, 1), (1, 1), (0, 0), (2, 2), (1, 1)]

    def test_dress_transport_is_invertible(self, burnside_c2, top_and_free):
        """Test that J(X x Y) and J_Y(X) are identified by an invertible matrix."""
        _, free = top_and_free
        x_set = product(free, free)

        transport = dress_transport(burnside_c2, x_set, free)

        assert transport.rows == eval_object(dress(burnside_c2, free), x_set).dim
        assert inverse(transport) is not None

    def test_dress_morphism(self, burnside_c2, top_and_free):
        """Test that spans in the dressed slot give natural transformations."""
        _, free = top_and_free

        same = dress_morphism(burnside_c2, identity_span(free))
        collapse = dress_morphism(burnside_c2, lower(terminal_map(free)))

        assert all(c.is_identity() for c in same.components)
        assert is_natural(collapse)
        assert collapse.target == burnside_c2

    def test_component_at(self, burnside_c2, top_and_free):
        """Test that theta_X is block diagonal over the orbits of X."""
        top, free = top_and_free
        theta = identity_morphism(burnside_c2)

        assert component_at(theta, top) == theta.components[0]
        assert component_at(theta, product(free, free)).is_identity()
        assert component_at(theta, product(free, free)).rows == 2


@pytest.mark.unit
class TestLinearization:
    """Tests for permutation representations and k_*."""

    def test_linearize_terminal_is_trivial(self, s3):
        """Test that k(G/G) is the one-dimensional trivial representation."""
        rep = linearize_gset(terminal_gset(s3))

        assert rep.dim == 1
        assert all(rep(g).is_identity() for g in s3.elements)

    def test_linearize_free_is_regular(self, c3):
        """Test that k(G/e) is the regular representation."""
        free = representatives(c3)[-1]

        assert linearize_gset(free).matrices == regular_representation(c3).matrices

    def test_k_star_of_lower_sums_over_fibres(self, top_and_free):
        """Test k_*(f_*) for the projection G/e -> G/G."""
        _, free = top_and_free

        matrix = k_star_span(lower(terminal_map(free)))

        assert matrix == RatMatrix(2, 1, [[1], [1]])

    def test_k_star_of_identity(self, top_and_free):
        """Test k_*(1_X) = I."""
        _, free = top_and_free

        assert k_star_span(identity_span(free)).is_identity()
