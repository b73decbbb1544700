"""Tests for Day convolution, internal hom and the star dual."""

import itertools

import pytest

from src.exceptions import GroupMismatchError
from src.services.convolution import (
    associativity_report,
    associator_iso,
    coend_space,
    colim_monoidal_check,
    convolve,
    convolve_many,
    double_dual_iso,
    dress_monoidal_check,
    dress_monoidal_iso,
    internal_hom,
    internal_hom_morphism_dims,
    star_dual,
    star_pairing_check,
    symmetry_iso,
    tensor_hom_check,
    unit_iso,
)
from src.services.gset import empty_gset, representatives
from src.services.mackey import (
    burnside_functor,
    colim_k,
    dress,
    fixed_point_functor,
    is_invertible,
    is_natural,
    trivial_representation,
    validate,
    zero_functor,
)
from src.services.span_category import hom_basis


@pytest.mark.unit
class TestConvolution:
    """Tests for the convolution product."""

    def test_trivial_group_is_tensor_product(self, c1):
        """Test that over C1 convolution multiplies dimensions."""
        m = fixed_point_functor(trivial_representation(c1, 2))
        n = fixed_point_functor(trivial_representation(c1, 3))

        assert convolve(m, n).level_dims == (6,)

    def test_burnside_is_the_unit(self, burnside_c2, fixpt_regular_c2):
        """Test that J * M has the levels of M."""
        assert convolve(burnside_c2, burnside_c2).level_dims == burnside_c2.level_dims
        assert convolve(burnside_c2, fixpt_regular_c2).level_dims == fixpt_regular_c2.level_dims

    def test_result_is_a_mackey_functor(self, fixpt_trivial_c2, fixpt_regular_c2):
        """Test that the induced generator action passes validation."""
        result = convolve(fixpt_trivial_c2, fixpt_regular_c2)

        assert validate(result).passed
        assert result.name == f"{fixpt_trivial_c2.name}*{fixpt_regular_c2.name}"

    def test_coend_dimension_matches_level(self, burnside_c2, fixpt_trivial_c2):
        """Test that coend_space and convolve agree level by level."""
        result = convolve(burnside_c2, fixpt_trivial_c2)

        assert [coend_space([burnside_c2, fixpt_trivial_c2], k).dim for k in range(2)] == list(result.level_dims)

    def test_groups_must_match(self, burnside_c2, burnside_c3):
        """Test that functors over different groups cannot be convolved."""
        with pytest.raises(GroupMismatchError):
            convolve(burnside_c2, burnside_c3)

    def test_convolve_many_names(self, burnside_c2):
        """Test the default label of an n-fold product."""
        assert convolve_many([burnside_c2] * 3).name == "*".join([burnside_c2.name] * 3)


@pytest.mark.unit
class TestMonoidalStructure:
    """Tests for the unit, symmetry and associativity isomorphisms."""

    def test_unit_iso(self, fixpt_regular_c2, burnside_c3):
        """Test that J * M -> M is a natural isomorphism."""
        for functor in (fixpt_regular_c2, burnside_c3):
            theta = unit_iso(functor)
            assert theta.target == functor
            assert is_natural(theta)
            assert is_invertible(theta)

    def test_symmetry_iso(self, fixpt_trivial_c2, fixpt_regular_c2):
        """Test that M * N -> N * M is a natural isomorphism."""
        theta = symmetry_iso(fixpt_trivial_c2, fixpt_regular_c2)

        assert is_natural(theta)
        assert is_invertible(theta)

    @pytest.mark.slow
    def test_associator(self, burnside_c2, fixpt_trivial_c2, fixpt_regular_c2):
        """Test that (L * M) * N -> L * (M * N) is a natural isomorphism."""
        theta = associator_iso(burnside_c2, fixpt_trivial_c2, fixpt_regular_c2)

        assert is_natural(theta)
        assert is_invertible(theta)

    def test_associativity_dimensions(self, fixpt_trivial_c2, fixpt_regular_c2):
        """Test level dimensions of both bracketings."""
        assert associativity_report(fixpt_trivial_c2, fixpt_regular_c2, fixpt_trivial_c2).passed


@pytest.mark.unit
class TestInternalHom:
    """Tests for the internal hom and star duality."""

    def test_hom_from_unit(self, burnside_c2, fixpt_regular_c2):
        """Test that Hom(J, M) has the levels of M."""
        assert internal_hom(burnside_c2, fixpt_regular_c2).level_dims == fixpt_regular_c2.level_dims

    def test_internal_hom_is_valid(self, fixpt_trivial_c2, fixpt_regular_c2):
        """Test that the internal hom passes validation."""
        assert validate(internal_hom(fixpt_regular_c2, fixpt_trivial_c2)).passed

    def test_levels_are_morphism_spaces(self, fixpt_trivial_c2, fixpt_regular_c2):
        """Test Hom(M, N)(C_i) = Mky(M, N_{C_i})."""
        assert internal_hom_morphism_dims(fixpt_trivial_c2, fixpt_regular_c2).passed

    def test_tensor_hom_adjunction(self, burnside_c2, fixpt_trivial_c2, fixpt_regular_c2):
        """Test Mky(L * M, N) = Mky(L, Hom(M, N))."""
        assert tensor_hom_check(burnside_c2, fixpt_trivial_c2, fixpt_regular_c2).equal
        assert tensor_hom_check(fixpt_regular_c2, fixpt_trivial_c2, fixpt_regular_c2).equal

    def test_star_dual(self, burnside_c2, fixpt_regular_c2):
        """Test that S keeps levels and S(S(M)) is isomorphic to M."""
        for functor in (burnside_c2, fixpt_regular_c2):
            dual = star_dual(functor)
            assert dual.level_dims == functor.level_dims
            assert validate(dual).passed
            theta = double_dual_iso(functor)
            assert is_natural(theta)
            assert is_invertible(theta)

    def test_star_pairing(self, burnside_c2, fixpt_trivial_c2, fixpt_regular_c2):
        """Test Mky(M * N, S(L)) = Mky(N * L, S(M))."""
        assert star_pairing_check(burnside_c2, fixpt_trivial_c2, fixpt_regular_c2).equal
        assert star_pairing_check(burnside_c2, burnside_c2, burnside_c2).equal


@pytest.mark.unit
class TestCompatibility:
    """Tests for colimits and the Dress construction against convolution."""

    def test_colimit_is_monoidal(self, burnside_c2, fixpt_regular_c2, fixpt_trivial_c2):
        """Test dim colim(M * N) = dim colim M * dim colim N."""
        assert colim_monoidal_check(burnside_c2, fixpt_regular_c2).equal
        assert colim_monoidal_check(fixpt_trivial_c2, fixpt_regular_c2).equal

    def test_dress_is_monoidal(self, burnside_c2, top_and_free):
        """Test M_X * N_Y = (M * N)_{X x Y} on level dimensions and up to iso."""
        top, free = top_and_free

        assert dress_monoidal_check(burnside_c2, burnside_c2, free, top).passed
        theta = dress_monoidal_iso(burnside_c2, burnside_c2, free, free)
        assert theta is not None
        assert is_natural(theta)

    @pytest.mark.slow
    def test_dress_of_burnside_s3(self, s3):
        """Test the dimension check on a non-abelian group."""
        j = burnside_functor(s3)
        c = representatives(s3)

        assert dress_monoidal_check(j, j, c[2], c[0]).passed


@pytest.fixture(scope="module")
def c2_family(burnside_c2, fixpt_trivial_c2, fixpt_regular_c2):
    return [burnside_c2, fixpt_trivial_c2, fixpt_regular_c2]


@pytest.fixture(scope="module")
def c3_family(burnside_c3, fixpt_regular_c3, c3):
    return [burnside_c3, fixed_point_functor(trivial_representation(c3)), fixpt_regular_c3]


@pytest.mark.unit
@pytest.mark.slow
class TestSweeps:
    """Dimension and iso checks over whole families of small functors."""

    def test_tensor_hom_adjunction_grid(self, c2_family):
        """Test Mky(L * M, N) = Mky(L, Hom(M, N)) for every triple over C2."""
        for first, second, third in itertools.product(c2_family, repeat=3):
            comparison = tensor_hom_check(first, second, third)
            assert comparison.equal, (first.name, second.name, third.name, comparison)

    def test_star_pairing_c3(self, c3_family):
        """Test the star pairing on every triple of the C3 family."""
        for first, second, third in itertools.product(c3_family, repeat=3):
            comparison = star_pairing_check(first, second, third)
            assert comparison.equal, (first.name, second.name, third.name, comparison)

    @pytest.mark.parametrize("family", ["c2_family", "c3_family"])
    def test_unit_iso(self, family, request):
        """Test J * M -> M for the Burnside and fixed-point functors of C2 and C3."""
        for functor in request.getfixturevalue(family):
            theta = unit_iso(functor)
            assert theta.target == functor
            assert is_natural(theta)
            assert is_invertible(theta)

    @pytest.mark.parametrize("group_name", ["c2", "c3"])
    def test_dress_monoidal_over_representatives(self, group_name, request):
        """Test M_X * N_Y = (M * N)_{X x Y} for X, Y ranging over the representatives."""
        group = request.getfixturevalue(group_name)
        j = burnside_functor(group)
        reps = representatives(group)

        for x_set, y_set in itertools.product(reps, repeat=2):
            assert dress_monoidal_check(j, j, x_set, y_set).passed
            theta = dress_monoidal_iso(j, j, x_set, y_set)
            assert theta is not None
            assert is_natural(theta)
            assert is_invertible(theta)


@pytest.mark.unit
class TestZeroAndEmpty:
    """Tests for the zero functor and the empty G-set."""

    @pytest.fixture
    def zero_c2(self, c2):
        return zero_functor(c2)

    def test_convolve_with_zero(self, burnside_c2, zero_c2):
        """Test J * 0 = 0."""
        assert convolve(burnside_c2, zero_c2).is_zero()
        assert convolve(zero_c2, burnside_c2).is_zero()

    def test_internal_hom_into_zero(self, burnside_c2, zero_c2):
        """Test Hom(J, 0) = 0 and Hom(0, J) = 0."""
        assert internal_hom(burnside_c2, zero_c2).is_zero()
        assert internal_hom(zero_c2, burnside_c2).is_zero()

    def test_star_dual_of_zero(self, zero_c2):
        """Test S(0) = 0."""
        assert star_dual(zero_c2).is_zero()

    def test_colimit_of_zero(self, zero_c2):
        """Test that the colimit of 0 is the zero representation."""
        assert colim_k(zero_c2).dim == 0

    def test_dress_by_empty_set(self, burnside_c2, c2):
        """Test J_0 = 0 for the empty G-set."""
        assert dress(burnside_c2, empty_gset(c2)).is_zero()

    def test_hom_from_empty_set(self, c2, top_and_free):
        """Test that there are no spans out of the empty G-set."""
        top, free = top_and_free

        assert hom_basis(empty_gset(c2), top).dimension == 0
        assert hom_basis(empty_gset(c2), free).dimension == 0
