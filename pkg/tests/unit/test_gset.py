"""Tests for finite G-sets, equivariant maps and canonical decompositions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import EquivarianceError, GroupMismatchError, GSetValidationError
from src.services.finite_group import all_subgroups, cyclic_group, symmetric_group
from src.services.gset import (
    GMap,
    compose_maps,
    conjugation_gset,
    coproduct,
    coproduct_injections,
    coset_gset,
    decompose,
    diagonal_map,
    empty_gset,
    find_iso,
    hom_gset,
    identity_map,
    inverse_map,
    is_bijective,
    make_gset,
    orbits,
    product,
    product_map,
    projections,
    pullback,
    representatives,
    stabilizer,
    swap_map,
    terminal_gset,
    terminal_map,
)

S3 = symmetric_group(3)


@st.composite
def s3_gsets(draw):
    """Coproducts of one to three representative S3-sets."""
    reps = representatives(S3)
    classes = draw(st.lists(st.integers(0, len(reps) - 1), min_size=1, max_size=3))
    x_set = empty_gset(S3)
    for c in classes:
        x_set = coproduct(x_set, reps[c])
    return x_set


@pytest.mark.unit
class TestGSetConstruction:
    """Tests for action validation and basic G-sets."""

    def test_coset_space(self, s3):
        """Test that point 0 of G/H is H itself."""
        x_set = coset_gset(s3, {0, 1})

        assert x_set.size == 3
        assert stabilizer(x_set, 0) == frozenset({0, 1})

    def test_free_coset_points_are_elements(self, s3):
        """Test that on G/e the point p is the element p."""
        free = coset_gset(s3, {0})

        assert all(free.act(g, 0) == g for g in s3.elements)

    def test_invalid_action(self, c2):
        """Test that non-permutation rows are rejected."""
        with pytest.raises(GSetValidationError):
            make_gset(c2, [[0, 1], [0, 0]])

    def test_identity_must_act_trivially(self, c2):
        """Test that the identity row must be the identity."""
        with pytest.raises(GSetValidationError):
            make_gset(c2, [[1, 0], [1, 0]])

    def test_representatives_follow_class_order(self, s3):
        """Test that C_i has |G|/|H_i| points."""
        assert [r.size for r in representatives(s3)] == [1, 2, 3, 6]

    def test_conjugation_orbits(self, s3):
        """Test that G_c splits into the three conjugacy classes of S3."""
        assert sorted(len(o) for o in orbits(conjugation_gset(s3))) == [1, 2, 3]


@pytest.mark.unit
class TestProducts:
    """Tests for products, coproducts and their maps."""

    def test_product_is_strictly_associative(self, s3):
        """Test that (A x B) x C and A x (B x C) are the same G-set."""
        a, b, c = representatives(s3)[1:]

        assert product(product(a, b), c) == product(a, product(b, c))

    def test_terminal_is_strict_unit(self, s3):
        """Test that 1 x X = X = X x 1."""
        x_set = representatives(s3)[2]
        one = terminal_gset(s3)

        assert product(one, x_set) == x_set
        assert product(x_set, one) == x_set

    def test_projections_and_swap(self, c3):
        """Test the pair encoding through projections and swap."""
        x_set, y_set = representatives(c3)
        first, second = projections(y_set, x_set)
        swap = swap_map(y_set, x_set)

        for p in product(y_set, x_set).points:
            q = swap(p)
            assert divmod(q, y_set.size) == (second(p), first(p))

    def test_coproduct_injections(self, c2):
        """Test that the injections of X + Y are jointly bijective."""
        x_set, y_set = representatives(c2)
        left, right = coproduct_injections(x_set, y_set)

        assert sorted(left.values + right.values) == list(range(x_set.size + y_set.size))

    def test_product_map_of_identities(self, s3):
        """Test that 1 x 1 is the identity."""
        x_set = representatives(s3)[1]

        assert product_map(identity_map(x_set), identity_map(x_set)) == identity_map(product(x_set, x_set))

    def test_groups_must_match(self, c2, c3):
        """Test that products across groups raise."""
        with pytest.raises(GroupMismatchError):
            product(terminal_gset(c2), terminal_gset(c3))


@pytest.mark.unit
class TestMaps:
    """Tests for equivariant maps."""

    def test_non_equivariant_map(self, c2):
        """Test that GMap checks equivariance."""
        free = representatives(c2)[-1]

        with pytest.raises(EquivarianceError):
            GMap(free, terminal_gset(c2), [0, 1])
        with pytest.raises(EquivarianceError):
            GMap(terminal_gset(c2), free, [0])

    def test_hom_gset_counts(self, s3):
        """Test |hom(G/H, G/K)| = |(G/K)^H|."""
        reps = representatives(s3)

        assert len(hom_gset(reps[-1], reps[-1])) == 6
        assert len(hom_gset(reps[0], reps[-1])) == 0
        assert len(hom_gset(reps[2], reps[2])) == 1

    def test_inverse_map(self, s3):
        """Test that an automorphism of G/e composes with its inverse to the identity."""
        free = representatives(s3)[-1]
        f = hom_gset(free, free)[3]

        assert is_bijective(f)
        assert compose_maps(f, inverse_map(f)) == identity_map(free)

    def test_pullback_of_terminal_maps_is_product(self, c3):
        """Test that X x_1 Y = X x Y."""
        x_set, y_set = representatives(c3)[-1], representatives(c3)[-1]

        apex, p, q = pullback(terminal_map(x_set), terminal_map(y_set))

        assert apex.size == 9
        assert p.target == x_set and q.target == y_set

    def test_pullback_needs_common_target(self, c2):
        """Test that maps with different targets cannot be pulled back."""
        free = representatives(c2)[-1]

        with pytest.raises(EquivarianceError):
            pullback(identity_map(free), terminal_map(free))

    def test_diagonal(self, c3):
        """Test that the diagonal lands on pairs (x, x)."""
        free = representatives(c3)[-1]

        assert diagonal_map(free).values == (0, 4, 8)


@pytest.mark.unit
class TestDecomposition:
    """Tests for canonical decompositions."""

    def test_free_square_of_c2(self, c2):
        """Test that C2/e x C2/e is two free orbits."""
        free = representatives(c2)[-1]

        d = decompose(product(free, free))

        assert d.classes == (1, 1)
        assert is_bijective(d.iso)

    def test_find_iso(self, c2):
        """Test iso detection between G/e x G/e and G/e + G/e."""
        free = representatives(c2)[-1]

        f = find_iso(product(free, free), coproduct(free, free))

        assert f is not None
        assert is_bijective(f)
        assert find_iso(free, coproduct(terminal_gset(c2), terminal_gset(c2))) is None

    @given(s3_gsets())
    @settings(max_examples=30, deadline=None)
    def test_decomposition_is_canonical(self, x_set):
        """Test sorted classes, exact stabilizers and a bijective comparison map."""
        d = decompose(x_set)
        table = all_subgroups(S3)

        assert list(d.classes) == sorted(d.classes)
        assert is_bijective(d.iso)
        for c, y in zip(d.classes, d.base_points):
            assert stabilizer(x_set, y) == table.rep(c)

    def test_locate_inverts_embeddings(self):
        """Test that locate returns the orbit and representative point of each x."""
        c4 = cyclic_group(4)
        reps = representatives(c4)
        x_set = coproduct(reps[1], reps[-1])
        d = decompose(x_set)

        for x in x_set.points:
            k, p = d.locate(x)
            assert d.embeddings[k](p) == x
