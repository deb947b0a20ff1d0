"""Endomorphism representations: application, composition, powers,
restriction, and induced quotient maps."""

from __future__ import annotations

import random

import pytest

from endogrow.endos import (
    HeisenbergEndo,
    InvarianceError,
    MatrixEndo,
    ProductEndo,
    QuotientEndo,
    SemidirectEndo,
    WordEndo,
    abelianization,
    identity_endo,
    induce_on_quotient,
    restrict,
)
from endogrow.groups import Free, FreeAbelian, Heisenberg, lower_central_layer
from endogrow.intmat import IntMatrix
from endogrow.products import direct_product, free_product, semidirect, sublattice


def M(rows):
    return IntMatrix.from_rows(rows)


def random_element(group, rng, size=5):
    g = group.identity()
    gens = group.symmetric_generators()
    for _ in range(rng.randint(0, size)):
        g = group.multiply(g, rng.choice(gens))
    return g


class TestApply:
    def test_row_image_convention(self):
        # first generator maps to twice the second
        endo = MatrixEndo(FreeAbelian(2), M([[0, 2], [1, 0]]))
        assert endo.apply((1, 0)) == (0, 2)
        assert endo.apply((0, 1)) == (1, 0)

    def test_identity_endo(self):
        for group in (FreeAbelian(2), Free(2), Heisenberg()):
            endo = identity_endo(group)
            rng = random.Random(3)
            for _ in range(20):
                g = random_element(group, rng)
                assert endo.apply(g) == g

    def test_heisenberg_parameter_map(self):
        endo = HeisenbergEndo(Heisenberg(), 2, 2)
        assert endo.apply((1, 1, 1)) == (2, 4, 2)


class TestComposePower:
    def test_matrix_square(self):
        endo = MatrixEndo(FreeAbelian(2), M([[0, 2], [1, 0]]))
        assert endo.power(2).matrix.to_rows() == [[2, 0], [0, 2]]

    def test_power_zero_is_identity(self):
        endo = MatrixEndo(FreeAbelian(2), M([[5, 1], [2, 2]]))
        assert endo.power(0).matrix == IntMatrix.identity(2)
        word = WordEndo(Free(2), ((1, 2), (1,)))
        assert word.power(0).images == ((1,), (2,))

    def test_word_substitution_square(self):
        endo = WordEndo(Free(2), ((1, 2), (1,)))
        squared = endo.power(2)
        assert squared.images == ((1, 2, 1), (1, 2))

    @pytest.mark.parametrize(
        "make",
        [
            lambda: MatrixEndo(FreeAbelian(2), M([[1, 2], [0, 1]])),
            lambda: WordEndo(Free(2), ((1, 2), (1,))),
            lambda: HeisenbergEndo(Heisenberg(), 2, 3),
        ],
    )
    def test_power_additivity_on_generators(self, make):
        endo = make()
        group = endo.group
        rng = random.Random(7)
        for _ in range(10):
            m, n = rng.randint(0, 3), rng.randint(0, 3)
            lhs = endo.power(m + n)
            rhs = endo.power(m).compose(endo.power(n))
            for _, g in group.generators:
                assert lhs.apply(g) == rhs.apply(g)


class TestHomomorphismLaw:
    @pytest.mark.parametrize(
        "make",
        [
            lambda: MatrixEndo(FreeAbelian(3), M([[1, -2, 0], [3, 1, 1], [0, 2, 2]])),
            lambda: WordEndo(Free(2), ((1, 2, -1), (2, 2))),
            lambda: HeisenbergEndo(Heisenberg(), 3, -2),
            lambda: ProductEndo(
                direct_product(FreeAbelian(1), FreeAbelian(1)),
                (
                    MatrixEndo(FreeAbelian(1), M([[2]])),
                    MatrixEndo(FreeAbelian(1), M([[-3]])),
                ),
            ),
            lambda: ProductEndo(
                free_product(FreeAbelian(1), FreeAbelian(1)),
                (
                    MatrixEndo(FreeAbelian(1), M([[2]])),
                    MatrixEndo(FreeAbelian(1), M([[3]])),
                ),
            ),
            lambda: SemidirectEndo(
                semidirect(FreeAbelian(2), FreeAbelian(1), [[[0, -1], [1, 0]]]),
                M([[2, 0], [0, 2]]),
                M([[1]]),
            ),
        ],
    )
    def test_thousand_random_pairs(self, make):
        endo = make()
        group = endo.group
        rng = random.Random(11)
        for _ in range(1000):
            g = random_element(group, rng, size=4)
            h = random_element(group, rng, size=4)
            assert endo.apply(group.multiply(g, h)) == group.multiply(
                endo.apply(g), endo.apply(h)
            )

    def test_heisenberg_commutes_with_commutator(self):
        group = Heisenberg()
        endo = HeisenbergEndo(group, 2, 5)
        rng = random.Random(13)
        for _ in range(300):
            g = random_element(group, rng)
            h = random_element(group, rng)
            assert endo.apply(group.commutator(g, h)) == group.commutator(
                endo.apply(g), endo.apply(h)
            )


class TestRestrict:
    def test_diagonal_on_scaled_lattice(self):
        endo = MatrixEndo(FreeAbelian(2), M([[2, 0], [0, 3]]))
        lat = sublattice(FreeAbelian(2), [[2, 0], [0, 1]])
        restricted = restrict(endo, lat)
        assert restricted.matrix.to_rows() == [[2, 0], [0, 3]]

    def test_restriction_agrees_through_embedding(self):
        endo = MatrixEndo(FreeAbelian(2), M([[2, 2], [0, 4]]))
        lat = sublattice(FreeAbelian(2), [[2, 0], [0, 2]])
        restricted = restrict(endo, lat)
        rng = random.Random(17)
        for _ in range(100):
            coords = (rng.randint(-5, 5), rng.randint(-5, 5))
            ambient = lat.embed(coords)
            assert lat.embed(restricted.apply(coords)) == endo.apply(ambient)

    def test_center_restriction_multiplies_by_product(self):
        layer = lower_central_layer(Heisenberg(), 2)
        endo = HeisenbergEndo(Heisenberg(), 2, 2)
        assert restrict(endo, layer).matrix.to_rows() == [[4]]

    def test_identity_restricts_to_identity(self):
        endo = identity_endo(FreeAbelian(2))
        lat = sublattice(FreeAbelian(2), [[3, 0], [0, 3]])
        assert restrict(endo, lat).matrix == IntMatrix.identity(2)

    def test_violation_names_generator(self):
        endo = MatrixEndo(FreeAbelian(2), M([[0, 1], [1, 0]]))
        lat = sublattice(FreeAbelian(2), [[3, 0], [0, 1]])
        with pytest.raises(InvarianceError, match="h2"):
            restrict(endo, lat)


class TestInduceOnQuotient:
    def test_heisenberg_mod_center_is_abelianization(self):
        layer = lower_central_layer(Heisenberg(), 2)
        endo = HeisenbergEndo(Heisenberg(), 2, 2)
        induced = induce_on_quotient(endo, layer)
        assert induced.matrix.to_rows() == [[2, 0], [0, 2]]

    def test_quotient_by_trivial_subgroup(self):
        endo = MatrixEndo(FreeAbelian(2), M([[2, 1], [1, 1]]))
        trivial = sublattice(FreeAbelian(2), [[], []])
        assert induce_on_quotient(endo, trivial) is endo

    def test_mod_two_multiplier(self):
        endo = MatrixEndo(FreeAbelian(2), M([[2, 0], [0, 3]]))
        lat = sublattice(FreeAbelian(2), [[2, 0], [0, 1]])
        induced = induce_on_quotient(endo, lat)
        assert isinstance(induced, QuotientEndo)
        assert induced.group.torsion_moduli == (2,)
        gen = induced.group.generators[0][1]
        assert induced.apply(gen) == induced.group.identity()

    def test_induced_commutes_with_projection(self):
        endo = MatrixEndo(FreeAbelian(3), M([[2, 0, 4], [0, 1, 2], [0, 0, 3]]))
        lat = sublattice(FreeAbelian(3), [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
        induced = induce_on_quotient(endo, lat)
        quotient = induced.group
        rng = random.Random(19)
        for _ in range(200):
            v = tuple(rng.randint(-9, 9) for _ in range(3))
            assert induced.apply(quotient.project(v)) == quotient.project(endo.apply(v))

    def test_invariance_required(self):
        endo = MatrixEndo(FreeAbelian(2), M([[0, 1], [1, 0]]))
        lat = sublattice(FreeAbelian(2), [[3, 0], [0, 1]])
        with pytest.raises(InvarianceError):
            induce_on_quotient(endo, lat)


class TestAbelianization:
    def test_diagonal_parameters(self):
        endo = HeisenbergEndo(Heisenberg(), 2, 2)
        assert abelianization(endo).matrix.to_rows() == [[2, 0], [0, 2]]

    def test_identity(self):
        endo = HeisenbergEndo(Heisenberg(), 1, 1)
        assert abelianization(endo).matrix == IntMatrix.identity(2)

    def test_center_multiplier_is_product(self):
        endo = HeisenbergEndo(Heisenberg(), 3, 5)
        assert abelianization(endo).matrix.to_rows() == [[3, 0], [0, 5]]
        assert endo.apply((0, 1, 0)) == (0, 15, 0)


class TestSemidirectEndo:
    def test_compatibility_witness_accepts_commuting_block(self):
        group = semidirect(FreeAbelian(2), FreeAbelian(1), [[[0, -1], [1, 0]]])
        endo = SemidirectEndo(group, M([[2, 0], [0, 2]]), M([[1]]))
        assert endo.apply(((1, 2), (3,))) == ((2, 4), (3,))

    def test_compatibility_witness_rejects_mismatch(self):
        group = semidirect(FreeAbelian(2), FreeAbelian(1), [[[2, 1], [1, 1]]])
        with pytest.raises(InvarianceError):
            SemidirectEndo(group, M([[2, 0], [0, 3]]), M([[1]]))

    def test_klein_bottle_style_compatibility(self):
        # base multiplier 2 intertwines with the sign action when the
        # quotient multiplier is odd
        group = semidirect(FreeAbelian(1), FreeAbelian(1), [[[-1]]])
        endo = SemidirectEndo(group, M([[2]]), M([[3]]))
        g = ((1,), (1,))
        assert endo.apply(g) == ((2,), (3,))
        with pytest.raises(InvarianceError):
            SemidirectEndo(group, M([[2]]), M([[2]]))
