"""Exact matrix layer: products, powers, characteristic polynomials, Smith
forms, and the root-solver-backed spectral radius."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from endogrow.intmat import (
    DimensionError,
    IntMatrix,
    RootConvergenceError,
    aberth_roots,
    char_poly,
    inverse_unimodular,
    mat_mul,
    mat_pow,
    smith_normal_form,
    solve_int,
    spectral_radius,
)

SQRT2 = math.sqrt(2.0)


def M(rows):
    return IntMatrix.from_rows(rows)


def small_matrices(max_dim=4, lo=-5, hi=5):
    return st.integers(2, max_dim).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(lo, hi), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    ).map(IntMatrix.from_rows)


class TestMatMul:
    def test_doubling_swap_squares_to_twice_identity(self):
        a = M([[0, 2], [1, 0]])
        assert mat_mul(a, a).to_rows() == [[2, 0], [0, 2]]

    def test_identity_neutral(self):
        a = M([[3, -1], [4, 7]])
        assert mat_mul(IntMatrix.identity(2), a) == a
        assert mat_mul(a, IntMatrix.identity(2)) == a

    def test_hand_multiplied_square(self):
        a = M([[2, 1], [1, 1]])
        assert mat_mul(a, a).to_rows() == [[5, 3], [3, 2]]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mat_mul(M([[1, 2]]), M([[1, 2]]))


class TestMatPow:
    def test_fourth_power_of_swap(self):
        assert mat_pow(M([[0, 2], [1, 0]]), 4).to_rows() == [[4, 0], [0, 4]]

    def test_zeroth_power(self):
        assert mat_pow(M([[9, 9], [9, 9]]), 0) == IntMatrix.identity(2)

    def test_cube_against_repeated_multiplication(self):
        a = M([[2, 1], [1, 1]])
        by_hand = mat_mul(mat_mul(a, a), a)
        assert mat_pow(a, 3) == by_hand
        assert by_hand.to_rows() == [[13, 8], [8, 5]]

    def test_power_additivity_random(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.choice([2, 3])
            a = M([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            m, k = rng.randint(0, 6), rng.randint(0, 6)
            assert mat_pow(a, m + k) == mat_mul(mat_pow(a, m), mat_pow(a, k))


class TestCharPoly:
    def test_swap_doubling(self):
        assert char_poly(M([[0, 2], [1, 0]])).coefficients == (-2, 0, 1)

    def test_identity(self):
        assert char_poly(IntMatrix.identity(2)).coefficients == (1, -2, 1)

    def test_fibonacci_like(self):
        # det(xI - A) expanded by hand: x^2 - 3x + 1
        assert char_poly(M([[2, 1], [1, 1]])).coefficients == (1, -3, 1)

    @settings(max_examples=60, deadline=None)
    @given(small_matrices())
    def test_cayley_hamilton_exact(self, a):
        p = char_poly(a)
        assert p.coefficients[-1] == 1
        assert not any(p.evaluate_matrix(a).entries)


class TestSpectralRadius:
    def test_sqrt_two(self):
        assert spectral_radius(M([[0, 2], [1, 0]])) == pytest.approx(SQRT2, abs=1e-11)

    def test_identity_is_one(self):
        for n in (1, 2, 3, 5):
            assert spectral_radius(IntMatrix.identity(n)) == pytest.approx(1.0, abs=1e-11)

    def test_golden_square(self):
        # quadratic formula on x^2 - 3x + 1
        expected = (3 + math.sqrt(5)) / 2
        assert spectral_radius(M([[2, 1], [1, 1]])) == pytest.approx(expected, abs=1e-11)

    def test_nilpotent_is_zero(self):
        assert spectral_radius(M([[0, 1], [0, 0]])) == 0.0
        assert spectral_radius(M([[0, 1, 2], [0, 0, 3], [0, 0, 0]])) == 0.0

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            spectral_radius(IntMatrix.identity(2), tol=0.0)

    def test_power_compatibility(self):
        # the spectral face of rate(endo^n) = rate(endo)^n
        rng = random.Random(3)
        tol = 1e-12
        for _ in range(25):
            n = rng.choice([2, 3])
            a = M([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            rho = spectral_radius(a, tol)
            for p in (2, 3):
                lhs = spectral_radius(mat_pow(a, p), tol)
                assert abs(lhs - rho**p) <= max(p * tol * (1 + rho) ** p, 1e-9)

    def test_cross_validates_big_integer_power_growth(self):
        # independent route: exact bigint norms of A^40 applied to the basis
        rng = random.Random(0)
        done = 0
        while done < 20:
            n = rng.choice([2, 3])
            a = M([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            rho = spectral_radius(a)
            if rho < 1.0:
                continue
            power = mat_pow(a, 40)
            growth = 0
            for j in range(n):
                v = tuple(1 if i == j else 0 for i in range(n))
                growth = max(growth, sum(abs(x) for x in power.apply_col(v)))
            estimate = math.exp(math.log(growth) / 40)
            assert abs(estimate - rho) <= 0.05 * rho
            done += 1

    def test_nonconvergence_is_an_explicit_failure(self):
        with pytest.raises(RootConvergenceError):
            aberth_roots([-2, 0, 0, 0, 0, 1], tol=1e-12, max_iter=1)


class TestSmithNormalForm:
    def test_diag_2_3(self):
        assert smith_normal_form(M([[2, 0], [0, 3]])).diagonal == (1, 6)

    def test_identity(self):
        s = smith_normal_form(IntMatrix.identity(3))
        assert s.diagonal == (1, 1, 1)

    def test_rank_deficient(self):
        assert smith_normal_form(M([[2, 0], [0, 0]])).diagonal == (2, 0)

    @settings(max_examples=80, deadline=None)
    @given(
        st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
            lambda mn: st.lists(
                st.lists(st.integers(-6, 6), min_size=mn[1], max_size=mn[1]),
                min_size=mn[0],
                max_size=mn[0],
            )
        ).map(IntMatrix.from_rows)
    )
    def test_invariants(self, a):
        s = smith_normal_form(a)
        # transform identity, exactly
        assert mat_mul(mat_mul(s.u, a), s.v) == s.d
        # unimodular transforms
        assert abs(s.u.det()) == 1
        assert abs(s.v.det()) == 1
        diag = s.diagonal
        assert all(x >= 0 for x in diag)
        for x, y in zip(diag, diag[1:]):
            assert (y % x == 0) if x else y == 0
        # off-diagonal zero
        for i in range(s.d.rows):
            for j in range(s.d.cols):
                if i != j:
                    assert s.d.get(i, j) == 0


class TestSolveAndInverse:
    def test_solve_round_trip(self):
        rng = random.Random(11)
        for _ in range(50):
            m_, n_ = rng.choice([(2, 2), (3, 2), (3, 3)])
            a = M([[rng.randint(-4, 4) for _ in range(n_)] for _ in range(m_)])
            x = tuple(rng.randint(-5, 5) for _ in range(n_))
            b = a.apply_col(x)
            got = solve_int(a, b)
            assert got is not None
            assert a.apply_col(got) == b

    def test_solve_reports_no_solution(self):
        assert solve_int(M([[2, 0], [0, 3]]), (3, 9)) is None

    def test_unimodular_inverse(self):
        a = M([[2, 1], [1, 1]])
        inv = inverse_unimodular(a)
        assert mat_mul(a, inv) == IntMatrix.identity(2)
        assert mat_mul(inv, a) == IntMatrix.identity(2)

    def test_non_unimodular_rejected(self):
        with pytest.raises(ValueError):
            inverse_unimodular(M([[2, 0], [0, 1]]))
