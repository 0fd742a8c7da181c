import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankelforge.errors import DomainError, InsufficientOrderError, OrderMismatchError
from hankelforge.series import (
    TaylorSeries,
    compose,
    gamma_closed_form,
    identity,
    inverse_closed_form,
    inverse_log_coefficients,
    invert_series,
    koebe,
    log_coefficients,
    log_ratio,
    max_coeff_error,
    multiply,
    normalized,
    one,
    rotate,
)

from conftest import circle_coefficients

small = st.floats(-1.0, 1.0, allow_nan=False)
cplx = st.builds(complex, small, small)
tails = st.lists(cplx, min_size=4, max_size=4)


class TestTaylorSeries:
    def test_coefficients_are_read_only(self):
        f = normalized([1, 2])
        with pytest.raises(ValueError):
            f.coeffs[2] = 5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            TaylorSeries([])

    def test_normalized_default_order(self):
        assert normalized([0.5]).order == 8
        assert normalized([0.1] * 9).order == 10

    def test_normalized_too_many_terms(self):
        with pytest.raises(OrderMismatchError):
            normalized([1, 2, 3], order=3)

    def test_evaluation_matches_polynomial(self):
        f = normalized([2, 3], order=3)
        assert f(0.5) == pytest.approx(0.5 + 2 * 0.25 + 3 * 0.125)

    def test_derivative(self):
        f = TaylorSeries([1, 2, 3, 4])
        np.testing.assert_allclose(f.derivative().coeffs, [2, 6, 12])
        assert f.derivative().order == 2

    def test_multiply_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            multiply(one(3), one(4))

    def test_multiply_geometric(self):
        g = TaylorSeries(np.ones(6))  # 1/(1-z)
        np.testing.assert_allclose(multiply(g, g).coeffs, np.arange(1, 7))

    def test_max_coeff_error_needs_equal_orders(self):
        with pytest.raises(OrderMismatchError):
            max_coeff_error(identity(3), identity(5))


class TestComposition:
    def test_identity_is_neutral(self):
        f = normalized([0.3, -0.2j, 0.1], order=6)
        assert compose(f, identity(6)).allclose(f, 1e-15)
        assert compose(identity(6), f).allclose(f, 1e-15)

    def test_inner_must_vanish(self):
        with pytest.raises(DomainError):
            compose(identity(4), one(4))

    @given(tails)
    def test_inverse_round_trip(self, a):
        f = normalized(a, order=7)
        F = invert_series(f)
        assert compose(f, F).allclose(identity(7), 1e-9)
        assert compose(F, f).allclose(identity(7), 1e-9)

    @given(tails)
    def test_inverse_matches_closed_form(self, a):
        F = invert_series(normalized(a, order=6))
        np.testing.assert_allclose(F.coeffs[2:6], inverse_closed_form(*a), atol=1e-10)

    def test_invert_requires_normalized(self):
        with pytest.raises(DomainError):
            invert_series(TaylorSeries([0, 2, 1]))

    def test_koebe_inverse_against_its_formula(self):
        # the Koebe inverse has signed Catalan coefficients
        F = invert_series(koebe(8))
        for n in range(2, 9):
            expected = (-1) ** (n + 1) * math.comb(2 * n, n) / (n + 1)
            assert F.coeffs[n] == pytest.approx(expected, abs=1e-9)
        assert list(np.round(F.coeffs[2:6].real)) == [-2, 5, -14, 42]


class TestLogCoefficients:
    def test_log_ratio_drops_one_order(self):
        assert log_ratio(normalized([1, 1], order=6)).order == 5

    def test_log_ratio_requires_normalized(self):
        with pytest.raises(DomainError):
            log_ratio(TaylorSeries([1, 1, 0]))

    @given(tails)
    def test_log_coefficients_against_circle_sampling(self, a):
        f = normalized(a, order=6)
        ref = circle_coefficients(lambda z: np.log(f(z) / z), 6) / 2
        np.testing.assert_allclose(log_coefficients(f), ref[1:], atol=1e-9)

    def test_koebe_gammas(self):
        np.testing.assert_allclose(log_coefficients(koebe(6)), 1 / np.arange(1, 6), atol=1e-14)

    @given(tails)
    def test_gamma_closed_form(self, a):
        G = inverse_log_coefficients(normalized(a, order=6))
        np.testing.assert_allclose(G[:4], gamma_closed_form(*a), atol=1e-10)

    def test_inverse_log_koebe(self):
        G = inverse_log_coefficients(koebe(8))
        expected = [-1, 1.5, -10 / 3, 35 / 4]
        np.testing.assert_allclose(G[:4].real, expected, atol=1e-12)
        for n in range(1, 5):
            assert abs(G[n - 1]) == pytest.approx(math.comb(2 * n, n) / (2 * n), abs=1e-12)

    def test_insufficient_order(self):
        with pytest.raises(InsufficientOrderError):
            inverse_log_coefficients(normalized([0.1, 0.2], order=3))

    def test_order_four_gives_three_gammas(self):
        assert inverse_log_coefficients(normalized([0.1, 0.2, 0.3], order=4)).size == 3

    @given(tails, st.floats(0, 2 * math.pi))
    def test_rotation_scales_gammas(self, a, theta):
        # F_theta(w) = e^{-i theta} F(e^{i theta} w), so Gamma_n picks up e^{i n theta}
        f = normalized(a, order=6)
        G = inverse_log_coefficients(f)
        Gr = inverse_log_coefficients(rotate(f, theta))
        n = np.arange(1, G.size + 1)
        np.testing.assert_allclose(Gr, G * np.exp(1j * n * theta), atol=1e-9)
