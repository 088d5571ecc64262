import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from subideal import (
    DomainError,
    FilterParams,
    ReferenceParams,
    log_gain,
    principal_arg,
    principal_pow,
    reference_gain,
    transfer_eval,
)
from subideal.complex_core import phase
from subideal.design import gain_bound

alphas = st.floats(1e-3, 20.0)
betas = st.floats(1e-3, 10.0)
qs = st.floats(0.01, 0.99)
omegas = st.floats(-1e4, 1e4)


class TestParams:
    def test_casts_to_float(self):
        p = FilterParams(1, 2, 0.5)
        assert isinstance(p.alpha, float) and p.beta == 2.0

    @pytest.mark.parametrize(
        "args",
        [(0, 1, 0.5), (-1, 1, 0.5), (1, 0, 0.5), (1, 1, 0.0), (1, 1, 1.0), (1, 1, 1.5), (math.nan, 1, 0.5), ("1", 1, 0.5)],
    )
    def test_rejects_invalid(self, args):
        with pytest.raises(ValueError):
            FilterParams(*args)

    def test_frozen(self):
        p = FilterParams(1, 1, 0.5)
        with pytest.raises(AttributeError):
            p.alpha = 2.0

    def test_decay_rate(self):
        p = FilterParams(2.0, 1.0, 0.5)
        assert p.decay_rate == pytest.approx(2 * math.cos(math.pi / 4))

    @pytest.mark.parametrize("mu", [0, -0.1, math.inf])
    def test_reference_rejects(self, mu):
        with pytest.raises(ValueError):
            ReferenceParams(mu)


class TestPrincipalBranch:
    def test_arg_negative_real_axis(self):
        assert principal_arg(-1.0) == math.pi
        assert principal_arg(complex(-1.0, -0.0)) == math.pi

    def test_arg_near_imaginary_axis(self):
        assert principal_arg(0.01 + 100j) == pytest.approx(1.5706963267952300, rel=1e-15)

    def test_arg_zero_raises(self):
        with pytest.raises(DomainError):
            principal_arg(0.0)

    def test_pow_matches_oracle(self):
        z = principal_pow(0.01 + 100j, 0.99)
        assert z.real == pytest.approx(1.50949041821405, rel=1e-12)
        assert z.imag == pytest.approx(95.4873285966546, rel=1e-12)

    @pytest.mark.parametrize("q", [0.0, -0.5, 1.5])
    def test_pow_rejects_exponent(self, q):
        with pytest.raises(DomainError):
            principal_pow(1 + 1j, q)

    def test_pow_on_the_cut_ignores_signed_zero(self):
        # numpy follows the sign of a zero imaginary part; the principal branch does not
        assert principal_pow(complex(-1.0, -0.0), 0.5) == pytest.approx(1j)

    @given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3), st.floats(0.05, 1.0))
    def test_pow_agrees_with_numpy_off_the_cut(self, z, q):
        assume(z.imag != 0 or z.real > 0)
        np.testing.assert_allclose(principal_pow(z, q), np.power(complex(z), q), rtol=1e-12)


class TestTransfer:
    def test_dc_value(self):
        p = FilterParams(6.3925, 0.1, 0.9)
        assert transfer_eval(p, 0.0) == pytest.approx(0.447191631916190, rel=1e-12)

    def test_gain_at_100_matched(self):
        p = FilterParams(6.36649, 0.01, 0.99)
        assert abs(transfer_eval(p, 100j)) == pytest.approx(6.70443878535919e-5, rel=1e-9)

    def test_log_gain_value(self):
        p = FilterParams(0.639245, 0.1, 0.9)
        assert log_gain(p, 100.0) == pytest.approx(-6.34542390127936, rel=1e-12)

    def test_left_half_plane_rejected(self):
        with pytest.raises(DomainError):
            transfer_eval(FilterParams(1, 1, 0.5), -0.5 + 1j)

    def test_underflow_is_zero(self):
        p = FilterParams(10.0, 1.0, 0.9)
        assert transfer_eval(p, 1e6j) == 0
        assert np.isfinite(log_gain(p, 1e6))

    def test_array_shapes(self):
        p = FilterParams(1, 1, 0.5)
        w = np.linspace(0, 10, 7)
        assert transfer_eval(p, 1j * w).shape == (7,)
        assert isinstance(transfer_eval(p, 1j), complex)
        assert isinstance(log_gain(p, 1.0), float)

    def test_phase_is_unwrapped(self):
        p = FilterParams(6.36649, 0.01, 0.99)
        w = np.linspace(0, 200, 4001)
        ph = phase(p, w)
        assert np.all(np.diff(ph) < 0)
        np.testing.assert_allclose(np.angle(np.exp(1j * ph)), np.angle(transfer_eval(p, 1j * w)), atol=1e-9)

    def test_reference_gain(self):
        r = ReferenceParams(0.1)
        assert reference_gain(r, -10.0) == pytest.approx(math.exp(-1.0))


class TestProperties:
    @settings(max_examples=200)
    @given(alphas, betas, qs, omegas)
    def test_gain_below_one(self, a, b, q, w):
        assert log_gain(FilterParams(a, b, q), w) < 0

    @settings(max_examples=200)
    @given(alphas, betas, qs, omegas)
    def test_envelope_bound(self, a, b, q, w):
        p = FilterParams(a, b, q)
        bound = -p.decay_rate * abs(w) ** q
        assert log_gain(p, w) <= bound + 1e-12 * max(1.0, abs(bound))

    @given(alphas, betas, qs, st.floats(-1e3, 1e3))
    def test_conjugate_symmetry(self, a, b, q, w):
        p = FilterParams(a, b, q)
        np.testing.assert_allclose(transfer_eval(p, -1j * w), np.conj(transfer_eval(p, 1j * w)), rtol=1e-14, atol=1e-300)

    @given(alphas, betas, qs, st.floats(-1e3, 1e3))
    def test_log_gain_consistent(self, a, b, q, w):
        p = FilterParams(a, b, q)
        h = abs(transfer_eval(p, 1j * w))
        if h > 1e-300:
            assert math.exp(log_gain(p, w)) == pytest.approx(h, rel=1e-12)

    @given(alphas, betas, qs, st.floats(-1e3, 1e3), st.floats(0.0, 100.0))
    def test_gain_decreases_into_right_half_plane(self, a, b, q, w, sigma):
        p = FilterParams(a, b, q)
        lg = lambda s: -p.alpha * principal_pow(s + p.beta, p.q).real
        assert lg(sigma + 0.5 + 1j * w) < lg(sigma + 1j * w)

    @given(alphas, betas, qs, omegas)
    def test_bound_helper(self, a, b, q, w):
        p = FilterParams(a, b, q)
        assert math.exp(log_gain(p, w)) <= gain_bound(p, w) * (1 + 1e-12)
