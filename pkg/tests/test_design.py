import math

import numpy as np
import pytest

from subideal import FilterParams, gain_bound, make_identity_sequence, make_matched_sequence, matched_alpha
from subideal.design import SequenceSpec, log_gain_bound


class TestMatchedAlpha:
    @pytest.mark.parametrize(
        "mu, q, expected",
        [
            (1.0, 0.9, 6.39245322149966),
            (0.1, 0.5, 0.141421356237310),
            (0.1, 0.99, 6.36645953060005),
            (0.1, 0.9, 0.639245322149966),
        ],
    )
    def test_values(self, mu, q, expected):
        assert matched_alpha(mu, q) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("mu, q", [(0.1, 0.0), (0.1, 1.0), (0.0, 0.5), (-1.0, 0.5)])
    def test_rejects(self, mu, q):
        with pytest.raises(ValueError):
            matched_alpha(mu, q)

    def test_envelope_equals_reference(self):
        mu = 0.1
        for q in (0.5, 0.9, 0.999):
            p = FilterParams(matched_alpha(mu, q), 0.1, q)
            assert p.decay_rate == pytest.approx(mu, rel=1e-12)


class TestBound:
    def test_value(self):
        p = FilterParams(matched_alpha(0.1, 0.9), 0.1, 0.9)
        assert gain_bound(p, 100.0) == pytest.approx(0.00181880889615721, rel=1e-12)
        assert p.gain(100.0) == pytest.approx(0.00175475312920233, rel=1e-12)
        assert -log_gain_bound(p, 100.0) == pytest.approx(6.30957344480193, rel=1e-12)

    def test_vectorised(self):
        p = FilterParams(1.0, 1.0, 0.5)
        w = np.linspace(-50, 50, 101)
        assert np.all(p.gain(w) <= gain_bound(p, w))


class TestSequences:
    def test_identity(self):
        seq = make_identity_sequence(0.5, 0.1, [0.4, 0.2, 0.1])
        assert [s.alpha for s in seq] == [0.4, 0.2, 0.1]
        assert all(s.beta == 0.1 and s.q == 0.5 for s in seq)

    @pytest.mark.parametrize("alphas", [[], [0.2, 0.4], [0.2, 0.2], [0.2, -0.1]])
    def test_identity_rejects_alphas(self, alphas):
        with pytest.raises(ValueError):
            make_identity_sequence(0.5, 0.1, alphas)

    def test_identity_rejects_small_q(self):
        with pytest.raises(ValueError):
            make_identity_sequence(0.3, 0.1, [1.0], q_bar=0.5)

    def test_matched_default_beta(self):
        seq = make_matched_sequence(0.1, [0.9, 0.99])
        np.testing.assert_allclose([s.beta for s in seq], [0.1, 0.01], rtol=1e-12)
        np.testing.assert_allclose([s.alpha for s in seq], [0.639245322149966, 6.36645953060005], rtol=1e-12)

    def test_matched_beta_schedules(self):
        seq = make_matched_sequence(0.1, [0.9, 0.99], beta=lambda q: (1 - q) ** 2)
        np.testing.assert_allclose([s.beta for s in seq], [0.01, 1e-4], rtol=1e-10)
        seq = make_matched_sequence(0.1, [0.9, 0.99], beta=[0.3, 0.2])
        assert [s.beta for s in seq] == [0.3, 0.2]
        with pytest.raises(ValueError):
            make_matched_sequence(0.1, [0.9, 0.99], beta=[0.3])

    @pytest.mark.parametrize("qs", [[], [0.5], [0.99, 0.9], [0.9, 1.0]])
    def test_matched_rejects(self, qs):
        with pytest.raises(ValueError):
            make_matched_sequence(0.1, qs)

    def test_alpha_beta_product_saturates(self):
        # with beta = 1 - q the product alpha * beta tends to 2 mu / pi
        seq = make_matched_sequence(0.1, [0.9, 0.99, 0.999, 0.9999])
        products = [s.alpha * s.beta for s in seq]
        assert products[-1] == pytest.approx(0.2 / math.pi, rel=1e-3)

    def test_spec_build(self):
        spec = SequenceSpec(kind="identity_sequence", q=0.5, beta=0.1, alphas=(0.4, 0.2))
        assert [s.alpha for s in spec.build()] == [0.4, 0.2]
        spec = SequenceSpec(kind="matched_sequence", mu=0.1, qs=(0.9, 0.99), betas=(0.1, 0.01))
        assert spec.build()[1].alpha == pytest.approx(6.36645953060005, rel=1e-12)
        with pytest.raises(ValueError):
            SequenceSpec(kind="other").build()
