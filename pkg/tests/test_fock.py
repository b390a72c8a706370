"""Truncated-number-basis oracle versus the linearized Gaussian pipeline."""

import numpy as np
import pytest

from cvpol import GaussianRegister, fluctuation_form, fock_oracle, make_beam, stokes_means
from cvpol.fock import default_cutoff


class TestOracleDirect:
    def test_balanced_coherent_state(self):
        result = fock_oracle(1.0, 1.0, 0.0, n_max=20)
        assert result.means.s0 == pytest.approx(2.0, rel=1e-9)
        assert result.means.s1 == pytest.approx(0.0, abs=1e-9)
        assert result.means.s2 == pytest.approx(2.0, rel=1e-9)
        assert result.means.s3 == pytest.approx(0.0, abs=1e-9)
        for var in result.variances:
            assert var == pytest.approx(2.0, rel=1e-9)

    def test_single_mode(self):
        result = fock_oracle(1.0, 0.0, 0.3)
        assert result.means.s0 == pytest.approx(1.0, rel=1e-9)
        assert result.means.s1 == pytest.approx(1.0, rel=1e-9)
        assert result.means.s2 == pytest.approx(0.0, abs=1e-9)
        assert result.means.s3 == pytest.approx(0.0, abs=1e-9)

    def test_variance_equals_total_flux(self):
        # coherent light: every Stokes variance equals <S0>, whatever theta
        result = fock_oracle(1.5, 2.5, 1.1)
        s0 = 1.5**2 + 2.5**2
        for var in result.variances:
            assert var == pytest.approx(s0, rel=1e-9)

    def test_truncation_guard(self):
        with pytest.raises(ValueError):
            fock_oracle(4.0, 4.0, 0.0, n_max=20)

    def test_default_cutoff_scales_with_amplitude(self):
        assert default_cutoff(4.0, 1.0) >= 4.0**2 + 8 * 4.0


class TestAgreementWithLinearization:
    def test_random_coherent_configurations(self):
        rng = np.random.default_rng(20260809)
        for _ in range(10):
            alpha_h, alpha_v = rng.uniform(0.5, 4.0, 2)
            theta = rng.uniform(0.0, 2.0 * np.pi)
            reg = GaussianRegister()
            beam = make_beam(reg, reg.add_coherent(alpha_h),
                             reg.add_coherent(alpha_v), theta)
            sm = stokes_means(reg, beam)
            exact = fock_oracle(alpha_h, alpha_v, theta)
            scale = sm.s0
            for got, want in zip(
                (sm.s0, sm.s1, sm.s2, sm.s3),
                (exact.means.s0, exact.means.s1, exact.means.s2, exact.means.s3),
            ):
                assert abs(got - want) <= 1e-6 * max(abs(want), 1e-3 * scale)
            for index, want in zip((1, 2, 3), exact.variances):
                got = reg.form_variance(fluctuation_form(reg, beam, index))
                assert abs(got - want) <= 1e-6 * abs(want)
