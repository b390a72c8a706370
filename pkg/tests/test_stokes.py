"""Stokes means, fluctuation forms, commutator bounds, sum/difference variances."""

import math

import numpy as np
import pytest

from cvpol import (
    GaussianRegister,
    PhysicsError,
    build_paper_experiment,
    build_symmetric_scheme,
    commutator_bound,
    fluctuation_form,
    make_beam,
    pair_commutator_bound,
    stokes_means,
    sum_difference_variance,
)

SYM_H = (math.sqrt(3.0) + 1.0) / 2.0
SYM_V = (math.sqrt(3.0) - 1.0) / 2.0


def coherent_beam(reg, alpha_h, alpha_v, theta):
    h = reg.add_coherent(alpha_h)
    v = reg.add_coherent(alpha_v)
    return make_beam(reg, h, v, theta)


class TestMakeBeam:
    def test_theta_recorded(self):
        reg = GaussianRegister()
        beam = coherent_beam(reg, 1.0, 1.0, math.pi / 2.0)
        assert beam.theta == math.pi / 2.0

    def test_zero_theta(self):
        reg = GaussianRegister()
        beam = coherent_beam(reg, 1.0, 1.0, 0.0)
        assert beam.theta == 0.0

    def test_shared_mode_rejected(self):
        reg = GaussianRegister()
        h = reg.add_coherent(1.0)
        with pytest.raises(ValueError):
            make_beam(reg, h, h, 0.1)

    def test_unknown_mode_rejected(self):
        reg = GaussianRegister()
        h = reg.add_coherent(1.0)
        with pytest.raises(ValueError):
            make_beam(reg, h, 5, 0.1)


class TestStokesMeans:
    def test_circular(self):
        reg = GaussianRegister()
        beam = coherent_beam(reg, 1.0, 1.0, math.pi / 2.0)
        sm = stokes_means(reg, beam)
        assert (sm.s0, sm.s1) == (2.0, 0.0)
        assert sm.s2 == pytest.approx(0.0, abs=1e-12)
        assert sm.s3 == pytest.approx(2.0, abs=1e-12)

    def test_diagonal(self):
        reg = GaussianRegister()
        sm = stokes_means(reg, coherent_beam(reg, 1.0, 1.0, 0.0))
        assert (sm.s0, sm.s1, sm.s2, sm.s3) == (2.0, 0.0, 2.0, 0.0)

    def test_equal_angle_split(self):
        # amplitude split putting the Stokes vector at equal angle from all axes
        reg = GaussianRegister()
        beam = coherent_beam(reg, math.sqrt(SYM_H), math.sqrt(SYM_V), math.pi / 4.0)
        sm = stokes_means(reg, beam)
        for value in (sm.s1, sm.s2, sm.s3):
            assert value == pytest.approx(1.0, abs=1e-12)

    def test_vector_length_bound(self):
        reg = GaussianRegister()
        sm = stokes_means(reg, coherent_beam(reg, 1.4, 0.6, 0.9))
        assert sm.s1**2 + sm.s2**2 + sm.s3**2 <= sm.s0**2 + 1e-9

    def test_nonzero_phase_mean_rejected(self):
        reg = GaussianRegister()
        h = reg.add_coherent(1.0)
        v = reg.add_coherent(1.0)
        reg.apply_rotation(h, 0.3)  # leaks amplitude into X-
        beam = make_beam(reg, h, v, 0.0)
        with pytest.raises(PhysicsError):
            stokes_means(reg, beam)


class TestFluctuationForms:
    def test_s2_limit_is_phase_quadrature_of_h(self):
        reg = GaussianRegister()
        beam = coherent_beam(reg, 0.0, 1.0, math.pi / 2.0)
        coeffs = fluctuation_form(reg, beam, 2).coeffs
        expected = np.zeros(4)
        expected[1] = 1.0  # X- of the H mode
        assert np.allclose(coeffs, expected, atol=1e-12)

    def test_s3_limit_is_amplitude_quadrature_of_h(self):
        reg = GaussianRegister()
        beam = coherent_beam(reg, 0.0, 1.0, math.pi / 2.0)
        coeffs = fluctuation_form(reg, beam, 3).coeffs
        expected = np.zeros(4)
        expected[0] = 1.0  # X+ of the H mode
        assert np.allclose(coeffs, expected, atol=1e-12)

    @pytest.mark.parametrize("alpha_h,alpha_v,theta",
                             [(1.0, 1.0, 0.0), (2.0, 0.7, 1.2), (0.5, 3.0, math.pi / 2.0)])
    def test_coherent_variance_equals_s0(self, alpha_h, alpha_v, theta):
        reg = GaussianRegister()
        beam = coherent_beam(reg, alpha_h, alpha_v, theta)
        s0 = stokes_means(reg, beam).s0
        for index in (1, 2, 3):
            var = reg.form_variance(fluctuation_form(reg, beam, index))
            assert var == pytest.approx(s0, rel=1e-12)

    def test_bright_limit_convergence(self):
        # at theta = pi/2 the S1 variance tends to alpha_V^2 * Var(X+_V) with
        # relative error of order alpha_H / alpha_V
        for ratio in (10.0, 100.0, 1000.0):
            reg = GaussianRegister()
            alpha_v = 50.0
            alpha_h = alpha_v / math.sqrt(ratio)
            h = reg.add_squeezed(0.3, 4.0, alpha_h)
            v = reg.add_coherent(alpha_v)
            beam = make_beam(reg, h, v, math.pi / 2.0)
            var = reg.form_variance(fluctuation_form(reg, beam, 1))
            limit = alpha_v**2 * 1.0
            assert abs(var - limit) / limit <= 2.0 / ratio

    def test_index_validation(self):
        reg = GaussianRegister()
        beam = coherent_beam(reg, 1.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            fluctuation_form(reg, beam, 4)


class TestCommutatorBounds:
    def test_experiment_scale_bounds(self):
        # alpha_H^2 = 100, alpha_V^2 = 3000, theta = pi/2
        ah, av = 10.0, math.sqrt(3000.0)
        assert pair_commutator_bound(ah, av, math.pi / 2.0, 1, 2) == pytest.approx(
            4.0 * 10.0 * math.sqrt(3000.0), rel=1e-12)
        assert pair_commutator_bound(ah, av, math.pi / 2.0, 1, 3) == pytest.approx(
            0.0, abs=1e-9)
        assert pair_commutator_bound(ah, av, math.pi / 2.0, 2, 3) == pytest.approx(
            5800.0, rel=1e-12)

    def test_balanced_beam_kills_s2s3(self):
        assert pair_commutator_bound(1.3, 1.3, 0.77, 2, 3) == 0.0

    def test_symmetric_scheme_bounds_all_equal(self):
        ah, av = math.sqrt(SYM_H), math.sqrt(SYM_V)
        for pair in ((1, 2), (1, 3), (2, 3)):
            assert pair_commutator_bound(ah, av, math.pi / 4.0, *pair) == pytest.approx(
                2.0, rel=1e-12)

    def test_pythagorean_identity(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            ah, av = rng.uniform(0.1, 20.0, 2)
            theta = rng.uniform(0.0, 2.0 * np.pi)
            b12 = pair_commutator_bound(ah, av, theta, 1, 2)
            b13 = pair_commutator_bound(ah, av, theta, 1, 3)
            target = 16.0 * ah * ah * av * av
            assert abs(b12 * b12 + b13 * b13 - target) <= 1e-9 * target

    def test_order_ignored(self):
        assert pair_commutator_bound(2.0, 3.0, 0.6, 2, 1) == \
            pair_commutator_bound(2.0, 3.0, 0.6, 1, 2)

    def test_same_index_rejected(self):
        with pytest.raises(ValueError):
            pair_commutator_bound(1.0, 1.0, 0.0, 2, 2)

    def test_asymmetric_beams_rejected(self):
        reg = GaussianRegister()
        bx = coherent_beam(reg, 1.0, 2.0, 0.5)
        by = coherent_beam(reg, 1.0, 2.5, 0.5)
        with pytest.raises(PhysicsError):
            commutator_bound(reg, bx, by, 1, 2)

    def test_incompatible_phases_rejected(self):
        reg = GaussianRegister()
        bx = coherent_beam(reg, 1.0, 2.0, 0.5)
        by = coherent_beam(reg, 1.0, 2.0, 0.9)
        with pytest.raises(PhysicsError):
            commutator_bound(reg, bx, by, 1, 2)

    def test_opposite_phase_plus_half_turn_accepted(self):
        reg = GaussianRegister()
        bx = coherent_beam(reg, 1.0, 2.0, np.pi / 4.0)
        by = coherent_beam(reg, 1.0, 2.0, 3.0 * np.pi / 4.0)
        value = commutator_bound(reg, bx, by, 1, 2)
        assert value == pytest.approx(pair_commutator_bound(1.0, 2.0, np.pi / 4.0, 1, 2),
                                      rel=1e-12)

    def test_register_level_bound(self):
        built = build_symmetric_scheme(1.0, 1.0, 1.0)
        value = commutator_bound(built.register, built.beam_x, built.beam_y, 2, 3)
        assert value == pytest.approx(2.0, rel=1e-9)


class TestSumDifferenceVariance:
    def test_independent_beams_add(self):
        reg = GaussianRegister()
        bx = coherent_beam(reg, 1.0, 2.0, 0.3)
        by = coherent_beam(reg, 1.0, 2.0, 0.3)
        s0 = stokes_means(reg, bx).s0
        for index in (1, 2, 3):
            value, sign = sum_difference_variance(reg, bx, by, index)
            assert value == pytest.approx(2.0 * s0, rel=1e-12)
            assert sign == "sum"  # ties report sum

    def test_paper_experiment_ideal_s3(self):
        # no pol-stage loss: alpha_V^2 * 2V+ plus the V-beam noise 2*alpha_H^2
        built = build_paper_experiment(0.44, 2.831, eta_interference=1.0,
                                       eta_pol=1.0, ratio=30.0, alpha_h=10.0)
        value, sign = sum_difference_variance(built.register, built.beam_x,
                                              built.beam_y, 3)
        alpha_h2 = 100.0
        alpha_v2 = 3000.0
        exact = alpha_v2 * 0.88 + 2.0 * alpha_h2
        assert value == pytest.approx(exact, rel=1e-9)
        assert sign == "sum"
        # bright-limit value alpha_V^2 * 0.88 agrees to the dropped-term level
        assert abs(value - alpha_v2 * 0.88) / (alpha_v2 * 0.88) <= 0.08

    def test_symmetric_scheme_scaling(self):
        # two-beam quadrature variance of 0.2 maps onto sqrt(3) * 0.2 per unit
        # amplitude squared, identically for all three observables
        alpha = 10.0
        built = build_symmetric_scheme(alpha, 0.1, 10.0)
        for index in (1, 2, 3):
            value, _ = sum_difference_variance(built.register, built.beam_x,
                                               built.beam_y, index)
            assert value == pytest.approx(math.sqrt(3.0) * 0.2 * alpha**2, rel=1e-9)

    def test_beam_exchange_symmetry(self):
        built = build_symmetric_scheme(10.0, 0.2, 6.0)
        for index in (1, 2, 3):
            ab, _ = sum_difference_variance(built.register, built.beam_x, built.beam_y, index)
            ba, _ = sum_difference_variance(built.register, built.beam_y, built.beam_x, index)
            assert ab == pytest.approx(ba, rel=1e-12)

    def test_overlapping_beams_rejected(self):
        reg = GaussianRegister()
        a, b, c = reg.add_coherent(1.0), reg.add_coherent(1.0), reg.add_coherent(1.0)
        bx = make_beam(reg, a, b, 0.0)
        by = make_beam(reg, b, c, 0.0)
        with pytest.raises(ValueError):
            sum_difference_variance(reg, bx, by, 1)
