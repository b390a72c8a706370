"""Entanglement criteria for quadrature and Stokes observables.

Implements the generalized two-observable inseparability ratio (value < 1
certifies an inseparable state), the conditional-variance product signalling
the EPR paradox, and the conditional-knowledge ellipse data used to picture
how measuring one beam sharpens the prediction of the other.

Every criterion reports the correlation term |<dA dB + dB dA>| that the
normalization assumes to vanish, so the assumption is checked rather than
taken on faith.  Pairs whose commutator bound vanishes cannot certify
anything; those return a flagged result with a NaN value instead of
dividing by zero.

The bright-V-beam closed forms, valid when the vertical constituents are
much brighter than the horizontal ones, live here as well so that the full
simulation can be cross-checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PhysicsError
from .register import GaussianRegister
from .stokes import (
    PolBeam,
    beam_amplitudes,
    commutator_bound,
    fluctuation_form,
    stokes_means,
    sum_difference_variance,
)

# Below this (relative to the beam power scale) a commutator bound counts
# as zero and the criterion is flagged as unable to certify.
ZERO_BOUND_TOL = 1e-12


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one criterion evaluation.

    value is normalized so that 1.0 is the classical/quantum boundary;
    bound is the raw denominator before normalization.  sign_choice holds
    the minimizing sum/difference label per observable, gain the optimal
    conditioning gain per observable where one applies.  zero_bound marks
    results where the commutator bound vanished and value is NaN.
    """

    name: str
    value: float
    bound: float
    sign_choice: tuple[str, ...] | None
    gain: tuple[float, ...] | None
    correlation_term: float
    zero_bound: bool = False


@dataclass(frozen=True)
class EllipsePoint:
    """Conditional-knowledge data for one conditioning Stokes index.

    All variances are normalized to 1 for a coherent beam.  conditional is
    the residual variance of the conditioned beam's same-index observable
    after optimal-gain use of the other beam's measurement; the other two
    indices keep their unconditional variances.
    """

    conditioned_on: int
    conditional: float
    unconditional: float
    other_indices: tuple[int, int]
    other_variances: tuple[float, float]
    gain: float


# -- closed-form helpers ----------------------------------------------------


def conditional_variance(var_a: float, var_b: float, cov: float) -> float:
    """min over g of Var(A + g*B) = Var(A) - Cov(A,B)^2 / Var(B)."""
    if var_b <= 0.0:
        raise ValueError("conditioning observable has non-positive variance")
    return var_a - cov * cov / var_b


def optimal_gain(var_b: float, cov: float) -> float:
    """Gain g minimizing Var(A + g*B)."""
    if var_b <= 0.0:
        raise ValueError("conditioning observable has non-positive variance")
    return -cov / var_b


def loss_adjusted_variance(variance: float, eta: float) -> float:
    """Quadrature variance after attenuation with efficiency eta."""
    if not 0.0 <= eta <= 1.0:
        raise PhysicsError(f"efficiency must lie in [0, 1], got {eta}")
    return eta * variance + (1.0 - eta)


def bright_limit_inseparability(d_plus_h: float, d_minus_h: float,
                                amplitude_ratio: float) -> float:
    """Bright-V-beam limit of the (S2, S3) inseparability ratio.

    d_plus_h / d_minus_h are the two-beam minimized sum/difference variances
    of the horizontal constituents' quadratures; amplitude_ratio is
    alpha_V^2 / alpha_H^2.
    """
    return (1.0 + 1.0 / amplitude_ratio) * (d_plus_h + d_minus_h) / 4.0


def bright_limit_inseparability_s1s2(d_plus_v: float, d_minus_h: float,
                                     amplitude_ratio: float) -> float:
    """Bright-V-beam limit of the (S1, S2) inseparability ratio."""
    return math.sqrt(amplitude_ratio) * (d_plus_v + d_minus_h) / 8.0


def bright_limit_epr_product(cv_plus_h: float, cv_minus_h: float,
                             amplitude_ratio: float) -> float:
    """Bright-V-beam limit of the normalized (S2, S3) conditional-variance
    product, from the conditional variances of the horizontal quadratures."""
    factor = 1.0 + 1.0 / amplitude_ratio
    return factor * factor * cv_plus_h * cv_minus_h


# -- quadrature criteria -----------------------------------------------------


def _minimized_sum_diff(reg, mode_x: int, mode_y: int, quadrature: str) -> tuple[float, str]:
    fx = reg.quadrature_form(mode_x, quadrature)
    fy = reg.quadrature_form(mode_y, quadrature)
    v_sum = reg.form_variance(fx + fy)
    v_diff = reg.form_variance(fx - fy)
    if v_sum <= v_diff:
        return v_sum, "sum"
    return v_diff, "difference"


def _quadrature_correlation_term(reg, mode_x: int, mode_y: int) -> float:
    terms = []
    for mode in (mode_x, mode_y):
        fp = reg.quadrature_form(mode, "+")
        fm = reg.quadrature_form(mode, "-")
        terms.append(2.0 * abs(reg.form_covariance(fp, fm)))
    return max(terms)


def duan_quadrature(reg: GaussianRegister, mode_x: int, mode_y: int) -> CriterionResult:
    """Two-mode quadrature inseparability ratio; < 1 certifies entanglement.

    Sum of the independently minimized sum/difference variances of X+ and X-
    over the quadrature commutator bound of 4.
    """
    if mode_x == mode_y:
        raise ValueError("inseparability needs two distinct modes")
    d_plus, sign_plus = _minimized_sum_diff(reg, mode_x, mode_y, "+")
    d_minus, sign_minus = _minimized_sum_diff(reg, mode_x, mode_y, "-")
    return CriterionResult(
        name="duan",
        value=(d_plus + d_minus) / 4.0,
        bound=4.0,
        sign_choice=(sign_plus, sign_minus),
        gain=None,
        correlation_term=_quadrature_correlation_term(reg, mode_x, mode_y),
    )


def epr_product_quadrature(reg: GaussianRegister, mode_x: int, mode_y: int) -> CriterionResult:
    """Product of optimal-gain conditional quadrature variances; < 1 signals
    the EPR paradox (the quadrature Heisenberg product is 1)."""
    if mode_x == mode_y:
        raise ValueError("conditional variances need two distinct modes")
    cvs, gains = [], []
    for quad in ("+", "-"):
        fx = reg.quadrature_form(mode_x, quad)
        fy = reg.quadrature_form(mode_y, quad)
        var_x = reg.form_variance(fx)
        var_y = reg.form_variance(fy)
        cov = reg.form_covariance(fx, fy)
        cvs.append(conditional_variance(var_x, var_y, cov))
        gains.append(optimal_gain(var_y, cov))
    return CriterionResult(
        name="epr_quad",
        value=cvs[0] * cvs[1],
        bound=1.0,
        sign_choice=None,
        gain=tuple(gains),
        correlation_term=_quadrature_correlation_term(reg, mode_x, mode_y),
    )


# -- Stokes criteria ----------------------------------------------------------


def _stokes_correlation_term(reg, beam_x: PolBeam, beam_y: PolBeam, i: int, j: int) -> float:
    terms = []
    for beam in (beam_x, beam_y):
        fi = fluctuation_form(reg, beam, i)
        fj = fluctuation_form(reg, beam, j)
        terms.append(2.0 * abs(reg.form_covariance(fi, fj)))
    return max(terms)


def _bound_scale(reg, beam_x: PolBeam) -> float:
    ah, av = beam_amplitudes(reg, beam_x)
    return max(ah * ah + av * av, 1.0)


def stokes_inseparability(reg: GaussianRegister, beam_x: PolBeam, beam_y: PolBeam,
                          i: int, j: int) -> CriterionResult:
    """Inseparability ratio for a pair of Stokes observables between two beams.

    Returns a zero_bound-flagged result when the commutator bound vanishes,
    in which case this criterion cannot certify entanglement for the pair.
    """
    if i == j:
        raise ValueError("inseparability needs two distinct Stokes indices")
    name = f"insep_S{i}S{j}"
    bound = commutator_bound(reg, beam_x, beam_y, i, j)
    d_i, sign_i = sum_difference_variance(reg, beam_x, beam_y, i)
    d_j, sign_j = sum_difference_variance(reg, beam_x, beam_y, j)
    correlation = _stokes_correlation_term(reg, beam_x, beam_y, i, j)
    if bound <= ZERO_BOUND_TOL * _bound_scale(reg, beam_x):
        return CriterionResult(
            name=name, value=math.nan, bound=bound,
            sign_choice=(sign_i, sign_j), gain=None,
            correlation_term=correlation, zero_bound=True,
        )
    return CriterionResult(
        name=name,
        value=(d_i + d_j) / (2.0 * bound),
        bound=2.0 * bound,
        sign_choice=(sign_i, sign_j),
        gain=None,
        correlation_term=correlation,
    )


def epr_product_stokes(reg: GaussianRegister, beam_x: PolBeam, beam_y: PolBeam,
                       i: int, j: int) -> CriterionResult:
    """Normalized conditional-variance product for a pair of Stokes
    observables; < 1 signals an EPR paradox in the polarization basis."""
    if i == j:
        raise ValueError("conditional variances need two distinct Stokes indices")
    name = f"epr_stokes_S{i}S{j}"
    bound = commutator_bound(reg, beam_x, beam_y, i, j)
    correlation = _stokes_correlation_term(reg, beam_x, beam_y, i, j)
    cvs, gains = [], []
    for index in (i, j):
        fx = fluctuation_form(reg, beam_x, index)
        fy = fluctuation_form(reg, beam_y, index)
        var_x = reg.form_variance(fx)
        var_y = reg.form_variance(fy)
        cov = reg.form_covariance(fx, fy)
        cvs.append(conditional_variance(var_x, var_y, cov))
        gains.append(optimal_gain(var_y, cov))
    if bound <= ZERO_BOUND_TOL * _bound_scale(reg, beam_x):
        return CriterionResult(
            name=name, value=math.nan, bound=bound,
            sign_choice=None, gain=tuple(gains),
            correlation_term=correlation, zero_bound=True,
        )
    return CriterionResult(
        name=name,
        value=cvs[0] * cvs[1] / (bound * bound / 4.0),
        bound=bound * bound / 4.0,
        sign_choice=None,
        gain=tuple(gains),
        correlation_term=correlation,
    )


def conditional_ellipse(reg: GaussianRegister, beam_x: PolBeam, beam_y: PolBeam,
                        conditioned_on: int) -> EllipsePoint:
    """Conditional-knowledge ellipse data for beam y given an optimal-gain
    measurement of the same Stokes index on beam x.

    Variances are normalized by beam y's mean S0, which equals the Stokes
    variance of a coherent beam, so a coherent pair sits at 1.
    """
    if conditioned_on not in (1, 2, 3):
        raise ValueError(f"Stokes index must be 1, 2 or 3, got {conditioned_on}")
    s0 = stokes_means(reg, beam_y).s0
    if s0 <= 0.0:
        raise PhysicsError("conditional ellipse needs a bright beam (S0 > 0)")
    fx = fluctuation_form(reg, beam_x, conditioned_on)
    fy = fluctuation_form(reg, beam_y, conditioned_on)
    var_x = reg.form_variance(fx)
    var_y = reg.form_variance(fy)
    cov = reg.form_covariance(fx, fy)
    others = tuple(k for k in (1, 2, 3) if k != conditioned_on)
    other_vars = tuple(
        reg.form_variance(fluctuation_form(reg, beam_y, k)) / s0 for k in others
    )
    return EllipsePoint(
        conditioned_on=conditioned_on,
        conditional=conditional_variance(var_y, var_x, cov) / s0,
        unconditional=var_y / s0,
        other_indices=others,
        other_variances=other_vars,
        gain=optimal_gain(var_x, cov),
    )
