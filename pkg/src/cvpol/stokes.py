"""Stokes observables of polarization beams built from H/V mode pairs.

A polarization beam pairs a horizontally and a vertically polarized mode
whose mean amplitudes are kept real; the H-V relative phase theta is
tracked on the beam itself.  Mean Stokes parameters, linearized Stokes
fluctuation forms, two-beam sum/difference variances and the commutator
bounds entering the inseparability criteria are all derived from that
parametrization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PhysicsError
from .register import GaussianRegister, LinearForm

# |mean_X-| above this (relative to the beam scale) means the caller let an
# optical phase leak into the amplitude instead of the beam's theta.
PHASE_BOOKKEEPING_TOL = 1e-6

STOKES_INDICES = (1, 2, 3)


@dataclass(frozen=True)
class PolBeam:
    """Polarization beam: H-mode id, V-mode id and their relative phase."""

    h: int
    v: int
    theta: float


@dataclass(frozen=True)
class StokesMeans:
    s0: float
    s1: float
    s2: float
    s3: float


def make_beam(reg: GaussianRegister, h: int, v: int, theta: float) -> PolBeam:
    """Pair two distinct register modes into a polarization beam."""
    if h == v:
        raise ValueError("a beam needs two distinct constituent modes")
    for mode in (h, v):
        if not 0 <= mode < reg.n_modes:
            raise ValueError(f"mode {mode} out of range for {reg.n_modes}-mode register")
    return PolBeam(h, v, float(theta))


def beam_amplitudes(reg: GaussianRegister, beam: PolBeam) -> tuple[float, float]:
    """Real mean amplitudes (alpha_H, alpha_V) of the beam's constituents.

    Raises PhysicsError if either constituent carries a significant X- mean:
    phases must be applied through rotations and the beam's theta, never by
    leaving a complex amplitude in the register.
    """
    amps = []
    for mode in (beam.h, beam.v):
        mp = reg.mean_x_plus(mode)
        mm = reg.mean_x_minus(mode)
        if abs(mm) > PHASE_BOOKKEEPING_TOL * (1.0 + abs(mp)):
            raise PhysicsError(
                f"mode {mode} has nonzero X- mean {mm}; apply phases via rotations "
                "and the beam's theta"
            )
        amps.append(mp / 2.0)
    return amps[0], amps[1]


def stokes_means(reg: GaussianRegister, beam: PolBeam) -> StokesMeans:
    """Mean-field Stokes parameters of a beam (fluctuation corrections dropped)."""
    ah, av = beam_amplitudes(reg, beam)
    return StokesMeans(
        s0=ah * ah + av * av,
        s1=ah * ah - av * av,
        s2=2.0 * ah * av * np.cos(beam.theta),
        s3=2.0 * ah * av * np.sin(beam.theta),
    )


def _check_index(i: int):
    if i not in STOKES_INDICES:
        raise ValueError(f"Stokes index must be 1, 2 or 3, got {i}")


def fluctuation_form(reg: GaussianRegister, beam: PolBeam, index: int) -> LinearForm:
    """First-order fluctuation of one Stokes observable as a quadrature form.

    delta_S1 = aH dX+_H - aV dX+_V
    delta_S2 = aV cos(t) dX+_H + aV sin(t) dX-_H + aH cos(t) dX+_V - aH sin(t) dX-_V
    delta_S3 = aV sin(t) dX+_H - aV cos(t) dX-_H + aH sin(t) dX+_V + aH cos(t) dX-_V
    """
    _check_index(index)
    ah, av = beam_amplitudes(reg, beam)
    c, s = np.cos(beam.theta), np.sin(beam.theta)
    coeffs = np.zeros(2 * reg.n_modes)
    hp, hm = 2 * beam.h, 2 * beam.h + 1
    vp, vm = 2 * beam.v, 2 * beam.v + 1
    if index == 1:
        coeffs[hp] = ah
        coeffs[vp] = -av
    elif index == 2:
        coeffs[hp] = av * c
        coeffs[hm] = av * s
        coeffs[vp] = ah * c
        coeffs[vm] = -ah * s
    else:
        coeffs[hp] = av * s
        coeffs[hm] = -av * c
        coeffs[vp] = ah * s
        coeffs[vm] = ah * c
    return LinearForm(coeffs)


def pair_commutator_bound(alpha_h: float, alpha_v: float, theta: float, i: int, j: int) -> float:
    """|<[delta_S_i, delta_S_j]>| for a symmetric beam pair, from one beam's parameters."""
    _check_index(i)
    _check_index(j)
    if i == j:
        raise ValueError("commutator bound needs two distinct Stokes indices")
    pair = (min(i, j), max(i, j))
    if pair == (1, 2):
        return abs(4.0 * alpha_h * alpha_v * np.sin(theta))
    if pair == (1, 3):
        return abs(4.0 * alpha_h * alpha_v * np.cos(theta))
    return 2.0 * abs(alpha_h * alpha_h - alpha_v * alpha_v)


def _phases_compatible(theta_x: float, theta_y: float) -> bool:
    # the beams' bounds agree iff theta_x = +/- theta_y + m*pi, which keeps
    # |sin| and |cos| equal between the beams
    for sign in (1.0, -1.0):
        residue = (theta_x - sign * theta_y) % np.pi
        if min(residue, np.pi - residue) < 1e-6:
            return True
    return False


def _assert_symmetric_pair(reg, beam_x: PolBeam, beam_y: PolBeam):
    ahx, avx = beam_amplitudes(reg, beam_x)
    ahy, avy = beam_amplitudes(reg, beam_y)
    for name, a, b in (("alpha_H", ahx, ahy), ("alpha_V", avx, avy)):
        if abs(a - b) > 1e-6 * max(abs(a), abs(b), 1e-30):
            raise PhysicsError(
                f"beams are not symmetric: {name} differs ({a} vs {b})"
            )
    if not _phases_compatible(beam_x.theta, beam_y.theta):
        raise PhysicsError(
            f"beams are not symmetric: theta {beam_x.theta} vs {beam_y.theta} "
            "is not of the form theta_x = +/-theta_y + m*pi"
        )


def commutator_bound(reg: GaussianRegister, beam_x: PolBeam, beam_y: PolBeam,
                     i: int, j: int) -> float:
    """Commutator bound for a symmetric pair of beams, checked then evaluated
    from beam x's mean parameters."""
    _assert_symmetric_pair(reg, beam_x, beam_y)
    ah, av = beam_amplitudes(reg, beam_x)
    return pair_commutator_bound(ah, av, beam_x.theta, i, j)


def _check_disjoint(beam_x: PolBeam, beam_y: PolBeam):
    if {beam_x.h, beam_x.v} & {beam_y.h, beam_y.v}:
        raise ValueError("the two beams must use disjoint constituent modes")


def sum_difference_variance(reg: GaussianRegister, beam_x: PolBeam, beam_y: PolBeam,
                            index: int) -> tuple[float, str]:
    """Smaller of the sum and difference variances of one Stokes observable
    between two beams.  Returns (value, 'sum'|'difference'); ties report 'sum'."""
    _check_disjoint(beam_x, beam_y)
    fx = fluctuation_form(reg, beam_x, index)
    fy = fluctuation_form(reg, beam_y, index)
    v_sum = reg.form_variance(fx + fy)
    v_diff = reg.form_variance(fx - fy)
    if v_sum <= v_diff:
        return v_sum, "sum"
    return v_diff, "difference"
