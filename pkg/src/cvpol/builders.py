"""Built-in circuit constructions.

Two canned experiments are provided:

* the two-squeezer scheme: a pair of equally amplitude-squeezed beams
  interfered with a pi/2 phase shift on a balanced beamsplitter gives
  quadrature entanglement, and each entangled beam is then merged with a
  much brighter vertically polarized coherent beam into a polarization
  beam at relative phase pi/2;

* the four-squeezer symmetric scheme: two identical entangled pairs feed
  the H and V constituents, with amplitudes split so the three mean Stokes
  parameters are equal in magnitude and opposite beam phases so all three
  Stokes observables are entangled simultaneously.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PhysicsError
from .register import GaussianRegister
from .stokes import PolBeam, make_beam

# amplitude fractions putting the mean Stokes vector at equal angle from
# all three axes: alpha_H^2 : alpha_V^2 = (sqrt(3)+1)/2 : (sqrt(3)-1)/2
SYMMETRIC_H_FRACTION = (math.sqrt(3.0) + 1.0) / 2.0
SYMMETRIC_V_FRACTION = (math.sqrt(3.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BuiltScenario:
    """A constructed register with its two polarization beams and the ids of
    the constituent modes (H pair first, then V pair)."""

    register: GaussianRegister
    beam_x: PolBeam
    beam_y: PolBeam
    h_modes: tuple[int, int]
    v_modes: tuple[int, int]


def entangle_pair(reg: GaussianRegister, mode_a: int, mode_b: int):
    """Interfere two equally squeezed modes into an entangled pair.

    Balanced beamsplitter with a pi/2 phase on the second input, then local
    re-phasings that bring both output amplitudes back to the real axis.
    The output X+ quadratures end up correlated and the X- anticorrelated.
    """
    reg.apply_beamsplitter(mode_a, mode_b, eta=0.5, phase=math.pi / 2.0)
    reg.apply_rotation(mode_a, -math.pi / 4.0)
    reg.apply_rotation(mode_b, math.pi / 4.0)


def _check_squeezing(v_plus: float, v_minus: float):
    if v_plus <= 0.0 or v_minus <= 0.0 or v_plus * v_minus < 1.0 - 1e-12:
        raise PhysicsError(
            f"nonphysical squeezing variances ({v_plus}, {v_minus})"
        )


def build_paper_experiment(
    v_plus: float,
    v_minus: float,
    eta_interference: float = 0.978,
    eta_pol: float = 0.91,
    ratio: float = 30.0,
    alpha_h: float = 10.0,
    theta: float = math.pi / 2.0,
    interference_loss: str = "post",
) -> BuiltScenario:
    """Two-squeezer polarization-entanglement experiment.

    The interference efficiency is modeled as an equal loss on the entangler
    arms (`interference_loss` places it before or after the beamsplitter;
    the two placements are equivalent for equal losses) and the polarization
    stage's mode-matching efficiency as a loss on each H path.  The squeezer
    amplitudes are chosen so the H constituents end up with amplitude
    alpha_h after all losses, and the V beams carry alpha_V^2 =
    ratio * alpha_h^2.
    """
    _check_squeezing(v_plus, v_minus)
    for name, eta in (("eta_interference", eta_interference), ("eta_pol", eta_pol)):
        if not 0.0 < eta <= 1.0:
            raise PhysicsError(f"{name} must lie in (0, 1], got {eta}")
    if ratio <= 0.0:
        raise PhysicsError(f"amplitude ratio must be positive, got {ratio}")
    if interference_loss not in ("pre", "post"):
        raise ValueError("interference_loss must be 'pre' or 'post'")

    alpha_in = alpha_h / math.sqrt(eta_interference * eta_pol)
    alpha_v = math.sqrt(ratio) * alpha_h

    reg = GaussianRegister()
    sq_x = reg.add_squeezed(v_plus, v_minus, alpha_in)
    sq_y = reg.add_squeezed(v_plus, v_minus, alpha_in)
    if interference_loss == "pre":
        reg.apply_loss(sq_x, eta_interference)
        reg.apply_loss(sq_y, eta_interference)
    entangle_pair(reg, sq_x, sq_y)
    if interference_loss == "post":
        reg.apply_loss(sq_x, eta_interference)
        reg.apply_loss(sq_y, eta_interference)
    reg.apply_loss(sq_x, eta_pol)
    reg.apply_loss(sq_y, eta_pol)
    v_x = reg.add_coherent(alpha_v)
    v_y = reg.add_coherent(alpha_v)
    return BuiltScenario(
        register=reg,
        beam_x=make_beam(reg, sq_x, v_x, theta),
        beam_y=make_beam(reg, sq_y, v_y, theta),
        h_modes=(sq_x, sq_y),
        v_modes=(v_x, v_y),
    )


def build_symmetric_scheme(
    alpha: float,
    v_plus: float,
    v_minus: float,
    theta_sign: int = 1,
) -> BuiltScenario:
    """Four-squeezer scheme entangling all three Stokes observables.

    Two identical entangled pairs feed the H and V constituents; beam x sits
    at theta = pi/4 and beam y at -pi/4 (theta_sign=+1) or 3*pi/4
    (theta_sign=-1), the two branches of the opposite-phase condition.
    """
    _check_squeezing(v_plus, v_minus)
    if theta_sign not in (1, -1):
        raise ValueError("theta_sign must be +1 or -1")
    alpha_h = alpha * math.sqrt(SYMMETRIC_H_FRACTION)
    alpha_v = alpha * math.sqrt(SYMMETRIC_V_FRACTION)

    reg = GaussianRegister()
    h_1 = reg.add_squeezed(v_plus, v_minus, alpha_h)
    h_2 = reg.add_squeezed(v_plus, v_minus, alpha_h)
    v_1 = reg.add_squeezed(v_plus, v_minus, alpha_v)
    v_2 = reg.add_squeezed(v_plus, v_minus, alpha_v)
    entangle_pair(reg, h_1, h_2)
    entangle_pair(reg, v_1, v_2)

    theta_x = math.pi / 4.0
    theta_y = -math.pi / 4.0 if theta_sign == 1 else 3.0 * math.pi / 4.0
    return BuiltScenario(
        register=reg,
        beam_x=make_beam(reg, h_1, v_1, theta_x),
        beam_y=make_beam(reg, h_2, v_2, theta_y),
        h_modes=(h_1, h_2),
        v_modes=(v_1, v_2),
    )
