"""Gaussian quantum-optics simulator for continuous-variable polarization
entanglement: symplectic circuits over quadrature covariance matrices,
Stokes-observable statistics, inseparability and EPR criteria, a small
scenario language and a deterministic CLI."""

from .builders import BuiltScenario, build_paper_experiment, build_symmetric_scheme
from .criteria import (
    CriterionResult,
    EllipsePoint,
    bright_limit_epr_product,
    bright_limit_inseparability,
    bright_limit_inseparability_s1s2,
    conditional_ellipse,
    conditional_variance,
    duan_quadrature,
    epr_product_quadrature,
    epr_product_stokes,
    loss_adjusted_variance,
    stokes_inseparability,
)
from .errors import CvpolError, PhysicsError, ScenarioError
from .fock import FockStokes, fock_oracle
from .register import GaussianRegister, LinearForm
from .runner import Report, SweepTable, run, sweep, sweep_spectrum
from .scenario import ScenarioSpec, parse_scenario, render_scenario
from .spectrum import SqueezingSpectrum
from .stokes import (
    PolBeam,
    StokesMeans,
    commutator_bound,
    fluctuation_form,
    make_beam,
    pair_commutator_bound,
    stokes_means,
    sum_difference_variance,
)

__version__ = "0.1.0"

__all__ = [
    "BuiltScenario",
    "CriterionResult",
    "CvpolError",
    "EllipsePoint",
    "FockStokes",
    "GaussianRegister",
    "LinearForm",
    "PhysicsError",
    "PolBeam",
    "Report",
    "ScenarioError",
    "ScenarioSpec",
    "SqueezingSpectrum",
    "StokesMeans",
    "SweepTable",
    "bright_limit_epr_product",
    "bright_limit_inseparability",
    "bright_limit_inseparability_s1s2",
    "build_paper_experiment",
    "build_symmetric_scheme",
    "commutator_bound",
    "conditional_ellipse",
    "conditional_variance",
    "duan_quadrature",
    "epr_product_quadrature",
    "epr_product_stokes",
    "fluctuation_form",
    "fock_oracle",
    "loss_adjusted_variance",
    "make_beam",
    "pair_commutator_bound",
    "parse_scenario",
    "render_scenario",
    "run",
    "stokes_inseparability",
    "stokes_means",
    "sum_difference_variance",
    "sweep",
    "sweep_spectrum",
]
