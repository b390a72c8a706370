"""Multimode Gaussian states and linear-optics transformations.

A register holds N optical modes as a real mean vector of quadrature
expectations, ordered (X+_1, X-_1, ..., X+_N, X-_N), plus a symmetric
2N x 2N covariance matrix of symmetrized fluctuations.  Conventions:
X+ = a + a^dag, X- = i(a^dag - a), so the vacuum has unit variance in
both quadratures and a coherent state of real amplitude alpha has mean
(2*alpha, 0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PhysicsError

# Single-mode marginals of any valid state satisfy Var(X+)*Var(X-) >= 1.
HEISENBERG_TOL = 1e-9


@dataclass(eq=False)
class LinearForm:
    """Real coefficient vector over a register's quadrature fluctuations.

    Represents a linearized observable delta_O = sum_k c_k * delta_q_k.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.coeffs + other.coeffs)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.coeffs - other.coeffs)

    def __mul__(self, scale: float) -> "LinearForm":
        return LinearForm(self.coeffs * scale)

    __rmul__ = __mul__


def x_plus_index(mode: int) -> int:
    return 2 * mode


def x_minus_index(mode: int) -> int:
    return 2 * mode + 1


def rotation_matrix(angle: float) -> np.ndarray:
    """2x2 quadrature rotation: X+ -> cos*X+ + sin*X-, X- -> -sin*X+ + cos*X-."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]])


class GaussianRegister:
    """Mutable collection of Gaussian modes with value semantics via copy()."""

    def __init__(self):
        self.means = np.zeros(0)
        self.cov = np.zeros((0, 0))

    @property
    def n_modes(self) -> int:
        return len(self.means) // 2

    def copy(self) -> "GaussianRegister":
        dup = GaussianRegister()
        dup.means = self.means.copy()
        dup.cov = self.cov.copy()
        return dup

    # -- mode creation ----------------------------------------------------

    def _grow(self, mean_block: np.ndarray, cov_block: np.ndarray) -> int:
        n = len(self.means)
        means = np.zeros(n + 2)
        means[:n] = self.means
        means[n:] = mean_block
        cov = np.zeros((n + 2, n + 2))
        cov[:n, :n] = self.cov
        cov[n:, n:] = cov_block
        self.means, self.cov = means, cov
        return self.n_modes - 1

    def add_vacuum(self) -> int:
        return self._grow(np.zeros(2), np.eye(2))

    def add_coherent(self, alpha: float) -> int:
        return self._grow(np.array([2.0 * alpha, 0.0]), np.eye(2))

    def add_squeezed(self, v_plus: float, v_minus: float, alpha: float = 0.0) -> int:
        if v_plus <= 0.0 or v_minus <= 0.0:
            raise PhysicsError(
                f"squeezed-mode variances must be positive, got ({v_plus}, {v_minus})"
            )
        if v_plus * v_minus < 1.0 - 1e-12:
            raise PhysicsError(
                f"variance product {v_plus * v_minus} below the uncertainty floor of 1"
            )
        return self._grow(
            np.array([2.0 * alpha, 0.0]), np.diag([v_plus, v_minus])
        )

    # -- transformations --------------------------------------------------

    def _check_mode(self, mode: int):
        if not 0 <= mode < self.n_modes:
            raise ValueError(f"mode {mode} out of range for {self.n_modes}-mode register")

    def apply_rotation(self, mode: int, angle: float):
        """Rotate one mode's quadratures; models an optical phase shift."""
        self._check_mode(mode)
        r = rotation_matrix(angle)
        sl = slice(2 * mode, 2 * mode + 2)
        self.means[sl] = r @ self.means[sl]
        self.cov[sl, :] = r @ self.cov[sl, :]
        self.cov[:, sl] = self.cov[:, sl] @ r.T
        self._symmetrize()

    def apply_beamsplitter(self, mode_a: int, mode_b: int, eta: float, phase: float = 0.0):
        """Mix two modes: rotate mode_b by `phase`, then

        out_a = sqrt(eta)*a + sqrt(1-eta)*b,
        out_b = sqrt(1-eta)*a - sqrt(eta)*b.
        """
        self._check_mode(mode_a)
        self._check_mode(mode_b)
        if mode_a == mode_b:
            raise ValueError("beamsplitter requires two distinct modes")
        if not 0.0 <= eta <= 1.0:
            raise PhysicsError(f"transmittance must lie in [0, 1], got {eta}")
        if phase != 0.0:
            self.apply_rotation(mode_b, phase)
        t, r = np.sqrt(eta), np.sqrt(1.0 - eta)
        sa = slice(2 * mode_a, 2 * mode_a + 2)
        sb = slice(2 * mode_b, 2 * mode_b + 2)
        ma, mb = self.means[sa].copy(), self.means[sb].copy()
        self.means[sa] = t * ma + r * mb
        self.means[sb] = r * ma - t * mb
        ca, cb = self.cov[sa, :].copy(), self.cov[sb, :].copy()
        self.cov[sa, :] = t * ca + r * cb
        self.cov[sb, :] = r * ca - t * cb
        ca, cb = self.cov[:, sa].copy(), self.cov[:, sb].copy()
        self.cov[:, sa] = t * ca + r * cb
        self.cov[:, sb] = r * ca - t * cb
        self._symmetrize()

    def apply_loss(self, mode: int, eta: float):
        """Attenuate one mode with efficiency eta, admixing vacuum."""
        self._check_mode(mode)
        if not 0.0 <= eta <= 1.0:
            raise PhysicsError(f"efficiency must lie in [0, 1], got {eta}")
        s = np.sqrt(eta)
        sl = slice(2 * mode, 2 * mode + 2)
        self.means[sl] *= s
        self.cov[sl, :] *= s
        self.cov[:, sl] *= s
        # the double scaling left eta*block on the diagonal block
        self.cov[sl, sl] += (1.0 - eta) * np.eye(2)

    def _symmetrize(self):
        self.cov = 0.5 * (self.cov + self.cov.T)

    # -- readout ----------------------------------------------------------

    def mean_x_plus(self, mode: int) -> float:
        self._check_mode(mode)
        return float(self.means[2 * mode])

    def mean_x_minus(self, mode: int) -> float:
        self._check_mode(mode)
        return float(self.means[2 * mode + 1])

    def mode_variances(self, mode: int) -> tuple[float, float]:
        self._check_mode(mode)
        return float(self.cov[2 * mode, 2 * mode]), float(self.cov[2 * mode + 1, 2 * mode + 1])

    def quadrature_form(self, mode: int, quadrature: str) -> LinearForm:
        """Unit form selecting one quadrature fluctuation: quadrature in {'+', '-'}."""
        self._check_mode(mode)
        if quadrature not in ("+", "-"):
            raise ValueError("quadrature must be '+' or '-'")
        coeffs = np.zeros(2 * self.n_modes)
        coeffs[2 * mode + (0 if quadrature == "+" else 1)] = 1.0
        return LinearForm(coeffs)

    def _check_form(self, form: LinearForm):
        if len(form.coeffs) != len(self.means):
            raise ValueError(
                f"form has {len(form.coeffs)} coefficients, register needs {len(self.means)}"
            )

    def form_variance(self, form: LinearForm) -> float:
        self._check_form(form)
        return float(form.coeffs @ self.cov @ form.coeffs)

    def form_covariance(self, f: LinearForm, g: LinearForm) -> float:
        self._check_form(f)
        self._check_form(g)
        return float(f.coeffs @ self.cov @ g.coeffs)

    def mean_field_flux(self) -> float:
        """Photon flux carried by the mean field, sum of |alpha_k|^2."""
        return float(np.sum(self.means**2) / 4.0)

    def validate(self):
        """Raise PhysicsError if the stored state is not a valid Gaussian state."""
        if not np.allclose(self.cov, self.cov.T, atol=1e-12, rtol=0.0):
            raise PhysicsError("covariance matrix is not symmetric")
        diag = np.diag(self.cov)
        if np.any(diag <= 0.0):
            raise PhysicsError("covariance diagonal must be strictly positive")
        for mode in range(self.n_modes):
            vp, vm = self.mode_variances(mode)
            if vp * vm < 1.0 - HEISENBERG_TOL:
                raise PhysicsError(
                    f"mode {mode} violates the uncertainty floor: {vp} * {vm} < 1"
                )
