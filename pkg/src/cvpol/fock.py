"""Brute-force Stokes statistics for two-mode coherent states.

Builds the product coherent state |alpha_H> |alpha_V> in a truncated number
basis, applies the Stokes observables as sparse operators and returns exact
means and variances.  This is deliberately restricted to coherent inputs:
their Fock expansion converges fast and their linearized Stokes variances
are exact, which makes the comparison against the Gaussian pipeline a sharp
consistency check rather than an approximation contest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .stokes import StokesMeans

NORM_DEFICIT_TOL = 1e-8


@dataclass(frozen=True)
class FockStokes:
    """Exact Stokes statistics of a two-mode coherent state."""

    means: StokesMeans
    variances: tuple[float, float, float]


def default_cutoff(alpha_h: float, alpha_v: float) -> int:
    """Photon-number cutoff keeping the truncated norm deficit below 1e-8.

    peak^2 + 8*peak tracks the Poisson mean plus many standard deviations;
    the constant floor covers small amplitudes where the tail decays only
    factorially.
    """
    peak = max(abs(alpha_h), abs(alpha_v))
    return int(math.ceil(peak * peak + 8.0 * peak)) + 12


def _coherent_vector(alpha: float, n_max: int) -> np.ndarray:
    # c_n = exp(-|a|^2/2) a^n / sqrt(n!), built by recurrence to avoid overflow
    vec = np.zeros(n_max + 1)
    vec[0] = math.exp(-0.5 * alpha * alpha)
    for n in range(1, n_max + 1):
        vec[n] = vec[n - 1] * alpha / math.sqrt(n)
    return vec


def _annihilation(n_max: int) -> sparse.csr_matrix:
    data = np.sqrt(np.arange(1, n_max + 1, dtype=float))
    return sparse.diags(data, offsets=1).tocsr()


def fock_oracle(alpha_h: float, alpha_v: float, theta: float,
                n_max: int | None = None) -> FockStokes:
    """Exact Stokes means and variances of |alpha_H>|alpha_V> with relative
    phase theta, computed in a truncated number basis.

    Raises ValueError when the truncation leaves a norm deficit above 1e-8.
    """
    if n_max is None:
        n_max = default_cutoff(alpha_h, alpha_v)
    psi_h = _coherent_vector(alpha_h, n_max)
    psi_v = _coherent_vector(alpha_v, n_max)
    deficit = 1.0 - (psi_h @ psi_h) * (psi_v @ psi_v)
    if deficit > NORM_DEFICIT_TOL:
        raise ValueError(
            f"cutoff {n_max} leaves norm deficit {deficit:.3e} > {NORM_DEFICIT_TOL}"
        )
    psi = np.kron(psi_h, psi_v).astype(complex)
    psi /= np.linalg.norm(psi)

    dim = n_max + 1
    eye = sparse.identity(dim, format="csr")
    a_h = sparse.kron(_annihilation(n_max), eye, format="csr")
    a_v = sparse.kron(eye, _annihilation(n_max), format="csr")
    n_h = (a_h.conj().T @ a_h).tocsr()
    n_v = (a_v.conj().T @ a_v).tocsr()
    cross = (a_h.conj().T @ a_v).tocsr()  # a_H^dag a_V

    phase = np.exp(1j * theta)
    s0 = n_h + n_v
    s1 = n_h - n_v
    s2 = phase * cross + np.conj(phase) * cross.conj().T
    s3 = -1j * phase * cross + 1j * np.conj(phase) * cross.conj().T

    def expect(op) -> float:
        return float(np.real(np.vdot(psi, op @ psi)))

    def variance(op) -> float:
        mean = expect(op)
        return expect(op @ op) - mean * mean

    means = StokesMeans(s0=expect(s0), s1=expect(s1), s2=expect(s2), s3=expect(s3))
    return FockStokes(
        means=means,
        variances=(variance(s1), variance(s2), variance(s3)),
    )
