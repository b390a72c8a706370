"""Frequency dependence of squeezing, as a Lorentzian stand-in.

A single corner frequency pulls both quadrature variances toward the vacuum
level at high sideband frequency.  This is a qualitative model for sweeping
criteria versus analysis frequency; it is not fitted to any source.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PhysicsError


@dataclass(frozen=True)
class SqueezingSpectrum:
    """Squeezed floor v_min, antisqueezed ceiling v_max, corner frequency in MHz."""

    v_min: float
    v_max: float
    corner_mhz: float

    def __post_init__(self):
        if not 0.0 < self.v_min <= 1.0:
            raise PhysicsError(f"v_min must lie in (0, 1], got {self.v_min}")
        if self.v_max < 1.0 or self.v_min * self.v_max < 1.0:
            raise PhysicsError(
                f"v_max must satisfy v_min * v_max >= 1, got {self.v_max}"
            )
        if self.corner_mhz <= 0.0:
            raise PhysicsError(f"corner frequency must be positive, got {self.corner_mhz}")

    def variances(self, f_mhz: float) -> tuple[float, float]:
        """(V+, V-) at sideband frequency f_mhz; both tend to 1 as f grows."""
        lorentz = 1.0 / (1.0 + (f_mhz / self.corner_mhz) ** 2)
        v_plus = 1.0 - (1.0 - self.v_min) * lorentz
        v_minus = 1.0 + (self.v_max - 1.0) * lorentz
        return v_plus, v_minus
