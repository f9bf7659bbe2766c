"""Physical constants in the toolkit's unit system.

Capacitance is in fF, energies and frequencies in GHz (h = 1), inductance
in nH.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _c

#: e^2/h in GHz*fF, from the exact SI values of e and h.
E2_OVER_H = _c.e**2 / _c.h * 1e-9 / 1e-15


@dataclass(frozen=True)
class PhysConstants:
    e2_over_h: float = E2_OVER_H

    def __post_init__(self):
        if not (self.e2_over_h > 0 and math.isfinite(self.e2_over_h)):
            raise ValueError(f"e2_over_h must be positive, got {self.e2_over_h}")

    def charging_energy(self, capacitance_fF: float) -> float:
        """E_C = e^2 / (2C) in GHz."""
        return self.e2_over_h / (2.0 * capacitance_fF)

    def inductance_nH(self, ej_GHz: float) -> float:
        """Josephson inductance (Phi0/2pi)^2 / E_J in nH."""
        # (Phi0/2pi)^2 / h = 1 / (16 pi^2 e^2/h); the 1e6 converts GHz*fF to SI.
        return 1e6 / (16.0 * math.pi**2 * self.e2_over_h * ej_GHz)

    def josephson_energy(self, inductance_nH: float) -> float:
        return 1e6 / (16.0 * math.pi**2 * self.e2_over_h * inductance_nH)


DEFAULT = PhysConstants()
