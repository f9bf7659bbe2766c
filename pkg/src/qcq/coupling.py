"""Transmon frequencies, pairwise couplings and the effective qubit-qubit coupling.

All frequencies are in GHz.  Only the ``omega_c > omega_q`` regime is
supported.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .capnet import EnergySet
from .errors import DegenerateError, DomainError

#: Coupler-qubit detunings closer than this (GHz) are treated as a pole.
POLE_GUARD = 1e-3
#: Absolute slack on the A = 1 boundary of the zero-coupling condition.
A_SLACK = 1e-12
#: Below this E_J/E_C a transmon is outside the charge-insensitive regime.
TRANSMON_RATIO = 20.0


class Regime(str, enum.Enum):
    """Ordering of the two critical coupler frequencies."""

    ON_BELOW_OFF = "on_below_off"
    ON_ABOVE_OFF = "on_above_off"

    @property
    def on_sign(self) -> int:
        """Sign of g_on for B > 0."""
        return -1 if self is Regime.ON_BELOW_OFF else 1


@dataclass(frozen=True)
class RegimeTag:
    omega_on: float
    omega_off: float

    def __post_init__(self):
        if not (self.omega_on > 0 and self.omega_off > 0) or self.omega_on == self.omega_off:
            raise DomainError(f"need distinct positive critical frequencies, got {self.omega_on}, {self.omega_off}")

    @property
    def ordering(self) -> Regime:
        return Regime.ON_BELOW_OFF if self.omega_on < self.omega_off else Regime.ON_ABOVE_OFF

    @property
    def omega_s(self) -> float:
        return min(self.omega_on, self.omega_off)

    @property
    def omega_l(self) -> float:
        return max(self.omega_on, self.omega_off)


@dataclass(frozen=True)
class TransmonParams:
    E_C: float
    E_J: float

    def __post_init__(self):
        _positive(E_C=self.E_C, E_J=self.E_J)

    @property
    def ratio(self) -> float:
        return self.E_J / self.E_C

    @property
    def outside_transmon_regime(self) -> bool:
        return self.ratio < TRANSMON_RATIO

    @property
    def frequency(self) -> float:
        return transmon_frequency(self)

    @property
    def linear_frequency(self) -> float:
        return math.sqrt(8.0 * self.E_C * self.E_J)


@dataclass(frozen=True)
class OperatingPoint:
    omega_q1: float
    omega_q2: float
    omega_c: float

    def __post_init__(self):
        _positive(omega_q1=self.omega_q1, omega_q2=self.omega_q2, omega_c=self.omega_c)

    @property
    def deltas(self) -> tuple[float, float]:
        return self.omega_c - self.omega_q1, self.omega_c - self.omega_q2

    @property
    def sums(self) -> tuple[float, float]:
        return self.omega_c + self.omega_q1, self.omega_c + self.omega_q2

    @property
    def in_regime(self) -> bool:
        return self.omega_c > max(self.omega_q1, self.omega_q2)


def _positive(**values: float) -> None:
    for name, v in values.items():
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name} must be positive and finite, got {v}")


def transmon_frequency(p: TransmonParams) -> float:
    """sqrt(8 E_C E_J) - E_C."""
    return math.sqrt(8.0 * p.E_C * p.E_J) - p.E_C


def ej_for_frequency(omega: float, E_C: float) -> float:
    """Josephson energy giving transmon frequency ``omega``."""
    _positive(omega=omega, E_C=E_C)
    return (omega + E_C) ** 2 / (8.0 * E_C)


def pairwise_g(E_ij: float, p_i: TransmonParams, p_j: TransmonParams) -> float:
    """Capacitive coupling strength between two transmons."""
    return E_ij / math.sqrt(2.0) * (p_i.ratio * p_j.ratio) ** 0.25


def general_g(g12: float, g1c: float, g2c: float, pt: OperatingPoint) -> float:
    """Effective qubit-qubit coupling from bare couplings (second order)."""
    d1, d2 = pt.deltas
    if min(abs(d1), abs(d2)) < POLE_GUARD:
        raise DegenerateError(f"coupler at {pt.omega_c} GHz is degenerate with a qubit")
    s1, s2 = pt.sums
    return g12 - 0.5 * g1c * g2c * (1 / d1 + 1 / d2 + 1 / s1 + 1 / s2)


def simplified_g(A: float, B: float, omega_q: float, omega_c: float) -> float:
    """g = (2 w_q / B) (A - w_c^2 / (w_c^2 - w_q^2)) for identical qubits."""
    if B == 0:
        raise DegenerateError("B = 0")
    if abs(omega_c - omega_q) < POLE_GUARD:
        raise DegenerateError(f"coupler at {omega_c} GHz is degenerate with the qubits")
    return 2.0 * omega_q / B * (A - omega_c**2 / (omega_c**2 - omega_q**2))


def mediated_scale(B: float, omega_q: float, omega_c: float) -> float:
    """Magnitude of the coupler-mediated term of g, (2 w_q/|B|) w_c^2/(w_c^2 - w_q^2).

    Unlike g itself this never vanishes in the dispersive regime, which makes
    it the natural yardstick for comparing g against numerical oracles.
    """
    if B == 0:
        raise DegenerateError("B = 0")
    if abs(omega_c - omega_q) < POLE_GUARD:
        raise DegenerateError(f"coupler at {omega_c} GHz is degenerate with the qubits")
    return 2.0 * omega_q / abs(B) * omega_c**2 / abs(omega_c**2 - omega_q**2)


def energies_g(energies: EnergySet, E_Jq: float, E_Jc: float, linear: bool = False) -> float:
    """Effective coupling straight from charging/coupling energies.

    With ``linear=False`` this is the simplified form evaluated with transmon
    frequencies.  ``linear=True`` keeps the linear frequencies
    ``sqrt(8 E_C E_J)`` in the prefactors and in the numerator of the
    mediated term, as in the unapproximated expression.
    """
    energies.require_symmetric()
    q = TransmonParams(energies.E_Cq, E_Jq)
    c = TransmonParams(energies.E_Cc, E_Jc)
    wq, wc = q.frequency, c.frequency
    if abs(wc - wq) < POLE_GUARD:
        raise DegenerateError(f"coupler at {wc} GHz is degenerate with the qubits")
    pref_q = q.linear_frequency if linear else wq
    num_c = c.linear_frequency * wc if linear else wc**2
    mediated = energies.E1c * energies.E2c / (2 * energies.E_Cq * energies.E_Cc) * num_c / (wc**2 - wq**2)
    return pref_q / 4.0 * (energies.E12 / energies.E_Cq - mediated)


def dispersive_beta(B: float, omega_q: float, omega_c: float) -> float:
    """Qubit-coupler dispersive rate sqrt|B| (w_c - w_q) / sqrt(w_q w_c)."""
    if B == 0:
        raise DegenerateError("B = 0")
    _positive(omega_q=omega_q, omega_c=omega_c)
    if omega_c <= omega_q:
        raise DomainError(f"dispersive rate needs omega_c > omega_q, got {omega_c} <= {omega_q}")
    return math.sqrt(abs(B)) * (omega_c - omega_q) / math.sqrt(omega_q * omega_c)


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    A: float
    B: float
    beta_s: float
    upper_limit: float
    reason: str

    def __bool__(self) -> bool:
        return self.feasible

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "A": self.A,
            "B_abs": abs(self.B),
            "beta_s": self.beta_s,
            "band": [1.0, self.upper_limit],
            "reason": self.reason,
        }


def zero_coupling_upper_limit(B: float, beta_s: float) -> float:
    return 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * abs(B) / beta_s**2))


def zero_coupling_feasible(A: float, B: float, beta_s: float) -> FeasibilityVerdict:
    """Check 1 < A <= (1 + sqrt(1 + 4|B|/beta_s^2)) / 2."""
    _positive(beta_s=beta_s)
    upper = zero_coupling_upper_limit(B, beta_s)
    if A <= 1.0 + A_SLACK:
        ok, reason = False, f"A = {A:.6g} <= 1: the coupler can never cancel the direct coupling"
    elif A > upper:
        ok, reason = False, f"A = {A:.6g} exceeds {upper:.6g}: zero coupling would violate beta >= {beta_s:g}"
    else:
        ok, reason = True, f"1 < A = {A:.6g} <= {upper:.6g}"
    return FeasibilityVerdict(ok, A, B, beta_s, upper, reason)


def omega_off(A: float, omega_q: float) -> float:
    """Coupler frequency where the effective coupling vanishes."""
    if A <= 1.0 + A_SLACK:
        raise DegenerateError(f"A = {A:.6g} <= 1 has no zero crossing above the qubit")
    return omega_q * math.sqrt(A / (A - 1.0))


def coupler_frequency_for_beta(B: float, omega_q: float, beta: float) -> float:
    """Coupler frequency above ``omega_q`` at which the dispersive rate equals ``beta``."""
    if B == 0:
        raise DegenerateError("B = 0")
    _positive(omega_q=omega_q, beta=beta)
    s = (math.sqrt(beta * beta + 4 * abs(B)) - beta) / (2 * math.sqrt(abs(B)))
    return omega_q / (s * s)
