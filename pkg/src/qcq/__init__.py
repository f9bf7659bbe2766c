"""Design toolkit for qubit-coupler-qubit (QCQ) superconducting circuits.

Submodules
----------
capnet
    Capacitance networks, the Maxwell matrix and charging/coupling energies.
coupling
    Transmon frequencies, effective coupling and the zero-coupling condition.
bound
    Upper bound on the turned-on coupling for a coupler frequency ceiling.
designer
    Inverse design from coupling targets to capacitances and junctions.
oracle
    Normal-mode and charge-basis diagonalization used for verification.
cli
    The ``qcq`` command.
"""

from .bound import g_on_max, maximize_f, params_from_xy
from .capnet import (
    CapacitanceNetwork,
    ElementTopology,
    EnergySet,
    extract_energies,
    flip_element_sign,
    flip_node_sign,
    load_network,
)
from .constants import DEFAULT, PhysConstants
from .coupling import (
    Regime,
    dispersive_beta,
    general_g,
    omega_off,
    pairwise_g,
    simplified_g,
    zero_coupling_feasible,
)
from .designer import DesignSpec, load_spec, run_design
from .errors import (
    DegenerateError,
    DomainError,
    InfeasibleDesignError,
    InvalidNetworkError,
    NumericalFailureError,
    QCQError,
)

__version__ = "0.1.0"

__all__ = [
    "CapacitanceNetwork",
    "DEFAULT",
    "DegenerateError",
    "DesignSpec",
    "DomainError",
    "ElementTopology",
    "EnergySet",
    "InfeasibleDesignError",
    "InvalidNetworkError",
    "NumericalFailureError",
    "PhysConstants",
    "QCQError",
    "Regime",
    "dispersive_beta",
    "extract_energies",
    "flip_element_sign",
    "flip_node_sign",
    "g_on_max",
    "general_g",
    "load_network",
    "load_spec",
    "maximize_f",
    "omega_off",
    "pairwise_g",
    "params_from_xy",
    "run_design",
    "simplified_g",
    "zero_coupling_feasible",
]
