"""Brute-force spectra used to check the perturbative coupling formulas.

Two engines are provided:

* ``normal_modes`` treats every junction as a linear inductor and
  diagonalizes the resulting LC network;
* ``charge_spectrum`` diagonalizes the full transmon Hamiltonian
  ``sum_k 4 E_Ck n_k^2 - E_Jk cos(phi_k) + sum_{i<j} 4 E_ij n_i n_j``
  in a truncated charge basis.

Both report mode participations on each element so that the two
qubit-like modes of a resonant pair can be identified and the effective
coupling read off the splitting.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.optimize import brentq
from scipy.sparse.linalg import eigsh

from .capnet import CapacitanceNetwork, EnergySet, invert_capacitance, mode_capacitance
from .constants import DEFAULT, PhysConstants
from .coupling import ej_for_frequency
from .errors import DegenerateError, DomainError, InvalidNetworkError

QUBIT_PARTICIPATION = 0.6
MAX_DIMENSION = 30_000
DENSE_LIMIT = 2_000
EDGE_POPULATION = 1e-8
MIN_NCUT = 8

# 1/sqrt(fF * nH) in rad/s is 1e12; expressed as cycles per ns
_LC_TO_GHZ = 1e3 / (2 * math.pi)


class TruncationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SpectrumResult:
    """Sorted mode (or transition) frequencies with element participations.

    ``weights[m, k]`` is the weight of mode ``m`` on element ``elements[k]``;
    ``parity[m]`` is +1 (-1) for a mode symmetric (antisymmetric) in the
    qubit pair and 0 when it does not apply.
    """

    frequencies: np.ndarray
    elements: tuple[str, ...]
    weights: np.ndarray
    parity: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.labels:
            labels = tuple(self.elements[int(np.argmax(w))] if np.max(w) > 0.5 else "hybrid" for w in self.weights)
            object.__setattr__(self, "labels", labels)

    def pair_weight(self, pair: Sequence[str]) -> np.ndarray:
        idx = [self.elements.index(e) for e in pair]
        return self.weights[:, idx].sum(axis=1)

    def qubit_modes(self, pair: Sequence[str], threshold: float = QUBIT_PARTICIPATION) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.pair_weight(pair) > threshold)]


# -- linear normal modes ------------------------------------------------------


@dataclass(frozen=True)
class LinearCircuit:
    """Capacitance matrix in mode coordinates (fF) plus junction inductances (nH).

    ``inductances`` maps element ids to the inductance across that
    element's Delta mode; Sigma modes carry none and drop out of the
    oscillation spectrum.
    """

    capacitance: np.ndarray
    modes: tuple[tuple[str, str], ...]
    inductances: Mapping[str, float]
    qubits: tuple[str, str] | None = None

    def __post_init__(self):
        c = np.asarray(self.capacitance, dtype=float)
        if c.shape != (len(self.modes), len(self.modes)) or not np.allclose(c, c.T):
            raise InvalidNetworkError("capacitance matrix must be square, symmetric and match the mode list")
        try:
            np.linalg.cholesky(c)
        except np.linalg.LinAlgError:
            raise InvalidNetworkError("capacitance matrix is not positive definite") from None
        deltas = {el for kind, el in self.modes if kind == "Delta"}
        for el, L in self.inductances.items():
            if el not in deltas:
                raise InvalidNetworkError(f"no junction mode for element {el!r}")
            if not (L > 0 and math.isfinite(L)):
                raise InvalidNetworkError(f"inductance of {el!r} must be positive, got {L}")
        object.__setattr__(self, "capacitance", c)

    @property
    def elements(self) -> tuple[str, ...]:
        return tuple(el for kind, el in self.modes if kind == "Delta" and el in self.inductances)

    def bare_frequency(self, element_id: str) -> float:
        """Uncoupled LC frequency of one element (GHz)."""
        cinv = invert_capacitance(self.capacitance)
        k = self.modes.index(("Delta", element_id))
        return _LC_TO_GHZ * math.sqrt(cinv[k, k] / self.inductances[element_id])


def linear_circuit(network: CapacitanceNetwork, inductances: Mapping[str, float]) -> LinearCircuit:
    c, transform = mode_capacitance(network)
    try:
        qubits = network.topology.qubits
    except InvalidNetworkError:
        qubits = None
    return LinearCircuit(c, transform.modes, dict(inductances), qubits)


def linear_circuit_for_frequencies(network: CapacitanceNetwork, frequencies: Mapping[str, float]) -> LinearCircuit:
    """Choose inductances so each element's bare LC frequency equals ``frequencies[el]`` (GHz)."""
    c, transform = mode_capacitance(network)
    cinv = invert_capacitance(c)
    inductances = {}
    for el, w in frequencies.items():
        if not w > 0:
            raise DomainError(f"frequency of {el!r} must be positive, got {w}")
        k = transform.delta_index(el)
        inductances[el] = cinv[k, k] * (_LC_TO_GHZ / w) ** 2
    try:
        qubits = network.topology.qubits
    except InvalidNetworkError:
        qubits = None
    return LinearCircuit(c, transform.modes, inductances, qubits)


def normal_modes(circuit: LinearCircuit) -> SpectrumResult:
    """Oscillation frequencies of the linearized circuit.

    Sigma coordinates are cyclic, so their charges vanish and the Delta
    modes see the corresponding block of the inverse capacitance matrix.
    """
    cinv = invert_capacitance(circuit.capacitance)
    elements = circuit.elements
    idx = [circuit.modes.index(("Delta", el)) for el in elements]
    k_inv = cinv[np.ix_(idx, idx)]
    s = np.array([1.0 / math.sqrt(circuit.inductances[el]) for el in elements])
    dyn = s[:, None] * k_inv * s[None, :]
    ev, vec = np.linalg.eigh(dyn)
    if np.any(ev <= 0):
        raise InvalidNetworkError("non-positive normal-mode eigenvalue")
    freqs = _LC_TO_GHZ * np.sqrt(ev)
    weights = (vec**2).T
    parity = np.zeros(len(freqs), dtype=int)
    if circuit.qubits is not None and all(q in elements for q in circuit.qubits):
        i, j = (elements.index(q) for q in circuit.qubits)
        parity = np.sign(vec[i, :] * vec[j, :]).astype(int)
    return SpectrumResult(freqs, elements, weights, parity)


# -- splitting readout --------------------------------------------------------


def _qubit_pair(spectrum: SpectrumResult, pair: Sequence[str], threshold: float) -> tuple[int, int]:
    modes = spectrum.qubit_modes(pair, threshold)
    if len(modes) != 2:
        raise DegenerateError(
            f"expected two qubit-like modes on {tuple(pair)}, found {len(modes)} above participation {threshold}"
        )
    return modes[0], modes[1]


def extract_g_from_splitting(
    spectrum: SpectrumResult, pair: Sequence[str] = ("q1", "q2"), threshold: float = QUBIT_PARTICIPATION
) -> float:
    """|g| = half the splitting of the two qubit-like modes (GHz)."""
    a, b = _qubit_pair(spectrum, pair, threshold)
    return abs(spectrum.frequencies[b] - spectrum.frequencies[a]) / 2.0


def signed_g_from_splitting(
    spectrum: SpectrumResult, pair: Sequence[str] = ("q1", "q2"), threshold: float = QUBIT_PARTICIPATION
) -> float:
    """g = (w_sym - w_antisym) / 2, positive when the symmetric mode lies higher."""
    a, b = _qubit_pair(spectrum, pair, threshold)
    pa, pb = spectrum.parity[a], spectrum.parity[b]
    if {int(pa), int(pb)} != {1, -1}:
        raise DegenerateError("qubit-like modes are not a symmetric/antisymmetric pair")
    sym, anti = (a, b) if pa > 0 else (b, a)
    return (spectrum.frequencies[sym] - spectrum.frequencies[anti]) / 2.0


def nm_coupling(network: CapacitanceNetwork, omega_q: float, omega_c: float) -> float:
    """Signed effective coupling from normal modes, qubits degenerate at ``omega_q``.

    ``omega_q`` and ``omega_c`` are the bare linear (LC) frequencies.
    """
    q1, q2 = network.topology.qubits
    c = network.topology.coupler
    circuit = linear_circuit_for_frequencies(network, {q1: omega_q, q2: omega_q, c: omega_c})
    return signed_g_from_splitting(normal_modes(circuit), (q1, q2))


def nm_zero_crossing(network: CapacitanceNetwork, omega_q: float, lo: float, hi: float) -> float:
    """Coupler frequency in [lo, hi] where the normal-mode coupling changes sign."""
    fn = lambda wc: nm_coupling(network, omega_q, wc)  # noqa: E731
    if fn(lo) * fn(hi) > 0:
        raise DegenerateError(f"normal-mode coupling does not change sign on [{lo}, {hi}] GHz")
    return brentq(fn, lo, hi, xtol=1e-12, rtol=1e-14)


# -- charge basis -------------------------------------------------------------


@dataclass(frozen=True)
class ChargeBasisProblem:
    """Transmons in a truncated charge basis (offset charge 0).

    ``couplings`` maps index pairs ``(i, j)`` to coupling energies E_ij in
    GHz; ``n_cut`` is per element or shared.
    """

    E_C: tuple[float, ...]
    E_J: tuple[float, ...]
    couplings: Mapping[tuple[int, int], float] = field(default_factory=dict)
    n_cut: int | tuple[int, ...] = 12
    elements: tuple[str, ...] = ()
    qubits: tuple[str, str] | None = None
    n_levels: int = 6

    def __post_init__(self):
        n = len(self.E_C)
        if len(self.E_J) != n or n == 0:
            raise DomainError("E_C and E_J must have the same non-zero length")
        for ec in self.E_C:
            if not ec > 0:
                raise DomainError(f"E_C must be positive, got {ec}")
        for ej in self.E_J:
            if not ej >= 0:
                raise DomainError(f"E_J must be non-negative, got {ej}")
        cuts = (self.n_cut,) * n if isinstance(self.n_cut, int) else tuple(self.n_cut)
        if len(cuts) != n or min(cuts) < 1:
            raise DomainError(f"bad charge cutoff {self.n_cut!r}")
        object.__setattr__(self, "n_cut", cuts)
        if not self.elements:
            object.__setattr__(self, "elements", tuple(f"e{k}" for k in range(n)))
        if self.dimension > MAX_DIMENSION:
            raise DomainError(f"Hilbert dimension {self.dimension} exceeds cap {MAX_DIMENSION}")
        for i, j in self.couplings:
            if not (0 <= i < n and 0 <= j < n and i != j):
                raise DomainError(f"bad coupling index pair {(i, j)}")

    @property
    def dimension(self) -> int:
        return int(np.prod([2 * c + 1 for c in self.n_cut]))


def charge_problem(
    energies: EnergySet, E_J: Mapping[str, float], n_cut: int = 12, n_levels: int = 6
) -> ChargeBasisProblem:
    """Charge-basis problem for every element of an energy set."""
    ids = [e.id for e in energies.topology.elements]
    couplings = {(i, j): energies.E(a, b) for i, a in enumerate(ids) for j, b in enumerate(ids) if i < j}
    try:
        qubits = energies.topology.qubits
    except InvalidNetworkError:
        qubits = None
    return ChargeBasisProblem(
        tuple(energies.charging[i] for i in ids),
        tuple(E_J[i] for i in ids),
        couplings,
        n_cut,
        tuple(ids),
        qubits,
        n_levels,
    )


def _transmon_ops(ec: float, ej: float, ncut: int) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    n = np.arange(-ncut, ncut + 1, dtype=float)
    dim = len(n)
    hop = sp.diags([np.full(dim - 1, -ej / 2), np.full(dim - 1, -ej / 2)], [1, -1])
    h = sp.diags(4.0 * ec * n**2) + hop
    return h.tocsr(), sp.diags(n).tocsr()


def _embed(op: sp.spmatrix, k: int, dims: Sequence[int]) -> sp.csr_matrix:
    out = sp.identity(1, format="csr")
    for i, d in enumerate(dims):
        out = sp.kron(out, op if i == k else sp.identity(d, format="csr"), format="csr")
    return out


def charge_hamiltonian(problem: ChargeBasisProblem) -> sp.csr_matrix:
    dims = [2 * c + 1 for c in problem.n_cut]
    h = sp.csr_matrix((problem.dimension, problem.dimension))
    numbers = []
    for k, (ec, ej, cut) in enumerate(zip(problem.E_C, problem.E_J, problem.n_cut)):
        hk, nk = _transmon_ops(ec, ej, cut)
        h = h + _embed(hk, k, dims)
        numbers.append(_embed(nk, k, dims))
    for (i, j), e in problem.couplings.items():
        if e:
            h = h + 4.0 * e * (numbers[i] @ numbers[j])
    return h.tocsr()


def _lowest(h: sp.csr_matrix, k: int) -> tuple[np.ndarray, np.ndarray]:
    dim = h.shape[0]
    k = min(k, dim)
    if dim <= DENSE_LIMIT:
        ev, vec = scipy.linalg.eigh(h.toarray(), subset_by_index=[0, k - 1])
    else:
        # fixed start vector keeps Lanczos deterministic
        ev, vec = eigsh(h, k=k, which="SA", tol=1e-13, v0=np.full(dim, 1.0 / math.sqrt(dim)))
        order = np.argsort(ev)
        ev, vec = ev[order], vec[:, order]
    return ev, vec


def charge_spectrum(problem: ChargeBasisProblem) -> SpectrumResult:
    """Transition frequencies out of the ground state (GHz).

    ``weights[m, k]`` is the overlap of level ``m + 1`` with the bare state
    that has one excitation on element ``k`` and none elsewhere.
    """
    n_el = len(problem.E_C)
    h = charge_hamiltonian(problem)
    ev, vec = _lowest(h, problem.n_levels + 1)

    dims = [2 * c + 1 for c in problem.n_cut]
    probs = (np.abs(vec[:, 1:]) ** 2).reshape(*dims, -1)
    edge = 0.0
    for k in range(n_el):
        p = np.moveaxis(probs, k, 0)
        for face in (p[0], p[-1]):
            edge = max(edge, float(face.reshape(-1, face.shape[-1]).sum(axis=0).max()))
    if edge > EDGE_POPULATION:
        warnings.warn(f"charge truncation: edge population {edge:.2e} exceeds {EDGE_POPULATION:g}", TruncationWarning, stacklevel=2)

    bare = []
    for ec, ej, cut in zip(problem.E_C, problem.E_J, problem.n_cut):
        hk, _ = _transmon_ops(ec, ej, cut)
        _, vk = scipy.linalg.eigh(hk.toarray(), subset_by_index=[0, 1])
        bare.append(vk)
    singles = []
    for k in range(n_el):
        state = np.ones(1)
        for i in range(n_el):
            state = np.kron(state, bare[i][:, 1 if i == k else 0])
        singles.append(state)
    singles = np.array(singles)
    amps = vec[:, 1:].T @ singles.T
    weights = amps**2

    parity = np.zeros(len(ev) - 1, dtype=int)
    if problem.qubits is not None:
        i, j = (problem.elements.index(q) for q in problem.qubits)
        sym = (amps[:, i] + amps[:, j]) ** 2
        anti = (amps[:, i] - amps[:, j]) ** 2
        parity = np.where(sym > anti, 1, -1)
    return SpectrumResult(ev[1:] - ev[0], problem.elements, weights, parity)


def single_transmon(E_C: float, E_J: float, n_cut: int = 12) -> tuple[float, float]:
    """(omega_01, anharmonicity omega_12 - omega_01) of one transmon (GHz)."""
    spec = charge_spectrum(ChargeBasisProblem((E_C,), (E_J,), n_cut=n_cut, n_levels=2))
    w01, w02 = spec.frequencies[:2]
    return float(w01), float(w02 - 2 * w01)


def charge_coupling(energies: EnergySet, omega_q: float, omega_c: float, n_cut: int = 12) -> float:
    """Signed effective coupling from the charge-basis spectrum.

    Both qubits get the junction energy that puts them at transmon frequency
    ``omega_q``; the coupler is placed at ``omega_c``.
    """
    q1, q2 = energies.topology.qubits
    c = energies.topology.coupler
    ej = {
        q1: ej_for_frequency(omega_q, energies.charging[q1]),
        q2: ej_for_frequency(omega_q, energies.charging[q2]),
        c: ej_for_frequency(omega_c, energies.charging[c]),
    }
    spectrum = charge_spectrum(charge_problem(energies, ej, n_cut=n_cut, n_levels=4))
    return signed_g_from_splitting(spectrum, (q1, q2))


def inductances_from_ej(E_J: Mapping[str, float], constants: PhysConstants = DEFAULT) -> dict[str, float]:
    return {el: constants.inductance_nH(ej) for el, ej in E_J.items()}
