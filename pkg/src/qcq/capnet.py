"""Capacitance networks, Maxwell matrices and charging/coupling energies.

A network is a set of metal plates (nodes) belonging to circuit elements.
Grounded elements own one plate, floating elements own two.  The Maxwell
matrix is built on node fluxes and transformed onto junction (``Delta``)
and common (``Sigma``) mode coordinates before inversion:

    C = S^T M S,   E_Ck = (e^2/h) C^-1[Dk, Dk] / 2,   E_ij = (e^2/h) C^-1[Di, Dj]

Floating elements map ``(Phi_k1, Phi_k2) = S_k (Phi_Sigma, Phi_Delta)`` with
``S_k = [[1/2, 1/2], [1/2, -1/2]]``; the Sigma column precedes the Delta
column.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Any, Mapping

import numpy as np

from .constants import DEFAULT, PhysConstants
from .errors import DegenerateError, DomainError, InvalidNetworkError, NumericalFailureError

GROUNDED = "G"
FLOATING = "F"

QUBIT = "qubit"
COUPLER = "coupler"
OTHER = "other"

MAX_CONDITION = 1e12
SYMMETRY_RTOL = 1e-6


@dataclass(frozen=True)
class Element:
    id: str
    kind: str
    role: str = OTHER

    def __post_init__(self):
        if self.kind not in (GROUNDED, FLOATING):
            raise InvalidNetworkError(f"element {self.id!r}: type must be 'G' or 'F', got {self.kind!r}")
        if self.role not in (QUBIT, COUPLER, OTHER):
            raise InvalidNetworkError(f"element {self.id!r}: unknown role {self.role!r}")
        if not self.id or "." in self.id:
            raise InvalidNetworkError(f"invalid element id {self.id!r}")

    @property
    def nodes(self) -> tuple[str, ...]:
        if self.kind == GROUNDED:
            return (self.id,)
        return (f"{self.id}.1", f"{self.id}.2")


@dataclass(frozen=True)
class ElementTopology:
    """Ordered circuit elements.

    If no roles are given and there are exactly three elements, the middle
    one is taken as the coupler and the outer two as qubits.
    """

    elements: tuple[Element, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        ids = [e.id for e in elements]
        if len(set(ids)) != len(ids):
            raise InvalidNetworkError(f"duplicate element ids in {ids}")
        if not elements:
            raise InvalidNetworkError("topology has no elements")
        if len(elements) == 3 and all(e.role == OTHER for e in elements):
            roles = (QUBIT, COUPLER, QUBIT)
            elements = tuple(Element(e.id, e.kind, r) for e, r in zip(elements, roles))
        object.__setattr__(self, "elements", elements)

    @classmethod
    def from_config(cls, config: str, ids: tuple[str, str, str] = ("q1", "c", "q2")) -> "ElementTopology":
        """Build a QCQ topology from a configuration string such as ``"G-F-G"``."""
        kinds = config.replace("-", "").upper()
        if len(kinds) != 3:
            raise InvalidNetworkError(f"expected a three-element configuration, got {config!r}")
        roles = (QUBIT, COUPLER, QUBIT)
        return cls(tuple(Element(i, k, r) for i, k, r in zip(ids, kinds, roles)))

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(n for e in self.elements for n in e.nodes)

    @property
    def node_element(self) -> dict[str, str]:
        return {n: e.id for e in self.elements for n in e.nodes}

    def element(self, element_id: str) -> Element:
        for e in self.elements:
            if e.id == element_id:
                return e
        raise InvalidNetworkError(f"unknown element {element_id!r}")

    @property
    def qubits(self) -> tuple[str, str]:
        q = [e.id for e in self.elements if e.role == QUBIT]
        if len(q) != 2:
            raise InvalidNetworkError(f"QCQ analysis needs exactly two qubits, found {q}")
        return q[0], q[1]

    @property
    def coupler(self) -> str:
        c = [e.id for e in self.elements if e.role == COUPLER]
        if len(c) != 1:
            raise InvalidNetworkError(f"QCQ analysis needs exactly one coupler, found {c}")
        return c[0]

    @property
    def config(self) -> str:
        return "-".join(e.kind for e in self.elements)


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class CapacitanceNetwork:
    """Self and mutual capacitances (fF) on the nodes of a topology.

    Absent self capacitances and mutual pairs are zero.  ``node_signs``
    holds the flux-sign convention of each node (default +1).
    """

    topology: ElementTopology
    self_caps: Mapping[str, float] = field(default_factory=dict)
    mutual_caps: Mapping[tuple[str, str], float] = field(default_factory=dict)
    node_signs: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        nodes = set(self.topology.nodes)

        self_caps = {n: 0.0 for n in self.topology.nodes}
        for n, v in self.self_caps.items():
            if n not in nodes:
                raise InvalidNetworkError(f"self capacitance on unknown node {n!r}")
            self_caps[n] = _check_cap(v, n)

        mutual: dict[tuple[str, str], float] = {}
        for (a, b), v in self.mutual_caps.items():
            for n in (a, b):
                if n not in nodes:
                    raise InvalidNetworkError(f"mutual capacitance on unknown node {n!r}")
            if a == b:
                raise InvalidNetworkError(f"mutual capacitance from node {a!r} to itself")
            key = _pair(a, b)
            if key in mutual:
                raise InvalidNetworkError(f"mutual capacitance {key} given twice")
            mutual[key] = _check_cap(v, f"{a}-{b}")

        signs = {n: 1 for n in self.topology.nodes}
        for n, s in self.node_signs.items():
            if n not in nodes:
                raise InvalidNetworkError(f"node sign on unknown node {n!r}")
            if s not in (1, -1):
                raise InvalidNetworkError(f"node sign of {n!r} must be +1 or -1, got {s!r}")
            signs[n] = int(s)

        object.__setattr__(self, "self_caps", self_caps)
        object.__setattr__(self, "mutual_caps", mutual)
        object.__setattr__(self, "node_signs", signs)

    def mutual(self, a: str, b: str) -> float:
        return self.mutual_caps.get(_pair(a, b), 0.0)

    def scaled(self, factor: float) -> "CapacitanceNetwork":
        return CapacitanceNetwork(
            self.topology,
            {n: v * factor for n, v in self.self_caps.items()},
            {k: v * factor for k, v in self.mutual_caps.items()},
            self.node_signs,
        )

    def with_signs(self, signs: Mapping[str, int]) -> "CapacitanceNetwork":
        return CapacitanceNetwork(self.topology, self.self_caps, self.mutual_caps, {**self.node_signs, **signs})

    def to_dict(self) -> dict[str, Any]:
        return {
            "elements": [{"id": e.id, "type": e.kind, "role": e.role} for e in self.topology.elements],
            "self_caps_fF": dict(self.self_caps),
            "mutual_caps_fF": [{"a": a, "b": b, "value": v} for (a, b), v in self.mutual_caps.items()],
            "node_signs": dict(self.node_signs),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CapacitanceNetwork":
        try:
            elements = tuple(
                Element(str(e["id"]), str(e["type"]).upper(), e.get("role", OTHER)) for e in data["elements"]
            )
            mutual = {(m["a"], m["b"]): float(m["value"]) for m in data.get("mutual_caps_fF", [])}
            self_caps = {k: float(v) for k, v in data.get("self_caps_fF", {}).items()}
            signs = dict(data.get("node_signs", {}))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidNetworkError(f"malformed network definition: missing or invalid field {exc}") from exc
        return cls(ElementTopology(elements), self_caps, mutual, signs)


def _check_cap(value: Any, where: str) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise InvalidNetworkError(f"capacitance at {where} is not a number: {value!r}") from None
    if not math.isfinite(v) or v < 0:
        raise InvalidNetworkError(f"capacitance at {where} must be finite and >= 0, got {v}")
    return v


def load_network(source: str | PathLike | Mapping[str, Any]) -> CapacitanceNetwork:
    """Read a network definition from a JSON file or an already-parsed dict."""
    if isinstance(source, Mapping):
        return CapacitanceNetwork.from_dict(source)
    with open(source, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidNetworkError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, Mapping) and "network" in data and "elements" not in data:
        # design reports embed the solved network
        data = data["network"]
    return CapacitanceNetwork.from_dict(data)


# -- matrices -----------------------------------------------------------------


@dataclass(frozen=True)
class MaxwellMatrix:
    matrix: np.ndarray
    nodes: tuple[str, ...]


@dataclass(frozen=True)
class TransformMatrix:
    """Node fluxes = ``matrix`` @ mode fluxes; ``modes`` are (kind, element) pairs."""

    matrix: np.ndarray
    nodes: tuple[str, ...]
    modes: tuple[tuple[str, str], ...]

    def delta_index(self, element_id: str) -> int:
        return self.modes.index(("Delta", element_id))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"{kind}({el})" for kind, el in self.modes)


def build_maxwell(network: CapacitanceNetwork) -> MaxwellMatrix:
    nodes = network.topology.nodes
    index = {n: i for i, n in enumerate(nodes)}
    m = np.diag([network.self_caps[n] for n in nodes]).astype(float)
    sign = network.node_signs
    for (a, b), v in network.mutual_caps.items():
        i, j = index[a], index[b]
        m[i, i] += v
        m[j, j] += v
        m[i, j] -= sign[a] * sign[b] * v
        m[j, i] -= sign[a] * sign[b] * v
    dead = [n for n, d in zip(nodes, np.diag(m)) if d <= 0.0]
    if dead:
        raise InvalidNetworkError(f"nodes with zero total capacitance: {dead}")
    return MaxwellMatrix(m, nodes)


def build_transform(topology: ElementTopology) -> TransformMatrix:
    nodes = topology.nodes
    n = len(nodes)
    s = np.zeros((n, n))
    modes: list[tuple[str, str]] = []
    row = 0
    for e in topology.elements:
        col = len(modes)
        if e.kind == GROUNDED:
            s[row, col] = 1.0
            modes.append(("Delta", e.id))
            row += 1
        else:
            s[row : row + 2, col : col + 2] = [[0.5, 0.5], [0.5, -0.5]]
            modes += [("Sigma", e.id), ("Delta", e.id)]
            row += 2
    return TransformMatrix(s, nodes, tuple(modes))


def mode_capacitance(network: CapacitanceNetwork) -> tuple[np.ndarray, TransformMatrix]:
    """Return ``C = S^T M S`` and the transform that defines its coordinates."""
    maxwell = build_maxwell(network)
    try:
        np.linalg.cholesky(maxwell.matrix)
    except np.linalg.LinAlgError:
        raise InvalidNetworkError("Maxwell matrix is not positive definite") from None
    transform = build_transform(network.topology)
    return transform.matrix.T @ maxwell.matrix @ transform.matrix, transform


def invert_capacitance(c: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(c)
    if not math.isfinite(cond) or cond > MAX_CONDITION:
        raise NumericalFailureError(f"capacitance matrix condition number {cond:.3g} exceeds {MAX_CONDITION:g}")
    inv = np.linalg.inv(c)
    if not np.all(np.isfinite(inv)):
        raise NumericalFailureError("non-finite entries in inverse capacitance matrix")
    return 0.5 * (inv + inv.T)


# -- energies -----------------------------------------------------------------


@dataclass(frozen=True)
class EnergySet:
    """Charging energies and signed coupling energies in GHz.

    ``coupling`` is keyed by element-id pairs in declaration order.  ``A``,
    ``B`` and the QCQ shorthands need a topology with two qubits and a
    coupler.
    """

    charging: Mapping[str, float]
    coupling: Mapping[tuple[str, str], float]
    topology: ElementTopology

    def E(self, a: str, b: str) -> float:
        if a == b:
            return self.charging[a]
        if (a, b) in self.coupling:
            return self.coupling[(a, b)]
        return self.coupling[(b, a)]

    @property
    def E_C1(self) -> float:
        return self.charging[self.topology.qubits[0]]

    @property
    def E_C2(self) -> float:
        return self.charging[self.topology.qubits[1]]

    @property
    def E_Cc(self) -> float:
        return self.charging[self.topology.coupler]

    @property
    def E_Cq(self) -> float:
        """Geometric mean of the two qubit charging energies."""
        return math.sqrt(self.E_C1 * self.E_C2)

    @property
    def E12(self) -> float:
        return self.E(*self.topology.qubits)

    @property
    def E1c(self) -> float:
        return self.E(self.topology.qubits[0], self.topology.coupler)

    @property
    def E2c(self) -> float:
        return self.E(self.topology.qubits[1], self.topology.coupler)

    def _coupler_product(self) -> float:
        p = self.E1c * self.E2c
        if p == 0.0:
            raise DegenerateError("A and B undefined: E1c * E2c = 0 (no qubit-coupler coupling)")
        return p

    @property
    def A(self) -> float:
        return 2.0 * self.E12 * self.E_Cc / self._coupler_product()

    @property
    def B(self) -> float:
        return 16.0 * self.E_Cq * self.E_Cc / self._coupler_product()

    def is_symmetric(self, rtol: float = SYMMETRY_RTOL) -> bool:
        return math.isclose(self.E_C1, self.E_C2, rel_tol=rtol) and math.isclose(
            abs(self.E1c), abs(self.E2c), rel_tol=rtol
        )

    def require_symmetric(self, rtol: float = SYMMETRY_RTOL) -> None:
        if not self.is_symmetric(rtol):
            raise DomainError(
                f"qubits are not symmetric: E_C1={self.E_C1:.6g}, E_C2={self.E_C2:.6g}, "
                f"|E1c|={abs(self.E1c):.6g}, |E2c|={abs(self.E2c):.6g}"
            )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "charging_GHz": dict(self.charging),
            "coupling_GHz": {f"{a},{b}": v for (a, b), v in self.coupling.items()},
        }
        try:
            out.update(A=self.A, B=self.B, E_Cq_GHz=self.E_Cq, E_Cc_GHz=self.E_Cc)
        except (InvalidNetworkError, DegenerateError):
            pass
        return out


def extract_energies(network: CapacitanceNetwork, constants: PhysConstants = DEFAULT) -> EnergySet:
    c, transform = mode_capacitance(network)
    cinv = invert_capacitance(c)
    ids = [e.id for e in network.topology.elements]
    idx = {el: transform.delta_index(el) for el in ids}
    k = constants.e2_over_h
    charging = {el: k * cinv[idx[el], idx[el]] / 2.0 for el in ids}
    coupling = {
        (a, b): k * cinv[idx[a], idx[b]] for i, a in enumerate(ids) for b in ids[i + 1 :]
    }
    return EnergySet(charging, coupling, network.topology)


def flip_node_sign(network: CapacitanceNetwork, node: str) -> CapacitanceNetwork:
    """Toggle the flux sign of one node.

    For grounded elements this is a gauge choice.  Flipping a single plate
    of a floating element instead moves the junction onto the other plate
    combination; use :func:`flip_element_sign` to reverse a floating
    junction.
    """
    if node not in network.node_signs:
        raise InvalidNetworkError(f"unknown node {node!r}")
    return network.with_signs({node: -network.node_signs[node]})


def flip_element_sign(network: CapacitanceNetwork, element_id: str) -> CapacitanceNetwork:
    """Flip every node of an element, reversing the sign of its junction flux."""
    out = network
    for n in network.topology.element(element_id).nodes:
        out = flip_node_sign(out, n)
    return out


# -- named configurations -----------------------------------------------------


def ggg_network(C0q: float, C0c: float, Cqc: float, Cqq: float) -> CapacitanceNetwork:
    """Symmetric grounded-qubit / grounded-coupler network."""
    topo = ElementTopology.from_config("G-G-G")
    return CapacitanceNetwork(
        topo,
        {"q1": C0q, "c": C0c, "q2": C0q},
        {("q1", "c"): Cqc, ("q2", "c"): Cqc, ("q1", "q2"): Cqq},
    )


def gfg_network(
    C0q: float, C01: float, C02: float, C12: float, C1q: float, C2q: float, Cqq: float = 0.0
) -> CapacitanceNetwork:
    """Grounded qubits with a floating coupler.

    ``C1q`` (``C2q``) couples coupler plate 1 (plate 2) to each qubit;
    ``C12`` joins the two coupler plates.
    """
    topo = ElementTopology.from_config("G-F-G")
    mutual = {
        ("q1", "c.1"): C1q,
        ("q2", "c.1"): C1q,
        ("q1", "c.2"): C2q,
        ("q2", "c.2"): C2q,
        ("c.1", "c.2"): C12,
    }
    if Cqq:
        mutual[("q1", "q2")] = Cqq
    return CapacitanceNetwork(topo, {"q1": C0q, "q2": C0q, "c.1": C01, "c.2": C02}, mutual)


FGF_CAPS = ("C01", "C02", "C12", "C1c", "C2c", "C0c", "C3c", "C4c", "C03", "C04", "C34")


def fgf_network(caps: Mapping[str, float], qubit_mutuals: Mapping[tuple[str, str], float] | None = None) -> CapacitanceNetwork:
    """Floating qubits around a grounded coupler.

    Plates 1, 2 belong to qubit ``q1`` and plates 3, 4 to ``q2``; ``caps`` is
    keyed by :data:`FGF_CAPS`.  ``qubit_mutuals`` adds direct qubit-qubit plate
    capacitances, e.g. ``{("q1.2", "q2.1"): 0.5}``.
    """
    missing = set(FGF_CAPS) - set(caps)
    if missing:
        raise InvalidNetworkError(f"missing F-G-F capacitances: {sorted(missing)}")
    topo = ElementTopology.from_config("F-G-F")
    self_caps = {"q1.1": caps["C01"], "q1.2": caps["C02"], "c": caps["C0c"], "q2.1": caps["C03"], "q2.2": caps["C04"]}
    mutual = {
        ("q1.1", "q1.2"): caps["C12"],
        ("q1.1", "c"): caps["C1c"],
        ("q1.2", "c"): caps["C2c"],
        ("q2.1", "c"): caps["C3c"],
        ("q2.2", "c"): caps["C4c"],
        ("q2.1", "q2.2"): caps["C34"],
    }
    mutual.update(qubit_mutuals or {})
    return CapacitanceNetwork(topo, self_caps, mutual)


def closed_form_ggg(
    C0q: float, C0c: float, Cqc: float, Cqq: float, constants: PhysConstants = DEFAULT
) -> tuple[float, float, float]:
    """Closed-form ``(A, B, E_Cq)`` of the symmetric G-G-G network."""
    if Cqc <= 0:
        raise DomainError("closed-form G-G-G expressions need C_qc > 0")
    s = C0q + Cqc
    d = s + 2 * Cqq
    A = s * (Cqc**2 + C0c * Cqq + 2 * Cqc * Cqq) / (Cqc**2 * d)
    B = 4 * C0c * s * (s + Cqq) / (Cqc**2 * d) + 4 * s * (2 * C0q + Cqc + 2 * Cqq) / (Cqc * d)
    ecq = constants.e2_over_h / 4 * ((C0c + 2 * Cqc) / (C0c * s + 2 * C0q * Cqc) + 1 / d)
    return A, B, ecq


def check_fgf_longrange_A(caps: Mapping[str, float], constants: PhysConstants = DEFAULT) -> float:
    """A of an F-G-F network without qubit-qubit mutuals (identically 1)."""
    return extract_energies(fgf_network(caps), constants).A

