"""Inverse design: from coupling targets to capacitances and junction energies.

The procedure fixes the dispersive floor ``beta_s`` and coupler ceiling
``omega_l``, picks (x, y) (the bound optimum by default), turns them into
targets for A and B, solves the capacitance equations together with the
user constraints, then assigns the operating frequencies and Josephson
energies.
"""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass, field
from os import PathLike
from typing import Any, Mapping, Sequence

import numpy as np

from . import bound
from .capnet import (
    COUPLER,
    QUBIT,
    CapacitanceNetwork,
    Element,
    ElementTopology,
    EnergySet,
    extract_energies,
)
from .constants import DEFAULT, PhysConstants
from .coupling import (
    POLE_GUARD,
    FeasibilityVerdict,
    Regime,
    dispersive_beta,
    ej_for_frequency,
    omega_off,
    simplified_g,
    zero_coupling_feasible,
)
from .errors import DomainError, InfeasibleDesignError, InvalidNetworkError, QCQError

SCHEMA_VERSION = 1
SOLVE_RTOL = 1e-8
MAX_RESTARTS = 20
SWEEP_POINTS = 201
SWEEP_MARGIN = 0.05  # GHz above the qubit


class SignCase(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    BOTH = "both"


@dataclass(frozen=True)
class Placement:
    """Where a capacitance parameter appears in the network."""

    self_nodes: tuple[str, ...] = ()
    mutual_pairs: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class CapacitanceTemplate:
    """A topology whose capacitances are tied to named parameters.

    One parameter may fill several slots, e.g. ``C_0q`` is the self
    capacitance of both qubits.
    """

    topology: ElementTopology
    parameters: Mapping[str, Placement]
    node_signs: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        nodes = set(self.topology.nodes)
        for name, p in self.parameters.items():
            used = set(p.self_nodes) | {n for pair in p.mutual_pairs for n in pair}
            if not used:
                raise InvalidNetworkError(f"parameter {name!r} is not placed anywhere")
            if used - nodes:
                raise InvalidNetworkError(f"parameter {name!r} refers to unknown nodes {sorted(used - nodes)}")

    def network(self, values: Mapping[str, float]) -> CapacitanceNetwork:
        self_caps: dict[str, float] = {}
        mutual: dict[tuple[str, str], float] = {}
        for name, p in self.parameters.items():
            v = values[name]
            for n in p.self_nodes:
                self_caps[n] = v
            for pair in p.mutual_pairs:
                mutual[pair] = v
        return CapacitanceNetwork(self.topology, self_caps, mutual, self.node_signs)

    def with_signs(self, signs: Mapping[str, int]) -> "CapacitanceTemplate":
        return CapacitanceTemplate(self.topology, self.parameters, {**self.node_signs, **signs})

    def to_dict(self) -> dict[str, Any]:
        return {
            "elements": [{"id": e.id, "type": e.kind, "role": e.role} for e in self.topology.elements],
            "parameters": {
                name: {"self": list(p.self_nodes), "mutual": [list(pr) for pr in p.mutual_pairs]}
                for name, p in self.parameters.items()
            },
            "node_signs": dict(self.node_signs),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CapacitanceTemplate":
        elements = tuple(Element(str(e["id"]), str(e["type"]).upper(), e.get("role", "other")) for e in data["elements"])
        params = {
            name: Placement(tuple(p.get("self", ())), tuple(tuple(pr) for pr in p.get("mutual", ())))
            for name, p in data["parameters"].items()
        }
        return cls(ElementTopology(elements), params, dict(data.get("node_signs", {})))


def ggg_template() -> CapacitanceTemplate:
    topo = ElementTopology.from_config("G-G-G")
    return CapacitanceTemplate(
        topo,
        {
            "C_0q": Placement(self_nodes=("q1", "q2")),
            "C_0c": Placement(self_nodes=("c",)),
            "C_qc": Placement(mutual_pairs=(("q1", "c"), ("q2", "c"))),
            "C_qq": Placement(mutual_pairs=(("q1", "q2"),)),
        },
    )


def gfg_template() -> CapacitanceTemplate:
    """Long-range G-F-G template without a qubit-qubit mutual."""
    topo = ElementTopology.from_config("G-F-G")
    return CapacitanceTemplate(
        topo,
        {
            "C_0q": Placement(self_nodes=("q1", "q2")),
            "C_01": Placement(self_nodes=("c.1",)),
            "C_02": Placement(self_nodes=("c.2",)),
            "C_12": Placement(mutual_pairs=(("c.1", "c.2"),)),
            "C_1q": Placement(mutual_pairs=(("q1", "c.1"), ("q2", "c.1"))),
            "C_2q": Placement(mutual_pairs=(("q1", "c.2"), ("q2", "c.2"))),
        },
    )


TEMPLATES = {"G-G-G": ggg_template, "G-F-G": gfg_template}


@dataclass(frozen=True)
class Constraint:
    """``kind`` is ``"E_Cq"`` (value in GHz) or ``"fixed"`` (value in fF)."""

    kind: str
    value: float
    parameter: str | None = None

    def __post_init__(self):
        if self.kind not in ("E_Cq", "fixed"):
            raise DomainError(f"unsupported constraint kind {self.kind!r}")
        if self.kind == "fixed" and self.parameter is None:
            raise DomainError("fixed-capacitance constraint needs a parameter name")
        if not (self.value > 0 and math.isfinite(self.value)):
            raise DomainError(f"constraint value must be positive, got {self.value}")


@dataclass(frozen=True)
class DesignSpec:
    """Inputs of the design procedure.

    Exactly one of ``omega_l`` and ``omega_q`` is given; the other follows
    from ``omega_q = x y omega_l``.
    """

    template: CapacitanceTemplate
    regime: Regime
    beta_s: float
    constraints: tuple[Constraint, ...]
    e12_sign: SignCase = SignCase.POSITIVE
    omega_l: float | None = None
    omega_q: float | None = None
    xy: tuple[float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime(self.regime))
        object.__setattr__(self, "e12_sign", SignCase(self.e12_sign))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not self.beta_s >= 1:
            raise DomainError(f"beta_s must be >= 1, got {self.beta_s}")
        if (self.omega_l is None) == (self.omega_q is None):
            raise DomainError("give exactly one of omega_l and omega_q")
        for w in (self.omega_l, self.omega_q):
            if w is not None and not w > 0:
                raise DomainError(f"frequencies must be positive, got {w}")
        n_params = len(self.template.parameters)
        if len(self.constraints) + 2 != n_params:
            raise DomainError(
                f"{n_params} capacitances need {n_params - 2} constraints, got {len(self.constraints)}"
            )
        for c in self.constraints:
            if c.kind == "fixed" and c.parameter not in self.template.parameters:
                raise DomainError(f"fixed constraint on unknown parameter {c.parameter!r}")
        fixed = [c.parameter for c in self.constraints if c.kind == "fixed"]
        if len(set(fixed)) != len(fixed):
            raise DomainError("a parameter is fixed twice")
        if self.xy is not None:
            bound.XYPoint(*self.xy)

    @property
    def design_xy(self) -> tuple[float, float]:
        if self.xy is not None:
            return tuple(self.xy)
        best = bound.maximize_f()
        return best.x_star, best.y_star

    @property
    def resolved_omega_l(self) -> float:
        if self.omega_l is not None:
            return self.omega_l
        x, y = self.design_xy
        return self.omega_q / (x * y)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DesignSpec":
        try:
            topo = data["topology"]
            if isinstance(topo, str):
                key = topo.upper()
                if key not in TEMPLATES:
                    raise DomainError(f"no built-in template for {topo!r}; give elements and parameters")
                template = TEMPLATES[key]()
            else:
                template = CapacitanceTemplate.from_dict(topo)
            if "node_signs" in data:
                template = template.with_signs(data["node_signs"])
            constraints = []
            for c in data.get("constraints", []):
                kind = c["kind"]
                value = c.get("value_GHz", c.get("value_fF", c.get("value")))
                constraints.append(Constraint(kind, float(value), c.get("parameter")))
            xy = data.get("xy")
            return cls(
                template=template,
                regime=Regime(data["regime"]),
                beta_s=float(data["beta_s"]),
                constraints=tuple(constraints),
                e12_sign=SignCase(data.get("e12_sign", "positive")),
                omega_l=_opt_float(data.get("omega_l_GHz")),
                omega_q=_opt_float(data.get("omega_q_GHz")),
                xy=tuple(float(v) for v in xy) if xy is not None else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, QCQError):
                raise
            raise DomainError(f"malformed design spec: {exc!r}") from exc

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "topology": self.template.to_dict(),
            "regime": self.regime.value,
            "beta_s": self.beta_s,
            "e12_sign": self.e12_sign.value,
            "constraints": [
                {"kind": "E_Cq", "value_GHz": c.value} if c.kind == "E_Cq" else {"kind": "fixed", "parameter": c.parameter, "value_fF": c.value}
                for c in self.constraints
            ],
        }
        if self.omega_l is not None:
            out["omega_l_GHz"] = self.omega_l
        else:
            out["omega_q_GHz"] = self.omega_q
        if self.xy is not None:
            out["xy"] = list(self.xy)
        return out


def _opt_float(v: Any) -> float | None:
    return None if v is None else float(v)


def load_spec(source: str | PathLike | Mapping[str, Any]) -> DesignSpec:
    if isinstance(source, Mapping):
        return DesignSpec.from_dict(source)
    with open(source, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return DesignSpec.from_dict(data)


# -- targets and frequencies --------------------------------------------------


def targets(
    regime: Regime | str, e12_sign: SignCase | str, beta_s: float, xy: tuple[float, float] | None = None
) -> tuple[float, float]:
    """Target ``(A*, B*)`` for one sign of E12."""
    sign = SignCase(e12_sign)
    if sign is SignCase.BOTH:
        raise DomainError("use target_cases() for the 'both' sign case")
    if xy is None:
        best = bound.maximize_f()
        xy = (best.x_star, best.y_star)
    # omega_l only scales frequencies, A and |B| do not depend on it
    p = bound.params_from_xy(xy[0], xy[1], 1.0, beta_s, regime)
    return p.A, p.B_abs if sign is SignCase.POSITIVE else -p.B_abs


def target_cases(
    regime: Regime | str, e12_sign: SignCase | str, beta_s: float, xy: tuple[float, float] | None = None
) -> dict[SignCase, tuple[float, float]]:
    sign = SignCase(e12_sign)
    signs = (SignCase.POSITIVE, SignCase.NEGATIVE) if sign is SignCase.BOTH else (sign,)
    return {s: targets(regime, s, beta_s, xy) for s in signs}


@dataclass(frozen=True)
class Frequencies:
    omega_q: float
    omega_s: float
    omega_l: float
    omega_on: float
    omega_off: float
    g_on: float

    def to_dict(self) -> dict[str, float]:
        return {
            "omega_q_GHz": self.omega_q,
            "omega_s_GHz": self.omega_s,
            "omega_l_GHz": self.omega_l,
            "omega_on_GHz": self.omega_on,
            "omega_off_GHz": self.omega_off,
            "g_on_MHz": self.g_on * 1e3,
        }


def assign_frequencies(
    regime: Regime | str,
    xy: tuple[float, float],
    beta_s: float,
    omega_l: float | None = None,
    omega_q: float | None = None,
    B_sign: int = 1,
) -> Frequencies:
    """Operating frequencies and predicted g_on for a chosen (x, y).

    ``g_on`` carries the sub-regime sign: negative for on-below-off and
    positive for on-above-off when B > 0, reversed when B < 0.
    """
    regime = Regime(regime)
    x, y = xy
    bound.XYPoint(x, y)
    if (omega_l is None) == (omega_q is None):
        raise DomainError("give exactly one of omega_l and omega_q")
    if omega_l is None:
        omega_l = omega_q / (x * y)
    p = bound.params_from_xy(x, y, omega_l, beta_s, regime)
    if regime is Regime.ON_BELOW_OFF:
        on, off = p.omega_s, omega_l
    else:
        on, off = omega_l, p.omega_s
    sign = regime.on_sign * (1 if B_sign >= 0 else -1)
    return Frequencies(p.omega_q, p.omega_s, omega_l, on, off, sign * bound.g_on(x, y, omega_l, beta_s))


@dataclass(frozen=True)
class JosephsonTargets:
    E_Jq: float
    E_Jc_on: float
    E_Jc_off: float
    L_Jq: float
    L_Jc_on: float
    L_Jc_off: float

    def to_dict(self) -> dict[str, float]:
        return {
            "E_Jq_GHz": self.E_Jq,
            "E_Jc_on_GHz": self.E_Jc_on,
            "E_Jc_off_GHz": self.E_Jc_off,
            "L_Jq_nH": self.L_Jq,
            "L_Jc_on_nH": self.L_Jc_on,
            "L_Jc_off_nH": self.L_Jc_off,
        }


def josephson_targets(
    freqs: Frequencies, E_Cq: float, E_Cc: float, constants: PhysConstants = DEFAULT
) -> JosephsonTargets:
    """Junction energies (and inductances) that place each element at its frequency."""
    ejq = ej_for_frequency(freqs.omega_q, E_Cq)
    ej_on = ej_for_frequency(freqs.omega_on, E_Cc)
    ej_off = ej_for_frequency(freqs.omega_off, E_Cc)
    L = constants.inductance_nH
    return JosephsonTargets(ejq, ej_on, ej_off, L(ejq), L(ej_on), L(ej_off))


# -- capacitance solve --------------------------------------------------------


@dataclass(frozen=True)
class SolveResult:
    values: dict[str, float]
    residual: float
    iterations: int
    restarts: int


def _seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    return int(os.environ.get("QCQ_SEED", "0"))


def _initial_guess(spec: DesignSpec, free: Sequence[str], fixed: Mapping[str, float], constants: PhysConstants) -> np.ndarray:
    template = spec.template
    topo = template.topology
    owner = topo.node_element
    ecq = next((c.value for c in spec.constraints if c.kind == "E_Cq"), None)
    qubit_nodes = {n for q in topo.qubits for n in topo.element(q).nodes}

    # fixed mutual capacitance hanging off each qubit node
    attached = dict.fromkeys(qubit_nodes, 0.0)
    for name, v in fixed.items():
        for a, b in template.parameters[name].mutual_pairs:
            for n in (a, b):
                if n in attached:
                    attached[n] += v
    total_q = constants.e2_over_h / (2.0 * ecq) if ecq else 80.0
    c0q = max(total_q - max(attached.values(), default=0.0), 1.0)

    guess = []
    for name in free:
        p = template.parameters[name]
        if p.self_nodes:
            roles = {topo.element(owner[n]).role for n in p.self_nodes}
            guess.append(c0q if QUBIT in roles else 0.7 * c0q if COUPLER in roles else c0q)
        else:
            guess.append(0.1)
    return np.log(np.array(guess))


def solve_capacitances(
    spec: DesignSpec,
    target: tuple[float, float],
    constants: PhysConstants = DEFAULT,
    seed: int | None = None,
) -> SolveResult:
    """Solve for the free capacitances so that A, B and the constraints are met.

    Damped Newton in log-capacitance variables keeps every iterate positive.
    Restarts draw log-normal perturbations of the initial guess from a seeded
    generator, so identical inputs give identical results.
    """
    a_t, b_t = target
    fixed = {c.parameter: c.value for c in spec.constraints if c.kind == "fixed"}
    energy_targets = [c.value for c in spec.constraints if c.kind == "E_Cq"]
    free = [name for name in spec.template.parameters if name not in fixed]

    def residual(u: np.ndarray) -> np.ndarray:
        values = dict(fixed)
        values.update(zip(free, np.exp(u)))
        try:
            e = extract_energies(spec.template.network(values), constants)
            out = [e.A / a_t - 1.0, e.B / b_t - 1.0] + [e.E_Cq / v - 1.0 for v in energy_targets]
        except (QCQError, ZeroDivisionError):
            return np.full(len(free), np.inf)
        return np.array(out)

    def jacobian(u: np.ndarray, r0: np.ndarray) -> np.ndarray:
        h = 1e-6
        cols = []
        for k in range(len(u)):
            du = np.zeros_like(u)
            du[k] = h
            cols.append((residual(u + du) - residual(u - du)) / (2 * h))
        return np.column_stack(cols)

    def newton(u: np.ndarray) -> tuple[np.ndarray, float, int]:
        r = residual(u)
        norm = float(np.linalg.norm(r))
        for it in range(1, 101):
            if norm < SOLVE_RTOL * 1e-3:
                return u, norm, it
            J = jacobian(u, r)
            if not np.all(np.isfinite(J)):
                break
            step = np.linalg.lstsq(J, -r, rcond=None)[0]
            biggest = np.max(np.abs(step))
            if biggest > 2.0:
                step *= 2.0 / biggest
            t = 1.0
            while t > 1e-4:
                trial = u + t * step
                rt = residual(trial)
                nt = float(np.linalg.norm(rt))
                if nt < norm:
                    break
                t *= 0.5
            else:
                break
            u, r, norm = trial, rt, nt
        return u, norm, it

    u0 = _initial_guess(spec, free, fixed, constants)
    rng = np.random.default_rng(_seed(seed))
    best = (u0, math.inf, 0)
    for attempt in range(MAX_RESTARTS + 1):
        start = u0 if attempt == 0 else u0 + rng.normal(0.0, 1.0, size=u0.shape)
        u, norm, its = newton(start)
        if norm < best[1]:
            best = (u, norm, its)
        values = dict(fixed)
        values.update(zip(free, (float(v) for v in np.exp(u))))
        r = residual(u)
        if np.all(np.abs(r) < SOLVE_RTOL):
            return SolveResult(values, norm, its, attempt)
    raise InfeasibleDesignError(
        f"no positive capacitance set reaches A={a_t:.6g}, B={b_t:.6g} "
        f"after {MAX_RESTARTS} restarts (best residual {best[1]:.3g})",
        best_residual=best[1],
    )


# -- sweep --------------------------------------------------------------------


@dataclass(frozen=True)
class Sweep:
    """g (GHz) and beta versus coupler frequency; NaN marks out-of-regime rows."""

    omega_c: np.ndarray
    g: np.ndarray
    beta: np.ndarray

    @property
    def flagged(self) -> list[float]:
        return [float(w) for w, g in zip(self.omega_c, self.g) if not math.isfinite(g)]


def coupling_sweep(A: float, B: float, omega_q: float, lo: float, hi: float, n: int = SWEEP_POINTS) -> Sweep:
    omega_c = np.linspace(lo, hi, n)
    g = np.full(n, np.nan)
    beta = np.full(n, np.nan)
    for i, wc in enumerate(omega_c):
        if wc - omega_q < POLE_GUARD:
            continue
        g[i] = simplified_g(A, B, omega_q, wc)
        beta[i] = dispersive_beta(B, omega_q, wc)
    return Sweep(omega_c, g, beta)


# -- full pipeline ------------------------------------------------------------


@dataclass(frozen=True)
class DesignReport:
    sign_case: SignCase
    target_A: float
    target_B: float
    capacitances: dict[str, float]
    network: CapacitanceNetwork
    energies: EnergySet
    frequencies: Frequencies
    beta_floor: float
    josephson: JosephsonTargets
    residual: float
    restarts: int
    feasibility: FeasibilityVerdict
    sweep: Sweep
    xy: tuple[float, float]
    beta_s: float
    sign_cases: dict[str, str] = field(default_factory=dict)

    @property
    def A(self) -> float:
        return self.energies.A

    @property
    def B(self) -> float:
        return self.energies.B

    @property
    def E_Cq(self) -> float:
        return self.energies.E_Cq

    @property
    def E_Cc(self) -> float:
        return self.energies.E_Cc

    @property
    def g_on(self) -> float:
        return self.frequencies.g_on

    @property
    def omega_off_achieved(self) -> float:
        return omega_off(self.A, self.frequencies.omega_q)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "sign_case": self.sign_case.value,
            "sign_cases": dict(self.sign_cases),
            "xy": list(self.xy),
            "beta_s": self.beta_s,
            "targets": {"A": self.target_A, "B": self.target_B},
            "capacitances_fF": dict(self.capacitances),
            "achieved": {
                "A": self.A,
                "B": self.B,
                "E_Cq_GHz": self.E_Cq,
                "E_Cc_GHz": self.E_Cc,
                "omega_off_GHz": self.omega_off_achieved,
            },
            "frequencies": self.frequencies.to_dict(),
            "beta_floor": self.beta_floor,
            "josephson": self.josephson.to_dict(),
            "residual_norm": self.residual,
            "restarts": self.restarts,
            "feasibility": self.feasibility.to_dict(),
            "network": self.network.to_dict(),
        }


def _staged(stage: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except QCQError as exc:
        if exc.stage is None:
            exc.stage = stage
        raise


def run_design(spec: DesignSpec, constants: PhysConstants = DEFAULT, seed: int | None = None) -> DesignReport:
    """Run the whole design procedure for one spec.

    For ``e12_sign="both"`` both signs are solved; the first that yields an
    all-positive capacitance set is reported and ``sign_cases`` records the
    outcome of each.
    """
    xy = spec.design_xy
    omega_l = spec.resolved_omega_l
    cases = _staged("targets", target_cases, spec.regime, spec.e12_sign, spec.beta_s, xy)

    outcomes: dict[str, str] = {}
    solved: list[tuple[SignCase, tuple[float, float], SolveResult]] = []
    last_error: QCQError | None = None
    for sign, (a_t, b_t) in cases.items():
        verdict = zero_coupling_feasible(a_t, b_t, spec.beta_s)
        if not verdict.feasible:
            err = InfeasibleDesignError(f"targets A={a_t:.6g}, B={b_t:.6g} are infeasible: {verdict.reason}")
            err.stage = "targets"
            raise err
        try:
            result = _staged("solve", solve_capacitances, spec, (a_t, b_t), constants, seed)
        except InfeasibleDesignError as exc:
            outcomes[sign.value] = f"no physical solution ({exc})"
            last_error = exc
            continue
        outcomes[sign.value] = "physical solution"
        solved.append((sign, (a_t, b_t), result))
    if not solved:
        assert last_error is not None
        raise last_error

    sign, (a_t, b_t), result = solved[0]
    network = spec.template.network(result.values)
    energies = _staged("extract", extract_energies, network, constants)
    freqs = _staged(
        "frequencies", assign_frequencies, spec.regime, xy, spec.beta_s, omega_l=omega_l, B_sign=int(np.sign(energies.B))
    )
    jj = _staged("josephson", josephson_targets, freqs, energies.E_Cq, energies.E_Cc, constants)
    beta_floor = dispersive_beta(energies.B, freqs.omega_q, freqs.omega_s)
    sweep = coupling_sweep(energies.A, energies.B, freqs.omega_q, freqs.omega_q + SWEEP_MARGIN, freqs.omega_l)
    return DesignReport(
        sign_case=sign,
        target_A=a_t,
        target_B=b_t,
        capacitances=result.values,
        network=network,
        energies=energies,
        frequencies=freqs,
        beta_floor=beta_floor,
        josephson=jj,
        residual=result.residual,
        restarts=result.restarts,
        feasibility=zero_coupling_feasible(energies.A, energies.B, spec.beta_s),
        sweep=sweep,
        xy=xy,
        beta_s=spec.beta_s,
        sign_cases=outcomes,
    )


def reference_ggg_spec(regime: Regime | str, e12_sign: SignCase | str = SignCase.POSITIVE) -> DesignSpec:
    """G-G-G spec with beta_s = 10, omega_l = 15 GHz, E_Cq = 230 MHz, C_qc = 6 fF."""
    return DesignSpec(
        template=ggg_template(),
        regime=Regime(regime),
        beta_s=10.0,
        omega_l=15.0,
        e12_sign=SignCase(e12_sign),
        constraints=(Constraint("E_Cq", 0.230), Constraint("fixed", 6.0, "C_qc")),
    )


def reference_gfg_spec() -> DesignSpec:
    """Long-range G-F-G spec: beta_s = 8, (x, y) = (0.8, 0.652), omega_q = 6.5 GHz, E12 < 0.

    Flipping the first qubit's flux sign makes E12 negative in this gauge.
    """
    return DesignSpec(
        template=gfg_template().with_signs({"q1": -1}),
        regime=Regime.ON_BELOW_OFF,
        beta_s=8.0,
        omega_q=6.5,
        xy=(0.8, 0.652),
        e12_sign=SignCase.NEGATIVE,
        constraints=(
            Constraint("E_Cq", 0.236),
            Constraint("fixed", 11.8, "C_12"),
            Constraint("fixed", 10.4, "C_1q"),
            Constraint("fixed", 0.04, "C_2q"),
        ),
    )
