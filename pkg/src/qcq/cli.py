"""``qcq`` command-line interface.

Exit codes: 0 when every emitted check passes, 1 when a check fails,
2 for unreadable or malformed input, 3 for infeasible requests and 4 for
numerical or degenerate failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from . import bound, oracle
from .capnet import CapacitanceNetwork, EnergySet, extract_energies, load_network
from .coupling import (
    POLE_GUARD,
    coupler_frequency_for_beta,
    dispersive_beta,
    ej_for_frequency,
    mediated_scale,
    omega_off,
    simplified_g,
    zero_coupling_feasible,
)
from .designer import SCHEMA_VERSION, Sweep, coupling_sweep, load_spec, run_design
from .errors import (
    DegenerateError,
    DomainError,
    InfeasibleDesignError,
    InvalidNetworkError,
    NumericalFailureError,
    QCQError,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4

CSV_HEADER = "omega_c_GHz,g_MHz,beta"

#: Relative |g| tolerances of the normal-mode check, keyed by beta floor.
NM_TOLERANCES = ((10.0, 0.05), (5.0, 0.15))
CHARGE_G_TOL = 0.10
CHARGE_W01_TOL = 0.01
CHARGE_ANHARM_TOL = 0.10
ZERO_CROSSING_TOL = 0.01
CHARGE_BETAS = (10.0, 12.5, 15.0)


class UsageError(Exception):
    """Bad command-line arguments (exit code 2)."""


# -- formatting and output ----------------------------------------------------


def fmt(value: float) -> str:
    """Six significant digits, '.' decimal separator, independent of locale."""
    if not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return np.format_float_positional(value, precision=6, unique=False, fractional=False, trim="k")


def sweep_csv(sweep: Sweep) -> str:
    lines = [CSV_HEADER]
    for wc, g, beta in zip(sweep.omega_c, sweep.g, sweep.beta):
        lines.append(f"{fmt(float(wc))},{fmt(float(g) * 1e3)},{fmt(float(beta))}")
    return "\n".join(lines) + "\n"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def atomic_write(path: Path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: Path, data: dict) -> None:
    atomic_write(path, json.dumps(_jsonable(data), indent=2, allow_nan=False) + "\n")


def _table(rows: Sequence[Sequence[str]], out) -> None:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.rjust(w) for c, w in zip(r, widths)), file=out)


def _parse_sweep(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        lo_f, hi_f, n_i = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"--sweep expects lo:hi:n, got {text!r}") from None
    if not (0 < lo_f < hi_f and n_i >= 2):
        raise UsageError(f"--sweep needs 0 < lo < hi and n >= 2, got {text!r}")
    return lo_f, hi_f, n_i


# -- analyze ------------------------------------------------------------------


def _zero_crossing(A: float, omega_q: float) -> float | None:
    try:
        return omega_off(A, omega_q)
    except DegenerateError:
        return None


def cmd_analyze(args, out) -> int:
    network = load_network(args.network)
    energies = extract_energies(network)
    A, B = energies.A, energies.B
    lo, hi, n = _parse_sweep(args.sweep)
    sweep = coupling_sweep(A, B, args.wq, lo, hi, n)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "analyze",
        "omega_q_GHz": args.wq,
        "energies": energies.to_dict(),
        "A": A,
        "B": B,
        "omega_off_GHz": _zero_crossing(A, args.wq),
        "sweep": {"lo_GHz": lo, "hi_GHz": hi, "points": n, "flagged_omega_c_GHz": sweep.flagged},
        "network": network.to_dict(),
    }
    outdir = Path(args.output)
    write_json(outdir / "report.json", report)
    atomic_write(outdir / "sweep.csv", sweep_csv(sweep))

    rows = [["quantity", "value"]]
    rows += [[f"E_C[{el}] (MHz)", fmt(v * 1e3)] for el, v in energies.charging.items()]
    rows += [[f"E[{a},{b}] (MHz)", fmt(v * 1e3)] for (a, b), v in energies.coupling.items()]
    rows += [["A", fmt(A)], ["B", fmt(B)]]
    if report["omega_off_GHz"] is not None:
        rows.append(["omega_off (GHz)", fmt(report["omega_off_GHz"])])
    _table(rows, out)
    if sweep.flagged:
        print(f"{len(sweep.flagged)} sweep rows outside omega_c > omega_q written as nan", file=out)
    print(f"wrote {outdir / 'report.json'} and {outdir / 'sweep.csv'}", file=out)
    return EXIT_OK


# -- check-zero ---------------------------------------------------------------


def cmd_check_zero(args, out) -> int:
    energies = extract_energies(load_network(args.network))
    try:
        A, B = energies.A, energies.B
    except DegenerateError as exc:
        print(f"infeasible: {exc}", file=out)
        return EXIT_INFEASIBLE
    verdict = zero_coupling_feasible(A, B, args.beta_s)
    print(f"A = {fmt(A)}", file=out)
    print(f"|B| = {fmt(abs(B))}", file=out)
    print(f"band: 1 < A <= {fmt(verdict.upper_limit)} (beta_s = {fmt(args.beta_s)})", file=out)
    print(f"{'feasible' if verdict else 'infeasible'}: {verdict.reason}", file=out)
    return EXIT_OK if verdict else EXIT_INFEASIBLE


# -- bound --------------------------------------------------------------------


def cmd_bound(args, out) -> int:
    if args.omega_l is None and not args.omega_q:
        raise UsageError("bound needs --omega-l and/or --omega-q")
    for name, v in (("--beta-s", args.beta_s), ("--omega-l", args.omega_l), *(("--omega-q", w) for w in args.omega_q or ())):
        if v is not None and not (v > 0 and math.isfinite(v)):
            raise UsageError(f"{name} must be positive, got {v}")
    best = bound.maximize_f()
    print(f"x* = {fmt(best.x_star)}", file=out)
    print(f"y* = {fmt(best.y_star)}", file=out)
    print(f"f* = {fmt(best.f_star)}", file=out)
    if args.omega_l is not None:
        g = bound.g_on_max(args.omega_l, args.beta_s)
        print(f"g_on_max(omega_l = {fmt(args.omega_l)} GHz, beta_s = {fmt(args.beta_s)}) = {fmt(g * 1e3)} MHz", file=out)
    if args.omega_q:
        rows = [["omega_q (GHz)", "g_on_max 0.187 rule (MHz)", "g_on_max exact (MHz)"]]
        for wq in args.omega_q:
            rounded = bound.g_on_max_from_qubit(wq, args.beta_s, bound.ROUNDED_QUBIT_COEFFICIENT)
            exact = bound.g_on_max_from_qubit(wq, args.beta_s)
            rows.append([fmt(wq), fmt(rounded * 1e3), fmt(exact * 1e3)])
        _table(rows, out)
    return EXIT_OK


# -- design -------------------------------------------------------------------


def cmd_design(args, out) -> int:
    spec = load_spec(args.spec)
    report = run_design(spec)
    outdir = Path(args.output)
    data = report.to_dict()
    data["command"] = "design"
    write_json(outdir / "report.json", data)
    atomic_write(outdir / "sweep.csv", sweep_csv(report.sweep))

    rows = [["quantity", "target", "achieved"]]
    rows.append(["A", fmt(report.target_A), fmt(report.A)])
    rows.append(["B", fmt(report.target_B), fmt(report.B)])
    rows.append(["E_Cq (MHz)", "", fmt(report.E_Cq * 1e3)])
    rows.append(["E_Cc (MHz)", "", fmt(report.E_Cc * 1e3)])
    rows += [[f"{k} (fF)", "", fmt(v)] for k, v in report.capacitances.items()]
    f = report.frequencies
    rows += [
        ["omega_q (GHz)", "", fmt(f.omega_q)],
        ["omega_on (GHz)", "", fmt(f.omega_on)],
        ["omega_off (GHz)", "", fmt(f.omega_off)],
        ["g_on (MHz)", "", fmt(f.g_on * 1e3)],
        ["beta floor", fmt(report.beta_s), fmt(report.beta_floor)],
        ["E_Jq (GHz)", "", fmt(report.josephson.E_Jq)],
        ["L_Jq (nH)", "", fmt(report.josephson.L_Jq)],
    ]
    _table(rows, out)
    for sign, outcome in report.sign_cases.items():
        print(f"E12 {sign}: {outcome}", file=out)
    print(f"wrote {outdir / 'report.json'} and {outdir / 'sweep.csv'}", file=out)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    label: str
    theory: float
    oracle: float
    deviation: float
    tolerance: float | None

    @property
    def passed(self) -> bool | None:
        return None if self.tolerance is None else bool(self.deviation < self.tolerance)

    def row(self) -> list[str]:
        verdict = {None: "-", True: "pass", False: "FAIL"}[self.passed]
        tol = "-" if self.tolerance is None else fmt(self.tolerance)
        return [self.label, fmt(self.theory), fmt(self.oracle), fmt(self.deviation), tol, verdict]


@dataclass(frozen=True)
class VerifyContext:
    network: CapacitanceNetwork
    energies: EnergySet
    omega_q: float
    lo: float
    hi: float
    n: int


def _context(args) -> VerifyContext:
    path = args.input
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidNetworkError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    is_report = isinstance(raw, dict) and "network" in raw and "elements" not in raw
    network = load_network(raw["network"] if is_report else raw)
    energies = extract_energies(network)
    energies.require_symmetric()
    freqs = raw.get("frequencies") if is_report else None
    omega_q = args.wq if args.wq is not None else (freqs or {}).get("omega_q_GHz")
    if omega_q is None:
        raise UsageError("verify needs --wq unless the input is a design report")
    if args.sweep is not None:
        lo, hi, n = _parse_sweep(args.sweep)
    elif freqs is not None and args.wq is None:
        lo, hi, n = freqs["omega_s_GHz"], freqs["omega_l_GHz"], 41
    else:
        # from the beta = 10 point up to just past the zero crossing
        lo = coupler_frequency_for_beta(energies.B, omega_q, NM_TOLERANCES[0][0])
        w_off = _zero_crossing(energies.A, omega_q)
        hi = 1.05 * w_off if w_off is not None else 2 * lo
        n = 41
    return VerifyContext(network, energies, float(omega_q), lo, hi, n)


def _beta_tolerance(beta: float) -> float | None:
    for floor, tol in NM_TOLERANCES:
        if beta >= floor:
            return tol
    return None


def _coupling_checks(ctx: VerifyContext, omega_c: Iterable[float], oracle_g, tolerance) -> list[Check]:
    """Compare |g| from an oracle with the closed form at each coupler frequency.

    Deviations are taken relative to the coupler-mediated term rather than
    to g itself, which vanishes at the zero crossing.
    """
    e = ctx.energies
    checks = []
    for wc in omega_c:
        if wc - ctx.omega_q < POLE_GUARD:
            continue
        beta = dispersive_beta(e.B, ctx.omega_q, wc)
        gt, go = simplified_g(e.A, e.B, ctx.omega_q, wc), oracle_g(wc)
        checks.append(
            Check(
                f"|g| MHz @ {fmt(wc)} GHz (beta {fmt(beta)})",
                abs(gt) * 1e3,
                abs(go) * 1e3,
                abs(abs(go) - abs(gt)) / mediated_scale(e.B, ctx.omega_q, wc),
                tolerance(beta),
            )
        )
    return checks


def _verify_nm(ctx: VerifyContext) -> list[Check]:
    grid = np.linspace(ctx.lo, ctx.hi, ctx.n)
    checks = _coupling_checks(ctx, grid, lambda wc: oracle.nm_coupling(ctx.network, ctx.omega_q, wc), _beta_tolerance)
    A = ctx.energies.A
    w_off = _zero_crossing(A, ctx.omega_q)
    if w_off is not None:
        crossing = oracle.nm_zero_crossing(ctx.network, ctx.omega_q, 0.9 * w_off, 1.1 * w_off)
        checks.append(
            Check("zero crossing (GHz)", w_off, crossing, abs(crossing - w_off) / w_off, ZERO_CROSSING_TOL)
        )
    return checks


def _verify_charge(ctx: VerifyContext, n_cut: int) -> list[Check]:
    e = ctx.energies
    checks = []
    wq = ctx.omega_q
    for el in e.topology.qubits:
        ec = e.charging[el]
        w01, anharm = oracle.single_transmon(ec, ej_for_frequency(wq, ec), n_cut)
        checks.append(Check(f"omega_01 {el} (GHz)", wq, w01, abs(w01 - wq) / wq, CHARGE_W01_TOL))
        checks.append(Check(f"anharmonicity {el} (MHz)", -ec * 1e3, anharm * 1e3, abs(anharm + ec) / ec, CHARGE_ANHARM_TOL))
    points = [coupler_frequency_for_beta(e.B, wq, b) for b in CHARGE_BETAS]
    checks += _coupling_checks(
        ctx,
        points,
        lambda wc: oracle.charge_coupling(e, wq, wc, n_cut),
        lambda beta: CHARGE_G_TOL if beta >= CHARGE_BETAS[0] - 1e-9 else None,
    )
    return checks


def cmd_verify(args, out) -> int:
    ctx = _context(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", oracle.TruncationWarning)
        checks = _verify_nm(ctx) if args.method == "nm" else _verify_charge(ctx, args.n_cut)
    rows = [["check", "theory", args.method, "rel. deviation", "tolerance", "result"]]
    rows += [c.row() for c in checks]
    _table(rows, out)
    for w in caught:
        print(f"warning: {w.message}", file=out)
    failed = [c for c in checks if c.passed is False]
    print(f"{len(checks) - len(failed)}/{len(checks)} rows within tolerance or unchecked", file=out)
    if args.output:
        data = {
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "method": args.method,
            "omega_q_GHz": ctx.omega_q,
            "checks": [
                {
                    "label": c.label,
                    "theory": c.theory,
                    "oracle": c.oracle,
                    "deviation": c.deviation,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in checks
            ],
        }
        write_json(Path(args.output) / "verify.json", data)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# -- entry point --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcq", description="Analysis and design of qubit-coupler-qubit circuits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="energies, A, B and a g(omega_c) sweep for a network")
    a.add_argument("network")
    a.add_argument("--wq", type=float, required=True, help="qubit frequency (GHz)")
    a.add_argument("--sweep", default="7:15:161", help="coupler sweep lo:hi:n in GHz (default 7:15:161)")
    a.add_argument("-o", "--output", default=".", help="output directory")
    a.set_defaults(func=cmd_analyze)

    z = sub.add_parser("check-zero", help="zero-coupling feasibility of a network")
    z.add_argument("network")
    z.add_argument("--beta-s", type=float, required=True)
    z.set_defaults(func=cmd_check_zero)

    b = sub.add_parser("bound", help="upper bound on the turned-on coupling")
    b.add_argument("--omega-l", type=float)
    b.add_argument("--beta-s", type=float, required=True)
    b.add_argument("--omega-q", type=float, nargs="+", help="optimal qubit frequencies (GHz)")
    b.set_defaults(func=cmd_bound)

    d = sub.add_parser("design", help="solve a design spec")
    d.add_argument("spec")
    d.add_argument("-o", "--output", default=".", help="output directory")
    d.set_defaults(func=cmd_design)

    v = sub.add_parser("verify", help="compare the closed-form coupling with a diagonalization")
    v.add_argument("input", help="network JSON or design report JSON")
    v.add_argument("--method", choices=("nm", "charge"), default="nm")
    v.add_argument("--wq", type=float, help="qubit frequency (GHz); read from a design report if omitted")
    v.add_argument("--sweep", help="coupler sweep lo:hi:n in GHz")
    v.add_argument("--n-cut", type=int, default=12, help="charge-basis truncation (charge method)")
    v.add_argument("-o", "--output", help="also write verify.json here")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"qcq: usage error: {exc}", file=err)
        return EXIT_PARSE
    except OSError as exc:
        print(f"qcq: cannot read input: {exc}", file=err)
        return EXIT_PARSE
    except (InvalidNetworkError, DomainError) as exc:
        print(f"qcq: invalid input: {exc}", file=err)
        return EXIT_PARSE
    except InfeasibleDesignError as exc:
        stage = f" [{exc.stage}]" if exc.stage else ""
        print(f"qcq: infeasible{stage}: {exc}", file=err)
        return EXIT_INFEASIBLE
    except (DegenerateError, NumericalFailureError, QCQError) as exc:
        stage = f" [{exc.stage}]" if exc.stage else ""
        print(f"qcq: numerical failure{stage}: {exc}", file=err)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
