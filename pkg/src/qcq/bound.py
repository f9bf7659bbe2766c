"""Upper bound on the turned-on coupling.

With ``x = w_q / w_s`` and ``y = w_s / w_l`` the turned-on coupling is

    |g_on| = (2 w_l / beta_s^2) f(x, y),
    f(x, y) = (1 - x)(1 - y^2) x^2 y / ((1 + x)(1 - x^2 y^2)),

and f has a single interior maximum on the unit square.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .coupling import Regime
from .errors import DomainError, NumericalFailureError

GRADIENT_TOL = 1e-10
#: Coefficient of the rounded ``0.187 w_q / beta_s^2`` estimate.
ROUNDED_QUBIT_COEFFICIENT = 0.187


@dataclass(frozen=True)
class XYPoint:
    x: float
    y: float

    def __post_init__(self):
        _check_xy(self.x, self.y)


@dataclass(frozen=True)
class BoundResult:
    x_star: float
    y_star: float
    f_star: float
    g_on_max: float | None = None

    @property
    def prefactor(self) -> float:
        """2 f*, the coefficient of w_l / beta_s^2."""
        return 2.0 * self.f_star

    @property
    def qubit_prefactor(self) -> float:
        """Coefficient of w_q / beta_s^2 at the optimum."""
        return 2.0 * self.f_star / (self.x_star * self.y_star)


@dataclass(frozen=True)
class XYParams:
    A: float
    B_abs: float
    omega_q: float
    omega_s: float


def _check_xy(x: float, y: float) -> None:
    if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
        raise DomainError(f"(x, y) must lie in the open unit square, got ({x}, {y})")


def f(x: float, y: float) -> float:
    _check_xy(x, y)
    return (1 - x) * (1 - y * y) * x * x * y / ((1 + x) * (1 - x * x * y * y))


def _f_unchecked(x, y):
    return (1 - x) * (1 - y * y) * x * x * y / ((1 + x) * (1 - x * x * y * y))


def log_f_gradient(x: float, y: float) -> np.ndarray:
    u = 1 - x * x * y * y
    gx = -1 / (1 - x) + 2 / x - 1 / (1 + x) + 2 * x * y * y / u
    gy = -2 * y / (1 - y * y) + 1 / y + 2 * x * x * y / u
    return np.array([gx, gy])


def log_f_hessian(x: float, y: float) -> np.ndarray:
    u = 1 - x * x * y * y
    v = 1 + x * x * y * y
    hxx = -1 / (1 - x) ** 2 - 2 / x**2 + 1 / (1 + x) ** 2 + 2 * y * y * v / u**2
    hyy = -2 * (1 + y * y) / (1 - y * y) ** 2 - 1 / y**2 + 2 * x * x * v / u**2
    hxy = 4 * x * y / u**2
    return np.array([[hxx, hxy], [hxy, hyy]])


def f_gradient(x: float, y: float) -> np.ndarray:
    _check_xy(x, y)
    return _f_unchecked(x, y) * log_f_gradient(x, y)


def _newton(x0: float, y0: float, max_iter: int = 100) -> tuple[float, float] | None:
    p = np.array([x0, y0])
    for _ in range(max_iter):
        g = log_f_gradient(*p)
        if np.linalg.norm(_f_unchecked(*p) * g) < GRADIENT_TOL * 1e-3:
            return float(p[0]), float(p[1])
        h = log_f_hessian(*p)
        try:
            step = -np.linalg.solve(h, g)
        except np.linalg.LinAlgError:
            return None
        if g @ step <= 0:  # not an ascent direction; Hessian not negative definite here
            step = g
        t = 1.0
        while t > 1e-12:
            q = p + t * step
            if 0 < q[0] < 1 and 0 < q[1] < 1 and _f_unchecked(*q) >= _f_unchecked(*p):
                break
            t *= 0.5
        else:
            return None
        p = q
    g = _f_unchecked(*p) * log_f_gradient(*p)
    return (float(p[0]), float(p[1])) if np.linalg.norm(g) < GRADIENT_TOL else None


@functools.lru_cache(maxsize=1)
def maximize_f() -> BoundResult:
    """Locate the interior maximum of f.

    A 100x100 grid scan seeds a damped Newton iteration on grad(log f);
    Nelder-Mead is the fallback if Newton fails to converge.
    """
    grid = (np.arange(100) + 0.5) / 100
    xs, ys = np.meshgrid(grid, grid, indexing="ij")
    vals = _f_unchecked(xs, ys)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    found = _newton(grid[i], grid[j])
    if found is None:
        res = optimize.minimize(
            lambda p: -_f_unchecked(*p) if 0 < p[0] < 1 and 0 < p[1] < 1 else 0.0,
            [grid[i], grid[j]],
            method="Nelder-Mead",
            options={"xatol": 1e-13, "fatol": 1e-17, "maxiter": 20000},
        )
        found = (float(res.x[0]), float(res.x[1]))
        if np.linalg.norm(f_gradient(*found)) >= GRADIENT_TOL:
            raise NumericalFailureError(f"maximization of f did not converge (last point {found})")
    x, y = found
    return BoundResult(x, y, _f_unchecked(x, y))


def g_on(x: float, y: float, omega_l: float, beta_s: float) -> float:
    """|g_on| in GHz for the given (x, y) and constraints."""
    _check_constraints(omega_l, beta_s)
    return 2.0 * omega_l / beta_s**2 * f(x, y)


def g_on_max(omega_l: float, beta_s: float) -> float:
    """Largest achievable |g_on| (GHz) for a coupler ceiling ``omega_l``."""
    _check_constraints(omega_l, beta_s)
    return 2.0 * omega_l / beta_s**2 * maximize_f().f_star


def upper_bound(omega_l: float, beta_s: float) -> BoundResult:
    best = maximize_f()
    return BoundResult(best.x_star, best.y_star, best.f_star, g_on_max(omega_l, beta_s))


def g_on_max_from_qubit(omega_q: float, beta_s: float, coefficient: float | None = None) -> float:
    """Bound rewritten in terms of the optimal qubit frequency (GHz).

    ``coefficient=None`` uses the exact optimum ``2 f* / (x* y*)``; pass
    :data:`ROUNDED_QUBIT_COEFFICIENT` for the rounded 0.187 rule.
    """
    _check_constraints(omega_q, beta_s)
    k = maximize_f().qubit_prefactor if coefficient is None else coefficient
    return k * omega_q / beta_s**2


def _check_constraints(omega: float, beta_s: float) -> None:
    if not (omega > 0 and beta_s > 0):
        raise DomainError(f"frequency and beta_s must be positive, got {omega}, {beta_s}")


def params_from_xy(x: float, y: float, omega_l: float, beta_s: float, regime: Regime | str) -> XYParams:
    _check_xy(x, y)
    _check_constraints(omega_l, beta_s)
    regime = Regime(regime)
    A = 1 / (1 - x * x) if regime is Regime.ON_ABOVE_OFF else 1 / (1 - x * x * y * y)
    return XYParams(A, x * beta_s**2 / (1 - x) ** 2, x * y * omega_l, y * omega_l)


def xy_from_design(omega_q: float, omega_s: float, omega_l: float) -> XYPoint:
    if not (0 < omega_q < omega_s < omega_l):
        raise DomainError(f"need 0 < omega_q < omega_s < omega_l, got {omega_q}, {omega_s}, {omega_l}")
    return XYPoint(omega_q / omega_s, omega_s / omega_l)


def grid_f(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cell-centred evaluation of f on an n x n grid (for plotting)."""
    grid = (np.arange(n) + 0.5) / n
    xs, ys = np.meshgrid(grid, grid, indexing="ij")
    return xs, ys, _f_unchecked(xs, ys)


def optimal_frequencies(omega_l: float) -> tuple[float, float]:
    """(w_q, w_s) at the optimum for a coupler ceiling ``omega_l``."""
    b = maximize_f()
    return b.x_star * b.y_star * omega_l, b.y_star * omega_l

