"""Direct solver for u_t = (phi(u) + u_t)_xx on a truncated interval.

Each time step first solves the elliptic problem

    -g_xx + g = phi(u),   g_x(+-L) = 0

for the combined flux variable g = phi(u) + u_t (tridiagonal, second-order
central differences with mirrored ghost nodes), then advances u explicitly:

    u <- u + dt * (g - phi(u))

which by the discrete elliptic identity g - phi(u) = g_xx is forward Euler
for u_t = g_xx.  With trapezoidal node weights the discrete mass is
conserved to roundoff because the boundary fluxes of g vanish by
construction.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from .nonlinearity import NonlinearitySpec, from_name

DIVERGENCE_LIMIT = 1e6


class SingularSystemError(RuntimeError):
    """The elliptic tridiagonal system lost diagonal dominance (cannot happen
    for dx > 0; asserted anyway)."""


class DivergenceError(RuntimeError):
    """The explicit update blew past the divergence limit."""

    def __init__(self, step_index: int, max_abs: float):
        super().__init__(f"solution diverged at step {step_index}: max|u| = {max_abs:.3g}")
        self.step_index = step_index
        self.max_abs = max_abs


@dataclass(frozen=True)
class Grid1D:
    """Uniform nodes x_i = -L + i*dx on [-L, L] with dx = 2L/(n-1)."""

    L: float
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 nodes")
        if self.L <= 0:
            raise ValueError("half-width L must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.L / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.n)


def grid_from_spacing(L: float, dx: float) -> Grid1D:
    n = int(round(2.0 * L / dx)) + 1
    grid = Grid1D(L=L, n=n)
    if abs(grid.dx - dx) > 1e-9 * dx:
        raise ValueError(f"dx = {dx} does not tile [-L, L] evenly")
    return grid


@dataclass(frozen=True)
class FieldState:
    """Solution values on a grid at one instant."""

    grid: Grid1D
    u: np.ndarray
    t: float
    step_count: int = 0

    def __post_init__(self):
        if len(self.u) != self.grid.n:
            raise ValueError("field length does not match grid")


@dataclass(frozen=True)
class InitialCondition:
    """Perturbation profile added to the base state u_u.

    kinds: ``gaussian`` (eps * exp(-x^2)), ``expdecay``
    (eps * exp(-rate |x|)) and ``oscillatory``
    (eps * exp(-alpha |x|) * cos(beta (x + x0))).
    """

    kind: str
    eps: float
    rate: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    x0: float = 0.0

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("perturbation amplitude eps must be positive")
        if self.kind == "expdecay" and (self.rate is None or self.rate <= 0):
            raise ValueError("expdecay needs a positive decay rate")
        if self.kind == "oscillatory" and (self.alpha is None or self.alpha <= 0):
            raise ValueError("oscillatory needs a positive decay rate alpha")
        if self.kind == "oscillatory" and self.beta is None:
            raise ValueError("oscillatory needs a wavenumber beta")
        if self.kind not in ("gaussian", "expdecay", "oscillatory"):
            raise ValueError(f"unknown initial condition kind {self.kind!r}")

    def profile(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "gaussian":
            return self.eps * np.exp(-(x**2))
        if self.kind == "expdecay":
            return self.eps * np.exp(-self.rate * np.abs(x))
        return self.eps * np.exp(-self.alpha * np.abs(x)) * np.cos(self.beta * (x + self.x0))


@dataclass(frozen=True)
class SimConfig:
    """Everything that determines a run, 1:1 with the JSON config format."""

    nonlinearity: str
    u_u: float
    ic: InitialCondition
    L: float
    dx: float
    dt: float
    t_end: float
    snapshot_times: tuple = ()

    def __post_init__(self):
        if self.dt <= 0 or self.dx <= 0:
            raise ValueError("dt and dx must be positive")
        if any(t < 0 or t > self.t_end + 1e-12 for t in self.snapshot_times):
            raise ValueError("snapshot_times must lie in [0, t_end]")
        if list(self.snapshot_times) != sorted(self.snapshot_times):
            raise ValueError("snapshot_times must be sorted")

    def spec(self) -> NonlinearitySpec:
        return from_name(self.nonlinearity)

    def grid(self) -> Grid1D:
        return grid_from_spacing(self.L, self.dx)

    def to_dict(self) -> dict:
        ic = {"kind": self.ic.kind, "eps": self.ic.eps, "x0": self.ic.x0}
        if self.ic.rate is not None:
            ic["rate"] = self.ic.rate
        if self.ic.alpha is not None:
            ic["alpha"] = self.ic.alpha
        if self.ic.beta is not None:
            ic["beta"] = self.ic.beta
        return {
            "nonlinearity": self.nonlinearity,
            "u_u": self.u_u,
            "ic": ic,
            "L": self.L,
            "dx": self.dx,
            "dt": self.dt,
            "t_end": self.t_end,
            "snapshot_times": list(self.snapshot_times),
        }

    @staticmethod
    def from_dict(data: dict) -> "SimConfig":
        data = dict(data)
        ic = InitialCondition(**data.pop("ic"))
        data["snapshot_times"] = tuple(data.get("snapshot_times", ()))
        return SimConfig(ic=ic, **data)

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


def build_initial(config: SimConfig) -> FieldState:
    """Base state plus perturbation at t = 0."""
    grid = config.grid()
    u = config.u_u + config.ic.profile(grid.nodes)
    return FieldState(grid=grid, u=u, t=0.0, step_count=0)


class EllipticOperator:
    """Prefactored solver for -g'' + g = rhs with zero-flux ends.

    The mirrored-ghost tridiagonal system is symmetrised with trapezoidal
    row weights and Cholesky-factored once; each solve is O(n).
    """

    def __init__(self, grid: Grid1D):
        self.grid = grid
        n, dx = grid.n, grid.dx
        a = 1.0 / dx**2
        diag = np.full(n, 1.0 + 2.0 * a)
        diag[0] = diag[-1] = 0.5 + a  # half-weighted boundary rows
        upper = np.full(n, -a)
        ab = np.vstack([upper, diag])
        ab[0, 0] = 0.0
        neighbor_sum = np.full(n, 2.0 * a)
        neighbor_sum[0] = neighbor_sum[-1] = a
        if np.any(diag - neighbor_sum <= 0):
            raise SingularSystemError("lost diagonal dominance")
        self._weights = np.ones(n)
        self._weights[0] = self._weights[-1] = 0.5
        self._factor = cholesky_banded(ab, lower=False)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve_banded((self._factor, False), self._weights * rhs)


def elliptic_solve(u: np.ndarray, spec: NonlinearitySpec, grid: Grid1D) -> np.ndarray:
    """Solve -g'' + g = phi(u) with g'(+-L) = 0 (one-shot convenience form)."""
    if len(u) != grid.n:
        raise ValueError("field length does not match grid")
    return EllipticOperator(grid).solve(np.asarray(spec.f(u), dtype=float))


def step(state: FieldState, dt: float, spec: NonlinearitySpec,
         op: Optional[EllipticOperator] = None) -> FieldState:
    """One forward-Euler update u += dt*(g - phi(u))."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    if op is None:
        op = EllipticOperator(state.grid)
    phi = np.asarray(spec.f(state.u), dtype=float)
    g = op.solve(phi)
    u_new = state.u + dt * (g - phi)
    max_abs = float(np.abs(u_new).max())
    if not np.isfinite(max_abs) or max_abs > DIVERGENCE_LIMIT:
        raise DivergenceError(state.step_count + 1, max_abs)
    return FieldState(grid=state.grid, u=u_new, t=state.t + dt,
                      step_count=state.step_count + 1)


@dataclass
class DiagnosticsTrace:
    """Per-step scalar diagnostics of a run.

    mass and first_moment use trapezoidal weights (the discretely conserved
    quantities of the scheme); front positions are threshold crossings of
    |u - u_u| refined by linear interpolation, NaN when no node exceeds
    the threshold.
    """

    t: np.ndarray
    mass: np.ndarray
    first_moment: np.ndarray
    max_abs: np.ndarray
    front_right: np.ndarray
    front_left: np.ndarray
    threshold: float
    u_u: float


@dataclass
class RunResult:
    config: SimConfig
    snapshots: list
    trace: DiagnosticsTrace
    diverged: bool = False
    divergence_step: Optional[int] = None


def _trapezoid_weights(grid: Grid1D) -> np.ndarray:
    w = np.full(grid.n, grid.dx)
    w[0] = w[-1] = 0.5 * grid.dx
    return w


def _front_pair(x: np.ndarray, dev: np.ndarray, threshold: float):
    """(left, right) outermost threshold crossings of |dev|, interpolated."""
    above = np.abs(dev) >= threshold
    idx = np.nonzero(above)[0]
    if idx.size == 0:
        return np.nan, np.nan
    hi = idx[-1]
    if hi == len(x) - 1:
        right = x[-1]
    else:
        a, b = abs(dev[hi]), abs(dev[hi + 1])
        right = x[hi] + (x[hi + 1] - x[hi]) * (a - threshold) / (a - b)
    lo = idx[0]
    if lo == 0:
        left = x[0]
    else:
        a, b = abs(dev[lo]), abs(dev[lo - 1])
        left = x[lo] - (x[lo] - x[lo - 1]) * (a - threshold) / (a - b)
    return left, right


def run(config: SimConfig, front_threshold: float = 0.01) -> RunResult:
    """Advance to t_end, recording snapshots and per-step diagnostics.

    Divergence does not raise: the result carries the partial snapshots and
    trace with ``diverged`` set and the failing step index recorded.
    """
    spec = config.spec()
    state = build_initial(config)
    grid = state.grid
    x = grid.nodes
    w = _trapezoid_weights(grid)
    op = EllipticOperator(grid)

    n_steps = int(round(config.t_end / config.dt))
    snap_steps = {}
    for ts in config.snapshot_times:
        snap_steps.setdefault(int(round(ts / config.dt)), ts)

    nrec = n_steps + 1
    t_arr = np.empty(nrec)
    mass = np.empty(nrec)
    moment = np.empty(nrec)
    max_abs = np.empty(nrec)
    fr = np.empty(nrec)
    fl = np.empty(nrec)

    u = state.u.copy()
    snapshots = []
    diverged = False
    divergence_step = None

    def record(k: int, t: float):
        t_arr[k] = t
        mass[k] = float(w @ u)
        moment[k] = float((w * x) @ u)
        max_abs[k] = float(np.abs(u).max())
        fl[k], fr[k] = _front_pair(x, u - config.u_u, front_threshold)

    record(0, 0.0)
    if 0 in snap_steps:
        snapshots.append(FieldState(grid=grid, u=u.copy(), t=0.0, step_count=0))

    k = 0
    for k in range(1, n_steps + 1):
        phi = np.asarray(spec.f(u), dtype=float)
        g = op.solve(phi)
        u += config.dt * (g - phi)
        t = k * config.dt
        peak = float(np.abs(u).max())
        if not np.isfinite(peak) or peak > DIVERGENCE_LIMIT:
            diverged = True
            divergence_step = k
            record(k, t)
            k += 1
            break
        record(k, t)
        if k in snap_steps:
            snapshots.append(FieldState(grid=grid, u=u.copy(), t=t, step_count=k))
    else:
        k = n_steps + 1

    trace = DiagnosticsTrace(
        t=t_arr[:k], mass=mass[:k], first_moment=moment[:k], max_abs=max_abs[:k],
        front_right=fr[:k], front_left=fl[:k],
        threshold=front_threshold, u_u=config.u_u,
    )
    return RunResult(config=config, snapshots=snapshots, trace=trace,
                     diverged=diverged, divergence_step=divergence_step)
