"""Constitutive functions phi(u) and their stability classification.

The evolution equation u_t = (phi(u) + u_t)_xx is forward-diffusive where
phi'(u) > 0 (the stable range) and backward-diffusive where phi'(u) < 0
(the unstable range).  Everything downstream -- the linearised front-speed
analysis and the direct solver -- is parameterised by one of the
nonlinearities defined here, or by a user-supplied (phi, phi') pair.

Built-in models:

* ``cubic``   phi(u) = u^3 - u
* ``expsym``  phi(u) = -u exp(-u^2)
* ``exppop``  phi(u) = u exp(-u)   (single-hump migration-type model)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

MARGINAL_TOL = 1e-12

# Root scans for plateau values and critical points of phi.  The built-in
# phi's have all their O(1) features well inside this range.
_SCAN_LO = -10.0
_SCAN_HI = 10.0
_SCAN_STEP = 1e-3
_BISECT_TOL = 1e-12


class NotUnstableError(ValueError):
    """The requested base state has phi'(u_u) >= 0, so nothing propagates into it."""


@dataclass(frozen=True)
class NonlinearitySpec:
    """A constitutive function phi together with its derivative.

    Both callables must accept scalars and numpy arrays.  ``kind`` is one of
    ``cubic``/``expsym``/``exppop``/``custom`` and is what config files and
    CLI flags refer to.
    """

    kind: str
    name: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]

    def __call__(self, u):
        return self.f(u)


@dataclass(frozen=True)
class StabilityInfo:
    """Derived stability quantities of phi around an unstable state u_u.

    ``phi_u = -phi'(u_u) > 0`` scales every speed and rate in the linear
    analysis.  For odd phi with u_u = 0 the plateau values u_minus < u_plus
    solve phi(u) = phi(u_u) in the stable range and ``phi_s = phi'(u_plus)``;
    when no stable solutions exist (the expsym case) they are left unset.
    ``u_local_max``/``u_local_min`` locate the hump and dip of phi, i.e. the
    edges of the unstable range.
    """

    u_u: float
    phi_u: float
    u_local_max: Optional[float]
    u_local_min: Optional[float]
    u_plus: Optional[float] = None
    u_minus: Optional[float] = None
    phi_s: Optional[float] = None


def cubic() -> NonlinearitySpec:
    return NonlinearitySpec(
        kind="cubic",
        name="cubic",
        f=lambda u: u**3 - u,
        df=lambda u: 3.0 * u**2 - 1.0,
    )


def expsym() -> NonlinearitySpec:
    return NonlinearitySpec(
        kind="expsym",
        name="expsym",
        f=lambda u: -u * np.exp(-(u**2)),
        df=lambda u: (2.0 * u**2 - 1.0) * np.exp(-(u**2)),
    )


def exppop() -> NonlinearitySpec:
    return NonlinearitySpec(
        kind="exppop",
        name="exppop",
        f=lambda u: u * np.exp(-u),
        df=lambda u: (1.0 - u) * np.exp(-u),
    )


def custom(name: str, f: Callable, df: Callable) -> NonlinearitySpec:
    """Wrap a user-supplied (phi, phi') pair.  No symbolic differentiation."""
    return NonlinearitySpec(kind="custom", name=name, f=f, df=df)


_BUILTINS = {"cubic": cubic, "expsym": expsym, "exppop": exppop}


def from_name(name: str) -> NonlinearitySpec:
    """Look up a built-in nonlinearity by its config/CLI name."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise KeyError(
            f"unknown nonlinearity {name!r}; expected one of {sorted(_BUILTINS)}"
        ) from None


def classify(spec: NonlinearitySpec, u: float, tol: float = MARGINAL_TOL) -> str:
    """Classify a constant state: 'stable' if phi'(u) > tol, 'unstable' if
    phi'(u) < -tol, 'marginal' otherwise."""
    slope = float(spec.df(u))
    if slope > tol:
        return "stable"
    if slope < -tol:
        return "unstable"
    return "marginal"


def _bisect(fun, a: float, b: float) -> float:
    fa = fun(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = fun(m)
        if fm == 0.0 or (b - a) < _BISECT_TOL:
            return m
        if (fa < 0) == (fm < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _sign_change_roots(fun, lo: float, hi: float, step: float) -> list[float]:
    """All sign-change roots of ``fun`` on [lo, hi], scan + bisection."""
    x = np.arange(lo, hi + step, step)
    y = np.asarray(fun(x), dtype=float)
    sign = np.sign(y)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    roots = [_bisect(fun, x[i], x[i + 1]) for i in idx]
    roots += [float(x[i]) for i in np.nonzero(sign == 0)[0]]
    return sorted(roots)


def stability_info(spec: NonlinearitySpec, u_u: float) -> StabilityInfo:
    """Compute phi_u and, where they exist, plateau values and phi-extrema.

    Raises :class:`NotUnstableError` unless phi'(u_u) < 0.  For an odd spec
    perturbed about u_u = 0 the stable plateau pair solving
    phi(u) = phi(u_u) is located by scan + bisection; if no stable root
    exists (expsym about 0) the plateau fields stay ``None``.
    """
    slope = float(spec.df(u_u))
    if slope >= 0.0:
        raise NotUnstableError(f"phi'({u_u}) = {slope} >= 0: state is not unstable")
    phi_u = -slope

    crit = _sign_change_roots(spec.df, _SCAN_LO, _SCAN_HI, _SCAN_STEP)
    u_local_max = None
    u_local_min = None
    for r in crit:
        rising_on_left = float(spec.df(r - 10 * _SCAN_STEP)) > 0
        if rising_on_left and u_local_max is None:
            u_local_max = r
        elif not rising_on_left and u_local_min is None:
            u_local_min = r

    a_level = float(spec.f(u_u))
    level_roots = _sign_change_roots(lambda u: spec.f(u) - a_level, _SCAN_LO, _SCAN_HI, _SCAN_STEP)
    stable_roots = [r for r in level_roots if classify(spec, r) == "stable"]

    u_plus = u_minus = phi_s = None
    if stable_roots:
        below = [r for r in stable_roots if r < u_u]
        above = [r for r in stable_roots if r > u_u]
        if below and above:
            u_minus = max(below)
            u_plus = min(above)
            phi_s = float(spec.df(u_plus))
    return StabilityInfo(
        u_u=float(u_u),
        phi_u=phi_u,
        u_local_max=u_local_max,
        u_local_min=u_local_min,
        u_plus=u_plus,
        u_minus=u_minus,
        phi_s=phi_s,
    )
