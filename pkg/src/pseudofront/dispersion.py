"""Linearised-equation asymptotics: saddle branches, critical front constants,
exponential-data speed maps and the complex-decay-rate classification.

Linearising u_t = (phi(u) + u_t)_xx about an unstable state u_u and writing
solutions as a(x,t) exp(-t F(x/t)) reduces the large-time behaviour to the
envelope of the family F = lam*xi + phi_u*lam^2/(1 - lam^2).  The envelope is
parameterised by p = dF/dxi through

    xi(p) = -phi_u * 2p / (1 - p^2)^2        (the saddle relation)
    F(p)  = -phi_u * p^2 (1 + p^2) / (1 - p^2)^2

For fixed xi the saddle relation is a quartic in p with four branches
p_1..p_4; their labelling follows the real-axis asymptotics (p_1 -> -1 from
above and p_4 -> -1 from below as xi -> +infinity, p_2 in the lower and p_3
in the upper half plane) and is transported to other xi by continuity.

The critical front constants come from the neither-growth-nor-decay
condition Re F(p) = 0 imposed together with Im xi(p) = 0; for exponentially
decaying data exp(-lam*x) the candidate speed is the separable-mode speed
``xi_f(lam)`` and the complex lam-plane splits into regions where that speed
is or is not realised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import ndimage

DEGENERATE_XI_TOL = 1e-14
UNIT_POLE_TOL = 1e-12

#: imaginary extent of the branch-cut segment xi = i*zeta on which the two
#: real-axis branches exchange identity; ends at the branch points.
BRANCH_CUT_ZETA = 9.0 / (8.0 * np.sqrt(3.0))

_XI_REF = 1.0 + 0.0j  # labels are anchored at this real xi (phi_u = 1 units)
_PERMS = np.array(list(itertools.permutations(range(4))))  # (24, 4)


class DegenerateXiError(ValueError):
    """|xi| too small: the branch quartic collapses; use small-xi expansions."""


class UnitPoleError(ValueError):
    """Evaluation at p = +-1 or lam = +-1 where the envelope formulas blow up."""


class NonDecayingError(ValueError):
    """Re(lam) <= 0: the mode does not decay ahead of the front."""


class NoOscillationError(ValueError):
    """The mode exponent is real: no finite modulation period exists."""


class NewtonDivergenceError(RuntimeError):
    """Saddle-point Newton iteration failed to converge."""


class BranchJumpError(RuntimeError):
    """Root continuation lost track of its branch."""


class WindowExceededError(ValueError):
    """lam lies outside the precomputed classification window."""


# ----------------------------------------------------------------------
# scalar envelope maps (phi_u = 1 units unless stated otherwise)
# ----------------------------------------------------------------------

def xi_of_p(p, phi_u: float = 1.0):
    """Saddle relation xi(p) = -phi_u * 2p / (1-p^2)^2."""
    return -2.0 * phi_u * p / (1.0 - p * p) ** 2


def F_of_p(p, phi_u: float = 1.0):
    """Envelope exponent F(p) = -phi_u * p^2 (1+p^2) / (1-p^2)^2.

    Equivalent to -phi_u*(2p^2/(1-p^2)^2 - p^2/(1-p^2)) and, through the
    saddle relation, to p (1+p^2) xi(p) / 2.
    """
    opp = 1.0 - np.asarray(p) * np.asarray(p)
    if np.any(np.abs(opp) < UNIT_POLE_TOL):
        raise UnitPoleError("F(p) has a pole at p = +-1")
    val = -phi_u * p * p * (1.0 + p * p) / (opp * opp)
    return complex(val) if np.isscalar(p) or np.ndim(p) == 0 else val


def _F0(p):
    # pole-unguarded F at phi_u = 1, for vectorised internal use
    return -p * p * (1.0 + p * p) / (1.0 - p * p) ** 2


def _dxi0(p):
    return -2.0 * (1.0 + 3.0 * p * p) / (1.0 - p * p) ** 3


# ----------------------------------------------------------------------
# quartic branches and their labelling
# ----------------------------------------------------------------------

def _quartic_roots(s: complex) -> np.ndarray:
    """All four roots of s*(1-p^2)^2 + 2p = 0, Newton-polished."""
    roots = np.roots([s, 0.0, -2.0 * s, 2.0, s])
    return _polish(roots, s)


def _polish(p: np.ndarray, s, iters: int = 3) -> np.ndarray:
    for _ in range(iters):
        f = s * (1.0 - p * p) ** 2 + 2.0 * p
        fp = -4.0 * s * p * (1.0 - p * p) + 2.0
        step = f / fp
        p = p - step
    return p


def quartic_roots_grid(s: np.ndarray, chunk: int = 200_000) -> np.ndarray:
    """Roots of the branch quartic for an array of xi/phi_u values.

    Uses batched companion-matrix eigenvalues plus a Newton polish; returns
    an array with shape ``s.shape + (4,)`` in arbitrary per-point order.
    """
    s_flat = np.asarray(s, dtype=complex).ravel()
    n = s_flat.size
    out = np.empty((n, 4), dtype=complex)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        blk = s_flat[lo:hi]
        comp = np.zeros((hi - lo, 4, 4), dtype=complex)
        comp[:, 1, 0] = 1.0
        comp[:, 2, 1] = 1.0
        comp[:, 3, 2] = 1.0
        # monic coefficients of p^4 - 2 p^2 + (2/s) p + 1
        comp[:, 0, 3] = -1.0
        comp[:, 1, 3] = -2.0 / blk
        comp[:, 2, 3] = 2.0
        roots = np.linalg.eigvals(comp)
        out[lo:hi] = _polish(roots, blk[:, None])
    return out.reshape(np.asarray(s).shape + (4,))


def _match_labels(prev: np.ndarray, new: np.ndarray):
    """Reorder ``new`` roots (last axis 4) to continue the labels of ``prev``.

    Exact minimum-total-distance assignment over all 24 permutations.
    Returns (matched, movement) where movement is the per-point largest
    displacement of a matched root.
    """
    cand = new[..., _PERMS]                      # (..., 24, 4)
    cost = np.abs(cand - prev[..., None, :]).sum(axis=-1)
    best = np.argmin(cost, axis=-1)              # (...,)
    take = _PERMS[best]                          # (..., 4)
    matched = np.take_along_axis(new, take, axis=-1)
    movement = np.abs(matched - prev).max(axis=-1)
    return matched, movement


def _min_separation(p: np.ndarray) -> float:
    d = np.abs(p[:, None] - p[None, :])
    d[np.diag_indices(4)] = np.inf
    return float(d.min())


def _reference_labels() -> np.ndarray:
    """Branch labels at xi/phi_u = 1, fixed by the real-axis asymptotics."""
    r = _quartic_roots(_XI_REF)
    real = sorted([z for z in r if abs(z.imag) < 1e-9], key=lambda z: z.real)
    cplx = sorted([z for z in r if abs(z.imag) >= 1e-9], key=lambda z: z.imag)
    if len(real) != 2 or len(cplx) != 2:
        raise RuntimeError("unexpected root structure at the reference point")
    # [p1, p2, p3, p4]: inner real root, lower-half, upper-half, outer real root
    return np.array([real[1], cplx[0], cplx[1], real[0]])


def _homotopy_waypoints(s: complex) -> list[complex]:
    """Continuation path from the reference point that avoids the branch cut
    (the segment of the imaginary axis between the branch points)."""
    if s.real >= 0.0:
        return [s]
    height = max(1.2, abs(s.imag) + 0.2)
    sgn = 1.0 if s.imag >= 0.0 else -1.0
    return [_XI_REF + 1j * sgn * height, complex(s.real, sgn * height), s]


def _labelled_roots(s: complex) -> np.ndarray:
    """Labelled branch roots [p1, p2, p3, p4] at xi/phi_u = s by homotopy
    from the reference point along straight segments with adaptive steps."""
    labels = _reference_labels()
    pos = _XI_REF
    for target in _homotopy_waypoints(s):
        t = 0.0
        h = 0.5
        while t < 1.0:
            h = min(h, 1.0 - t)
            s_next = pos + (target - pos) * (h / (1.0 - t))
            new = _quartic_roots(s_next)
            matched, movement = _match_labels(labels, new)
            sep = _min_separation(labels)
            if movement > 0.3 * sep:
                if h <= 1e-9:
                    raise BranchJumpError(f"continuation stalled on the way to {s}")
                h *= 0.5
                continue
            labels = matched
            pos = s_next
            t += h
            h = min(2.0 * h, 0.5)
    return labels


def labelled_roots_grid(s_grid: np.ndarray) -> np.ndarray:
    """Labelled branch roots over a 2-D grid of xi/phi_u values.

    The grid must not straddle the branch cut (callers split windows at the
    imaginary axis).  Labels are anchored by a homotopy call at the first
    grid node and propagated by minimum-distance matching along the first
    row and then down every column (vectorised across columns).
    """
    s_grid = np.asarray(s_grid, dtype=complex)
    ny, nx = s_grid.shape
    roots = quartic_roots_grid(s_grid)          # (ny, nx, 4)
    out = np.empty_like(roots)
    out[0, 0] = _labelled_roots(complex(s_grid[0, 0]))
    for j in range(1, nx):                       # first row sweep
        out[0, j], _ = _match_labels(out[0, j - 1], roots[0, j])
    for i in range(1, ny):                       # column-parallel sweep
        out[i], _ = _match_labels(out[i - 1], roots[i])
    return out


@dataclass(frozen=True)
class SaddleBranchSet:
    """The four labelled saddle roots at one xi, with their F-values.

    ``p[j]`` and ``F[j]`` hold branch j+1.  For real xi branches 1 and 4 are
    real and branches 2, 3 are complex conjugates.
    """

    xi: complex
    phi_u: float
    p: np.ndarray
    F: np.ndarray


def saddle_branches(xi: complex, phi_u: float = 1.0) -> SaddleBranchSet:
    """Solve the saddle quartic at ``xi`` and label the four branches.

    Raises :class:`DegenerateXiError` for |xi| < 1e-14, where the quartic
    collapses and the small-xi expansions must be used instead.
    """
    xi = complex(xi)
    if abs(xi) < DEGENERATE_XI_TOL:
        raise DegenerateXiError("branch quartic degenerates at xi = 0")
    if phi_u <= 0:
        raise ValueError("phi_u must be positive")
    p = _labelled_roots(xi / phi_u)
    return SaddleBranchSet(xi=xi, phi_u=phi_u, p=p, F=phi_u * _F0(p))


def branch_curves_real(xi_values: np.ndarray, phi_u: float = 1.0):
    """Labelled p- and F-branches along a sweep of real xi values.

    Returns (p, F) arrays of shape (n, 4).  Used for speed-search plots and
    the bisection locator of the critical speed.
    """
    xi_values = np.asarray(xi_values, dtype=float)
    order = np.argsort(xi_values)
    s_sorted = xi_values[order] / phi_u
    roots = quartic_roots_grid(s_sorted.astype(complex))
    p_sorted = np.empty_like(roots)
    # anchor at the point nearest the reference, sweep outward both ways
    k0 = int(np.argmin(np.abs(s_sorted - _XI_REF.real)))
    p_sorted[k0] = _labelled_roots(complex(s_sorted[k0]))
    for k in range(k0 + 1, len(s_sorted)):
        p_sorted[k], _ = _match_labels(p_sorted[k - 1], roots[k])
    for k in range(k0 - 1, -1, -1):
        p_sorted[k], _ = _match_labels(p_sorted[k + 1], roots[k])
    p = np.empty_like(p_sorted)
    p[order] = p_sorted
    return p, phi_u * _F0(p)


# ----------------------------------------------------------------------
# critical front constants
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FrontPrediction:
    """Asymptotic constants of the critically selected front.

    xi_star is the front speed, lambda_star the exponential decay rate of
    the leading edge, T the temporal period of the modulated travelling
    wave, X = xi_star * T the laid-down wavelength, D the complex
    leading-edge diffusivity and nu = 3/(2 lambda_star) the coefficient of
    the logarithmic front-position correction.
    """

    phi_u: float
    xi_star: float
    p_star: complex
    lambda_star: float
    F_star: complex
    T: float
    X: float
    D: complex
    nu: float

    def as_dict(self) -> dict:
        return {
            "phi_u": self.phi_u,
            "xi_star": self.xi_star,
            "lambda_star": self.lambda_star,
            "p_star_re": self.p_star.real,
            "p_star_im": self.p_star.imag,
            "F_star_im": self.F_star.imag,
            "T": self.T,
            "X": self.X,
            "nu": self.nu,
            "D_re": self.D.real,
            "D_im": self.D.imag,
        }


def _saddle_newton(seed: complex = 1.0 + 0.8j) -> complex:
    """Damped Newton for Re F(p) = 0, Im xi(p) = 0 (phi_u = 1 units)."""
    p = seed
    for _ in range(100):
        H = np.array([_F0(p).real, xi_of_p(p).imag])
        if np.abs(H).max() < 1e-14:
            return p
        dxi = _dxi0(p)
        dF = p * dxi
        J = np.array([[dF.real, -dF.imag], [dxi.imag, dxi.real]])
        try:
            step = np.linalg.solve(J, -H)
        except np.linalg.LinAlgError as exc:
            raise NewtonDivergenceError("singular Jacobian") from exc
        scale = 1.0
        for _ in range(20):
            trial = p + scale * (step[0] + 1j * step[1])
            Ht = np.array([_F0(trial).real, xi_of_p(trial).imag])
            if np.abs(Ht).max() < np.abs(H).max() or scale < 1e-4:
                break
            scale *= 0.5
        p = trial
    if np.abs(np.array([_F0(p).real, xi_of_p(p).imag])).max() > 1e-10:
        raise NewtonDivergenceError("saddle Newton residual above 1e-10")
    return p


def _bisect_zero_reF2(lo: float = 0.4, hi: float = 1.2, tol: float = 1e-9) -> float:
    """Independent locator of the critical speed: bisection on the zero of
    Re F_2 along the real axis (phi_u = 1 units)."""
    def f(s: float) -> float:
        return _F0(_labelled_roots(complex(s))[1]).real

    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise RuntimeError("Re F_2 does not change sign on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) * flo <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def _critical_saddle() -> tuple[complex, float]:
    """(p_star, xi0) in phi_u = 1 units, cross-checked two ways."""
    p = _saddle_newton()
    if p.real < 0 or p.imag < 0:
        p = complex(abs(p.real), abs(p.imag))
        p = _saddle_newton(p)
    xi0 = xi_of_p(p).real
    xi0_bis = _bisect_zero_reF2()
    if abs(xi0 - xi0_bis) > 1e-6:
        raise NewtonDivergenceError(
            f"speed locators disagree: newton {xi0} vs bisection {xi0_bis}"
        )
    return p, xi0


def critical_front(phi_u: float = 1.0) -> FrontPrediction:
    """Constants of the critically selected (pulled) front for a given phi_u.

    The saddle system is solved by damped Newton and verified against a
    bisection on the zero crossing of Re F_2 along the real axis; the two
    locators must agree to 1e-6.
    """
    if phi_u <= 0:
        raise ValueError("phi_u must be positive")
    p_star, xi0 = _critical_saddle()
    F0s = _F0(p_star)
    mu0 = -F0s
    D0 = (-1.0 + mu0 + 3.0 * xi0 * p_star) / (1.0 - p_star * p_star)
    T = 2.0 * np.pi / abs(F0s.imag) / phi_u
    xi_star = phi_u * xi0
    return FrontPrediction(
        phi_u=phi_u,
        xi_star=xi_star,
        p_star=p_star,
        lambda_star=p_star.real,
        F_star=phi_u * F0s,
        T=T,
        X=xi_star * T,
        D=phi_u * D0,
        nu=3.0 / (2.0 * p_star.real),
    )


# ----------------------------------------------------------------------
# repeated-root (moving frame) system and the leading-edge diffusivity
# ----------------------------------------------------------------------

def _quintic_newton(lam: complex, s: float, iters: int = 50) -> complex:
    """Polish a root of s*(1-lam^2)^2 + 2*lam = 0 for fixed real s."""
    for _ in range(iters):
        f = s * (1.0 - lam * lam) ** 2 + 2.0 * lam
        fp = -4.0 * s * lam * (1.0 - lam * lam) + 2.0
        step = f / fp
        lam = lam - step
        if abs(step) < 1e-14:
            break
    return lam


def repeated_root_system(c: float, phi_u: float = 1.0):
    """Frame speed c -> (mu, lambda, D) on the branch through the critical
    saddle.

    lambda solves c(1-lambda^2)^2 + 2 phi_u lambda = 0, continued in c from
    the critical point; mu is the matching temporal exponent and
    D = (-phi_u + mu + 3 c lambda)/(1 - lambda^2) the leading-edge
    diffusivity of the frame-z diffusion balance.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    p_star, xi0 = _critical_saddle()
    s_target = c / phi_u
    sgn = 1.0 if s_target > 0 else -1.0
    lam = p_star  # branch anchor at s = xi0 (for s < 0 use the reflection)
    s = xi0
    for _ in range(100_000):
        if s == abs(s_target):
            break
        step = np.clip(abs(s_target) - s, -0.25 * s, 0.1 * max(1.0, s))
        s_new = s + step
        lam_new = _quintic_newton(lam, s_new)
        if abs(lam_new - lam) > 0.5:
            raise BranchJumpError(f"lost the branch near c/phi_u = {s_new}")
        lam, s = lam_new, s_new
    else:
        raise BranchJumpError("continuation in c did not terminate")
    if sgn < 0:
        lam = -lam
    mu = -c * lam - phi_u * lam * lam / (1.0 - lam * lam)
    D = (-phi_u + mu + 3.0 * c * lam) / (1.0 - lam * lam)
    return mu, lam, D


def diffusivity_curve(c_values: np.ndarray, phi_u: float = 1.0) -> np.ndarray:
    """D(c) along the critical branch for an array of frame speeds > 0."""
    c_values = np.asarray(c_values, dtype=float)
    if np.any(c_values <= 0):
        raise ValueError("diffusivity_curve expects positive frame speeds")
    out = np.empty(c_values.shape, dtype=complex)
    for k in np.argsort(c_values):
        _, _, out[k] = repeated_root_system(float(c_values[k]), phi_u)
    return out


# ----------------------------------------------------------------------
# exponential-data speed map in the complex decay-rate plane
# ----------------------------------------------------------------------

def xi_f(lam: complex, phi_u: float = 1.0) -> float:
    """Neither-growth-nor-decay speed of the separable mode with decay rate
    lam: phi_u * Re(lam^2/(lam^2-1)) / Re(lam).

    For real lam this reduces to phi_u * lam/(lam^2 - 1).
    """
    lam = complex(lam)
    if lam.real <= 0:
        raise NonDecayingError("xi_f requires Re(lam) > 0")
    denom = lam * lam - 1.0
    if abs(denom) < UNIT_POLE_TOL:
        raise UnitPoleError("xi_f has a pole at lam = +-1")
    return phi_u * (lam * lam / denom).real / lam.real


def fisher_xi_f(lam: complex) -> float:
    """Reference speed map of the classical scalar reaction-diffusion front:
    Re(lam^2 + 1)/Re(lam)."""
    lam = complex(lam)
    if lam.real <= 0:
        raise NonDecayingError("fisher_xi_f requires Re(lam) > 0")
    return (lam * lam + 1.0).real / lam.real


def modulation_periods(lam: complex, phi_u: float = 1.0):
    """Temporal and spatial period (T_f, X_f) of the modulated wave selected
    by complex-exponential data with decay rate lam."""
    lam = complex(lam)
    speed = xi_f(lam, phi_u)
    omega = (speed * lam + phi_u * lam * lam / (1.0 - lam * lam)).imag
    if abs(omega) < 1e-12:
        raise NoOscillationError("real mode exponent: no finite period")
    T_f = 2.0 * np.pi / abs(omega)
    return T_f, speed * T_f


def turning_points(lam: complex):
    """Points where the switching lines of a branch meet those of the data
    exponential: p = -lam +- sqrt(lam^2 - 1) mapped through the saddle
    relation.  Returns [(p, xi), (p, xi)]; xi is inf at the degenerate
    lam = +-1 double root."""
    lam = complex(lam)
    root = np.sqrt(lam * lam - 1.0)
    out = []
    for p in (-lam + root, -lam - root):
        opp = 1.0 - p * p
        if abs(opp) < UNIT_POLE_TOL:
            out.append((p, complex(np.inf, 0.0)))
        else:
            out.append((p, -2.0 * p / opp**2))
    return out


# ----------------------------------------------------------------------
# region classification of complex decay rates
# ----------------------------------------------------------------------

REGION_OUTSIDE = "outside"
REGION_R = "omega_r"
REGION_L1 = "omega_l1"
REGION_L2 = "omega_l2"

#: classification window (phi_u-independent): Re(lam) in (0, 4], |Im(lam)| <= 8
RASTER_RE = (0.01, 4.0)
RASTER_IM = (-8.0, 8.0)
RASTER_RES = 0.01

_SEEDS = {REGION_R: 1.5 + 0.0j, REGION_L1: 0.5 + 2.0j, REGION_L2: 0.5 - 2.0j}


def _xi_f_grid(lam: np.ndarray) -> np.ndarray:
    lam2 = lam * lam
    return (lam2 / (lam2 - 1.0)).real / lam.real


@dataclass(frozen=True)
class LambdaRaster:
    """Immutable flood-fill classification of the fast-speed regions.

    ``codes`` holds 0 = outside, 1/2/3 = the region containing each seed;
    ``boundary`` flags cells within one cell of the xi_f = xi_star contour.
    """

    re: np.ndarray
    im: np.ndarray
    codes: np.ndarray
    boundary: np.ndarray
    xi0: float

    _CODE_TO_REGION = {0: REGION_OUTSIDE, 1: REGION_R, 2: REGION_L1, 3: REGION_L2}

    def lookup(self, lam: complex) -> tuple[str, bool]:
        j = int(round((lam.real - self.re[0]) / RASTER_RES))
        i = int(round((lam.imag - self.im[0]) / RASTER_RES))
        if not (0 <= i < self.im.size and 0 <= j < self.re.size):
            raise WindowExceededError(
                f"lam = {lam} outside the classification window "
                f"Re in ({self.re[0]}, {self.re[-1]}], |Im| <= {self.im[-1]}"
            )
        return self._CODE_TO_REGION[int(self.codes[i, j])], bool(self.boundary[i, j])


def classification_raster(window=None, resolution: float = RASTER_RES) -> LambdaRaster:
    """Build a flood-fill raster of the regions where xi_f(lam) > xi_star.

    ``window`` is (re_min, re_max, im_min, im_max); the default is the
    standard classification window.  Regions are 4-connected components of
    the super-critical mask, identified by the three reference seeds.
    """
    if window is None:
        window = (RASTER_RE[0], RASTER_RE[1], RASTER_IM[0], RASTER_IM[1])
    re_min, re_max, im_min, im_max = window
    re = np.arange(re_min, re_max + 0.5 * resolution, resolution)
    im = np.arange(im_min, im_max + 0.5 * resolution, resolution)
    lam = re[None, :] + 1j * im[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        xf = _xi_f_grid(lam)
    xf = np.where(np.isfinite(xf), xf, -np.inf)
    _, xi0 = _critical_saddle()
    mask = xf > xi0

    labels, _ = ndimage.label(mask)
    codes = np.zeros(mask.shape, dtype=np.int8)
    for code, (region, seed) in enumerate(_SEEDS.items(), start=1):
        i = int(round((seed.imag - im[0]) / resolution))
        j = int(round((seed.real - re[0]) / resolution))
        if 0 <= i < im.size and 0 <= j < re.size and labels[i, j] > 0:
            codes[labels == labels[i, j]] = code

    grown = ndimage.binary_dilation(mask, structure=np.ones((3, 3), bool))
    shrunk = ndimage.binary_erosion(mask, structure=np.ones((3, 3), bool))
    boundary = grown & ~shrunk
    return LambdaRaster(re=re, im=im, codes=codes, boundary=boundary, xi0=xi0)


@lru_cache(maxsize=1)
def _default_raster() -> LambdaRaster:
    return classification_raster()


@dataclass(frozen=True)
class LambdaClassification:
    """A complex decay rate, its candidate speed, region and selected speed."""

    lam: complex
    xi_f: float
    region: str
    selected_speed: float
    on_boundary: bool = False
    T_f: Optional[float] = None
    X_f: Optional[float] = None


def classify_lambda(lam: complex, phi_u: float = 1.0) -> LambdaClassification:
    """Decide which speed initial data decaying like exp(-lam x) select.

    Rates in the two off-axis super-critical components propagate at
    xi_f(lam) with finite modulation periods attached; rates in the
    component meeting the real axis, or anywhere sub-critical, select the
    critical speed.  Cells within one raster cell of the dividing contour
    are reported as outside with ``on_boundary`` set.
    """
    lam = complex(lam)
    speed_map = xi_f(lam, phi_u)
    region, near_edge = _default_raster().lookup(lam)
    if near_edge:
        region = REGION_OUTSIDE
    xi_star = phi_u * _critical_saddle()[1]
    if region in (REGION_L1, REGION_L2):
        T_f, X_f = modulation_periods(lam, phi_u)
        return LambdaClassification(
            lam=lam, xi_f=speed_map, region=region, selected_speed=speed_map,
            on_boundary=near_edge, T_f=T_f, X_f=X_f,
        )
    return LambdaClassification(
        lam=lam, xi_f=speed_map, region=region, selected_speed=xi_star,
        on_boundary=near_edge,
    )


def omega_l1_max_alpha(im_edge: float = 8.0) -> float:
    """Largest Re(lam) on the upper fast region at a given |Im(lam)|, by
    bisection on xi_f(alpha + i*im_edge) = xi_star.  Approaches 1/xi_star
    as the edge recedes."""
    _, xi0 = _critical_saddle()

    def g(alpha: float) -> float:
        return xi_f(complex(alpha, im_edge)) - xi0

    lo, hi = 1.0, 2.0
    if g(lo) <= 0:
        raise RuntimeError("no supercritical cell at the bracket start")
    while g(hi) > 0:
        hi += 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
