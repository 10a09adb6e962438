"""
Stability bounds, the on-resonance negativity test and the paramp search.

Two stability routes are kept side by side:

* the collective-cooperativity bound ``xi_j <= 1 + C_j`` with each
  ``C_j`` evaluated at the other mode's operating paramp, and
* the eigenvalues of the drift matrix (:func:`optoresponse.linsys.eigen_stability`).

The first is a closed form with spurious poles at ``xi = 1`` and does not
coincide with the eigenvalue verdict everywhere; the second is treated as
authoritative.  For ``kappa >> gamma`` the exact boundary is also available
in closed form, see :func:`quadrature_stable`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import PoleProximityError
from .linsys import BOUNDARY_TOL, eigen_stability
from .params import DimensionlessParams, from_dimensionless
from .response import cpsf_on_resonance, on_resonance_ratio

__all__ = [
    "StabilityReport",
    "NegativityCheck",
    "NegativityResult",
    "collective_cooperativities",
    "stability_report",
    "quadrature_stable",
    "negativity_check",
    "optimize_paramps",
]


@dataclass(frozen=True)
class StabilityReport:
    c_m: float
    c_d: float
    xi_m_max: float
    xi_d_max: float
    stable_closed_form: bool
    stable_eigen: bool
    margin: float
    eigen_max_real: float


@dataclass(frozen=True)
class NegativityCheck:
    m: float
    negative: bool
    stable: bool


@dataclass(frozen=True)
class NegativityResult:
    target_m: float
    xi_m_opt: float
    xi_d_opt: float
    achieved_m: float
    feasible: bool
    m_max: float


def _collective(c_self, c_other, xi_other):
    u = 1.0 + c_other - xi_other**2
    return c_self * u, u**2 - xi_other**2 * c_other**2


def collective_cooperativities(d: DimensionlessParams) -> tuple[float, float]:
    """Collective cooperativities ``(C_m, C_d)`` at the operating paramps."""
    out = []
    for c_self, c_other, xi_other, name in (
        (d.c0, d.c1, d.xi_d, "C_m"),
        (d.c1, d.c0, d.xi_m, "C_d"),
    ):
        num, den = _collective(c_self, c_other, xi_other)
        if abs(den) < 1e-14:
            if num == 0.0:
                out.append(0.0)
                continue
            raise PoleProximityError(f"{name} denominator vanishes")
        out.append(num / den)
    return out[0], out[1]


def _closed_form_margin(c0, c1, xi_m, xi_d):
    """Vectorized ``min(1 + C_m - xi_m, 1 + C_d - xi_d)``; NaN at poles."""
    with np.errstate(divide="ignore", invalid="ignore"):
        nm, dm = _collective(c0, c1, xi_d)
        nd, dd = _collective(c1, c0, xi_m)
        cm = np.where(nm == 0.0, 0.0, nm / dm)
        cd = np.where(nd == 0.0, 0.0, nd / dd)
        return np.minimum(1.0 + cm - xi_m, 1.0 + cd - xi_d)


def stability_report(d: DimensionlessParams) -> StabilityReport:
    """Closed-form modulation maxima together with the eigenvalue verdict."""
    c_m, c_d = collective_cooperativities(d)
    xi_m_max, xi_d_max = 1.0 + c_m, 1.0 + c_d
    verdict = eigen_stability(from_dimensionless(d))
    margin = min(xi_m_max - d.xi_m, xi_d_max - d.xi_d)
    return StabilityReport(
        c_m=c_m,
        c_d=c_d,
        xi_m_max=xi_m_max,
        xi_d_max=xi_d_max,
        stable_closed_form=margin >= 0.0,
        stable_eigen=verdict.stable,
        margin=margin,
        eigen_max_real=verdict.max_real,
    )


def quadrature_stable(d: DimensionlessParams) -> bool:
    """Exact stability for ``kappa >> gamma_m, gamma_d`` (real paramps).

    Eliminating the cavity leaves two decoupled real symmetric quadrature
    blocks; the amplified one is negative definite iff ``xi_m < 1 + C0``,
    ``xi_d < 1 + C1`` and ``(1 + C0 - xi_m)(1 + C1 - xi_d) > C0 C1``.
    """
    um = 1.0 + d.c0 - d.xi_m
    ud = 1.0 + d.c1 - d.xi_d
    return um > 0 and ud > 0 and um * ud > d.c0 * d.c1


def negativity_check(d: DimensionlessParams) -> NegativityCheck:
    """On-resonance ``kappa * A(0)`` with its sign and the joint stability flag."""
    m = cpsf_on_resonance(d).m_negativity
    rep = stability_report(d)
    return NegativityCheck(
        m=m, negative=m < 0.0, stable=rep.stable_closed_form and rep.stable_eigen
    )


# -- paramp search ----------------------------------------------------------


def _strictly_stable(d: DimensionlessParams, xm: float, xd: float) -> bool:
    v = eigen_stability(from_dimensionless(d.with_paramps(xm, xd)))
    return v.max_real < -BOUNDARY_TOL


def _eigen_edge(d: DimensionlessParams, ux: float, uy: float, s_cap: float) -> float:
    """Largest ``s`` along the ray with the eigenvalue verdict strictly stable."""
    lo, hi = 0.0, 1.0
    while _strictly_stable(d, hi * ux, hi * uy):
        lo, hi = hi, 2.0 * hi
        if hi > s_cap:
            return s_cap
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if _strictly_stable(d, mid * ux, mid * uy):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return lo


@dataclass
class _Ray:
    theta: float
    s_root: float  # inf when no admissible root
    m_min: float


def _scan_ray(d, theta, target, n_grid, s_cap) -> _Ray:
    ux, uy = math.cos(theta), math.sin(theta)
    s_e = _eigen_edge(d, ux, uy, s_cap)
    if s_e <= 0.0:
        return _Ray(theta, math.inf, math.inf)
    t = np.linspace(0.0, 1.0, n_grid)
    tail = 1.0 - np.logspace(-1, -12, 23)
    s = s_e * np.unique(np.concatenate([t, tail]))

    def kA(sv):
        a_n, a_d = on_resonance_ratio(d.c0, d.c1, sv * ux, sv * uy)
        return 4.0 * a_n / a_d

    with np.errstate(divide="ignore", invalid="ignore"):
        m = kA(s)
        ok = (_closed_form_margin(d.c0, d.c1, s * ux, s * uy) >= 0.0) & np.isfinite(m)
    m_min = float(np.min(m[ok])) if np.any(ok) else math.inf

    f = m - target
    for i in range(len(s) - 1):
        if not (ok[i] and ok[i + 1]):
            continue
        if f[i] == 0.0:
            return _Ray(theta, float(s[i]), m_min)
        if f[i] > 0.0 > f[i + 1] or f[i + 1] == 0.0:
            root = brentq(
                lambda x: float(kA(x)) - target, s[i], s[i + 1], xtol=1e-15, rtol=1e-15
            )
            if _closed_form_margin(d.c0, d.c1, root * ux, root * uy) >= 0.0:
                return _Ray(theta, root, m_min)
    return _Ray(theta, math.inf, m_min)


def optimize_paramps(
    d: DimensionlessParams,
    target_m: float,
    *,
    n_rays: int = 181,
    n_grid: int = 400,
    s_cap: float = 1e3,
) -> NegativityResult:
    """Smallest-norm paramps reaching ``kappa * A(0) = target_m`` in the stable region.

    The paramps of ``d`` are ignored.  Rays ``(xi_m, xi_d) = s (cos t, sin t)``
    with ``t`` in ``[0, pi/2]`` are searched for the first admissible root
    of ``kappa A(0) - target_m``; admissible points satisfy both collective
    bounds and are strictly stable by the eigenvalue test.  The ray angle is
    then refined by bounded scalar minimisation of the root radius.

    Unreachable targets give ``feasible=False``; ``m_max`` is the most
    negative ``kappa A(0)`` met on the admissible part of the scanned rays.
    """
    if not target_m < 0:
        raise ValueError("target_m must be negative")
    thetas = np.linspace(0.0, 0.5 * math.pi, n_rays)
    rays = [_scan_ray(d, th, target_m, n_grid, s_cap) for th in thetas]
    m_max = min(r.m_min for r in rays)
    radii = np.array([r.s_root for r in rays])
    if not np.any(np.isfinite(radii)):
        return NegativityResult(target_m, math.nan, math.nan, math.nan, False, m_max)

    # first index of the minimum: ties resolve toward smaller xi_d
    best = int(np.argmin(radii))
    theta, s_best = float(thetas[best]), float(radii[best])
    lo = thetas[best - 1] if best > 0 and np.isfinite(radii[best - 1]) else theta
    hi = thetas[best + 1] if best + 1 < n_rays and np.isfinite(radii[best + 1]) else theta
    if hi > lo:
        res = minimize_scalar(
            lambda th: _scan_ray(d, th, target_m, n_grid, s_cap).s_root,
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-10},
        )
        if np.isfinite(res.fun) and res.fun < s_best - 1e-8 * s_best:
            theta, s_best = float(res.x), float(res.fun)

    xm, xd = s_best * math.cos(theta), s_best * math.sin(theta)
    if xd < 1e-14:
        xd = 0.0
    a_n, a_d = on_resonance_ratio(d.c0, d.c1, xm, xd)
    achieved = float(4.0 * a_n / a_d)
    feasible = abs(achieved - target_m) <= 1e-6 * max(1.0, abs(target_m))
    return NegativityResult(target_m, xm, xd, achieved, feasible, m_max)
