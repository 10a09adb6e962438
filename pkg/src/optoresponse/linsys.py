"""
Drift matrix and susceptibility by direct 6x6 linear algebra.

Basis order is ``(da, da^dag, db, db^dag, dd, dd^dag)``.  The routines here
make no use of the closed-form expressions in :mod:`optoresponse.response`
and serve as the independent numerical reference for them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularResponseError
from .params import SystemParams

__all__ = [
    "BASIS",
    "COND_LIMIT",
    "BOUNDARY_TOL",
    "StabilityVerdict",
    "build_drift",
    "susceptibility_numeric",
    "eigen_stability",
]

BASIS = ("a", "a_dag", "b", "b_dag", "d", "d_dag")
COND_LIMIT = 1e12
BOUNDARY_TOL = 1e-9


def build_drift(p: SystemParams) -> np.ndarray:
    """Return the drift matrix ``chi_0`` of the linearized Langevin equations."""
    ig, iG = 1j * p.g, 1j * p.G
    lm, ld = p.lam_m, p.lam_d
    chi0 = np.zeros((6, 6), dtype=complex)
    chi0[np.diag_indices(6)] = [
        -p.kappa / 2,
        -p.kappa / 2,
        -p.gamma_m / 2,
        -p.gamma_m / 2,
        -p.gamma_d / 2,
        -p.gamma_d / 2,
    ]
    chi0[0, 2] = chi0[2, 0] = ig
    chi0[0, 4] = chi0[4, 0] = iG
    chi0[1, 3] = chi0[3, 1] = -ig
    chi0[1, 5] = chi0[5, 1] = -iG
    chi0[2, 3] = lm
    chi0[3, 2] = np.conj(lm)
    chi0[4, 5] = ld
    chi0[5, 4] = np.conj(ld)
    return chi0


def susceptibility_numeric(
    p: SystemParams, omega, *, check: bool = True
) -> np.ndarray:
    """Susceptibility ``(-i w I - chi_0)^-1`` on a frequency grid.

    Parameters
    ----------
    p : SystemParams
    omega : float or array_like
        Frequencies (same units as the rates in ``p``).
    check : bool, optional
        Raise :class:`SingularResponseError` when the condition number of
        the resolvent exceeds ``COND_LIMIT`` at any frequency.

    Returns
    -------
    numpy.ndarray
        Shape ``omega.shape + (6, 6)``.
    """
    w = np.asarray(omega, dtype=float)
    chi0 = build_drift(p)
    resolvent = -1j * w[..., None, None] * np.eye(6) - chi0
    if check:
        cond = np.linalg.cond(resolvent)
        if np.any(~np.isfinite(cond) | (cond > COND_LIMIT)):
            worst = float(np.max(np.where(np.isfinite(cond), cond, np.inf)))
            raise SingularResponseError(
                f"resolvent condition number {worst:.3g} exceeds {COND_LIMIT:.0e}; "
                "operating point is on or beyond the stability boundary"
            )
    eye = np.broadcast_to(np.eye(6, dtype=complex), resolvent.shape)
    return np.linalg.solve(resolvent, eye)


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    max_real: float
    boundary: bool

    @property
    def strictly_stable(self) -> bool:
        return self.stable and not self.boundary


def eigen_stability(p: SystemParams) -> StabilityVerdict:
    """Stability from the spectrum of ``chi_0``.

    ``boundary`` is set when the largest real part is within
    ``BOUNDARY_TOL`` (absolute, in the rate units of ``p``) of zero.
    """
    max_real = float(np.max(np.linalg.eigvals(build_drift(p)).real))
    return StabilityVerdict(
        stable=max_real < 0.0,
        max_real=max_real,
        boundary=abs(max_real) < BOUNDARY_TOL,
    )
