"""
Detuned degenerate optical parametric amplifier, the reference model.

Frame rotating at half the pump frequency; ``delta_p = omega_p / 2 - omega_c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InstabilityError, PoleProximityError

__all__ = [
    "OpaParams",
    "opa_drift",
    "opa_susceptibility",
    "opa_green",
    "opa_cpsf",
    "opa_self_energy",
    "negativity_window",
]


@dataclass(frozen=True)
class OpaParams:
    kappa: float = 1.0
    lam: complex = 0.0
    delta_p: float = 0.0

    def __post_init__(self) -> None:
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")

    @classmethod
    def from_dimensionless(cls, xi_k: float, delta_k: float, kappa: float = 1.0) -> OpaParams:
        """Build from ``xi_k = 2 lambda / kappa`` and ``delta_k = delta_p / kappa``."""
        return cls(kappa=kappa, lam=xi_k * kappa / 2.0, delta_p=delta_k * kappa)

    @property
    def detuning_margin(self) -> float:
        """``S = kappa^2/4 + delta_p^2 - |lambda|^2``; positive when stable."""
        return self.kappa**2 / 4.0 + self.delta_p**2 - abs(self.lam) ** 2

    @property
    def stable(self) -> bool:
        return self.detuning_margin > 0.0

    @property
    def marginal(self) -> bool:
        """At threshold, ``S == 0`` to within ``1e-12 kappa^2``."""
        return abs(self.detuning_margin) <= 1e-12 * self.kappa**2


def opa_drift(o: OpaParams) -> np.ndarray:
    return np.array(
        [
            [-o.kappa / 2 + 1j * o.delta_p, o.lam],
            [np.conj(o.lam), -o.kappa / 2 - 1j * o.delta_p],
        ],
        dtype=complex,
    )


def opa_susceptibility(o: OpaParams, omega) -> np.ndarray:
    """2x2 susceptibility on a frequency grid, shape ``omega.shape + (2, 2)``."""
    w = np.asarray(omega, dtype=float)
    zp = o.kappa / 2 - 1j * (w + o.delta_p)
    zm = o.kappa / 2 - 1j * (w - o.delta_p)
    det = zp * zm - abs(o.lam) ** 2
    if np.any(np.abs(det) < 1e-14 * o.kappa**2):
        raise PoleProximityError("OPA susceptibility pole on the real axis")
    out = np.empty(w.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = zm / det
    out[..., 0, 1] = o.lam / det
    out[..., 1, 0] = np.conj(o.lam) / det
    out[..., 1, 1] = zp / det
    return out


def _denominator(o: OpaParams, w):
    x = o.kappa**2 / 4 - abs(o.lam) ** 2 - (w**2 - o.delta_p**2)
    return x, x**2 + (w * o.kappa) ** 2


def opa_green(o: OpaParams, omega):
    """Retarded Green's function ``G^R_{aa^dag}`` in its rationalized form."""
    w = np.asarray(omega, dtype=float)
    x, den = _denominator(o, w)
    return -1j * (o.kappa / 2 - 1j * (w - o.delta_p)) * (x + 1j * w * o.kappa) / den


def opa_cpsf(o: OpaParams, omega, *, allow_unstable: bool = False):
    """Spectral function ``a(w)`` and its numerator polynomial ``F(w)``.

    ``a = kappa F / ([kappa^2/4 - |lambda|^2 - (w^2 - delta_p^2)]^2 + w^2 kappa^2)``
    with ``F(w) = w^2 - 2 delta_p w + S``.

    At threshold (``S = 0``) the common factor ``w`` is cancelled, so the
    resonant value stays finite for ``delta_p = 0``.
    """
    w = np.asarray(omega, dtype=float)
    if o.marginal:
        f = w**2 - 2.0 * o.delta_p * w
        with np.errstate(divide="ignore", invalid="ignore"):
            a = o.kappa * (w - 2.0 * o.delta_p) / (w * (w**2 + o.kappa**2))
        if o.delta_p == 0.0:
            a = o.kappa / (w**2 + o.kappa**2)
        return a, f
    if not (o.stable or allow_unstable):
        raise InstabilityError(
            "OPA is unstable (|lambda|^2 >= kappa^2/4 + delta_p^2); "
            "pass allow_unstable=True to evaluate anyway"
        )
    f = w**2 - 2.0 * o.delta_p * w + o.detuning_margin
    _, den = _denominator(o, w)
    return o.kappa * f / den, f


def opa_self_energy(o: OpaParams) -> np.ndarray:
    """Frequency-independent, purely off-diagonal self-energy matrix."""
    return 1j * np.array([[0.0, o.lam], [np.conj(o.lam), 0.0]], dtype=complex)


def negativity_window(o: OpaParams) -> tuple[float, float] | None:
    """Interval where the stable OPA spectral function is negative, if any.

    Nonempty iff ``kappa^2/4 < |lambda|^2 < kappa^2/4 + delta_p^2``; the
    endpoints are ``delta_p -/+ sqrt(|lambda|^2 - kappa^2/4)``.
    """
    lam2 = abs(o.lam) ** 2
    if not (o.kappa**2 / 4 < lam2 and o.stable):
        return None
    half = math.sqrt(lam2 - o.kappa**2 / 4)
    return o.delta_p - half, o.delta_p + half
