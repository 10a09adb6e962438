"""
Quantum-noise layer: input-noise weights, Keldysh function, effective
temperature, scattering matrix and probe reflectivity.

Units: hbar = k_B = 1, so temperatures are energies.  Frequencies are
measured in the frame rotating with the cavity; ``omega_ref`` shifts them
when the energy entering the temperature should be a lab-frame one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InstabilityError
from .linsys import eigen_stability, susceptibility_numeric
from .params import SystemParams

__all__ = [
    "BathOccupations",
    "NoiseSpectrumSample",
    "ProbeCouplingWarning",
    "bose_occupation",
    "noise_covariance",
    "generalized_noise_coefficients",
    "symmetrized_spectrum",
    "effective_temperature",
    "keldysh_and_teff",
    "scattering_and_reflectivity",
    "qubit_polarization",
]

CPSF_GUARD = 1e-12
_UNIT_RATIO_TOL = 1e-12


class ProbeCouplingWarning(UserWarning):
    """The probe coupling is not small compared with the cavity linewidth."""


@dataclass(frozen=True)
class BathOccupations:
    n_c: float = 0.0
    n_m: float = 0.0
    n_d: float = 0.0

    def __post_init__(self) -> None:
        for name in ("n_c", "n_m", "n_d"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class NoiseSpectrumSample:
    omega: np.ndarray
    g_keldysh: np.ndarray
    cpsf: np.ndarray
    ratio: np.ndarray
    t_eff: np.ndarray
    t_eff_defined: np.ndarray
    reflectivity: np.ndarray
    s_matrix: np.ndarray


def bose_occupation(omega, temperature):
    """Thermal occupation ``1 / (exp(omega / T) - 1)``."""
    return 1.0 / np.expm1(np.asarray(omega, dtype=float) / temperature)


def noise_covariance(b: BathOccupations, p: SystemParams) -> np.ndarray:
    """Weights ``<u_in,i(w) u_in,i(w')^dag> / (2 pi delta(w - w'))``.

    Diagonal in the basis ``(a, a^dag, b, b^dag, d, d^dag)``: antinormal
    weight ``rate (1 + n)`` on the annihilation slot and normal weight
    ``rate n`` on the creation slot of each mode.
    """
    return np.diag(
        [
            p.kappa * (1 + b.n_c),
            p.kappa * b.n_c,
            p.gamma_m * (1 + b.n_m),
            p.gamma_m * b.n_m,
            p.gamma_d * (1 + b.n_d),
            p.gamma_d * b.n_d,
        ]
    ).astype(float)


def generalized_noise_coefficients(p: SystemParams, omega) -> np.ndarray:
    """Coefficients of the generalized cavity input noise on the input operators.

    Returns shape ``omega.shape + (6,)`` such that
    ``A_in(w) = sum_k c_k(w) o_k(w)`` with
    ``o = (a_in, a_in^dag, b_in, b_in^dag, d_in, d_in^dag)``.
    """
    w = np.asarray(omega, dtype=float)
    out = np.zeros(w.shape + (6,), dtype=complex)
    out[..., 0] = 1.0
    for slot, gamma, lam, coupling in (
        (2, p.gamma_m, p.lam_m, p.g),
        (4, p.gamma_d, p.lam_d, p.G),
    ):
        if coupling == 0.0:
            continue
        z = gamma / 2 - 1j * w
        pref = 1j * coupling * np.sqrt(gamma / p.kappa) * z / (z**2 - abs(lam) ** 2)
        out[..., slot] = pref
        out[..., slot + 1] = pref * lam / z
    return out


def _require_stable(p: SystemParams) -> None:
    v = eigen_stability(p)
    if not v.stable or v.boundary:
        raise InstabilityError(
            f"no stationary state: max Re eig(chi_0) = {v.max_real:.3e}"
        )


def symmetrized_spectrum(p: SystemParams, b: BathOccupations, omega):
    """``-i G^k(w)``: Fourier transform of ``<{a(t + tau), a^dag(t)}>``.

    Sum of the antinormal part ``[chi D chi^dag]_{aa}(w)`` and the normal part
    ``[chi D chi^dag]_{a^dag a^dag}(-w)``.
    """
    w = np.asarray(omega, dtype=float)
    D = noise_covariance(b, p)

    def diag(freq, k):
        chi = susceptibility_numeric(p, freq)
        row = chi[..., k, :]
        return np.einsum("...i,ij,...j->...", row, D, np.conj(row)).real

    return diag(w, 0) + diag(-w, 1)


def effective_temperature(energy, ratio, cpsf):
    """``T_eff = energy / (2 arccoth(ratio))`` with the undefined cases masked.

    Returns ``(t_eff, defined)``; undefined samples are NaN.  ``|ratio| == 1``
    gives exactly zero (vacuum limit).
    """
    energy = np.asarray(energy, dtype=float)
    ratio = np.asarray(ratio, dtype=float)
    cpsf = np.asarray(cpsf, dtype=float)
    energy, ratio, cpsf = np.broadcast_arrays(energy, ratio, cpsf)
    t = np.full(ratio.shape, np.nan)
    unit = np.abs(np.abs(ratio) - 1.0) <= _UNIT_RATIO_TOL
    regular = (np.abs(ratio) > 1.0) & ~unit
    defined = (np.abs(cpsf) >= CPSF_GUARD) & (unit | regular)
    sel = defined & regular
    r = ratio[sel]
    t[sel] = energy[sel] / np.log((r + 1.0) / (r - 1.0))
    t[defined & unit] = 0.0
    return t, defined


def scattering_and_reflectivity(p: SystemParams, kappa_probe: float, omega):
    """Cavity scattering block ``I - kappa chi_cav`` and ``R = 1 - kappa' A``."""
    if kappa_probe < 0:
        raise ValueError("kappa_probe must be non-negative")
    if kappa_probe > 0.01 * p.kappa:
        warnings.warn(
            f"kappa_probe = {kappa_probe:g} exceeds 0.01 kappa; the weak-probe "
            "reflectivity formula is inaccurate",
            ProbeCouplingWarning,
            stacklevel=2,
        )
    w = np.asarray(omega, dtype=float)
    chi = susceptibility_numeric(p, w)[..., :2, :2]
    s = np.eye(2) - p.kappa * chi
    cpsf = 2.0 * chi[..., 0, 0].real
    return s, 1.0 - kappa_probe * cpsf


def keldysh_and_teff(
    p: SystemParams,
    b: BathOccupations,
    omega,
    *,
    kappa_probe: float = 0.01,
    omega_ref: float = 0.0,
) -> NoiseSpectrumSample:
    """Keldysh function, effective temperature and probe response per frequency.

    ``kappa_probe`` is in units of ``p.kappa``.  ``omega_ref`` is added to
    ``omega`` to form the energy in the temperature formula.
    """
    _require_stable(p)
    w = np.asarray(omega, dtype=float)
    keld = symmetrized_spectrum(p, b, w)
    s, refl = scattering_and_reflectivity(p, kappa_probe * p.kappa, w)
    cpsf = 2.0 * (np.eye(2) - s)[..., 0, 0].real / p.kappa
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(np.abs(cpsf) >= CPSF_GUARD, keld / cpsf, np.nan)
    t, defined = effective_temperature(w + omega_ref, ratio, cpsf)
    return NoiseSpectrumSample(
        omega=w,
        g_keldysh=1j * keld,
        cpsf=cpsf,
        ratio=ratio,
        t_eff=t,
        t_eff_defined=defined,
        reflectivity=refl,
        s_matrix=s,
    )


def qubit_polarization(energy, t_eff):
    """Steady-state ``<sigma_z> = -tanh(energy / (2 T_eff))`` of a probe qubit."""
    energy = np.asarray(energy, dtype=float)
    t = np.asarray(t_eff, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(t == 0.0, -np.sign(energy), -np.tanh(energy / (2.0 * t)))
