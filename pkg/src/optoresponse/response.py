"""
Closed-form frequency-domain response of the cavity mode.

Every function accepts a scalar or an array of frequencies and broadcasts.
Conventions: ``d/dt -> -i w``; ``chi(w) = (-i w I - chi_0)^-1``;
``G^R_{aa^dag}(w) = -i chi_aa(w)``; the cavity photon spectral function is
``A(w) = -2 Im G^R_{aa^dag}(w)``.

The on-resonance parametric coefficient is taken as
``lambda_tilde(0) = (kappa/2) * sum_j C_j xi_j / (1 - xi_j^2)``, i.e. the
direct ``w = 0`` value of the frequency-dependent expression.  A
variant with an extra factor of two does not reproduce the
on-resonance spectral function and is not used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PoleProximityError
from .params import DimensionlessParams, SystemParams

__all__ = [
    "XI_POLE_TOL",
    "SelfEnergySample",
    "ChiRow",
    "GreensSample",
    "OnResonanceAlgebra",
    "self_energy",
    "chi_elements",
    "greens",
    "on_resonance_ratio",
    "cpsf_on_resonance",
    "single_mode_cpsf",
    "opa_mapped_cpsf",
]

XI_POLE_TOL = 1e-9
_POLE_REL = 1e-12


@dataclass(frozen=True)
class SelfEnergySample:
    omega: np.ndarray
    sigma_a: np.ndarray
    lambda_tilde: np.ndarray
    sigma_tilde: np.ndarray
    m_coeff: np.ndarray


class ChiRow(NamedTuple):
    """First row of the susceptibility matrix (the ``da`` response)."""

    aa: np.ndarray
    aa_dag: np.ndarray
    ab: np.ndarray
    ab_dag: np.ndarray
    ad: np.ndarray
    ad_dag: np.ndarray


@dataclass(frozen=True)
class GreensSample:
    omega: np.ndarray
    g_ret_aad: np.ndarray
    g_ret_aa: np.ndarray
    cpsf: np.ndarray
    kappa_eff: np.ndarray


@dataclass(frozen=True)
class OnResonanceAlgebra:
    c_a: float
    c_a_prime: float
    c_a_dprime: float
    a0: float
    m_negativity: float
    a_n: float
    a_d: float


def _mechanical_terms(gamma, lam, coupling, w):
    """``coupling^2 * (z, lam) / (z^2 - |lam|^2)`` with ``z = gamma/2 - i w``."""
    z = gamma / 2 - 1j * w
    if coupling == 0.0:
        zero = np.zeros_like(z)
        return zero, zero, z, None
    den = z**2 - abs(lam) ** 2
    if np.any(np.abs(den) < _POLE_REL * gamma**2):
        raise PoleProximityError(
            "mechanical denominator (gamma/2 - i w)^2 - |lambda|^2 vanishes"
        )
    c2 = coupling**2
    return c2 * z / den, c2 * lam / den, z, den


def _bare(p: SystemParams, w):
    i_sig_m, lt_m, _, _ = _mechanical_terms(p.gamma_m, p.lam_m, p.g, w)
    i_sig_d, lt_d, _, _ = _mechanical_terms(p.gamma_d, p.lam_d, p.G, w)
    return -1j * (i_sig_m + i_sig_d), lt_m + lt_d


def _pieces(p: SystemParams, w):
    sigma, lt = _bare(p, w)
    sigma_neg, lt_neg = _bare(p, -w)
    sigma_c = np.conj(sigma_neg)  # Sigma_a^*(-w)
    lt_c = np.conj(lt_neg)  # lambda_tilde^*(-w)
    conj_prop = p.kappa / 2 - 1j * (w + sigma_c)
    return sigma, lt, lt_c, conj_prop


def self_energy(p: SystemParams, omega) -> SelfEnergySample:
    """Cavity self-energy, induced paramp coefficient, M(w) and dressed self-energy."""
    w = np.asarray(omega, dtype=float)
    sigma, lt, lt_c, conj_prop = _pieces(p, w)
    if np.any(np.abs(conj_prop) < _POLE_REL * p.kappa):
        raise PoleProximityError("conjugate cavity propagator vanishes")
    m_coeff = lt / conj_prop
    # i kappa/2 + w + Sigma^*(-w) == i * conj_prop
    sigma_tilde = sigma - lt * lt_c / (1j * conj_prop)
    return SelfEnergySample(w, sigma, lt, sigma_tilde, m_coeff)


def chi_elements(p: SystemParams, omega) -> ChiRow:
    """Analytic first-row susceptibility elements.

    Evaluated over the common determinant
    ``i D2 (i kappa/2 + w - Sigma_a) + lambda_tilde(w) lambda_tilde^*(-w)``
    (``D2`` the conjugate propagator), which stays regular where ``M(w)``
    and the dressed self-energy have a removable pole.
    """
    w = np.asarray(omega, dtype=float)
    sigma, lt, lt_c, conj_prop = _pieces(p, w)
    det = 1j * conj_prop * (1j * p.kappa / 2 + w - sigma) + lt * lt_c
    if np.any(np.abs(det) < _POLE_REL * p.kappa**2):
        raise PoleProximityError("cavity propagator vanishes")
    aa = -conj_prop / det
    aa_dag = -lt / det

    def _mech(gamma, lam, coupling):
        _, _, z, mden = _mechanical_terms(gamma, lam, coupling, w)
        if mden is None:
            zero = np.zeros_like(aa)
            return zero, zero
        pref = 1j * coupling / mden
        return pref * (z * aa - np.conj(lam) * aa_dag), pref * (lam * aa - z * aa_dag)

    ab, ab_dag = _mech(p.gamma_m, p.lam_m, p.g)
    ad, ad_dag = _mech(p.gamma_d, p.lam_d, p.G)
    return ChiRow(aa, aa_dag, ab, ab_dag, ad, ad_dag)


def greens(p: SystemParams, omega) -> GreensSample:
    """Cavity retarded Green's functions, spectral function and effective damping.

    ``kappa_eff`` is infinite at an isolated removable pole of the dressed
    self-energy (where the spectral function vanishes).
    """
    w = np.asarray(omega, dtype=float)
    chi = chi_elements(p, w)
    sigma, lt, lt_c, conj_prop = _pieces(p, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigma_tilde = sigma - lt * lt_c / (1j * conj_prop)
    g_aad = -1j * chi.aa
    return GreensSample(
        omega=w,
        g_ret_aad=g_aad,
        g_ret_aa=-1j * chi.aa_dag,
        cpsf=-2.0 * g_aad.imag,
        kappa_eff=p.kappa - 2.0 * sigma_tilde.imag,
    )


def on_resonance_ratio(c0, c1, xi_m, xi_d):
    """Numerator and denominator of ``kappa * A(0) / 4``; broadcasts.

    The denominator factors as the product of the two quadrature
    determinants ``[(1+C0-xm)(1+C1-xd) - C0 C1] [(1+C0+xm)(1+C1+xd) - C0 C1]``.
    """
    sm = np.asarray(xi_m, dtype=float) ** 2 - 1.0
    sd = np.asarray(xi_d, dtype=float) ** 2 - 1.0
    a_n = sm * sd - c0 * sd - c1 * sm
    a_d = (
        sm * sd
        - 2.0 * c0 * c1 * (np.asarray(xi_m) * np.asarray(xi_d) - 1.0)
        - c0 * (c0 + 2.0) * sd
        - c1 * (c1 + 2.0) * sm
    )
    return a_n, a_d


def cpsf_on_resonance(d: DimensionlessParams) -> OnResonanceAlgebra:
    """On-resonance spectral function and cooperativity combinations (``kappa = 1``)."""
    for name, xi in (("xi_m", d.xi_m), ("xi_d", d.xi_d)):
        if abs(xi - 1.0) < XI_POLE_TOL:
            raise PoleProximityError(f"{name} = {xi!r} is at the 1/(1 - xi^2) pole")
    a_n, a_d = on_resonance_ratio(d.c0, d.c1, d.xi_m, d.xi_d)
    a_n, a_d = float(a_n), float(a_d)
    if abs(a_d) < 1e-14 * max(1.0, abs(a_n)):
        raise PoleProximityError("on-resonance denominator vanishes")
    c_a = d.c0 / (1 - d.xi_m**2) + d.c1 / (1 - d.xi_d**2)
    c_ap = d.c0 * d.xi_m / (1 - d.xi_m**2) + d.c1 * d.xi_d / (1 - d.xi_d**2)
    c_app = c_a - c_ap**2 / (1 + c_a)
    a0 = 4.0 * a_n / a_d
    return OnResonanceAlgebra(
        c_a=c_a,
        c_a_prime=c_ap,
        c_a_dprime=c_app,
        a0=a0,
        m_negativity=a0,
        a_n=a_n,
        a_d=a_d,
    )


def single_mode_cpsf(c0, c1, xi_m):
    """``kappa * A(0)`` with only mode b modulated (``xi_d = 0``)."""
    xi_max = 1.0 + c0 / (1.0 + c1)
    xi2 = np.asarray(xi_m, dtype=float) ** 2
    return 4.0 / (1.0 + c1) * (xi_max - xi2) / (xi_max**2 - xi2)


def opa_mapped_cpsf(p: SystemParams) -> float:
    """On-resonance spectral function of the equivalent degenerate OPA.

    Substitutes ``kappa -> kappa - 2 Im Sigma_a(0)`` and
    ``lambda -> lambda_tilde(0)`` into the resonant OPA expression.
    Requires real paramps.
    """
    if not p.real_paramps:
        raise ValueError("OPA mapping requires real paramps")
    se = self_energy(p, 0.0)
    kbar = p.kappa - 2.0 * float(se.sigma_a.imag)
    lt = float(se.lambda_tilde.real)
    return kbar / (kbar**2 / 4.0 - lt**2)
