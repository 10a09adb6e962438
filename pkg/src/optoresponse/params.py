"""
Model parameters of the linearized two-mechanics optomechanical system.

All rates are expressed in units of the cavity linewidth when the
dimensionless route is used (``kappa = 1``).  The mechanical modes are
assumed resonant with the effective cavity detuning (red-sideband drive,
rotating-wave approximation); other detunings are rejected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

__all__ = [
    "SystemParams",
    "DimensionlessParams",
    "PhysicalDrive",
    "to_dimensionless",
    "from_dimensionless",
    "enhanced_coupling",
    "mean_fields",
]


def _check_positive(**rates: float) -> None:
    for name, value in rates.items():
        if not (value > 0 and math.isfinite(value)):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")


def _check_nonnegative(**values: float) -> None:
    for name, value in values.items():
        if not (value >= 0 and math.isfinite(value)):
            raise ValueError(f"{name} must be non-negative and finite, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Dimensional rates and couplings of the linearized model.

    ``lambda_m``/``lambda_d`` may be complex; the effective modulation
    amplitude entering the dynamics is ``lambda * exp(1j * phi)``.
    """

    kappa: float
    gamma_m: float
    gamma_d: float
    g: float = 0.0
    G: float = 0.0
    lambda_m: complex = 0.0
    lambda_d: complex = 0.0
    phi_m: float = 0.0
    phi_d: float = 0.0

    def __post_init__(self) -> None:
        _check_positive(kappa=self.kappa, gamma_m=self.gamma_m, gamma_d=self.gamma_d)
        _check_nonnegative(g=self.g, G=self.G)
        for name in ("lambda_m", "lambda_d"):
            if not cmath.isfinite(complex(getattr(self, name))):
                raise ValueError(f"{name} must be finite")

    @property
    def lam_m(self) -> complex:
        """Complex modulation amplitude of mode b, phase included."""
        return complex(self.lambda_m) * cmath.exp(1j * self.phi_m)

    @property
    def lam_d(self) -> complex:
        """Complex modulation amplitude of mode d, phase included."""
        return complex(self.lambda_d) * cmath.exp(1j * self.phi_d)

    @property
    def real_paramps(self) -> bool:
        return self.lam_m.imag == 0.0 and self.lam_d.imag == 0.0

    def scaled(self, factor: float) -> SystemParams:
        """Return a copy with every rate multiplied by ``factor``."""
        _check_positive(factor=factor)
        return SystemParams(
            kappa=self.kappa * factor,
            gamma_m=self.gamma_m * factor,
            gamma_d=self.gamma_d * factor,
            g=self.g * factor,
            G=self.G * factor,
            lambda_m=self.lambda_m * factor,
            lambda_d=self.lambda_d * factor,
            phi_m=self.phi_m,
            phi_d=self.phi_d,
        )


@dataclass(frozen=True)
class DimensionlessParams:
    """Cooperativities, paramp amplitudes and rate ratios.

    Attributes
    ----------
    c0, c1 : float
        Optomechanical cooperativities ``4 g^2 / (kappa gamma_m)`` and
        ``4 G^2 / (kappa gamma_d)``.
    xi_m, xi_d : float
        Paramp amplitudes ``2 |lambda| / gamma`` of the two mechanics.
    kappa_over_gamma_m : float
        Cavity-to-mechanical linewidth ratio.
    gamma_ratio : float
        ``gamma_m / gamma_d``.
    """

    c0: float
    c1: float = 0.0
    xi_m: float = 0.0
    xi_d: float = 0.0
    kappa_over_gamma_m: float = 1e4
    gamma_ratio: float = 1.0

    def __post_init__(self) -> None:
        _check_nonnegative(c0=self.c0, c1=self.c1, xi_m=self.xi_m, xi_d=self.xi_d)
        _check_positive(
            kappa_over_gamma_m=self.kappa_over_gamma_m, gamma_ratio=self.gamma_ratio
        )

    def with_paramps(self, xi_m: float, xi_d: float) -> DimensionlessParams:
        return DimensionlessParams(
            self.c0, self.c1, xi_m, xi_d, self.kappa_over_gamma_m, self.gamma_ratio
        )


@dataclass(frozen=True)
class PhysicalDrive:
    """Drive-level quantities from which the enhanced couplings follow.

    The mechanical frequencies must both equal the effective detuning
    ``Delta_0``; only the resonant red-sideband configuration is modelled.
    """

    g0: float
    G0: float
    E_L: float
    Delta_0: float
    omega_m: float
    omega_d: float
    rtol: float = field(default=1e-9, repr=False)

    def __post_init__(self) -> None:
        _check_nonnegative(E_L=self.E_L, g0=self.g0, G0=self.G0)
        _check_positive(omega_m=self.omega_m, omega_d=self.omega_d)
        scale = max(abs(self.omega_m), abs(self.omega_d), abs(self.Delta_0))
        if abs(self.omega_m - self.omega_d) > self.rtol * scale or abs(
            self.Delta_0 - self.omega_m
        ) > self.rtol * scale:
            raise ValueError(
                "only the resonant configuration omega_m == omega_d == Delta_0 "
                "is supported"
            )


def to_dimensionless(p: SystemParams) -> DimensionlessParams:
    """Map dimensional rates onto cooperativities and paramp amplitudes."""
    return DimensionlessParams(
        c0=4.0 * p.g**2 / (p.kappa * p.gamma_m),
        c1=4.0 * p.G**2 / (p.kappa * p.gamma_d),
        xi_m=2.0 * abs(p.lam_m) / p.gamma_m,
        xi_d=2.0 * abs(p.lam_d) / p.gamma_d,
        kappa_over_gamma_m=p.kappa / p.gamma_m,
        gamma_ratio=p.gamma_m / p.gamma_d,
    )


def from_dimensionless(d: DimensionlessParams, kappa: float = 1.0) -> SystemParams:
    """Inverse of :func:`to_dimensionless`, with ``kappa`` as unit scale.

    Paramps come back real (zero phase).
    """
    _check_positive(kappa=kappa)
    if not d.kappa_over_gamma_m > 0 or not d.gamma_ratio > 0:
        raise ValueError("kappa_over_gamma_m and gamma_ratio must be positive")
    gamma_m = kappa / d.kappa_over_gamma_m
    gamma_d = gamma_m / d.gamma_ratio
    return SystemParams(
        kappa=kappa,
        gamma_m=gamma_m,
        gamma_d=gamma_d,
        g=math.sqrt(d.c0 * kappa * gamma_m / 4.0),
        G=math.sqrt(d.c1 * kappa * gamma_d / 4.0),
        lambda_m=d.xi_m * gamma_m / 2.0,
        lambda_d=d.xi_d * gamma_d / 2.0,
    )


def _mean_cavity_amplitude(pd: PhysicalDrive, kappa: float) -> float:
    _check_positive(kappa=kappa)
    return pd.E_L / math.sqrt(kappa**2 / 4.0 + pd.Delta_0**2)


def enhanced_coupling(pd: PhysicalDrive, kappa: float) -> tuple[float, float]:
    """Enhanced couplings ``(g, G) = (g0, G0) * a_bar``."""
    a_bar = _mean_cavity_amplitude(pd, kappa)
    return pd.g0 * a_bar, pd.G0 * a_bar


def mean_fields(pd: PhysicalDrive, kappa: float) -> dict[str, float]:
    """Steady-state mean fields and the bare cavity detuning they imply.

    Returns ``a_bar``, ``b_bar``, ``d_bar`` and ``Delta_c``, where
    ``Delta_c`` is the laser detuning required so that the radiation-pressure
    shifted detuning equals ``pd.Delta_0``.
    """
    a_bar = _mean_cavity_amplitude(pd, kappa)
    b_bar = pd.g0 * a_bar**2 / pd.omega_m
    d_bar = -pd.G0 * a_bar**2 / pd.omega_d
    delta_c = pd.Delta_0 + 2.0 * pd.g0 * b_bar + 2.0 * pd.G0 * d_bar
    return {"a_bar": a_bar, "b_bar": b_bar, "d_bar": d_bar, "Delta_c": delta_c}
