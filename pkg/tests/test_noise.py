import numpy as np
import pytest

from optoresponse import (
    BathOccupations,
    DimensionlessParams,
    InstabilityError,
    SystemParams,
    bose_occupation,
    chi_elements,
    effective_temperature,
    from_dimensionless,
    generalized_noise_coefficients,
    greens,
    keldysh_and_teff,
    noise_covariance,
    qubit_polarization,
    scattering_and_reflectivity,
    self_energy,
    susceptibility_numeric,
    symmetrized_spectrum,
)
from optoresponse.noise import ProbeCouplingWarning

from conftest import with_phases

SWAP = [1, 0, 3, 2, 5, 4]


def test_generalized_noise_structure():
    d = DimensionlessParams(2.0, 0.25, 1.2, 0.8, kappa_over_gamma_m=30.0, gamma_ratio=0.5)
    p = with_phases(from_dimensionless(d), 0.4, -0.9)
    w = np.linspace(-0.3, 0.3, 41)
    rates = np.array([p.kappa, p.kappa, p.gamma_m, p.gamma_m, p.gamma_d, p.gamma_d])
    row = susceptibility_numeric(p, w)[:, 0, :] * np.sqrt(rates)
    c = generalized_noise_coefficients(p, w)
    c_dag = np.conj(generalized_noise_coefficients(p, -w))[:, SWAP]
    pred = np.sqrt(p.kappa) * chi_elements(p, w).aa[:, None] * (
        c + self_energy(p, w).m_coeff[:, None] * c_dag
    )
    assert np.max(np.abs(pred - row)) < 1e-12 * np.max(np.abs(row))


def test_covariance_weights():
    p = SystemParams(2.0, 0.1, 0.3)
    D = noise_covariance(BathOccupations(1.0, 2.0, 3.0), p)
    assert np.allclose(np.diag(D), [4.0, 2.0, 0.3, 0.2, 1.2, 0.9], rtol=1e-15)
    assert np.count_nonzero(D - np.diag(np.diag(D))) == 0
    with pytest.raises(ValueError):
        BathOccupations(n_c=-1.0)


@pytest.mark.parametrize("n", [0.0, 0.5, 7.0])
def test_bare_cavity_fluctuation_dissipation(n):
    p = SystemParams(1.0, 0.01, 0.01)
    w = np.linspace(-2, 2, 41)
    k = symmetrized_spectrum(p, BathOccupations(n_c=n), w)
    a = greens(p, w).cpsf
    assert np.allclose(k / a, 2 * n + 1, rtol=1e-12)


def test_keldysh_positive_and_temperature_sign(m3_system):
    w = np.linspace(-1e-6, 1e-6, 201)
    ns = keldysh_and_teff(m3_system, BathOccupations(), w)
    assert np.all(ns.g_keldysh.imag > 0)
    neg = (ns.cpsf < 0) & (w > 0)
    assert neg.sum() > 10
    assert np.all(ns.t_eff[neg] < 0)
    pos = (ns.cpsf > 0) & (w > 0)
    assert np.all(ns.t_eff[pos] > 0)


def test_effective_temperature_cases():
    t, ok = effective_temperature([1.0, 1.0, 1.0, 1.0, 1.0], [3.0, 1.0, -1.0, 0.5, 3.0],
                                  [1.0, 1.0, 1.0, 1.0, 0.0])
    assert t[0] == pytest.approx(1.0 / np.log(2.0))
    assert t[1] == 0.0 and t[2] == 0.0
    assert list(ok) == [True, True, True, False, False]
    assert np.isnan(t[3]) and np.isnan(t[4])


def test_thermal_cavity_temperature():
    p = SystemParams(1.0, 0.01, 0.01)
    temp = 0.7
    for w in np.linspace(0.05, 3.0, 7):
        ns = keldysh_and_teff(p, BathOccupations(n_c=float(bose_occupation(w, temp))), w)
        assert ns.t_eff == pytest.approx(temp, rel=1e-9)


def test_reflectivity_and_scattering(m3_system):
    w = np.linspace(-2e-6, 2e-6, 101)
    s, r = scattering_and_reflectivity(m3_system, 0.01, w)
    a = greens(m3_system, w).cpsf
    assert np.allclose(r, 1 - 0.01 * a, rtol=1e-12)
    assert np.allclose(1 - s[:, 0, 0], susceptibility_numeric(m3_system, w)[:, 0, 0])
    with pytest.warns(ProbeCouplingWarning):
        scattering_and_reflectivity(m3_system, 0.1, w)
    with pytest.raises(ValueError):
        scattering_and_reflectivity(m3_system, -0.1, w)


def test_unstable_point_rejected():
    p = from_dimensionless(DimensionlessParams(c0=2.0, xi_m=3.5))
    with pytest.raises(InstabilityError):
        keldysh_and_teff(p, BathOccupations(), 0.0)


def test_qubit_polarization():
    assert qubit_polarization(1.0, 0.0) == -1.0
    assert qubit_polarization(1.0, -0.5) == pytest.approx(np.tanh(1.0))
    assert qubit_polarization(1.0, 1e9) == pytest.approx(0.0, abs=1e-9)
