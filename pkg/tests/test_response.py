import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optoresponse import (
    DimensionlessParams,
    PoleProximityError,
    SystemParams,
    chi_elements,
    cpsf_on_resonance,
    from_dimensionless,
    greens,
    on_resonance_ratio,
    opa_mapped_cpsf,
    self_energy,
    single_mode_cpsf,
    susceptibility_numeric,
)

from conftest import M3, random_stable_dimensionless, with_phases


def _rel(a, b):
    return np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300))


def test_chi_row_matches_inverse_with_phases(rng):
    w = np.linspace(-5, 5, 201)
    for d in random_stable_dimensionless(rng, 8, ratio_range=(1.0, 1e3)):
        p = with_phases(from_dimensionless(d), *rng.uniform(-np.pi, np.pi, 2))
        row = susceptibility_numeric(p, w)[:, 0, :]
        ana = np.stack(chi_elements(p, w), axis=-1)
        scale = np.max(np.abs(row), axis=-1, keepdims=True)
        assert np.max(np.abs(ana - row) / scale) < 1e-10


def test_greens_relations(m3_system):
    w = np.linspace(-3e-5, 3e-5, 101)
    gs = greens(m3_system, w)
    chi = susceptibility_numeric(m3_system, w)
    assert _rel(gs.g_ret_aad, -1j * chi[:, 0, 0]) < 1e-9
    assert _rel(gs.g_ret_aa, -1j * chi[:, 0, 1]) < 1e-9
    assert np.allclose(gs.cpsf, 2 * chi[:, 0, 0].real, rtol=1e-9, atol=0)


def test_m3_self_energy_algebra(m3_system):
    se = self_energy(m3_system, 0.0)
    half = m3_system.kappa / 2
    c_a = complex(1j * se.sigma_a / half)
    c_ap = complex(se.lambda_tilde / half)
    assert c_a.imag == pytest.approx(0.0, abs=1e-14)
    # four-digit reference values
    assert c_a.real == pytest.approx(-0.2688, rel=5e-3)
    assert c_ap.real == pytest.approx(-1.2351, rel=5e-3)
    alg = cpsf_on_resonance(M3)
    assert alg.c_a_dprime == pytest.approx(-2.355, rel=5e-3)
    # full precision
    assert c_a.real == pytest.approx(-0.269365020554, rel=1e-10)
    assert c_ap.real == pytest.approx(-1.235651701853924, rel=1e-10)
    assert alg.c_a == pytest.approx(c_a.real, rel=1e-12)
    assert alg.c_a_prime == pytest.approx(c_ap.real, rel=1e-12)
    k_eff = greens(m3_system, 0.0).kappa_eff / m3_system.kappa
    assert k_eff == pytest.approx(1 + alg.c_a_dprime, rel=1e-10)


def test_on_resonance_matches_numeric(rng):
    for d in random_stable_dimensionless(rng, 30):
        p = from_dimensionless(d)
        numeric = 2 * susceptibility_numeric(p, 0.0)[0, 0].real
        assert cpsf_on_resonance(d).a0 == pytest.approx(numeric, rel=1e-9)


@settings(max_examples=200)
@given(c0=st.floats(0, 10), c1=st.floats(0, 10), xm=st.floats(0, 5), xd=st.floats(0, 5))
def test_denominator_factorization(c0, c1, xm, xd):
    _, a_d = on_resonance_ratio(c0, c1, xm, xd)
    f = ((1 + c0 - xm) * (1 + c1 - xd) - c0 * c1) * ((1 + c0 + xm) * (1 + c1 + xd) - c0 * c1)
    assert a_d == pytest.approx(f, rel=1e-9, abs=1e-9 * (1 + c0 + c1 + xm + xd) ** 4)


@given(c0=st.floats(0, 10), c1=st.floats(0, 10), xm=st.floats(0, 5))
def test_single_mode_reduction(c0, c1, xm):
    a_n, a_d = on_resonance_ratio(c0, c1, xm, 0.0)
    ref = single_mode_cpsf(c0, c1, xm)
    if abs(a_d) > 1e-6:
        assert 4 * a_n / a_d == pytest.approx(ref, rel=1e-8, abs=1e-10)


def test_opa_mapping(rng):
    for d in random_stable_dimensionless(rng, 20):
        assert opa_mapped_cpsf(from_dimensionless(d)) == pytest.approx(
            cpsf_on_resonance(d).a0, rel=1e-9
        )
    with pytest.raises(ValueError):
        opa_mapped_cpsf(SystemParams(1.0, 0.1, 0.1, g=0.1, lambda_m=0.01, phi_m=0.3))


def test_removable_pole_at_onset():
    d = DimensionlessParams(c0=2.0, xi_m=np.sqrt(3.0))
    p = from_dimensionless(d)
    chi = chi_elements(p, 0.0)
    numeric = susceptibility_numeric(p, 0.0)[0]
    assert np.allclose(np.array(chi), numeric, rtol=1e-9, atol=1e-9 * np.max(np.abs(numeric)))
    assert abs(greens(p, 0.0).cpsf) < 1e-12
    with pytest.raises(PoleProximityError):
        self_energy(p, 0.0)


def test_pole_errors():
    with pytest.raises(PoleProximityError):
        cpsf_on_resonance(DimensionlessParams(c0=2.0, xi_m=1.0))
    p = from_dimensionless(DimensionlessParams(c0=2.0, xi_m=1.0))
    with pytest.raises(PoleProximityError):
        self_energy(p, 0.0)


def test_no_modulation_has_no_squeezing():
    p = from_dimensionless(DimensionlessParams(c0=3.0, c1=1.0))
    w = np.linspace(-1, 1, 11)
    se = self_energy(p, w)
    assert np.all(se.lambda_tilde == 0)
    assert np.all(se.m_coeff == 0)
    assert np.allclose(se.sigma_tilde, se.sigma_a)
    assert np.all(chi_elements(p, w).aa_dag == 0)
