import numpy as np
import pytest

from optoresponse import (
    SingularResponseError,
    SystemParams,
    build_drift,
    eigen_stability,
    from_dimensionless,
    susceptibility_numeric,
)

from conftest import M3, random_stable_dimensionless, with_phases


def test_drift_entries_follow_parameters(m3_system):
    p = m3_system
    c = build_drift(p)
    assert np.all(np.diag(c) == -np.array([p.kappa, p.kappa, p.gamma_m, p.gamma_m,
                                            p.gamma_d, p.gamma_d]) / 2)
    assert c[0, 2] == c[2, 0] == 1j * p.g
    assert c[0, 4] == c[4, 0] == 1j * p.G
    assert c[1, 3] == c[3, 1] == -1j * p.g
    assert c[1, 5] == c[5, 1] == -1j * p.G
    assert c[2, 3] == c[3, 2] == p.lambda_m
    assert c[4, 5] == c[5, 4] == p.lambda_d
    mask = np.zeros((6, 6), bool)
    for i, j in [(0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (4, 5)]:
        mask[i, j] = mask[j, i] = True
    mask[np.diag_indices(6)] = True
    assert np.all(c[~mask] == 0)


def test_complex_paramp_conjugate_entries():
    p = SystemParams(1.0, 0.1, 0.2, g=0.1, G=0.1, lambda_m=0.03, lambda_d=0.02, phi_m=0.7,
                     phi_d=-1.1)
    c = build_drift(p)
    assert c[2, 3] == p.lam_m and c[3, 2] == np.conj(p.lam_m)
    assert c[4, 5] == p.lam_d and c[5, 4] == np.conj(p.lam_d)


def test_susceptibility_inverts_resolvent(rng):
    for d in random_stable_dimensionless(rng, 5):
        p = with_phases(from_dimensionless(d), *rng.uniform(-np.pi, np.pi, 2))
        w = np.linspace(-2, 2, 33)
        chi = susceptibility_numeric(p, w)
        assert chi.shape == (33, 6, 6)
        res = -1j * w[:, None, None] * np.eye(6) - build_drift(p)
        assert np.allclose(res @ chi, np.eye(6), atol=1e-9)


def test_scalar_frequency_shape(m3_system):
    assert susceptibility_numeric(m3_system, 0.0).shape == (6, 6)


def test_singular_resolvent_raises():
    p = SystemParams(1.0, 1e-13, 1.0)
    with pytest.raises(SingularResponseError):
        susceptibility_numeric(p, 0.0)
    assert np.all(np.isfinite(susceptibility_numeric(p, 0.0, check=False)))


def test_uncoupled_eigenvalues():
    p = SystemParams(1.0, 0.1, 0.3, lambda_m=0.02, lambda_d=0.4)
    v = eigen_stability(p)
    assert v.max_real == pytest.approx(-0.15 + 0.4)
    assert not v.stable
    v = eigen_stability(SystemParams(1.0, 0.1, 0.3, lambda_m=0.02, lambda_d=0.1))
    assert v.stable and v.strictly_stable
    assert v.max_real == pytest.approx(-0.05 + 0.02)


def test_boundary_flag():
    v = eigen_stability(SystemParams(1.0, 0.1, 0.3, lambda_m=0.05))
    assert v.boundary and not v.strictly_stable


def test_m3_point_is_stable(m3_system):
    assert eigen_stability(m3_system).strictly_stable
    assert eigen_stability(from_dimensionless(M3, kappa=7.0)).strictly_stable
