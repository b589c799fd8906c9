"""Kernel tests: eigensolver against an independent reference, plus the
matrix helpers (psd_sqrt, gibbs_exp, partial transpose, Pauli embeddings).

numpy.linalg is used here only as a cross-check oracle; the package itself
never calls it.
"""

from __future__ import annotations

import numpy as np
import pytest

from qcorr.numkernel import (
    NotHermitianError,
    NotPSDError,
    embed_pauli_first,
    gibbs_exp,
    hermitian_eig,
    partial_transpose_first,
    psd_sqrt,
    sym3_eig,
    sym3_eig_max,
)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2.0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_eigenvalues_match_reference(n):
    rng = np.random.default_rng(3)
    for _ in range(200):
        h = random_hermitian(rng, n)
        vals, _ = hermitian_eig(h)
        ref = np.linalg.eigvalsh(h)
        np.testing.assert_allclose(vals, ref, rtol=0, atol=1e-13 * max(1.0, np.abs(ref).max()))


def test_eigen_residual_and_orthonormality():
    rng = np.random.default_rng(4)
    for _ in range(100):
        h = random_hermitian(rng, 4)
        vals, vecs = hermitian_eig(h)
        resid = np.max(np.abs(h @ vecs - vecs @ np.diag(vals)))
        assert resid <= 1e-13 * max(1.0, np.max(np.abs(vals)))
        ortho = np.max(np.abs(vecs.conj().T @ vecs - np.eye(4)))
        assert ortho <= 1e-14


def test_values_ascending():
    rng = np.random.default_rng(5)
    for _ in range(50):
        vals, _ = hermitian_eig(random_hermitian(rng, 4))
        assert all(vals[i] <= vals[i + 1] for i in range(3))


def test_identity_is_fixed_point():
    vals, vecs = hermitian_eig(np.eye(4, dtype=complex))
    assert np.array_equal(vals, np.ones(4))
    np.testing.assert_array_equal(vecs, np.eye(4, dtype=complex))


def test_near_degenerate_pairs():
    rng = np.random.default_rng(6)
    base = np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex)
    for _ in range(50):
        h = base + 1e-9 * random_hermitian(rng, 4)
        vals, vecs = hermitian_eig(h)
        ref = np.linalg.eigvalsh(h)
        np.testing.assert_allclose(vals, ref, rtol=0, atol=1e-13)
        resid = np.max(np.abs(h @ vecs - vecs @ np.diag(vals)))
        assert resid <= 1e-13


def test_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NotHermitianError):
        hermitian_eig(m)


def test_bitwise_deterministic():
    rng = np.random.default_rng(7)
    h = random_hermitian(rng, 4)
    v1, u1 = hermitian_eig(h)
    v2, u2 = hermitian_eig(h)
    assert np.array_equal(v1, v2)
    assert np.array_equal(u1, u2)


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(8)
    for _ in range(100):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        root = psd_sqrt(rho)
        np.testing.assert_allclose(root @ root, rho, rtol=0, atol=1e-13)
        np.testing.assert_allclose(root, root.conj().T, rtol=0, atol=1e-14)


def test_psd_sqrt_golden():
    # Thermal state at jx=-1, jy=-1.5, jz=2, dz=1.8, gz=0.3, b=1.5, T=1.
    from qcorr.model import ModelParams, thermal_state_oracle

    p = ModelParams(jx=-1.0, jy=-1.5, jz=2.0, dz=1.8, gz=0.3, b=1.5, t=1.0)
    root = psd_sqrt(thermal_state_oracle(p))
    assert root[0, 0].real == pytest.approx(0.004296358668068108, abs=1e-14)
    assert root[1, 1].real == pytest.approx(0.5049222727174925, abs=1e-14)
    assert root[0, 3] == pytest.approx(
        -0.005473331994992429 - 0.006567998393990913j, abs=1e-14
    )
    assert root[1, 2] == pytest.approx(
        0.28090058197209666 + 0.40449683803981923j, abs=1e-14
    )


def test_psd_sqrt_rejects_indefinite():
    rho = np.diag([0.7, 0.5, -0.2, 0.0]).astype(complex)
    with pytest.raises(NotPSDError):
        psd_sqrt(rho)


def test_psd_sqrt_clamps_roundoff_dust():
    rho = np.diag([0.5, 0.5, -1e-12, 1e-12]).astype(complex)
    root = psd_sqrt(rho)
    vals, _ = hermitian_eig(root)
    assert vals[0] >= 0.0


def test_gibbs_beta_zero_is_maximally_mixed():
    rng = np.random.default_rng(9)
    h = random_hermitian(rng, 4)
    np.testing.assert_allclose(gibbs_exp(h, 0.0), np.eye(4) / 4, rtol=0, atol=1e-15)


def test_gibbs_matches_reference():
    rng = np.random.default_rng(10)
    for _ in range(100):
        h = random_hermitian(rng, 4)
        beta = float(rng.uniform(0.0, 10.0))
        w, v = np.linalg.eigh(h)
        weights = np.exp(-beta * (w - w.min()))
        weights /= weights.sum()
        ref = (v * weights) @ v.conj().T
        np.testing.assert_allclose(gibbs_exp(h, beta), ref, rtol=0, atol=1e-13)


def test_gibbs_extreme_beta_projects_ground_state():
    h = np.diag([0.0, 5.0, 9.0, 12.0]).astype(complex)
    rho = gibbs_exp(h, 1e4)
    np.testing.assert_allclose(rho, np.diag([1.0, 0.0, 0.0, 0.0]), rtol=0, atol=1e-300)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)


def test_partial_transpose_entries():
    m = np.arange(16, dtype=float).reshape(4, 4) + 1j * np.arange(16).reshape(4, 4).T
    pt = partial_transpose_first(m)
    for i in range(2):
        for a in range(2):
            for j in range(2):
                for b in range(2):
                    assert pt[2 * i + a, 2 * j + b] == m[2 * j + a, 2 * i + b]
    np.testing.assert_array_equal(partial_transpose_first(pt), m)


def test_partial_transpose_bell_spectrum():
    bell = np.zeros((4, 4), dtype=complex)
    bell[0, 0] = bell[3, 3] = bell[0, 3] = bell[3, 0] = 0.5
    vals, _ = hermitian_eig(partial_transpose_first(bell))
    np.testing.assert_allclose(vals, [-0.5, 0.5, 0.5, 0.5], rtol=0, atol=1e-15)


def test_embed_pauli_matrices():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    for axis, sigma in (("x", sx), ("y", sy), ("z", sz)):
        np.testing.assert_array_equal(embed_pauli_first(axis), np.kron(sigma, np.eye(2)))
    with pytest.raises(ValueError):
        embed_pauli_first("q")


def test_sym3_matches_reference():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a = rng.normal(size=(3, 3))
        s = (a + a.T) / 2.0
        vals, _ = sym3_eig(s)
        np.testing.assert_allclose(vals, np.linalg.eigvalsh(s), rtol=0, atol=1e-13)
        top, lams = sym3_eig_max(s)
        assert top == max(lams)
        assert list(lams) == sorted(lams)


def test_sym3_rejects_asymmetric():
    m = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(NotHermitianError):
        sym3_eig(m)
