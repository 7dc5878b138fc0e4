import numpy as np
import pytest

from graphharm import generators, spectra
from graphharm.spectra import SpectraError, decompose, embedding, low_rank_power, pinv_power


def _lap(n=10, p=0.5, seed=1):
    return generators.erdos_renyi(n, p, seed).laplacian()


def test_decompose_reconstructs():
    L = _lap()
    dec = decompose(L)
    V, lam = dec.eigenvectors, dec.eigenvalues
    assert np.allclose(V @ np.diag(lam) @ V.T, L, atol=1e-10)
    assert np.all(np.diff(lam) >= 0)


def test_kernel_dimension_counts_components():
    g = generators.path(4)
    assert decompose(g.laplacian()).kernel_dim == 1
    L = np.zeros((4, 4))
    L[:2, :2] = generators.path(2).laplacian()
    L[2:, 2:] = generators.path(2).laplacian()
    assert decompose(L).kernel_dim == 2


def test_kernel_eigenvalues_clamped_to_zero():
    dec = decompose(_lap())
    assert dec.eigenvalues[0] == 0.0


def test_decompose_rejects_asymmetric():
    M = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(SpectraError, match="symmetric"):
        decompose(M)


def test_sign_convention_is_deterministic():
    L = _lap(seed=9)
    a = decompose(L).eigenvectors
    b = decompose(L.copy()).eigenvectors
    assert np.array_equal(a, b)
    # largest-magnitude entry of each eigenvector is positive
    for j in range(a.shape[1]):
        col = a[:, j]
        assert col[np.argmax(np.abs(col))] > 0


def test_pinv_power_matches_numpy_pinv():
    L = _lap()
    dec = decompose(L)
    assert np.allclose(pinv_power(dec, 1.0), np.linalg.pinv(L, hermitian=True), atol=1e-10)
    P2 = np.linalg.pinv(L, hermitian=True)
    assert np.allclose(pinv_power(dec, 2.0), P2 @ P2, atol=1e-10)


def test_fractional_power_interpolates():
    dec = decompose(_lap())
    M = pinv_power(dec, 0.5)
    assert np.allclose(M @ M, pinv_power(dec, 1.0), atol=1e-10)


def test_low_rank_power_limits():
    dec = decompose(_lap())
    r_full = dec.n - 1
    assert np.allclose(low_rank_power(dec, 2.0, r_full), pinv_power(dec, 2.0), atol=1e-10)
    M1 = low_rank_power(dec, 1.0, 1)
    assert np.linalg.matrix_rank(M1, tol=1e-10) == 1


def test_low_rank_rejects_bad_rank():
    dec = decompose(_lap())
    with pytest.raises(SpectraError):
        low_rank_power(dec, 1.0, 0)
    with pytest.raises(SpectraError):
        low_rank_power(dec, 1.0, dec.n)


def test_embedding_gram_matrix_gives_distances():
    g = generators.erdos_renyi(8, 0.6, seed=2)
    dec = decompose(g.laplacian())
    X = embedding(dec, 2.0)
    M = pinv_power(dec, 2.0)
    # squared pairwise embedding distances equal the quadratic form
    for s in range(g.n):
        for t in range(g.n):
            d2 = float(np.sum((X[s] - X[t]) ** 2))
            q = M[s, s] + M[t, t] - 2 * M[s, t]
            assert d2 == pytest.approx(q, abs=1e-10)


def test_embedding_full_rank_needs_connected():
    L = np.zeros((4, 4))
    L[:2, :2] = generators.path(2).laplacian()
    L[2:, 2:] = generators.path(2).laplacian()
    dec = decompose(L)
    with pytest.raises(SpectraError):
        embedding(dec, 1.0)
    assert embedding(dec, 0.0, 2).shape == (4, 2)


def test_power_coefficients_underflow_is_clamped():
    dec = decompose(_lap())
    coeffs = spectra.power_coefficients(dec, 5000.0)
    assert np.all(np.isfinite(coeffs))
    assert np.all(coeffs >= 0)
