"""Tests for the dense linear algebra helpers."""

import numpy as np
import pytest

from magic_forge.linalg import (
    antisymmetrize, eigensystem_symmetric, orthonormalize_span,
    polarized_tensor, principal_angles, project_coeffs, rank_and_kernel,
    skew_basis, sym_basis, symmetrize,
)


def test_symmetrize_idempotent(rng):
    T = rng.standard_normal((4, 4, 4))
    S = symmetrize(T)
    assert np.allclose(S, np.transpose(S, (1, 0, 2)))
    assert np.allclose(S, np.transpose(S, (0, 2, 1)))
    assert np.allclose(symmetrize(S), S)


def test_antisymmetrize_sign(rng):
    T = rng.standard_normal((5, 5))
    A = antisymmetrize(T)
    assert np.allclose(A, 0.5 * (T - T.T))


def test_rank_and_kernel_known_rank(rng):
    U = rng.standard_normal((8, 3))
    V = rng.standard_normal((3, 10))
    rank, ker = rank_and_kernel(U @ V)
    assert rank == 3
    assert ker.shape == (7, 10)
    assert np.allclose((U @ V) @ ker.T, 0.0, atol=1e-10)
    assert np.allclose(ker @ ker.T, np.eye(7), atol=1e-12)


def test_orthonormalize_span_coefficients(rng):
    # dependent generators: orthonormal basis must reconstruct from coeffs
    gens = rng.standard_normal((5, 7))
    gens[3] = 2.0 * gens[0] - gens[1]
    gens[4] = gens[2]
    basis, coeffs = orthonormalize_span(gens)
    assert basis.shape[0] == 3
    assert np.allclose(basis @ basis.T, np.eye(3), atol=1e-12)
    assert np.allclose(coeffs @ gens, basis, atol=1e-10)


def test_project_coeffs_residual(rng):
    basis, _ = orthonormalize_span(rng.standard_normal((3, 9)))
    v = 1.7 * basis[0] - 0.3 * basis[2]
    c, resid = project_coeffs(v, basis)
    assert resid < 1e-12
    assert np.allclose(c, [1.7, 0.0, -0.3])
    w = v + 0.5 * np.linalg.svd(np.vstack([basis, v]), full_matrices=True)[2][-1]
    _, resid2 = project_coeffs(w, basis)
    assert resid2 > 0.1


def test_eigensystem_symmetric_clusters():
    M = np.diag([1.0, 1.0 + 1e-9, 2.0, 5.0, 5.0, 5.0])
    clusters = eigensystem_symmetric(M)
    assert [(round(v, 6), m) for v, m, _ in clusters] == [(1.0, 2), (2.0, 1), (5.0, 3)]
    for val, mult, vecs in clusters:
        assert vecs.shape == (6, mult)


def test_principal_angles_detects_containment(rng):
    A = rng.standard_normal((2, 6))
    B = np.vstack([A, rng.standard_normal((1, 6))])
    ang = principal_angles(A, B)
    # arccos loses half the working precision near zero angle, so 1e-6
    assert np.max(ang) < 1e-6
    C = rng.standard_normal((2, 6))
    assert np.max(principal_angles(C, A)) > 1e-3


def test_skew_sym_bases():
    S = skew_basis(4)
    assert S.shape == (6, 4, 4)
    G = np.einsum('aij,bij->ab', S, S)
    assert np.allclose(G, np.eye(6), atol=1e-12)
    Y = sym_basis(3)
    assert Y.shape == (6, 3, 3)
    assert np.allclose(np.einsum('aij,bij->ab', Y, Y), np.eye(6), atol=1e-12)


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_polarized_tensor_recovers_polynomial(rng, degree):
    """Polarization of T(v,..,v) must give back the symmetric part of T."""
    dim = 5
    T = symmetrize(rng.standard_normal((dim,) * degree))

    def f(batch):
        idx = 'abcd'[:degree]
        return np.einsum(','.join('z' + c for c in idx) + ',' + idx + '->z',
                         *([batch] * degree), T)

    P = polarized_tensor(f, dim, degree)
    assert np.allclose(P, T, atol=1e-9)
