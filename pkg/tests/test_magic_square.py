"""Magic square tests: dimensions, Jacobi, Killing, pairs, inclusions."""

import numpy as np
import pytest

from magic_forge.linalg import project_coeffs, rank_and_kernel
from magic_forge.magic_square import (
    EXPECTED_DIMS, MagicSquare, centralizer_in_subspace,
    embedding_bracket_residual, include_jordan, include_scalar,
)

_cache = {}


def square(k, kp) -> MagicSquare:
    if (k, kp) not in _cache:
        _cache[(k, kp)] = MagicSquare(k, kp)
    return _cache[(k, kp)]


SMALL_PAIRS = [(k, kp) for k in (1, 2, 4, 8) for kp in (1, 2, 4, 8)
               if EXPECTED_DIMS[(k, kp)] <= 78]
LARGE_PAIRS = [(4, 8), (8, 4), (8, 8)]

# symmetric pair dimensions (dim g, dim V) from the doubling grading
PAIR_DIMS = {
    (1, 2): (3, 5), (2, 2): (8, 8), (4, 2): (21, 14), (8, 2): (52, 26),
    (1, 4): (9, 12), (2, 4): (17, 18), (4, 4): (36, 30), (8, 4): (79, 54),
    (1, 8): (24, 28), (2, 8): (38, 40), (4, 8): (69, 64), (8, 8): (136, 112),
}


def test_dimension_table():
    for (k, kp), expect in EXPECTED_DIMS.items():
        assert square(k, kp).n == expect


@pytest.mark.parametrize("k,kp", SMALL_PAIRS)
def test_jacobi_full(k, kp):
    assert square(k, kp).jacobi_full() < 1e-9


@pytest.mark.parametrize("k,kp", LARGE_PAIRS)
def test_jacobi_sampled(k, kp, rng):
    resid, count = square(k, kp).jacobi_sampled(rng, pool_size=24)
    assert count >= 10000
    assert resid < 1e-9


@pytest.mark.parametrize("k,kp", [(1, 2), (2, 4), (4, 4), (2, 8), (8, 8)])
def test_killing_negative_definite_and_invariant(k, kp, rng):
    M = square(k, kp)
    K = M.killing()
    assert np.allclose(K, K.T, atol=1e-9)
    ev = np.linalg.eigvalsh(K)
    assert ev[-1] < -1e-6  # compact real form
    # invariance K([x,y],z) + K(y,[x,z]) = 0
    x, y, z = (rng.standard_normal(M.n) for _ in range(3))
    xy = np.einsum('i,j,ijk->k', x, y, M.C)
    xz = np.einsum('i,j,ijk->k', x, z, M.C)
    assert abs(xy @ K @ z + y @ K @ xz) < 1e-8 * np.max(np.abs(K))


@pytest.mark.parametrize("k,kp", list(PAIR_DIMS))
def test_symmetric_pair_dims_and_closure(k, kp):
    M = square(k, kp)
    pair = M.symmetric_pair()
    assert (pair.dim_g, pair.dim_v) == PAIR_DIMS[(k, kp)]
    assert max(pair.closure_residuals()) < 1e-10


@pytest.mark.parametrize("k", [1, 2, 4, 8])
def test_complex_column_pair_is_previous_square_entry(k):
    """g of M(K, C) is der h3(K), i.e. all of M(K, R), verbatim."""
    M = square(k, 2)
    pair = M.symmetric_pair()
    g = pair.g_idx
    sub = M.C[np.ix_(g, g, g)]
    assert np.allclose(sub, square(k, 1).C, atol=1e-10)
    # and nothing of [g,g] leaks outside g (already in closure, but explicit)
    assert pair.dim_g == EXPECTED_DIMS[(k, 1)]


@pytest.mark.parametrize("k", [1, 2, 4, 8])
def test_quaternion_column_pair_center(k):
    """g of M(K, H) has a one-dimensional center, complement M(K, C)."""
    M = square(k, 4)
    pair = M.symmetric_pair()
    g = pair.g_idx
    basis_g = np.eye(M.n)[g]
    Z = centralizer_in_subspace(M.C, g, basis_g)
    assert Z.shape[0] == 1
    # the complement ideal: image of M(K, C) under the scalar inclusion
    Ms = square(k, 2)
    emb = include_scalar(Ms, M)
    assert embedding_bracket_residual(Ms, M, emb) < 1e-9
    img = emb.T  # rows are images of the small basis
    # image lies inside g
    mask = np.ones(M.n, dtype=bool)
    mask[g] = False
    assert np.max(np.abs(img[:, mask])) < 1e-12
    # direct sum: center + image spans g
    zfull = np.zeros((1, M.n))
    zfull[:, g] = Z
    rank, _ = rank_and_kernel(np.vstack([zfull, img]))
    assert rank == pair.dim_g == Ms.n + 1


@pytest.mark.parametrize("k", [1, 2, 4, 8])
def test_octonion_column_pair_splits_sp1(k):
    """g of M(K, O) = su(2)-ideal + image of M(K, H)."""
    M = square(k, 8)
    pair = M.symmetric_pair()
    g = pair.g_idx
    Ms = square(k, 4)
    emb = include_scalar(Ms, M)
    assert embedding_bracket_residual(Ms, M, emb) < 1e-9
    img = emb.T
    mask = np.ones(M.n, dtype=bool)
    mask[g] = False
    assert np.max(np.abs(img[:, mask])) < 1e-12
    # centralizer of the image inside g
    Z = centralizer_in_subspace(M.C, g, img)
    assert Z.shape[0] == 3
    zfull = np.zeros((3, M.n))
    zfull[:, g] = Z
    # direct sum with the image
    rank, _ = rank_and_kernel(np.vstack([zfull, img]))
    assert rank == pair.dim_g == Ms.n + 3
    # the centralizer is a subalgebra isomorphic to su(2): brackets stay
    # inside, are nondegenerate, Killing negative definite
    brk = np.einsum('ai,bj,ijk->abk', zfull, zfull, M.C, optimize=True)
    cf, resid = project_coeffs(brk, np.linalg.qr(zfull.T)[0].T)
    assert resid < 1e-9
    rank_br, _ = rank_and_kernel(brk.reshape(9, -1))
    assert rank_br == 3
    # it is an ideal of g: [g, Z] stays in span(Z)
    basis_g = np.eye(M.n)[g]
    brg = np.einsum('ai,bj,ijk->abk', basis_g, zfull, M.C, optimize=True)
    _, resid2 = project_coeffs(brg.reshape(-1, M.n), np.linalg.qr(zfull.T)[0].T)
    assert resid2 < 1e-9


def test_scalar_inclusion_chain(rng):
    """M(K, C) -> M(K, H) -> M(K, O) all bracket-preserving."""
    for k in (1, 2):
        for kps, kpb in ((2, 4), (4, 8)):
            Ms, Mb = square(k, kps), square(k, kpb)
            emb = include_scalar(Ms, Mb)
            assert embedding_bracket_residual(Ms, Mb, emb) < 1e-9
            # isometric on basis -> injective
            assert np.linalg.matrix_rank(emb) == Ms.n


def test_jordan_inclusion(rng):
    """M(K, K') -> M(K'', K') along h3(K) -> h3(K'')."""
    for (ks, kb, kp) in [(1, 2, 2), (2, 4, 2), (2, 8, 4), (4, 8, 2)]:
        Ms, Mb = square(ks, kp), square(kb, kp)
        emb = include_jordan(Ms, Mb)
        assert embedding_bracket_residual(Ms, Mb, emb) < 1e-9
        assert np.linalg.matrix_rank(emb) == Ms.n


def test_inclusions_compose_to_e8():
    """su(3)-relevant chain: M(C, H) -> M(O, H) -> M(O, O) lands in e8."""
    M1, M2, M3 = square(2, 4), square(8, 4), square(8, 8)
    e1 = include_jordan(M1, M2)
    e2 = include_scalar(M2, M3)
    emb = e2 @ e1
    assert embedding_bracket_residual(M1, M3, emb) < 1e-9
