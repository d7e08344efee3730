"""Division algebra tests: doubling tables, norms, derivations, grading."""

import numpy as np
import pytest

from magic_forge.division import BY_DIM, C, H, O, R

ALGEBRAS = [R, C, H, O]
TOL = dict(atol=1e-12)

# expected derivation dimensions and graded splits
DER_DIMS = {1: 0, 2: 0, 4: 3, 8: 14}
GRADED_DIMS = {2: (0, 0), 4: (1, 2), 8: (6, 8)}


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda a: f"dim{a.dim}")
def test_unital_and_conjugation(A, rng):
    one = A.unit(0)
    x = rng.standard_normal(A.dim)
    assert np.allclose(A.multiply(one, x), x, **TOL)
    assert np.allclose(A.multiply(x, one), x, **TOL)
    y = rng.standard_normal(A.dim)
    # conjugation is an anti-automorphism: (xy)* = y* x*
    assert np.allclose(A.conj(A.multiply(x, y)),
                       A.multiply(A.conj(y), A.conj(x)), **TOL)
    # x + x* is real, x x* = |x|^2
    assert np.allclose(A.im(x + A.conj(x)), 0.0, **TOL)
    assert np.allclose(A.multiply(x, A.conj(x)), A.inner(x, x) * one, atol=1e-10)


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda a: f"dim{a.dim}")
def test_norm_composition(A, rng):
    for _ in range(20):
        x = rng.standard_normal(A.dim)
        y = rng.standard_normal(A.dim)
        assert np.allclose(A.norm(A.multiply(x, y)), A.norm(x) * A.norm(y),
                           rtol=1e-10)


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda a: f"dim{a.dim}")
def test_inner_product_is_re_conj_product(A, rng):
    x = rng.standard_normal(A.dim)
    y = rng.standard_normal(A.dim)
    assert np.allclose(A.inner(x, y), A.re(A.multiply(A.conj(x), y)), **TOL)


def test_quaternion_table():
    i, j, k = H.unit(1), H.unit(2), H.unit(3)
    assert np.allclose(H.multiply(i, j), k)
    assert np.allclose(H.multiply(j, k), i)
    assert np.allclose(H.multiply(k, i), j)
    assert np.allclose(H.multiply(i, i), -H.unit(0))


def test_octonions_alternative_not_associative(rng):
    x = rng.standard_normal(8)
    y = rng.standard_normal(8)
    z = rng.standard_normal(8)
    # alternating associator
    assert np.allclose(O.associator(x, x, y), 0.0, atol=1e-10)
    assert np.allclose(O.associator(x, y, y), 0.0, atol=1e-10)
    assert np.allclose(O.associator(x, y, x), 0.0, atol=1e-10)
    # but generically nonzero
    assert np.linalg.norm(O.associator(x, y, z)) > 1e-3
    # quaternions associate
    assert np.allclose(H.associator(*(rng.standard_normal(4) for _ in range(3))),
                       0.0, atol=1e-12)


def test_no_zero_divisors(rng):
    for A in ALGEBRAS:
        x = rng.standard_normal(A.dim)
        L = A.left_mult_matrix(x)
        s = np.linalg.svd(L, compute_uv=False)
        assert s[-1] > 1e-8  # left multiplication invertible for x != 0


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda a: f"dim{a.dim}")
def test_dmap_is_derivation(A, rng):
    p = rng.standard_normal(A.dim)
    q = rng.standard_normal(A.dim)
    D = A.dmap(p, q)
    x = rng.standard_normal(A.dim)
    y = rng.standard_normal(A.dim)
    lhs = D @ A.multiply(x, y)
    rhs = A.multiply(D @ x, y) + A.multiply(x, D @ y)
    assert np.allclose(lhs, rhs, atol=1e-8 * max(1, np.max(np.abs(D))))


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda a: f"dim{a.dim}")
def test_derivation_dimensions(A):
    basis, pairs, coeffs = A.derivation_basis()
    assert len(basis) == DER_DIMS[A.dim]
    # independent oracle: solve the Leibniz equations directly
    assert A.derivation_kernel_dim() == DER_DIMS[A.dim]
    # bookkeeping reconstructs the basis
    if len(basis):
        gens = np.array([A.dmap(A.unit(a), A.unit(b)) for a, b in pairs])
        assert np.allclose(np.einsum('ki,iab->kab', coeffs, gens), basis, atol=1e-10)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_graded_derivations(dim, rng):
    """der_0 preserves the doubling halves, der_1 exchanges them."""
    A = BY_DIM[dim]
    g = A.graded_derivation_bases()
    d0, d1 = g[0][0], g[1][0]
    assert (len(d0), len(d1)) == GRADED_DIMS[dim]
    h = dim // 2
    for D in d0:
        assert np.allclose(D[h:, :h], 0.0, atol=1e-10)
        assert np.allclose(D[:h, h:], 0.0, atol=1e-10)
    for D in d1:
        assert np.allclose(D[:h, :h], 0.0, atol=1e-10)
        assert np.allclose(D[h:, h:], 0.0, atol=1e-10)
    # graded pieces together span everything
    if dim > 2:
        full = np.concatenate([d0, d1])
        assert np.linalg.matrix_rank(full.reshape(len(full), -1)) == DER_DIMS[dim]


def test_graded_bracket_relations():
    """[der_i, der_j] lies in der_{i+j mod 2}."""
    for dim in (4, 8):
        A = BY_DIM[dim]
        g = A.graded_derivation_bases()
        d0, d1 = g[0][0], g[1][0]
        flat0 = d0.reshape(len(d0), -1)
        flat1 = d1.reshape(len(d1), -1)

        def in_span(M, flat):
            if len(flat) == 0:
                return np.allclose(M, 0, atol=1e-9)
            c, *_ = np.linalg.lstsq(flat.T, M.ravel(), rcond=None)
            return np.allclose(flat.T @ c, M.ravel(), atol=1e-9)

        for X in d0:
            for Y in d0:
                assert in_span(X @ Y - Y @ X, flat0)
            for Y in d1:
                assert in_span(X @ Y - Y @ X, flat1)
        for X in d1:
            for Y in d1:
                assert in_span(X @ Y - Y @ X, flat0)


def test_even_derivations_act_as_so_on_odd_half():
    """For H and O, restriction to the odd half identifies der_0 with so(dim/2)."""
    for dim in (4, 8):
        A = BY_DIM[dim]
        h = dim // 2
        d0 = A.graded_derivation_bases()[0][0]
        restr = np.array([D[h:, h:] for D in d0])
        for M in restr:
            assert np.allclose(M, -M.T, atol=1e-10)  # preserves the norm
        rank = np.linalg.matrix_rank(restr.reshape(len(restr), -1), tol=1e-8)
        assert rank == len(d0) == h * (h - 1) // 2  # faithful and onto
