"""Freudenthal triple systems: quartic, triple product, derivations."""

import numpy as np
import pytest

from magic_forge.fts import freudenthal_triple
from magic_forge.linalg import orthonormalize_span, polarized_tensor, rank_and_kernel

DER_DIMS = {1: 21, 2: 35, 4: 66, 8: 133}

KAPPAS = (1, 2, 4, 8)


@pytest.fixture(scope='module', params=KAPPAS)
def F(request):
    return freudenthal_triple(request.param)


def test_space_and_forms(F):
    assert F.dim == 6 * F.kappa + 8
    Om = F.omega
    assert np.allclose(Om, -Om.T)
    assert np.allclose(Om @ Om, -np.eye(F.dim))
    # J0 is cut out of the symplectic form by <J0 u, v> = omega(u, v)
    assert np.allclose(F.J0.T, Om)
    assert np.allclose(F.J0 @ F.J0, -np.eye(F.dim))


def test_quartic_on_components(F, rng):
    # assemble/split round trip and the component formula itself
    J = F.J
    x, xt = rng.standard_normal(2)
    X, Xt = rng.standard_normal((2, J.dim))
    v = F.assemble(x, X, xt, Xt)
    x2, X2, xt2, Xt2 = F.split(v)
    assert np.allclose([x2, xt2], [x, xt])
    assert np.allclose(X2, X) and np.allclose(Xt2, Xt)
    expected = (J.inner(J.sharp(X), J.sharp(Xt)) - x * J.det(X)
                - xt * J.det(Xt) - 0.25 * (J.inner(X, Xt) - x * xt) ** 2)
    assert np.allclose(F.quartic(v[None])[0], expected)


def test_quartic_tensor_round_trip(F, rng):
    Q4 = F.quartic_tensor()
    v = rng.standard_normal((15, F.dim))
    vals = np.einsum('abcd,na,nb,nc,nd->n', Q4, v, v, v, v, optimize=True)
    assert np.allclose(vals, F.quartic(v), atol=1e-9)


@pytest.mark.parametrize('kappa', [1, 2])
def test_quartic_tensor_against_polarization(kappa):
    # independent oracle: signed inclusion-exclusion polarization
    F = freudenthal_triple(kappa)
    Q4 = polarized_tensor(F.quartic, F.dim, 4)
    assert np.allclose(Q4, F.quartic_tensor(), atol=1e-10)


def test_triple_product_defining_property(F, rng):
    for _ in range(5):
        v, w = rng.standard_normal((2, F.dim))
        t = F.triple(v, v, v)
        assert np.allclose(w @ F.omega @ t, F.quartic_polarized(w, v, v, v))


def test_derivations_kill_quartic_and_omega(F, rng):
    gens = F.derivation_generators()
    v = rng.standard_normal((8, F.dim))
    for fam in gens.values():
        for E in fam[::3]:
            Ev = v @ E.T
            dq = 4 * np.einsum('abcd,na,nb,nc,nd->n', F.quartic_tensor(),
                               Ev, v, v, v, optimize=True)
            assert np.abs(dq).max() < 1e-9
            assert np.abs(E.T @ F.omega + F.omega @ E).max() < 1e-12


def test_derivation_symmetry_split(F):
    # H0(D,0), H1(A,0) are antisymmetric; H0(0,C), H1(0,B) symmetric
    gens = F.derivation_generators()
    for name in ('der', 'skew'):
        for E in gens[name]:
            assert np.allclose(E, -E.T)
    for name in ('scalar', 'sym'):
        for E in gens[name]:
            assert np.allclose(E, E.T)


def test_derivation_algebra_dimension_and_closure(F):
    basis = F.derivation_basis()
    nd = len(basis)
    assert nd == DER_DIMS[F.kappa]
    flat = basis.reshape(nd, -1)
    # closure: brackets stay in the span (projection residual, basis is onb)
    idx = np.arange(0, nd, max(1, nd // 12))
    for i in idx:
        for j in idx:
            br = (basis[i] @ basis[j] - basis[j] @ basis[i]).ravel()
            resid = br - (flat @ br) @ flat
            assert np.linalg.norm(resid) < 1e-9 * max(1.0, np.linalg.norm(br))
    # antisymmetric + symmetric generator counts add up to the whole
    gens = F.derivation_generators()
    k_part, _ = orthonormalize_span(np.concatenate([gens['der'], gens['skew']]))
    p_part, _ = orthonormalize_span(np.concatenate([gens['scalar'], gens['sym']]))
    assert len(k_part) + len(p_part) == nd


def test_triple_product_equivariance(F, rng):
    gens = F.derivation_generators()
    E = gens['skew'][0] + gens['scalar'][-1] + gens['der'][0]
    for _ in range(3):
        v = rng.standard_normal(F.dim)
        lhs = E @ F.triple(v, v, v)
        rhs = 3 * F.triple(E @ v, v, v)
        assert np.allclose(lhs, rhs, atol=1e-8)


def test_left_tau_traces(F, rng):
    # tr L = 0; the quadratic trace identity holds with an overall minus
    # sign relative to the usual display (checked exactly by coefficient fit)
    kp = F.kappa
    for _ in range(4):
        X, Y, Z, T = rng.standard_normal((4, F.dim))
        L1 = F.left_tau_matrix(X, Y)
        L2 = F.left_tau_matrix(Z, T)
        assert abs(np.trace(L1)) < 1e-12
        om = lambda u, v: u @ F.omega @ v
        rhs = -((kp + 3) / 1152.0) * (om(X, Z) * om(Y, T) + om(X, T) * om(Y, Z)) \
              - ((kp + 2) / 24.0) * F.quartic_polarized(X, Y, Z, T)
        assert np.allclose(np.trace(L1 @ L2), rhs, atol=1e-8)


def test_quartic_J0_invariant(F, rng):
    v = rng.standard_normal((10, F.dim))
    assert np.allclose(F.quartic(v @ F.J0.T), F.quartic(v))
