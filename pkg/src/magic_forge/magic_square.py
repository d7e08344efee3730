"""The magic square of compact Lie algebras M(K, K').

The vector space is

    M(K, K') = der K'  +  der h3(K)  +  Im K' (x) sh3(K),

with bracket: derivations act componentwise on Im K' (x) sh3(K), the two
derivation algebras commute, and for decomposables

    [p (x) x, q (x) y] = <x, y>/12 D_{p,q} - <p, q> D_{x,y}
                         + (p cross q) (x) (x cross y),

where D_{p,q} is the division-algebra derivation [[p,q], .] - 3 [p,q,.],
D_{x,y} = [L_x, L_y] the Jordan one, p cross q = [p,q]/2 and
x cross y = x o y - <x,y> 1/3.  With these normalizations the bracket
satisfies Jacobi and the square of dimensions is

        R    C    H    O
    R   3    8   21   52
    C   8   16   35   78
    H  21   35   66  133
    O  52   78  133  248

Structure constants are materialized densely over an orthonormal basis
(derivation bases orthonormal in the Frobenius norm, Im K' units, traceless
Jordan units), so Jacobi sweeps, Killing forms and subalgebra bookkeeping
are all einsum work.

The Z2 grading of K' by doubling splits each algebra into a symmetric pair
g + V with g = der_0 K' + der h3(K) + Im(K'_0) (x) sh3(K); the class
SymmetricPair exposes the index split and closure checks.

Inclusions along both directions of the square are provided: doubling the
scalar algebra K' (a derivation of K'_0 extends half-wise) and enlarging
the Jordan coefficients K (transporting derivations through their
generating pairs).  They are bracket-preserving linear embeddings, checked
numerically, and are what later turns small reductive examples into
exceptional ones.
"""

from __future__ import annotations

import numpy as np

from .division import BY_DIM, DivisionAlgebra
from .jordan import JordanAlgebra
from .linalg import project_coeffs

EXPECTED_DIMS = {
    (1, 1): 3, (1, 2): 8, (1, 4): 21, (1, 8): 52,
    (2, 1): 8, (2, 2): 16, (2, 4): 35, (2, 8): 78,
    (4, 1): 21, (4, 2): 35, (4, 4): 66, (4, 8): 133,
    (8, 1): 52, (8, 2): 78, (8, 8): 248, (8, 4): 133,
}

_jordan_cache: dict = {}


def jordan_algebra(kappa: int) -> JordanAlgebra:
    if kappa not in _jordan_cache:
        _jordan_cache[kappa] = JordanAlgebra(BY_DIM[kappa])
    return _jordan_cache[kappa]


class MagicSquare:
    """M(K, K') with dense structure constants."""

    def __init__(self, kappa: int, kappa_p: int):
        self.kappa = kappa
        self.kappa_p = kappa_p
        self.K = BY_DIM[kappa]
        self.Kp = BY_DIM[kappa_p]
        self.J = jordan_algebra(kappa)

        graded = self.Kp.graded_derivation_bases() if kappa_p > 1 else None
        if kappa_p > 1:
            self.derKp_even = graded[0][0]
            self.derKp_odd = graded[1][0]
            self.derKp = (np.concatenate([self.derKp_even, self.derKp_odd])
                          if len(self.derKp_even) + len(self.derKp_odd)
                          else np.zeros((0, kappa_p, kappa_p)))
        else:
            self.derKp_even = np.zeros((0, 1, 1))
            self.derKp_odd = np.zeros((0, 1, 1))
            self.derKp = np.zeros((0, 1, 1))
        self.derJ = self.J.derivation_basis()[0]

        self.d1 = len(self.derKp)
        self.d2 = len(self.derJ)
        self.n_im = kappa_p - 1
        self.n_sh = self.J.sdim
        self.n = self.d1 + self.d2 + self.n_im * self.n_sh
        assert self.n == EXPECTED_DIMS[(kappa, kappa_p)]

        self.sh = self.J.sh_onb()
        self._build_structure()

    # index helpers ------------------------------------------------------

    def t_index(self, p: int, x: int) -> int:
        """Basis index of e_{p+1} (x) s_x   (p = 0..n_im-1, x = 0..n_sh-1)."""
        return self.d1 + self.d2 + p * self.n_sh + x

    @property
    def slice_derKp(self):
        return slice(0, self.d1)

    @property
    def slice_derJ(self):
        return slice(self.d1, self.d1 + self.d2)

    @property
    def slice_T(self):
        return slice(self.d1 + self.d2, self.n)

    # structure ----------------------------------------------------------

    def _build_structure(self):
        J, Kp = self.J, self.Kp
        d1, d2, ni, ns = self.d1, self.d2, self.n_im, self.n_sh
        n = self.n
        C = np.zeros((n, n, n))

        # pairwise tables over units
        im_units = np.eye(Kp.dim)[1:] if ni else np.zeros((0, Kp.dim))
        sh_nat = self.sh  # rows: natural coords of traceless onb

        # derivation actions on units
        if d1:
            act_full = np.einsum('dab,pb->dpa', self.derKp, im_units)
            assert np.allclose(act_full[:, :, 0], 0.0, atol=1e-10)  # kill Re
            act_im = act_full[:, :, 1:]
        if d2:
            act_sh = np.array([J.op_in(sh_nat, D) for D in self.derJ])

        # commutators of derivation bases
        if d1:
            comm = np.einsum('aij,bjk->abik', self.derKp, self.derKp)
            comm = comm - np.transpose(comm, (1, 0, 2, 3))
            cKp, resid = project_coeffs(comm, self.derKp)
            assert resid < 1e-9, f"der K' not closed: {resid}"
            C[:d1, :d1, :d1] = cKp
        if d2:
            comm = np.einsum('aij,bjk->abik', self.derJ, self.derJ)
            comm = comm - np.transpose(comm, (1, 0, 2, 3))
            cJ, resid = project_coeffs(comm, self.derJ)
            assert resid < 1e-9, f"der h3 not closed: {resid}"
            C[d1:d1 + d2, d1:d1 + d2, d1:d1 + d2] = cJ

        # derivations acting on the tensor block
        T = self.slice_T
        if d1:
            # [d, p(x)x] = d(p) (x) x
            blk = np.einsum('dpq,xy->dpxqy', act_im, np.eye(ns)).reshape(d1, ni * ns, ni * ns)
            C[:d1, T, T] = blk
            C[T, :d1, T] = -np.transpose(blk, (1, 0, 2))
        if d2:
            # act_sh[d] has [out, in] layout; C[d, in, out] needs the transpose
            blk = np.einsum('dyx,pq->dpxqy', act_sh, np.eye(ni)).reshape(d2, ni * ns, ni * ns)
            C[d1:d1 + d2, T, T] = blk
            C[T, d1:d1 + d2, T] = -np.transpose(blk, (1, 0, 2))

        # tensor-tensor brackets
        if ni:
            # division derivations D_{e_p, e_q} and Jordan derivations D_{s_x, s_y}
            dK_tab = np.zeros((ni, ni, d1))
            cross_im = np.zeros((ni, ni, ni))
            for p in range(ni):
                for q in range(ni):
                    D = Kp.dmap(im_units[p], im_units[q])
                    if d1:
                        cf, resid = project_coeffs(D, self.derKp)
                        assert resid < 1e-8
                        dK_tab[p, q] = cf
                    else:
                        assert np.allclose(D, 0.0, atol=1e-10)
                    cr = Kp.cross(im_units[p], im_units[q])
                    assert abs(cr[0]) < 1e-12
                    cross_im[p, q] = cr[1:]
            dJ_tab = np.zeros((ns, ns, d2))
            cross_sh = np.zeros((ns, ns, ns))
            for x in range(ns):
                for y in range(x, ns):
                    D = J.dop(sh_nat[x], sh_nat[y])
                    cf, resid = project_coeffs(D, self.derJ)
                    assert resid < 1e-8
                    dJ_tab[x, y] = cf
                    dJ_tab[y, x] = -cf
                    cr = J.coords_in(sh_nat, J.cross(sh_nat[x], sh_nat[y]))
                    cross_sh[x, y] = cr
                    cross_sh[y, x] = cr

            # [p(x)x, q(x)y]
            blk_dK = np.einsum('pqd,xy->pxqyd', dK_tab, np.eye(ns)) / 12.0
            C[T, T, :d1] = blk_dK.reshape(ni * ns, ni * ns, d1)
            blk_dJ = -np.einsum('pq,xyd->pxqyd', np.eye(ni), dJ_tab)
            C[T, T, self.slice_derJ] = blk_dJ.reshape(ni * ns, ni * ns, d2)
            blk_T = np.einsum('pqr,xyz->pxqyrz', cross_im, cross_sh)
            C[T, T, T] = blk_T.reshape(ni * ns, ni * ns, ni * ns)

        asym = np.max(np.abs(C + np.transpose(C, (1, 0, 2))))
        assert asym < 1e-9, f"bracket not antisymmetric: {asym}"
        self.C = C

    # checks -------------------------------------------------------------

    def jacobi_full(self) -> float:
        """Max-norm of the Jacobiator over all basis triples (n <= 78)."""
        C = self.C
        M = np.einsum('abm,mce->abce', C, C, optimize=True)
        jac = M + np.transpose(M, (1, 2, 0, 3)) + np.transpose(M, (2, 0, 1, 3))
        return float(np.max(np.abs(jac)))

    def jacobi_sampled(self, rng, pool_size: int = 60):
        """Max Jacobiator norm over all ordered triples from a random pool.

        Returns (max_residual, number_of_triples).  Pool vectors are unit
        norm, so the residual is directly comparable to machine precision
        times the cube of the structure-constant scale.
        """
        C = self.C
        n = self.n
        P = pool_size
        z = rng.standard_normal((P, n))
        z /= np.linalg.norm(z, axis=1)[:, None]
        # ad[p][r, s] = coefficient of e_r in [z_p, e_s]
        ad = np.einsum('pi,isr->prs', z, C, optimize=True)
        u = np.einsum('prs,qs->pqr', ad, z, optimize=True)  # u[p,q] = [z_p, z_q]
        worst = 0.0
        uf = u.reshape(P * P, n)
        for a in range(P):
            t1 = (ad[a] @ uf.T).T.reshape(P, P, n)         # [z_a, [z_b, z_c]]
            t2 = np.einsum('brs,cs->bcr', ad, u[:, a, :])  # [z_b, [z_c, z_a]]
            t3 = np.einsum('crs,bs->bcr', ad, u[a])        # [z_c, [z_a, z_b]]
            worst = max(worst, float(np.max(np.abs(t1 + t2 + t3))))
        return worst, P ** 3

    def killing(self) -> np.ndarray:
        C = self.C
        n = self.n
        A = C.reshape(n, n * n)
        B = np.transpose(C, (0, 2, 1)).reshape(n, n * n)
        return A @ B.T

    def symmetric_pair(self) -> "SymmetricPair":
        return SymmetricPair(self)


class SymmetricPair:
    """Index split M(K, K') = g + V from the doubling grading of K'.

    g keeps the half-preserving derivations of K', all Jordan derivations,
    and Im(K'_0) (x) sh3(K); V gets the half-exchanging derivations and
    K'_1 (x) sh3(K).
    """

    def __init__(self, M: MagicSquare):
        self.M = M
        h = M.kappa_p // 2
        d1e = len(M.derKp_even)
        g_idx = list(range(d1e))                      # even derivations first
        v_idx = list(range(d1e, M.d1))                # odd derivations
        g_idx += list(range(M.d1, M.d1 + M.d2))       # der h3
        for p in range(M.n_im):
            target = g_idx if (p + 1) < h else v_idx  # unit e_{p+1}: Im K'_0 if < h
            for x in range(M.n_sh):
                target.append(M.t_index(p, x))
        self.g_idx = np.array(g_idx, dtype=int)
        self.v_idx = np.array(v_idx, dtype=int)

    @property
    def dim_g(self) -> int:
        return len(self.g_idx)

    @property
    def dim_v(self) -> int:
        return len(self.v_idx)

    def closure_residuals(self):
        """Max |C| entries violating [g,g]<=g, [g,V]<=V, [V,V]<=g."""
        C = self.M.C
        g, v = self.g_idx, self.v_idx
        r_gg = np.max(np.abs(C[np.ix_(g, g, v)])) if len(v) else 0.0
        r_gv = np.max(np.abs(C[np.ix_(g, v, g)])) if len(v) else 0.0
        r_vv = np.max(np.abs(C[np.ix_(v, v, v)])) if len(v) else 0.0
        return float(r_gg), float(r_gv), float(r_vv)


# -- inclusions ------------------------------------------------------------


def doubling_derivation_matrix(D: np.ndarray) -> np.ndarray:
    """Extend a derivation of K'_0 half-wise to the doubled algebra."""
    h = D.shape[0]
    out = np.zeros((2 * h, 2 * h))
    out[:h, :h] = D
    out[h:, h:] = D
    return out


def include_scalar(M_small: MagicSquare, M_big: MagicSquare) -> np.ndarray:
    """Embedding matrix M(K, K'_0) -> M(K, K') for K' = doubled K'_0.

    Im K'_0 sits inside Im K' as the even half and the Jordan side is
    untouched.  Derivations of K'_0 are transported through their generating
    pairs D_{p,q}: the bracket of two tensor elements produces D_{p,q} of the
    ambient algebra, and for imaginary p, q in the even half that operator
    acts on the odd half by -R_{[p,q]}, not by the doubled commutator action,
    so naive half-wise doubling would be off.  Returns (n_big, n_small).
    """
    assert M_small.kappa == M_big.kappa
    assert 2 * M_small.kappa_p == M_big.kappa_p
    n_b, n_s = M_big.n, M_small.n
    out = np.zeros((n_b, n_s))
    # derivations of the small scalar algebra, via their D_{p,q} bookkeeping
    # (derKp is the even/odd graded concatenation, so transport chunk-wise)
    if M_small.d1:
        col = 0
        graded_s = M_small.Kp.graded_derivation_bases()
        for bit in (0, 1):
            basis_s, pairs_s, coeffs_s = graded_s[bit]
            if not len(basis_s):
                continue
            gens_big = np.array([M_big.Kp.dmap(M_big.Kp.unit(a), M_big.Kp.unit(b))
                                 for a, b in pairs_s])
            lifted = coeffs_s @ gens_big.reshape(len(pairs_s), -1)
            for row in lifted:
                Dbig = row.reshape(M_big.Kp.dim, M_big.Kp.dim)
                cf, resid = project_coeffs(Dbig, M_big.derKp)
                assert resid < 1e-9, "transported derivation not a derivation of K'"
                out[:M_big.d1, col] = cf
                col += 1
    # Jordan derivations: same algebra, same basis
    out[M_big.slice_derJ, M_small.slice_derJ] = np.eye(M_small.d2)
    # tensor part: Im K'_0 unit p+1 keeps its index
    for p in range(M_small.n_im):
        for x in range(M_small.n_sh):
            out[M_big.t_index(p, x), M_small.t_index(p, x)] = 1.0
    return out


def jordan_coefficient_embedding(J_small: JordanAlgebra, J_big: JordanAlgebra) -> np.ndarray:
    """Natural-coordinate matrix of h3(K) -> h3(K''), K inside K''."""
    ks, kb = J_small.kappa, J_big.kappa
    out = np.zeros((J_big.dim, J_small.dim))
    for r in range(3):
        out[r, r] = 1.0
    for pair in range(3):
        for a in range(ks):
            out[3 + pair * kb + a, 3 + pair * ks + a] = 1.0
    return out


def include_jordan(M_small: MagicSquare, M_big: MagicSquare) -> np.ndarray:
    """Embedding matrix M(K, K') -> M(K'', K') along h3(K) -> h3(K'').

    Jordan derivations are transported through their generating pairs
    D_{x,y} -> D_{mu x, mu y}; the scalar side is untouched.
    """
    assert M_small.kappa_p == M_big.kappa_p
    Js, Jb = M_small.J, M_big.J
    mu = jordan_coefficient_embedding(Js, Jb)
    n_b, n_s = M_big.n, M_small.n
    out = np.zeros((n_b, n_s))
    out[:M_big.d1, :M_small.d1] = np.eye(M_small.d1)
    # derivations via tracked generator pairs
    basis, pairs, coeffs = Js.derivation_basis()
    gens_big = np.array([Jb.dop(mu[:, i], mu[:, j]) for i, j in pairs])
    lifted = np.einsum('ki,iab->kab', coeffs, gens_big)
    cf, resid = project_coeffs(lifted, M_big.derJ)
    assert resid < 1e-8, "transported derivation left der h3(K'')"
    out[M_big.slice_derJ, M_small.slice_derJ] = cf.T
    # traceless block: mu maps the small orthonormal basis isometrically
    sh_img = (mu @ M_small.sh.T).T           # natural coords in the big algebra
    sh_cf = Jb.coords_in(M_big.sh, sh_img)   # (n_sh_small, n_sh_big)
    recon = np.einsum('xk,ka->xa', sh_cf, M_big.sh)
    assert np.allclose(recon, sh_img, atol=1e-10)
    for p in range(M_small.n_im):
        rows = [M_big.t_index(p, y) for y in range(M_big.n_sh)]
        cols = [M_small.t_index(p, x) for x in range(M_small.n_sh)]
        out[np.ix_(rows, cols)] = sh_cf.T
    return out


def embedding_bracket_residual(M_small: MagicSquare, M_big: MagicSquare,
                               emb: np.ndarray) -> float:
    """Max norm of [emb a, emb b] - emb [a, b] over all basis pairs."""
    Cs, Cb = M_small.C, M_big.C
    big_brackets = np.einsum('ia,jb,ijk->abk', emb, emb, Cb, optimize=True)
    small_mapped = np.einsum('abm,km->abk', Cs, emb, optimize=True)
    return float(np.max(np.abs(big_brackets - small_mapped)))


def centralizer_in_subspace(C: np.ndarray, idx: np.ndarray,
                            targets: np.ndarray, rtol: float = 1e-8):
    """Basis (rows, coords over idx) of {z in span(idx): [z, t] = 0 for all t}.

    targets: (m, n) vectors in full coordinates.
    """
    from .linalg import rank_and_kernel
    ad_t = np.einsum('ijk,tj->tik', C, targets, optimize=True)
    A = ad_t[:, idx, :].reshape(len(targets), len(idx), -1)
    A = np.transpose(A, (0, 2, 1)).reshape(-1, len(idx))
    _, ker = rank_and_kernel(A, rtol=rtol)
    return ker
