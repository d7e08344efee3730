"""Jordan algebras of hermitian 3x3 matrices over R, C, H, O.

h3(K) carries the Jordan product X o Y = (XY + YX)/2, the trace form
<X, Y> = tr(X o Y), and a cubic norm ("determinant") N with

    N(X) = tr(X^3)/3 - tr(X^2) tr(X) / 2 + tr(X)^3 / 6,

normalized so every element satisfies its characteristic cubic
X^3 - T X^2 + S X - N 1 = 0 with T = tr X, S = (T^2 - tr X^2)/2.

Three products derived from these data drive everything downstream:

  X o Y                 the Jordan product,
  X x Y = X o Y - <X,Y> 1/3     (restricts to traceless -> traceless),
  X * Y  defined by  <X * Y, Z> = 3 N(X, Y, Z)  (polarized determinant),

with sharp(X) = X * X the adjugate: sharp(sharp(X)) = N(X) X.

Elements live either as coefficient vectors over the natural basis
(three diagonal units, then one unit per off-diagonal slot and algebra
unit) or as (3, 3, dim K) arrays; the structure tensors for o, x, *, N
and the trace form are precomputed densely.

Derivations are spanned by D_{X,Y} = [L_X, L_Y]; the span has dimension
3, 8, 21, 52 and the generating pairs are tracked so derivations can be
transported along inclusions h3(K) -> h3(K').
"""

from __future__ import annotations

import numpy as np

from .division import DivisionAlgebra
from .linalg import orthonormalize_span, polarized_tensor

_PAIRS = ((0, 1), (0, 2), (1, 2))


class JordanAlgebra:
    """h3(K) with dense structure tensors over the natural basis."""

    def __init__(self, K: DivisionAlgebra):
        self.K = K
        self.kappa = K.dim
        self.dim = 3 + 3 * K.dim
        self.sdim = self.dim - 1
        self._build_tensors()
        self._der_cache = None

    # -- basis and element conversion ----------------------------------

    def basis_element(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim)
        v[i] = 1.0
        return v

    def to_matrix(self, vec) -> np.ndarray:
        """Coefficient vector -> (3, 3, kappa) hermitian matrix."""
        vec = np.asarray(vec, dtype=float)
        k = self.kappa
        X = np.zeros(vec.shape[:-1] + (3, 3, k))
        for r in range(3):
            X[..., r, r, 0] = vec[..., r]
        for p, (r, c) in enumerate(_PAIRS):
            coeff = vec[..., 3 + p * k: 3 + (p + 1) * k]
            X[..., r, c, :] = coeff
            X[..., c, r, :] = coeff * self.K.conj_sign
        return X

    def from_matrix(self, X) -> np.ndarray:
        """(3, 3, kappa) hermitian matrix -> coefficient vector."""
        X = np.asarray(X, dtype=float)
        k = self.kappa
        vec = np.zeros(X.shape[:-3] + (self.dim,))
        for r in range(3):
            vec[..., r] = X[..., r, r, 0]
        for p, (r, c) in enumerate(_PAIRS):
            vec[..., 3 + p * k: 3 + (p + 1) * k] = X[..., r, c, :]
        return vec

    def matmul(self, X, Y) -> np.ndarray:
        """Ordinary (nonassociative) matrix product of (3,3,kappa) arrays."""
        return np.einsum('...rsa,...scb,abk->...rck', X, Y, self.K.mul)

    def trace(self, X):
        """Real part of the matrix trace (the trace, for hermitian X)."""
        return X[..., 0, 0, 0] + X[..., 1, 1, 0] + X[..., 2, 2, 0]

    @property
    def identity(self) -> np.ndarray:
        v = np.zeros(self.dim)
        v[0] = v[1] = v[2] = 1.0
        return v

    # -- structure tensors ----------------------------------------------

    def _build_tensors(self):
        n = self.dim
        E = np.array([self.to_matrix(self.basis_element(i)) for i in range(n)])
        # Jordan product structure: e_i o e_j = jordan[i, j, :] (vector coords)
        prod = 0.5 * (np.einsum('irsa,jscb,abk->ijrck', E, E, self.K.mul)
                      + np.einsum('jrsa,iscb,abk->ijrck', E, E, self.K.mul))
        self.jordan = self.from_matrix(prod)
        self.trace_vec = np.array([self.trace(Ei) for Ei in E])
        # trace form <e_i, e_j> = tr(e_i o e_j): diag(1,1,1,2,...,2)
        self.gram = np.einsum('ijk,k->ij', self.jordan, self.trace_vec)
        self.gram_inv = np.linalg.inv(self.gram)
        # cubic norm N as a symmetric trilinear tensor, by polarization of
        # N(X) = tr(X^3)/3 - tr(X^2) tr(X)/2 + tr(X)^3/6
        self.norm3 = polarized_tensor(self._det_batch, n, 3)
        # analytic cross-check of the same trilinear, from repeated
        # polarization of the trace formulas:
        # N(X,Y,Z) = <X o Y, Z>/3
        #   - (<X,Y> tr Z + <Y,Z> tr X + <Z,X> tr Y)/6 + tr X tr Y tr Z / 6
        t = self.trace_vec
        g = self.gram
        analytic = np.einsum('ijl,kl->ijk', self.jordan, g) / 3.0
        analytic -= (np.einsum('ij,k->ijk', g, t) + np.einsum('jk,i->ijk', g, t)
                     + np.einsum('ki,j->ijk', g, t)) / 6.0
        analytic += np.einsum('i,j,k->ijk', t, t, t) / 6.0
        assert np.allclose(self.norm3, analytic, atol=1e-12), \
            "polarized determinant disagrees with its trace expansion"
        # freudenthal product: <X * Y, Z> = 3 N(X, Y, Z)
        self.bullet = 3.0 * np.einsum('ijl,lk->ijk', self.norm3, self.gram_inv)
        # cross product on traceless parts: X x Y = X o Y - <X, Y> 1/3
        self.crossj = self.jordan - np.einsum('ij,k->ijk', self.gram, self.identity) / 3.0

    def _det_batch(self, vecs):
        # traces of Jordan powers: tr X^2 = <x, x>, tr X^3 = <x, x o x>
        x2 = self.jmul(vecs, vecs)
        t1 = self.tr(vecs)
        t2 = self.inner(vecs, vecs)
        t3 = self.inner(vecs, x2)
        return t3 / 3.0 - t2 * t1 / 2.0 + t1 ** 3 / 6.0

    # -- products on coefficient vectors --------------------------------

    def jmul(self, x, y):
        return np.einsum('...i,...j,ijk->...k', x, y, self.jordan)

    def inner(self, x, y):
        return np.einsum('...i,...j,ij->...', x, y, self.gram)

    def tr(self, x):
        return np.einsum('...i,i->...', x, self.trace_vec)

    def det(self, x):
        return np.einsum('...i,...j,...k,ijk->...', x, x, x, self.norm3)

    def norm_trilinear(self, x, y, z):
        return np.einsum('...i,...j,...k,ijk->...', x, y, z, self.norm3)

    def bmul(self, x, y):
        """Freudenthal product X * Y."""
        return np.einsum('...i,...j,ijk->...k', x, y, self.bullet)

    def sharp(self, x):
        return self.bmul(x, x)

    def cross(self, x, y):
        return np.einsum('...i,...j,ijk->...k', x, y, self.crossj)

    def lmul_matrix(self, x) -> np.ndarray:
        """Matrix of L_x: y -> x o y in natural coordinates."""
        return np.einsum('...i,ijk->...kj', x, self.jordan)

    def bmul_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x * y in natural coordinates."""
        return np.einsum('...i,ijk->...kj', x, self.bullet)

    def dop(self, x, y) -> np.ndarray:
        """Derivation D_{x,y} = [L_x, L_y] as a matrix."""
        Lx = self.lmul_matrix(x)
        Ly = self.lmul_matrix(y)
        return Lx @ Ly - Ly @ Lx

    # -- orthonormal bases ----------------------------------------------

    def onb(self) -> np.ndarray:
        """Orthonormal basis of h3(K) for <,>: rows of a (dim, dim) matrix.

        Diagonal units are already unit vectors; off-diagonal natural basis
        vectors have squared length 2 and get scaled by 1/sqrt(2).
        """
        scale = 1.0 / np.sqrt(np.diag(self.gram))
        return np.diag(scale)

    def sh_onb(self) -> np.ndarray:
        """Orthonormal basis of the traceless part, rows (sdim, dim).

        The diagonal directions are (E1 - E2)/sqrt(2) and
        (E1 + E2 - 2 E3)/sqrt(6); off-diagonal as in onb().
        """
        n, k = self.dim, self.kappa
        rows = np.zeros((self.sdim, n))
        rows[0, 0], rows[0, 1] = 1.0, -1.0
        rows[0] /= np.sqrt(2.0)
        rows[1, 0] = rows[1, 1] = 1.0
        rows[1, 2] = -2.0
        rows[1] /= np.sqrt(6.0)
        for j in range(3, n):
            rows[j - 1, j] = 1.0 / np.sqrt(2.0)
        return rows

    def coords_in(self, onb_rows: np.ndarray, x) -> np.ndarray:
        """Coordinates of natural-coefficient vectors in an orthonormal basis."""
        return np.einsum('ka,ab,...b->...k', onb_rows, self.gram, x)

    def op_in(self, onb_rows: np.ndarray, M: np.ndarray) -> np.ndarray:
        """Conjugate an operator (natural coords) into an orthonormal basis.

        Only valid when M preserves the span of onb_rows.
        """
        P = onb_rows @ self.gram          # coords map
        return P @ M @ onb_rows.T

    # -- derivations -----------------------------------------------------

    def derivation_basis(self):
        """Orthonormal basis of der h3(K) = span D_{e_i, e_j}, with bookkeeping.

        Returns (basis, pairs, coeffs) with basis[k] = sum_i coeffs[k, i] *
        dop(e_{pairs[i][0]}, e_{pairs[i][1]}).  dim = 3, 8, 21, 52.
        """
        if self._der_cache is None:
            n = self.dim
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            gens = np.array([self.dop(self.basis_element(i), self.basis_element(j))
                             for i, j in pairs])
            basis, coeffs = orthonormalize_span(gens)
            self._der_cache = (basis, pairs, coeffs)
        return self._der_cache
