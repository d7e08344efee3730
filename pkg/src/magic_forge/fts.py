"""Freudenthal triple systems built on the Jordan algebras h3(K).

The underlying space is F = (R + h3(K)) (x) R^2, dimension 6 dim(K) + 8,
carrying a symplectic form, a scalar product and a quartic form

    Q(F) = <X#, Xt#> - x det X - xt det Xt - (<X, Xt> - x xt)^2 / 4

for F written as (x, X) in the first R^2 slot and (xt, Xt) in the second.
The symmetric triple product tau is cut out of the quartic by

    omega(F', tau(F, F, F)) = Q(F', F, F, F),

and the derivation algebra (infinitesimal stabilizer of omega and tau, or
equivalently of Q alone) consists of the operators

    H0(D, C) = diag(-tr C, L_C + D | tr C, -L_C + D)
    H1(A, B) = [[0, M_B - M_A], [M_A + M_B, 0]],
    M_A = [[0, <A, .>], [A, -2 L*_A]],  M_B = [[0, <B, .>], [B, 2 L*_B]],

with D a Jordan derivation, C, A, B in h3(K), L the Jordan multiplication
and L* the Freudenthal-product multiplication.  Their spans realize the
noncompact forms sp(6, R), su(3,3), so*(12), e7(-25) of dimensions
21, 35, 66, 133; the H0(D,0) / H1(A,0) generators are the antisymmetric
(maximal compact) part, H0(0,C) / H1(0,B) the symmetric complement.

Everything is represented over a flat orthonormal basis
[scalar, h3-onb | scalar, h3-onb] in which the scalar product is the
identity and the symplectic form is [[0, I], [-I, 0]].
"""

from __future__ import annotations

import numpy as np

from .division import BY_DIM
from .jordan import JordanAlgebra
from .linalg import orthonormalize_span, symmetrize


class FreudenthalTriple:
    """F(h3 K) with quartic form, triple product and derivations."""

    def __init__(self, J: JordanAlgebra):
        self.J = J
        self.kappa = J.kappa
        self.m = 1 + J.dim          # R + h3(K), one R^2 slot
        self.dim = 2 * self.m
        self.onb = J.onb()
        eye = np.eye(self.m)
        self.omega = np.block([[0.0 * eye, eye], [-eye, 0.0 * eye]])
        # <J0 F, F'> = omega(F, F'), squares to -1
        self.J0 = -self.omega
        self._q4 = None

    # -- coordinates -----------------------------------------------------

    def assemble(self, x, X, xt, Xt) -> np.ndarray:
        """Flat vector from scalars x, xt and natural Jordan vectors X, Xt."""
        J = self.J
        out = np.zeros(self.dim)
        out[0] = x
        out[1:self.m] = J.coords_in(self.onb, X)
        out[self.m] = xt
        out[self.m + 1:] = J.coords_in(self.onb, Xt)
        return out

    def split(self, F):
        """Inverse of assemble, batched: (x, X, xt, Xt) with natural X, Xt."""
        F = np.asarray(F)
        x = F[..., 0]
        X = F[..., 1:self.m] @ self.onb
        xt = F[..., self.m]
        Xt = F[..., self.m + 1:] @ self.onb
        return x, X, xt, Xt

    # -- quartic and triple product --------------------------------------

    def quartic(self, F):
        """Q(F) for a batch of flat vectors."""
        J = self.J
        x, X, xt, Xt = self.split(F)
        pairing = J.inner(X, Xt) - x * xt
        return (J.inner(J.sharp(X), J.sharp(Xt))
                - x * J.det(X) - xt * J.det(Xt)
                - 0.25 * pairing ** 2)

    def quartic_tensor(self) -> np.ndarray:
        """Dense symmetric 4-tensor with Q4(F,F,F,F) = quartic(F).

        Assembled blockwise from the natural tensors of each term (bullet,
        cubic norm, pairing) and then symmetrized; a polarization round trip
        on random vectors is asserted at construction.
        """
        if self._q4 is None:
            J, m, n = self.J, self.m, self.dim
            P = self.onb
            n3 = np.einsum('ijk,ai,bj,ck->abc', J.norm3, P, P, P,
                           optimize=True)
            g4 = np.einsum('ijp,pq,klq,ai,bj,ck,dl->abcd',
                           J.bullet, J.gram, J.bullet, P, P, P, P,
                           optimize=True)
            eye = np.eye(J.dim)
            U = np.zeros((n, n, n, n))
            U[1:m, 1:m, m + 1:, m + 1:] = g4                   # <X#, Xt#>
            U[0, 1:m, 1:m, 1:m] = -n3                          # -x det X
            U[m, m + 1:, m + 1:, m + 1:] = -n3                 # -xt det Xt
            U[1:m, m + 1:, 1:m, m + 1:] = \
                -0.25 * np.einsum('ij,kl->ijkl', eye, eye)     # -<X,Xt>^2/4
            U[0, m, 1:m, m + 1:] = 0.5 * eye                   # +<X,Xt> x xt/2
            U[0, 0, m, m] = -0.25                              # -x^2 xt^2/4
            Q4 = symmetrize(U)
            rng = np.random.default_rng(20)
            v = rng.standard_normal((12, n))
            vals = np.einsum('abcd,na,nb,nc,nd->n', Q4, v, v, v, v,
                             optimize=True)
            assert np.allclose(vals, self.quartic(v), atol=1e-10)
            self._q4 = Q4
        return self._q4

    def quartic_polarized(self, F1, F2, F3, F4):
        return np.einsum('abcd,...a,...b,...c,...d->...',
                         self.quartic_tensor(), F1, F2, F3, F4, optimize=True)

    def triple(self, F1, F2, F3) -> np.ndarray:
        """Symmetric triple product tau(F1, F2, F3)."""
        q = np.einsum('abcd,...b,...c,...d->...a',
                      self.quartic_tensor(), F1, F2, F3, optimize=True)
        return q @ self.omega  # tau = omega^{-1} q = -omega q

    def left_tau_matrix(self, F1, F2) -> np.ndarray:
        """Matrix of Z -> tau(F1, F2, Z), flat coordinates."""
        M = np.einsum('abcd,b,c->ad', self.quartic_tensor(), F1, F2,
                      optimize=True)
        return -self.omega @ M

    # -- derivations -----------------------------------------------------

    def _op_onb(self, Mnat: np.ndarray) -> np.ndarray:
        return self.J.op_in(self.onb, Mnat)

    def h0(self, D: np.ndarray, C) -> np.ndarray:
        """Derivation from a Jordan derivation D and an element C."""
        J, m = self.J, self.m
        C = np.asarray(C, dtype=float)
        trC = J.tr(C)
        LC = J.lmul_matrix(C)
        out = np.zeros((self.dim, self.dim))
        out[0, 0] = -trC
        out[1:m, 1:m] = self._op_onb(LC + D)
        out[m, m] = trC
        out[m + 1:, m + 1:] = self._op_onb(-LC + D)
        return out

    def _h1_block(self, A, sign: float) -> np.ndarray:
        J, m = self.J, self.m
        a = J.coords_in(self.onb, A)
        M = np.zeros((m, m))
        M[0, 1:] = a
        M[1:, 0] = a
        M[1:, 1:] = 2.0 * sign * self._op_onb(J.bmul_matrix(A))
        return M

    def h1(self, A, B) -> np.ndarray:
        """Derivation from a pair of Jordan elements (off-diagonal type)."""
        m = self.m
        MA = self._h1_block(np.asarray(A, dtype=float), -1.0)
        MB = self._h1_block(np.asarray(B, dtype=float), +1.0)
        out = np.zeros((self.dim, self.dim))
        out[:m, m:] = MB - MA
        out[m:, :m] = MA + MB
        return out

    def derivation_generators(self):
        """The four structured families spanning der F(h3 K).

        Returns a dict with antisymmetric generators under 'der' (= H0(D,0))
        and 'skew' (= H1(A,0)), symmetric ones under 'scalar' (= H0(0,C))
        and 'sym' (= H1(0,B)), each a stacked array of operators.
        """
        J = self.J
        derJ = J.derivation_basis()[0]
        units = np.eye(J.dim)
        zero = np.zeros(J.dim)
        return {
            'der': np.array([self.h0(D, zero) for D in derJ]),
            'skew': np.array([self.h1(u, zero) for u in units]),
            'scalar': np.array([self.h0(np.zeros((J.dim, J.dim)), u) for u in units]),
            'sym': np.array([self.h1(zero, u) for u in units]),
        }

    def derivation_basis(self) -> np.ndarray:
        """Orthonormal basis of der F(h3 K), stacked (n, dim, dim)."""
        gens = self.derivation_generators()
        stack = np.concatenate([gens['der'], gens['skew'],
                                gens['scalar'], gens['sym']])
        basis, _ = orthonormalize_span(stack)
        return basis


_cache: dict = {}


def freudenthal_triple(kappa: int) -> FreudenthalTriple:
    if kappa not in _cache:
        from .magic_square import jordan_algebra
        _cache[kappa] = FreudenthalTriple(jordan_algebra(kappa))
    return _cache[kappa]
