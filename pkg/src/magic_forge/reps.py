"""Compact isotropy algebras acting on their defining representation spaces.

Three families, one per magic-square column past the first:

  * family 1: der h3(K) acting on the traceless subspace sh3(K);
  * family 2: the antihermitian part of C (x) str0(h3 K) acting on
    C (x) h3(K), i.e. der h3(K) + i L_sh;
  * family 3: the antihermitian part of C (x) der F(h3 K) acting on
    C (x) F(h3 K), i.e. H0(der + i h3) + H1(h3 + i h3).

Complex spaces are modelled over R with coordinates stacked [Re | Im] in the
orthonormal bases of the underlying real spaces, so the hermitian metric is
the identity and multiplication by i is theta = [[0, -1], [1, 0]].  A
complex-linear operator A + iB becomes [[A, -B], [B, A]]; the antihermitian
condition of the compact form is then plain antisymmetry.

The algebra dimensions come out 8, 16, 35, 78 in the second family (su(3),
su(3)+su(3), su(6), e6) and 21, 35, 66, 133 in the third (sp(3), su(6),
so(12), e7).  Appending the centralizing complex structure theta in family
two, or the quaternionic triple I, J, K in family three, reproduces the
even parts 9, 17, 36, 79 and 24, 38, 69, 136 of the corresponding
symmetric pairs.
"""

from __future__ import annotations

import numpy as np

from .fts import freudenthal_triple
from .linalg import orthonormalize_span
from .magic_square import jordan_algebra


def complex_double(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Real (2n, 2n) form of the complex-linear operator A + iB."""
    return np.block([[A, -B], [B, A]])


def complex_structure(n: int) -> np.ndarray:
    z = np.zeros((n, n))
    eye = np.eye(n)
    return np.block([[z, -eye], [eye, z]])


class Family1:
    """der h3(K) on sh3(K), the real orthogonal family."""

    def __init__(self, kappa: int):
        self.kappa = kappa
        self.J = jordan_algebra(kappa)
        self.sh = self.J.sh_onb()
        self.dim = self.J.sdim
        self.ops = np.array([self.J.op_in(self.sh, D)
                             for D in self.J.derivation_basis()[0]])

    def algebra_basis(self) -> np.ndarray:
        basis, _ = orthonormalize_span(self.ops)
        return basis


class Family2:
    """Antihermitian part of C (x) str0(h3 K) on C (x) h3(K)."""

    def __init__(self, kappa: int):
        self.kappa = kappa
        self.J = jordan_algebra(kappa)
        J = self.J
        self.half = J.dim
        self.dim = 2 * J.dim
        self.onb = J.onb()
        self.theta = complex_structure(self.half)
        zero = np.zeros((self.half, self.half))
        ops = [complex_double(J.op_in(self.onb, D), zero)
               for D in J.derivation_basis()[0]]
        # i L_X for traceless X: L_X is symmetric, i L_X antihermitian
        for row in J.sh_onb():
            L = J.op_in(self.onb, J.lmul_matrix(row))
            ops.append(complex_double(zero, L))
        self.ops = np.array(ops)

    def algebra_basis(self) -> np.ndarray:
        basis, _ = orthonormalize_span(self.ops)
        return basis

    def full_basis(self) -> np.ndarray:
        """Algebra plus the centralizing complex structure."""
        stack = np.concatenate([self.ops, self.theta[None] / np.sqrt(self.dim)])
        basis, _ = orthonormalize_span(stack)
        return basis


class Family3:
    """Antihermitian part of C (x) der F(h3 K) on C (x) F(h3 K)."""

    def __init__(self, kappa: int):
        self.kappa = kappa
        self.F = freudenthal_triple(kappa)
        self.half = self.F.dim
        self.dim = 2 * self.half
        self.theta = complex_structure(self.half)
        gens = self.F.derivation_generators()
        zero = np.zeros((self.half, self.half))
        ops = [complex_double(E, zero) for E in gens['der']]
        ops += [complex_double(E, zero) for E in gens['skew']]
        ops += [complex_double(zero, E) for E in gens['scalar']]
        ops += [complex_double(zero, E) for E in gens['sym']]
        self.ops = np.array(ops)
        # quaternionic structure commuting with the algebra: I multiplies
        # by i, J is cut out of the symplectic form, K = I J
        Om = self.F.omega
        self.I = self.theta
        self.Jq = np.block([[Om, zero], [zero, -Om]])
        self.Kq = self.I @ self.Jq
        # real forms of the C-linear extension of the symplectic form
        self.omega_re = np.block([[Om, zero], [zero, -Om]])
        self.omega_im = np.block([[zero, Om], [Om, zero]])

    def algebra_basis(self) -> np.ndarray:
        basis, _ = orthonormalize_span(self.ops)
        return basis

    def full_basis(self) -> np.ndarray:
        """Algebra plus the centralizing sp(1)."""
        extra = np.array([self.I, self.Jq, self.Kq]) / np.sqrt(self.dim)
        basis, _ = orthonormalize_span(np.concatenate([self.ops, extra]))
        return basis


ALGEBRA_DIMS = {
    1: {1: 3, 2: 8, 4: 21, 8: 52},
    2: {1: 8, 2: 16, 4: 35, 8: 78},
    3: {1: 21, 2: 35, 4: 66, 8: 133},
}

FULL_DIMS = {
    2: {1: 9, 2: 17, 4: 36, 8: 79},
    3: {1: 24, 2: 38, 4: 69, 8: 136},
}


def family(n: int, kappa: int):
    return {1: Family1, 2: Family2, 3: Family3}[n](kappa)
