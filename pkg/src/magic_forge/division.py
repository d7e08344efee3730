"""The four normed division algebras R, C, H, O by doubling.

Each algebra is generated from the previous one on pairs (a, b) with

    (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c)),
    conj((a, b)) = (conj(a), -b),

so the basis is 1, i, j, k, l, li, lj, lk in the octonion case, with the
first half spanning the previous algebra and the second half its translate
by the new unit.  Elements are plain float vectors of length dim.

The derivation machinery is built from the canonical maps

    D_{p,q}(r) = [[p, q], r] - 3 [p, q, r]

([.,.] the commutator, [.,.,.] the associator), whose span is the full
derivation algebra (dimensions 0, 0, 3, 14).  The Z2 grading of the doubled
algebra splits the derivations into a part preserving the two halves and a
part exchanging them; both are exposed with the generating (p, q) pairs
tracked, so a derivation chosen here can be transported to larger algebras.
"""

from __future__ import annotations

import numpy as np

from .linalg import orthonormalize_span, rank_and_kernel


def _double(mul: np.ndarray, conj_sign: np.ndarray):
    """Structure tensor and conjugation signs of the doubled algebra."""
    k = mul.shape[0]
    m2 = np.zeros((2 * k, 2 * k, 2 * k))
    # (a,0)(c,0) = (ac, 0)
    m2[:k, :k, :k] = mul
    # (a,0)(0,d) = (0, d a)
    for a in range(k):
        for d in range(k):
            m2[a, k + d, k:] = mul[d, a]
    # (0,b)(c,0) = (0, b conj(c))
    for b in range(k):
        for c in range(k):
            m2[k + b, c, k:] = conj_sign[c] * mul[b, c]
    # (0,b)(0,d) = (-conj(d) b, 0)
    for b in range(k):
        for d in range(k):
            m2[k + b, k + d, :k] = -conj_sign[d] * mul[d, b]
    return m2, np.concatenate([conj_sign, -np.ones(k)])


class DivisionAlgebra:
    """One of R, C, H, O with its multiplication table and derivations."""

    def __init__(self, dim: int):
        assert dim in (1, 2, 4, 8)
        mul = np.ones((1, 1, 1))
        conj_sign = np.ones(1)
        while mul.shape[0] < dim:
            mul, conj_sign = _double(mul, conj_sign)
        self.dim = dim
        self.mul = mul
        self.conj_sign = conj_sign
        self._der_cache = {}

    # -- arithmetic -----------------------------------------------------

    def multiply(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.einsum('...a,...b,abc->...c', x, y, self.mul)

    def conj(self, x):
        return np.asarray(x) * self.conj_sign

    def re(self, x):
        return np.asarray(x)[..., 0]

    def im(self, x):
        out = np.array(x, dtype=float)
        out[..., 0] = 0.0
        return out

    def inner(self, x, y):
        """<x, y> = Re(conj(x) y); equals the euclidean dot product."""
        return np.einsum('...a,...a->...', np.asarray(x, float), np.asarray(y, float))

    def norm(self, x):
        return np.sqrt(self.inner(x, x))

    def commutator(self, x, y):
        return self.multiply(x, y) - self.multiply(y, x)

    def cross(self, x, y):
        """x cross y = [x, y] / 2."""
        return 0.5 * self.commutator(x, y)

    def associator(self, x, y, z):
        return self.multiply(self.multiply(x, y), z) - self.multiply(x, self.multiply(y, z))

    def unit(self, a: int):
        e = np.zeros(self.dim)
        e[a] = 1.0
        return e

    def left_mult_matrix(self, x):
        return np.einsum('a,abc->cb', np.asarray(x, float), self.mul)

    # -- derivations ----------------------------------------------------

    def dmap(self, p, q) -> np.ndarray:
        """Matrix of r -> [[p,q], r] - 3 [p, q, r]."""
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        out = np.zeros((self.dim, self.dim))
        comm = self.commutator(p, q)
        for a in range(self.dim):
            r = self.unit(a)
            out[:, a] = self.commutator(comm, r) - 3.0 * self.associator(p, q, r)
        return out

    def derivation_basis(self):
        """Orthonormal basis of all derivations, from D_{e_a, e_b} pairs.

        Returns (basis, pairs, coeffs): basis[k] = sum_i coeffs[k, i] *
        dmap(*pairs[i]).  Dimensions are 0, 0, 3, 14.
        """
        key = 'full'
        if key not in self._der_cache:
            pairs = [(a, b) for a in range(1, self.dim) for b in range(a + 1, self.dim)]
            gens = np.array([self.dmap(self.unit(a), self.unit(b)) for a, b in pairs]) \
                if pairs else np.zeros((0, self.dim, self.dim))
            basis, coeffs = orthonormalize_span(gens) if len(pairs) else (gens, np.zeros((0, 0)))
            self._der_cache[key] = (basis, pairs, coeffs)
        return self._der_cache[key]

    def graded_derivation_bases(self):
        """Derivations split by the doubling grading.

        Even derivations preserve both halves of the doubled algebra; odd ones
        exchange them.  Even generators are D_{p,q} with p, q in the same
        half, odd generators take one argument from each half.  Returns a dict
        {0: (basis, pairs, coeffs), 1: (...)}.
        """
        key = 'graded'
        if key not in self._der_cache:
            h = self.dim // 2
            half0 = list(range(1, h))          # imaginary part of the even half
            half1 = list(range(h, self.dim))   # odd half
            even_pairs = [(a, b) for a in half0 for b in half0 if a < b]
            even_pairs += [(a, b) for a in half1 for b in half1 if a < b]
            odd_pairs = [(a, b) for a in half0 for b in half1]
            out = {}
            for parity, prs in ((0, even_pairs), (1, odd_pairs)):
                if prs:
                    gens = np.array([self.dmap(self.unit(a), self.unit(b)) for a, b in prs])
                    basis, coeffs = orthonormalize_span(gens)
                else:
                    basis = np.zeros((0, self.dim, self.dim))
                    coeffs = np.zeros((0, 0))
                out[parity] = (basis, prs, coeffs)
            self._der_cache[key] = out
        return self._der_cache[key]

    def derivation_kernel_dim(self) -> int:
        """Dimension of the full derivation algebra via the Leibniz equations.

        Independent of the dmap construction: solves D(e_a e_b) =
        D(e_a) e_b + e_a D(e_b) as a linear system on gl(dim).
        """
        n = self.dim
        rows = []
        for a in range(n):
            for b in range(n):
                # row block for the constraint at (e_a, e_b), one row per output coord
                block = np.zeros((n, n, n))
                # D(e_a e_b): mul[a,b,c] D[:, c]
                for c in range(n):
                    block[:, :, c] += self.mul[a, b, c] * np.eye(n)
                # - D(e_a) e_b: D[d, a] (e_d e_b) = D[d, a] mul[d,b,:]
                for d in range(n):
                    block[:, d, a] -= self.mul[d, b]
                # - e_a D(e_b)
                for d in range(n):
                    block[:, d, b] -= self.mul[a, d]
                rows.append(block.reshape(n, n * n))
        A = np.concatenate(rows, axis=0)
        rank, _ = rank_and_kernel(A)
        return n * n - rank


R = DivisionAlgebra(1)
C = DivisionAlgebra(2)
H = DivisionAlgebra(4)
O = DivisionAlgebra(8)

BY_NAME = {'R': R, 'C': C, 'H': H, 'O': O}
BY_DIM = {1: R, 2: C, 4: H, 8: O}
