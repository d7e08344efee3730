"""Shared dense linear algebra helpers.

Everything in this package works with explicit numpy arrays over small
orthonormal bases, so the same handful of constructions appear everywhere:
symmetrization of tensors, SVD-based rank/kernel decisions, orthonormal
spanning sets that remember how they were built from generators, eigenvalue
clustering for spectra that are exact rationals in disguise, and principal
angles between subspaces.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

# Default numerical thresholds.  Individual callers override where a check
# has a stated tolerance of its own.
RANK_RTOL = 1e-8
CLUSTER_TOL = 1e-7


def symmetrize(T: np.ndarray, axes=None) -> np.ndarray:
    """Average of T over all permutations of the given axes (default: all)."""
    if axes is None:
        axes = tuple(range(T.ndim))
    axes = tuple(axes)
    out = np.zeros_like(T)
    base = list(range(T.ndim))
    for perm in itertools.permutations(axes):
        order = base.copy()
        for a, p in zip(axes, perm):
            order[a] = p
        out += np.transpose(T, order)
    return out / math.factorial(len(axes))


def antisymmetrize(T: np.ndarray, axes=None) -> np.ndarray:
    """Signed average of T over all permutations of the given axes."""
    if axes is None:
        axes = tuple(range(T.ndim))
    axes = tuple(axes)
    out = np.zeros_like(T)
    base = list(range(T.ndim))
    for perm in itertools.permutations(axes):
        order = base.copy()
        sign = perm_sign(perm, axes)
        for a, p in zip(axes, perm):
            order[a] = p
        out += sign * np.transpose(T, order)
    return out / math.factorial(len(axes))


def perm_sign(perm, ref) -> int:
    """Sign of the permutation taking tuple ref to tuple perm."""
    perm = list(perm)
    ref = list(ref)
    sign = 1
    for i in range(len(ref)):
        if perm[i] != ref[i]:
            j = perm.index(ref[i])
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def rank_and_kernel(A: np.ndarray, rtol: float = RANK_RTOL):
    """Numerical rank and orthonormal kernel basis (rows) of a 2d array.

    The rank threshold is relative to the largest singular value; an all-zero
    matrix has rank 0 and full kernel.
    """
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0, np.eye(A.shape[1])
    # full right singular basis is needed for the kernel, but the left one is
    # not: keep the SVD thin when the matrix is tall (constraint stacks can
    # have ~1e5 rows and a square U would not fit in memory)
    u, s, vh = np.linalg.svd(A, full_matrices=A.shape[0] < A.shape[1])
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * max(smax, 1e-300)))
    if smax == 0.0:
        rank = 0
    kernel = vh[rank:]
    return rank, kernel


def orthonormalize_span(generators: np.ndarray, rtol: float = RANK_RTOL):
    """Orthonormal basis of the row span, with expansion coefficients.

    generators: (m, ...) array of m (possibly dependent) spanning tensors.
    Returns (basis, coeffs) with basis of shape (r, ...) orthonormal under the
    flat euclidean inner product and basis[k] == sum_i coeffs[k, i] * generators[i]
    up to rounding.  The coefficient tracking is what lets a derivation picked
    from this basis be transported to any other module on which the original
    generators act.
    """
    gens = np.asarray(generators, dtype=float)
    m = gens.shape[0]
    flat = gens.reshape(m, -1)
    u, s, vh = np.linalg.svd(flat, full_matrices=False)
    smax = s[0] if s.size else 0.0
    r = int(np.sum(s > rtol * max(smax, 1e-300)))
    basis = vh[:r].reshape((r,) + gens.shape[1:])
    coeffs = (u[:, :r] / s[:r]).T  # (r, m); rows satisfy basis = coeffs @ flat
    return basis, coeffs


def project_coeffs(vecs: np.ndarray, basis: np.ndarray):
    """Coefficients and residual of vecs against an orthonormal basis.

    vecs: (..., *shape); basis: (r, *shape) orthonormal rows.  Returns
    (coeffs, residual) where coeffs has shape (..., r) and residual is the
    largest euclidean norm of vecs - coeffs @ basis.
    """
    shape = basis.shape[1:]
    B = basis.reshape(basis.shape[0], -1)
    V = np.asarray(vecs).reshape(-1, int(np.prod(shape)))
    coeffs = V @ B.T
    resid = V - coeffs @ B
    residual = 0.0 if V.size == 0 else float(np.max(np.linalg.norm(resid, axis=1)))
    return coeffs.reshape(np.asarray(vecs).shape[: np.asarray(vecs).ndim - len(shape)] + (basis.shape[0],)), residual


def eigensystem_symmetric(M: np.ndarray, cluster_tol: float = CLUSTER_TOL):
    """Eigen-decomposition of a symmetric matrix with eigenvalue clustering.

    Returns a list of (value, multiplicity, vectors) triples, ordered by
    ascending eigenvalue; vectors has shape (n, multiplicity) with orthonormal
    columns.  Consecutive eigenvalues are merged when they differ by at most
    cluster_tol * max(1, |value|).
    """
    M = np.asarray(M, dtype=float)
    asym = np.max(np.abs(M - M.T)) if M.size else 0.0
    assert asym <= 1e-8 * max(1.0, np.max(np.abs(M))), f"matrix not symmetric: {asym}"
    w, v = np.linalg.eigh(0.5 * (M + M.T))
    clusters = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or abs(w[i] - w[i - 1]) > cluster_tol * max(1.0, abs(w[i])):
            vals = w[start:i]
            clusters.append((float(np.mean(vals)), i - start, v[:, start:i]))
            start = i
    return clusters


def principal_angles(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Principal angles (radians) between the row spans of A and B."""
    QA = orthonormalize_span(np.asarray(A).reshape(len(A), -1))[0]
    QB = orthonormalize_span(np.asarray(B).reshape(len(B), -1))[0]
    s = np.linalg.svd(QA @ QB.T, compute_uv=False)
    s = np.clip(s, -1.0, 1.0)
    return np.arccos(s)


def subspace_gap(A: np.ndarray, B: np.ndarray) -> float:
    """Largest principal angle between equal-dimensional row spans, radians."""
    ang = principal_angles(A, B)
    return float(np.max(ang)) if ang.size else 0.0


def skew_basis(n: int) -> np.ndarray:
    """Orthonormal basis of antisymmetric n x n matrices, (n(n-1)/2, n, n).

    Basis order is lexicographic in (i, j), i < j, with matrix
    (e_i e_j^T - e_j e_i^T)/sqrt(2); orthonormal for <A, B> = tr(A^T B).
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = np.zeros((len(pairs), n, n))
    for k, (i, j) in enumerate(pairs):
        out[k, i, j] = 1.0 / np.sqrt(2.0)
        out[k, j, i] = -1.0 / np.sqrt(2.0)
    return out


def sym_basis(n: int) -> np.ndarray:
    """Orthonormal basis of symmetric n x n matrices under tr(A^T B)."""
    mats = []
    for i in range(n):
        m = np.zeros((n, n))
        m[i, i] = 1.0
        mats.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n))
            m[i, j] = m[j, i] = 1.0 / np.sqrt(2.0)
            mats.append(m)
    return np.array(mats)


def polarized_tensor(f_batch, dim: int, degree: int, dtype=float) -> np.ndarray:
    """Dense symmetric tensor of a homogeneous polynomial by polarization.

    f_batch: callable taking (B, dim) stacked vectors to (B,) values of a
    homogeneous degree-p polynomial.  Returns T of shape (dim,)*p with
    T[i1..ip] = the full polarization at basis vectors, normalized so that
    T contracted with v x ... x v reproduces f(v).

    Uses the signed inclusion-exclusion identity
        p! T(v1..vp) = sum_{S nonempty} (-1)^(p-|S|) f(sum_S v_i)
    evaluated batchwise on all index multisets, then filled out by symmetry.
    """
    p = degree
    subsets = [s for r in range(1, p + 1) for s in itertools.combinations(range(p), r)]
    signs = [(-1.0) ** (p - len(s)) for s in subsets]
    multis = np.array(list(itertools.combinations_with_replacement(range(dim), p)),
                      dtype=np.intp).reshape(-1, p)
    tvals = np.zeros(len(multis), dtype=dtype)
    # evaluate in chunks: a quartic at dim ~50 has ~5e5 multisets and the
    # evaluation points must not all be materialized at once
    chunk = 50_000
    for start in range(0, len(multis), chunk):
        mi = multis[start:start + chunk]
        rows = np.arange(len(mi))
        acc = np.zeros(len(mi), dtype=dtype)
        for s, sg in zip(subsets, signs):
            pts = np.zeros((len(mi), dim), dtype=dtype)
            for slot in s:
                # one (row, col) pair per row within a slot, so += is safe
                pts[rows, mi[:, slot]] += 1.0
            acc += sg * np.asarray(f_batch(pts), dtype=dtype)
        tvals[start:start + chunk] = acc / math.factorial(p)
    T = np.zeros((dim,) * p, dtype=dtype)
    for perm in itertools.permutations(range(p)):
        T[tuple(multis[:, k] for k in perm)] = tvals
    return T


def random_unit(rng, shape) -> np.ndarray:
    """Gaussian vector of the given shape normalized to unit frobenius norm."""
    v = rng.standard_normal(shape)
    return v / np.linalg.norm(v)
