"""Invariant tensors on the three symmetric-space module families.

Each family of magic-square symmetric pairs carries one distinguished
isotropy-invariant form on the module:

* a symmetric cubic ``Upsilon`` on the traceless Jordan slice (second row),
* a complex cubic ``Lambda`` on the complexified Jordan algebra (third row),
  whose squared modulus gives a real sextic,
* a complex quartic ``q`` on the complexified Freudenthal triple system
  (fourth row), whose quaternionic norm gives a real octic.

For every invariant Y of rank p the interesting operator is the
"squared-contraction" map on 2-forms

    D(E)_ij = E_kl Y_{kj m...} Y_{li m...}        (p - 2 indices summed)

whose spectrum separates the isotropy algebra from its complement and
drives the intrinsic-torsion formulas in :mod:`magic_forge.torsion`.

Real tensors for the complex families live on R^(2N) in the block layout
[Re | Im]; the holomorphic frame matrix ``W = [1 | i*1]`` translates
between real slots and complex components.  All identities are verified
numerically in the test suite; the classes here only build the data.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .fts import freudenthal_triple
from .linalg import (
    eigensystem_symmetric,
    orthonormalize_span,
    project_coeffs,
    rank_and_kernel,
    skew_basis,
    sym_basis,
)
from .magic_square import jordan_algebra
from .reps import family


def holomorphic_frame(n: int) -> np.ndarray:
    """Map real coordinates on R^(2n) = [x | y] to w = x + i y."""
    return np.concatenate([np.eye(n), 1j * np.eye(n)], axis=1)


# ---------------------------------------------------------------------------
# family 1: symmetric cubic on the traceless Jordan slice


class UpsilonInvariant:
    """Symmetric rank-3 invariant of the derivation algebra on sh3(K).

    Normalized so that the 2-index square is the metric,
    Y_imn Y_jmn = delta_ij.
    """

    def __init__(self, kappa: int):
        self.kappa = kappa
        self.jordan = jordan_algebra(kappa)
        self.dim = self.jordan.sdim  # 3*kappa + 2
        self.c1 = math.sqrt(12.0 / (3 * kappa + 4))
        sh = self.jordan.sh_onb()
        # <e_i x e_j, e_k> for the traceless frame; the Freudenthal cross
        # polarizes the determinant with <X x X, X> = 3 det X.
        tri = np.einsum('abc,ia,jb,kc->ijk', self.jordan.norm3, sh, sh, sh,
                        optimize=True)
        self.tensor = 3.0 * self.c1 * tri

    def contraction_operator(self):
        """Matrix of D on the orthonormal basis of 2-forms, plus the basis."""
        B = skew_basis(self.dim)
        T = self.tensor
        K4 = np.einsum('iqm,jpm->ijpq', T, T, optimize=True)
        images = np.einsum('xpq,ijpq->xij', B, K4, optimize=True)
        op = np.einsum('yij,xij->yx', B, images, optimize=True)
        return op, B

    def derivation_coefficients(self):
        """Isotropy algebra as coefficient vectors on the 2-form basis."""
        B = skew_basis(self.dim)
        ops = family(1, self.kappa).algebra_basis()
        return np.einsum('xij,aij->ax', B, ops, optimize=True)


# ---------------------------------------------------------------------------
# family 2: complex cubic and the induced real sextic


class LambdaInvariant:
    """Complex cubic on C (x) h3(K) and the real sextic |Lambda|^2.

    ``tensor`` holds the cubic components in an orthonormal complex frame
    (they are real because the Jordan frame is), normalized so that
    Lambda_amn Lambda_bmn = delta_ab.  The sextic machinery works on the
    realification R^(2n).
    """

    def __init__(self, kappa: int):
        self.kappa = kappa
        self.jordan = jordan_algebra(kappa)
        self.n = self.jordan.dim  # 3*kappa + 3
        self.c2 = math.sqrt(4.0 / (kappa + 2))
        P = self.jordan.onb()
        self.tensor = 3.0 * self.c2 * np.einsum(
            'abc,ia,jb,kc->ijk', self.jordan.norm3, P, P, P, optimize=True)
        self.frame = holomorphic_frame(self.n)

    # -- complex-linear contraction map on u(n) ---------------------------

    def matrix_map(self, b: np.ndarray) -> np.ndarray:
        """b |-> c with c[a, b] = b[m, n] L[m, r, b] L[n, r, a].

        Fixes i*identity, preserves skew-hermiticity and restricts to the
        operator D on u(n).
        """
        T = self.tensor
        return np.einsum('mn,mrb,nra->ab', b, T, T, optimize=True)

    def unitary_basis(self) -> np.ndarray:
        """Orthonormal real basis of u(n): skew-symmetric plus i*symmetric."""
        A = skew_basis(self.n).astype(complex)
        S = 1j * sym_basis(self.n)
        return np.concatenate([A, S], axis=0)

    def unitary_operator(self):
        """Real matrix of the contraction map on u(n), plus the basis."""
        mats = self.unitary_basis()
        T = self.tensor
        images = np.einsum('xmn,mrb,nra->xab', mats, T, T, optimize=True)
        op = np.einsum('yab,xab->yx', mats.conj(), images, optimize=True)
        assert np.max(np.abs(op.imag)) < 1e-12 * max(1.0, np.max(np.abs(op.real)))
        return op.real, mats

    def scalar_direction(self) -> np.ndarray:
        """Coefficients of the complex-structure generator i*1 in u(n)."""
        mats = self.unitary_basis()
        theta = 1j * np.eye(self.n) / math.sqrt(self.n)
        vec = np.einsum('yab,ab->y', mats.conj(), theta)
        assert np.max(np.abs(vec.imag)) < 1e-12
        return vec.real

    def derivation_matrices(self) -> np.ndarray:
        """Isotropy algebra of the cubic as complex n x n matrices."""
        reps = family(2, self.kappa)
        ops = reps.algebra_basis()
        half = self.n
        return ops[:, :half, :half] + 1j * ops[:, half:, :half]

    # -- real sextic -------------------------------------------------------

    def sextic_value(self, Z: np.ndarray) -> np.ndarray:
        """Xi(Z^6) = |Lambda(w, w, w)|^2 / 8 for real vectors Z on R^(2n).

        The 1/8 normalizes the holomorphic frame (w/sqrt(2) is unitary), so
        the rank-6 tensor satisfies the clean contraction Xi.Xi = (N/40) id.
        """
        n = self.n
        w = Z[..., :n] + 1j * Z[..., n:]
        s = np.einsum('ijk,...i,...j,...k->...', self.tensor, w, w, w,
                      optimize=True)
        return 0.125 * (s * s.conj()).real

    def sextic_gradient(self, Z: np.ndarray) -> np.ndarray:
        """Euclidean gradient of the sextic, batched over leading axes."""
        n = self.n
        w = Z[..., :n] + 1j * Z[..., n:]
        s = np.einsum('ijk,...i,...j,...k->...', self.tensor, w, w, w,
                      optimize=True)
        dw = np.einsum('ijk,...i,...j->...k', self.tensor, w, w, optimize=True)
        g = 0.75 * np.einsum('...,...k,km->...m', s.conj(), dw, self.frame)
        return g.real

    @lru_cache(maxsize=None)
    def _pair_tensor(self):
        T = self.tensor
        return np.einsum('pqm,rsm->pqrs', T, T, optimize=True)

    def sextic_gram(self) -> np.ndarray:
        """G[a, d, c, b] = sum over four slots of Xi_adM Xi_cbM.

        Xi is the real rank-6 tensor of the sextic.  The sum over the four
        contracted real slots is carried out per holomorphic type: a real
        contraction pairs a holomorphic slot of the first factor with an
        antiholomorphic slot of the second (factor 2 each), and the typed
        blocks close in terms of Lambda alone.
        """
        n, W = self.n, self.frame
        C1 = self._pair_tensor()
        eye = np.eye(n)
        dd_ab = np.einsum('PS,QR->PQRS', eye, eye)  # delta_ab delta_dc
        dd_ac = np.einsum('PR,QS->PQRS', eye, eye)  # delta_ac delta_db
        blocks = {
            (1, 1, 0, 0): n * C1,
            (0, 0, 1, 1): n * C1,
            (1, 0, 1, 0): dd_ab,
            (0, 1, 0, 1): dd_ab,
            (1, 0, 0, 1): dd_ac,
            (0, 1, 1, 0): dd_ac,
        }
        G = np.zeros((2 * n,) * 4, dtype=complex)
        for (ha, hd, hc, hb), Bk in blocks.items():
            kT = 3 - ha - hd
            wgt = math.comb(4, kT) / 1600.0
            Ea = W if ha else W.conj()
            Ed = W if hd else W.conj()
            Ec = W if hc else W.conj()
            Eb = W if hb else W.conj()
            G = G + wgt * np.einsum('PQRS,Pa,Qd,Rc,Sb->adcb', Bk,
                                    Ea, Ed, Ec, Eb, optimize=True)
        assert np.max(np.abs(G.imag)) < 1e-10 * max(1.0, np.max(np.abs(G.real)))
        return G.real

    def sextic_operator(self):
        """Matrix of D_Xi on the 2-form basis of R^(2n), plus the basis."""
        G = self.sextic_gram()
        B = skew_basis(2 * self.n)
        images = np.einsum('xcd,adcb->xab', B, G, optimize=True)
        op = np.einsum('yab,xab->yx', B, images, optimize=True)
        return op, B

    def dense_sextic(self) -> np.ndarray:
        """Dense real rank-6 tensor (small kappa only: (2n)^6 entries)."""
        n, W = self.n, self.frame
        A = np.einsum('ijk,ip,jq,kr->pqr', self.tensor.astype(complex),
                      W, W, W, optimize=True)
        m = 2 * n
        out = np.zeros((m,) * 6, dtype=complex)
        for S in combinations(range(6), 3):
            rest = [p for p in range(6) if p not in S]
            term = np.einsum('pqr,stu->pqrstu', A, A.conj())
            order = list(S) + rest
            inv = np.argsort(order)
            out += np.transpose(term, axes=tuple(inv))
        out /= 160.0
        assert np.max(np.abs(out.imag)) < 1e-10 * np.max(np.abs(out.real))
        return out.real

    def realified_unitary(self, u: np.ndarray) -> np.ndarray:
        """Embed u = A + iS in u(n) as a normalized 2-form on R^(2n)."""
        A, S = u.real, u.imag
        top = np.concatenate([A, -S], axis=1)
        bot = np.concatenate([S, A], axis=1)
        return np.concatenate([top, bot], axis=0) / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# family 3: complex quartic, its quaternionic norm, and the rank-8 machinery


class QuarticInvariant:
    """Symplectic quartic on the complexified triple system.

    ``q`` is real symmetric in an orthonormal complex frame on C^n with
    n = 6*kappa + 8; ``omega`` is the symplectic form.  The real rank-8
    invariant is Mho(Z) = sum over the quaternion frame {1, I, J, K} of
    squared real quartic values; its slot algebra is handled through the
    balanced-type components.
    """

    def __init__(self, kappa: int):
        self.kappa = kappa
        self.fts = freudenthal_triple(kappa)
        self.n = self.fts.dim  # 6*kappa + 8
        self.c3 = 24.0 / math.sqrt(kappa + 3)
        self.chi = (kappa + 2) / math.sqrt(kappa + 3)
        self.q = self.c3 * self.fts.quartic_tensor()
        self.omega = self.fts.omega
        self.frame = holomorphic_frame(self.n)
        self.reps = family(3, kappa)
        self.lops = np.stack([np.eye(2 * self.n), self.reps.I,
                              self.reps.Jq, self.reps.Kq])

    # -- ladder of quartic contractions -----------------------------------

    def mixed(self) -> np.ndarray:
        """q with the last two indices raised by the symplectic form."""
        return np.einsum('abmn,mc,nd->abcd', self.q, self.omega, self.omega,
                         optimize=True)

    def ladder(self) -> dict:
        """Quartic 4-fold contractions with two free or four free indices.

        All barred factors enter with all four indices raised, which by the
        conjugation identity equals q itself; the contractions therefore
        close on plain q einsums.
        """
        q = self.q
        half = 0.5 * (self.n + 1)
        out = {}
        out['K0'] = np.einsum('aefk,lmnr,bmnr,efkl->ab', q, q, q, q,
                              optimize=True)
        out['K1'] = np.einsum('axef,klmn,bxmn,efkl->ab', q, q, q, q,
                              optimize=True)
        out['K2'] = np.einsum('axye,fklm,bxym,efkl->ab', q, q, q, q,
                              optimize=True)
        out['K3'] = np.einsum('axyz,efkl,bxyz,efkl->ab', q, q, q, q,
                              optimize=True)
        out['H1'] = np.einsum('amnr,bxyz,cmnr,dxyz->abcd', q, q, q, q,
                              optimize=True)
        out['H2'] = np.einsum('abmn,rxyz,cdmn,rxyz->abcd', q, q, q, q,
                              optimize=True)
        out['H3'] = np.einsum('amnr,bxyz,cdmn,rxyz->abcd', q, q, q, q,
                              optimize=True)
        out['H4'] = np.einsum('abmn,fklr,cdmr,fkln->abcd', q, q, q, q,
                              optimize=True)
        out['H5'] = np.einsum('amnr,bxyz,cdzm,nrxy->abcd', q, q, q, q,
                              optimize=True)
        out['H6'] = np.einsum('abmn,efkl,cdef,klmn->abcd', q, q, q, q,
                              optimize=True)
        out['H7'] = np.einsum('amnr,bxyz,czmn,drxy->abcd', q, q, q, q,
                              optimize=True)
        out['half'] = half
        return out

    # -- symmetric-matrix operator ----------------------------------------

    def symmetric_operator(self):
        """Matrix of D_q on symmetric complex matrices, plus the basis.

        D_q(b)_ab = b_mn q^mnrs w_ra w_sb is complex-linear with real
        matrix entries in the real symmetric frame.  The symplectic form
        enters with its second index contracted, which is an overall sign
        relative to the opposite placement; this orientation produces the
        eigenvalues -sqrt(kappa+3) on the isotropy block and 1/sqrt(kappa+3)
        on its complement, tied together by D^2 = 1 - chi D.
        """
        S = sym_basis(self.n)
        om = self.omega
        images = -np.einsum('xmn,mnrs,ra,sb->xab', S, self.q, om, om,
                            optimize=True)
        op = np.einsum('ymn,xmn->yx', S, images, optimize=True)
        return op, S

    def symplectic_symmetric_coeffs(self, S: np.ndarray) -> np.ndarray:
        """Isotropy algebra as symmetric matrices, on the real frame S.

        The isotropy sits inside the symplectic unitary algebra, so
        omega * u is complex symmetric; real and imaginary parts of its
        frame coefficients span the reference subspace.
        """
        half = self.n
        ops = self.reps.algebra_basis()
        mats = ops[:, :half, :half] + 1j * ops[:, half:, :half]
        sym = np.einsum('am,xmb->xab', self.omega, mats)
        coeffs = np.einsum('ymn,xmn->xy', S, sym, optimize=True)
        rows = np.concatenate([coeffs.real, coeffs.imag], axis=0)
        basis, _ = orthonormalize_span(rows)
        return basis

    # -- real octic: diagonal, gradient, multilinear -----------------------

    def _holo(self, Z: np.ndarray) -> np.ndarray:
        n = self.n
        return Z[..., :n] + 1j * Z[..., n:]

    def octic_value(self, Z: np.ndarray) -> np.ndarray:
        """Mho(Z) = (1/8) sum_{ABCD} Re[q(w(L_A Z), ...)]^2, batched.

        The 1/8 matches the balanced-component normalization: the value
        equals the component form evaluated on four copies of w and four
        of its conjugate.
        """
        U = np.einsum('Amn,...n->...Am', self.lops, Z)
        hw = self._holo(U)
        Qc = np.einsum('abcd,...Aa,...Bb,...Cc,...Dd->...ABCD', self.q,
                       hw, hw, hw, hw, optimize=True)
        M = Qc.real
        return 0.125 * np.einsum('...ABCD,...ABCD->...', M, M)

    def octic_gradient(self, Z: np.ndarray) -> np.ndarray:
        """Euclidean gradient of the octic, batched over leading axes."""
        U = np.einsum('Amn,...n->...Am', self.lops, Z)
        hw = self._holo(U)
        Qc = np.einsum('abcd,...Aa,...Bb,...Cc,...Dd->...ABCD', self.q,
                       hw, hw, hw, hw, optimize=True)
        M = Qc.real
        Y = np.einsum('abcd,...Bb,...Cc,...Dd,...ABCD->...Aa', self.q,
                      hw, hw, hw, M, optimize=True)
        WL = np.einsum('am,Amn->Aan', self.frame, self.lops)
        return np.einsum('...Aa,Aan->...n', Y, WL).real

    def quartic_value(self, vs) -> np.ndarray:
        """q contracted with four complex coordinate vectors."""
        return np.einsum('abcd,a,b,c,d->', self.q, *vs, optimize=True)

    def qtilde_multi(self, V: np.ndarray) -> complex:
        """Complex-multilinear extension of the real quartic to 4 vectors."""
        W = self.frame
        hw = np.einsum('an,...n->...a', W, V)
        aw = np.einsum('an,...n->...a', W.conj(), V)
        t1 = np.einsum('abcd,a,b,c,d->', self.q, hw[0], hw[1], hw[2], hw[3],
                       optimize=True)
        t2 = np.einsum('abcd,a,b,c,d->', self.q, aw[0], aw[1], aw[2], aw[3],
                       optimize=True)
        return 0.5 * (t1 + t2)

    def octic_multi(self, V: np.ndarray) -> complex:
        """Full polarization of the octic on 8 (complex) vectors.

        Averages the quaternion-paired quartic over the 70 ways to split
        the argument list in two quadruples, symmetrizing each quadruple.
        """
        W = self.frame
        hw = np.einsum('am,Amn,in->Aia', W, self.lops, V)       # (4, 8, n)
        aw = np.einsum('am,Amn,in->Aia', W.conj(), self.lops, V)
        c1 = 0.5 * (
            np.einsum('abcd,Aia,Bjb,Ckc,Dld->AiBjCkDl', self.q,
                      hw, hw, hw, hw, optimize=True)
            + np.einsum('abcd,Aia,Bjb,Ckc,Dld->AiBjCkDl', self.q,
                        aw, aw, aw, aw, optimize=True))
        total = 0.0
        for T in combinations(range(8), 4):
            Tc = tuple(p for p in range(8) if p not in T)
            PT = np.zeros((4,) * 4, dtype=complex)
            PTc = np.zeros((4,) * 4, dtype=complex)
            for pi in permutations(range(4)):
                i, j, k, l = (T[pi[0]], T[pi[1]], T[pi[2]], T[pi[3]])
                PT += c1[:, i, :, j, :, k, :, l]
                i, j, k, l = (Tc[pi[0]], Tc[pi[1]], Tc[pi[2]], Tc[pi[3]])
                PTc += c1[:, i, :, j, :, k, :, l]
            PT /= 24.0
            PTc /= 24.0
            total += np.einsum('ABCD,ABCD->', PT, PTc)
        return total / 560.0

    # -- balanced-type components of the octic -----------------------------

    def _rotated_q(self, k: int) -> np.ndarray:
        """q with the first k slots rotated by the symplectic form."""
        out = self.q
        for s in range(k):
            out = np.einsum('m...,me->e...',
                            np.moveaxis(out, s, 0), self.omega)
            out = np.moveaxis(out, 0, s)
        return out

    def octic_component(self, xi: np.ndarray, eta: np.ndarray) -> complex:
        """Balanced component tensor against 4 + 4 coordinate vectors.

        q-side slots receive either direct holomorphic vectors or
        omega-rotated antiholomorphic ones; the conjugate factor mirrors
        this.  Evaluated on (w, ..., w; conj w, ..., conj w) it reproduces
        the octic diagonal.
        """
        om = self.omega
        rxi = np.einsum('me,ie->im', om, xi)
        reta = np.einsum('me,ie->im', om, eta)
        total = 0.0
        for t in range(5):
            w = 1.0 / math.comb(4, t)
            for A in combinations(range(4), t):
                notA = [i for i in range(4) if i not in A]
                for B in combinations(range(4), t):
                    notB = [j for j in range(4) if j not in B]
                    v1 = [xi[i] for i in notA] + [reta[j] for j in B]
                    v2 = [eta[j] for j in notB] + [rxi[i] for i in A]
                    total += w * self.quartic_value(v1) * self.quartic_value(v2)
        return total

    @lru_cache(maxsize=None)
    def _component_tables(self):
        """Slot codes of the balanced component double sum.

        Codes 0..3 are holomorphic argument positions, 4..7 rotated
        antiholomorphic ones.  Each entry lists the codes sitting on the
        quartic node and on the conjugate node, with the subset weight.
        """
        entries = []
        for t in range(5):
            w = 1.0 / math.comb(4, t)
            for A in combinations(range(4), t):
                notA = [i for i in range(4) if i not in A]
                for B in combinations(range(4), t):
                    notB = [j for j in range(4) if j not in B]
                    slots1 = notA + [4 + j for j in B]
                    slots2 = notB + [4 + i for i in A]
                    entries.append((w, tuple(slots1), tuple(slots2)))
        return entries

    @lru_cache(maxsize=None)
    def _component_index_arrays(self):
        entries = self._component_tables()
        w = np.array([e[0] for e in entries])
        s1 = np.array([e[1] for e in entries])
        s2 = np.array([e[2] for e in entries])
        return w, s1, s2

    def octic_multi_components(self, V: np.ndarray) -> complex:
        """Octic polarization through the balanced component formula."""
        W = self.frame
        om = self.omega
        hw = np.einsum('an,in->ia', W, V)           # (8, n)
        aw = np.einsum('an,in->ia', W.conj(), V)
        pool1 = np.concatenate([hw, np.einsum('me,ie->im', om, aw)])
        pool2 = np.concatenate([aw, np.einsum('me,ie->im', om, hw)])
        Q1 = np.einsum('abcd,Pa,Qb,Rc,Sd->PQRS', self.q, pool1, pool1,
                       pool1, pool1, optimize=True).reshape(-1)
        Q2 = np.einsum('abcd,Pa,Qb,Rc,Sd->PQRS', self.q, pool2, pool2,
                       pool2, pool2, optimize=True).reshape(-1)
        wvec, s1, s2 = self._component_index_arrays()
        total = 0.0
        for S in combinations(range(8), 4):
            Sc = np.array([p for p in range(8) if p not in S])
            map1 = np.concatenate([np.array(S), 8 + Sc])
            map2 = np.concatenate([Sc, 8 + np.array(S)])
            idx1 = np.ravel_multi_index(map1[s1].T, (16,) * 4)
            idx2 = np.ravel_multi_index(map2[s2].T, (16,) * 4)
            total += np.sum(wvec * Q1[idx1] * Q2[idx2])
        return total / 70.0

    # -- octic gram and its 2-form operator --------------------------------

    def _graph_value(self, key, qrot):
        """Contract four (rotated) quartic nodes along a labelled graph."""
        node_slots = {0: [], 1: [], 2: [], 3: []}
        free_at = {}
        edges = []
        freelist, edgelist = key
        for label, node, rot in freelist:
            free_at[label] = (node, rot)
        for (n1, r1, n2, r2) in edgelist:
            edges.append((n1, r1, n2, r2))
        letters = iter('mnopqrstuv')
        out_letters = {}
        for label, (node, rot) in free_at.items():
            lt = {'a': 'a', 'd': 'd', 'c': 'c', 'b': 'b'}[label]
            node_slots[node].append((rot, lt))
            out_letters[label] = lt
        for (n1, r1, n2, r2) in edges:
            lt = next(letters)
            node_slots[n1].append((r1, lt))
            node_slots[n2].append((r2, lt))
        subs = []
        ops = []
        for node in range(4):
            slots = sorted(node_slots[node], key=lambda sl: -sl[0])
            k = sum(1 for rot, _ in slots if rot)
            subs.append(''.join(lt for _, lt in slots))
            ops.append(qrot[k])
        expr = ','.join(subs) + '->adcb'
        return np.einsum(expr, *ops, optimize=True)

    @lru_cache(maxsize=None)
    def octic_gram(self) -> np.ndarray:
        """G2[a, d, c, b]: the octic squared over six real slots.

        Assembled from balanced components: the six real contractions pair
        holomorphic slots of one factor with antiholomorphic slots of the
        other (factor 2 each, C(6, kT) equal position choices), and each
        component splits into rotated-slot graphs on four quartic nodes.
        """
        n = self.n
        qrot = [self._rotated_q(k) for k in range(5)]
        entries = self._component_tables()
        patterns = [(1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0),
                    (0, 1, 0, 1), (1, 0, 0, 1), (0, 1, 1, 0)]
        W = self.frame
        G = np.zeros((2 * n,) * 4, dtype=complex)
        for (ha, hd, hc, hb) in patterns:
            kT = 4 - ha - hd
            graphs = {}
            for w1, slots1q, slots1qb in entries:
                for w2, slots2q, slots2qb in entries:
                    key = self._assemble_key(
                        (ha, hd, hc, hb), slots1q, slots1qb,
                        slots2q, slots2qb)
                    graphs[key] = graphs.get(key, 0.0) + w1 * w2
            block = 0.0
            for key, wgt in graphs.items():
                block = block + wgt * self._graph_value(key, qrot)
            scale = (2.0 ** 6) * math.comb(6, kT) / 70.0 ** 2
            Ea = W if ha else W.conj()
            Ed = W if hd else W.conj()
            Ec = W if hc else W.conj()
            Eb = W if hb else W.conj()
            G = G + scale * np.einsum('PQRS,Pa,Qd,Rc,Sb->adcb', block,
                                      Ea, Ed, Ec, Eb, optimize=True)
        assert np.max(np.abs(G.imag)) < 1e-9 * max(1.0, np.max(np.abs(G.real)))
        return G.real

    @staticmethod
    def _assemble_key(pattern, slots1q, slots1qb, slots2q, slots2qb):
        """Canonical graph of one component x component contraction.

        Factor 1 lives on nodes 0 (quartic) and 1 (conjugate), factor 2 on
        nodes 2 and 3.  Free labels a, d sit on factor 1 and c, b on
        factor 2, holomorphic or antiholomorphic per the pattern; the
        remaining positions contract pairwise across the factors, always
        holomorphic against antiholomorphic, paired in sorted order.
        """
        ha, hd, hc, hb = pattern

        def locate(slots_q, slots_qb, qnode, qbnode):
            loc = {}
            for code in slots_q:
                if code < 4:
                    loc[('h', code)] = (qnode, 0)
                else:
                    loc[('a', code - 4)] = (qnode, 1)
            for code in slots_qb:
                if code < 4:
                    loc[('a', code)] = (qbnode, 0)
                else:
                    loc[('h', code - 4)] = (qbnode, 1)
            return loc

        loc1 = locate(slots1q, slots1qb, 0, 1)
        loc2 = locate(slots2q, slots2qb, 2, 3)
        f1_h = [lab for lab, h in (('a', ha), ('d', hd)) if h]
        f1_a = [lab for lab, h in (('a', ha), ('d', hd)) if not h]
        f2_h = [lab for lab, h in (('c', hc), ('b', hb)) if h]
        f2_a = [lab for lab, h in (('c', hc), ('b', hb)) if not h]
        free = []
        for i, lab in enumerate(f1_h):
            free.append((lab,) + loc1[('h', i)])
        for i, lab in enumerate(f1_a):
            free.append((lab,) + loc1[('a', i)])
        for i, lab in enumerate(f2_h):
            free.append((lab,) + loc2[('h', i)])
        for i, lab in enumerate(f2_a):
            free.append((lab,) + loc2[('a', i)])
        edges = []
        for i, j in zip(range(len(f1_h), 4), range(len(f2_a), 4)):
            edges.append(loc1[('h', i)] + loc2[('a', j)])
        for i, j in zip(range(len(f1_a), 4), range(len(f2_h), 4)):
            edges.append(loc1[('a', i)] + loc2[('h', j)])
        return (tuple(sorted(free)), tuple(sorted(edges)))

    def octic_operator(self):
        """Matrix of D_Mho on the 2-form basis of R^(2n), plus the basis."""
        G = self.octic_gram()
        B = skew_basis(2 * self.n)
        images = np.einsum('xcd,adcb->xab', B, G, optimize=True)
        op = np.einsum('yab,xab->yx', B, images, optimize=True)
        return op, B

    # -- reference subspaces on 2-forms ------------------------------------

    def quaternion_span(self, B: np.ndarray) -> np.ndarray:
        """Coefficients of the I, J, K generators on the 2-form basis."""
        mats = np.stack([self.reps.I, self.reps.Jq, self.reps.Kq])
        return np.einsum('xij,aij->ax', B, mats / math.sqrt(2 * self.n))

    def isotropy_span(self, B: np.ndarray) -> np.ndarray:
        """Coefficients of the isotropy algebra on the 2-form basis."""
        ops = self.reps.algebra_basis()
        return np.einsum('xij,aij->ax', B, ops)

    def symplectic_unitary_span(self, B: np.ndarray) -> np.ndarray:
        """2-form coefficients of u(n) intersect sp(n, C) on R^(2n)."""
        mats = self.unitary_matrices()
        om = self.omega
        cond = np.einsum('am,xmb->xab', om, mats)
        cond = cond - np.swapaxes(cond, 1, 2)
        Amat = cond.reshape(len(mats), -1)
        Amat = np.concatenate([Amat.real, Amat.imag], axis=1)
        _, ker = rank_and_kernel(Amat.T)
        emb = np.einsum('kx,xij->kij', ker, self._realified(mats))
        coeffs = np.einsum('xij,kij->kx', B, emb, optimize=True)
        basis, _ = orthonormalize_span(coeffs)
        return basis

    def unitary_matrices(self) -> np.ndarray:
        """Orthonormal basis of u(n) as complex matrices."""
        A = skew_basis(self.n).astype(complex)
        S = 1j * sym_basis(self.n)
        return np.concatenate([A, S], axis=0)

    def _realified(self, mats: np.ndarray) -> np.ndarray:
        out = []
        for u in mats:
            A, S = u.real, u.imag
            top = np.concatenate([A, -S], axis=1)
            bot = np.concatenate([S, A], axis=1)
            out.append(np.concatenate([top, bot], axis=0) / math.sqrt(2.0))
        return np.stack(out)


# ---------------------------------------------------------------------------
# stabilizer kernels


def stabilizer_kernel(family_index: int, kappa: int, rng=None,
                      samples: int = None) -> dict:
    """Rotation stabilizer of the family invariant, as sampled kernel.

    Returns the kernel of the linearized action on the 2-form basis
    together with diagnostics: achieved dimension, residual of the
    expected isotropy inside the kernel, and the largest violation on
    fresh samples.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    if family_index == 1:
        inv = UpsilonInvariant(kappa)
        B = skew_basis(inv.dim)
        T = inv.tensor
        act = (np.einsum('xim,mjk->xijk', B, T, optimize=True)
               + np.einsum('xjm,imk->xijk', B, T, optimize=True)
               + np.einsum('xkm,ijm->xijk', B, T, optimize=True))
        rows = act.reshape(len(B), -1)
        _, ker = rank_and_kernel(rows.T)
        expected = family(1, kappa).algebra_basis()
        ref = np.einsum('xij,aij->ax', B, expected)
        fresh = None
    elif family_index == 2:
        inv = LambdaInvariant(kappa)
        d = 2 * inv.n
        B = skew_basis(d)
        nb = len(B)
        ns = samples or (nb + 60)
        Z = rng.standard_normal((ns, d))
        g = inv.sextic_gradient(Z)
        rows = np.einsum('xij,si,sj->sx', B, g, Z, optimize=True)
        _, ker = rank_and_kernel(rows)
        expected = family(2, kappa).full_basis()
        ref = np.einsum('xij,aij->ax', B, expected)
        Z2 = rng.standard_normal((64, d))
        g2 = inv.sextic_gradient(Z2)
        fresh = np.einsum('xij,si,sj,kx->sk', B, g2, Z2, ker, optimize=True)
    elif family_index == 3:
        inv = QuarticInvariant(kappa)
        d = 2 * inv.n
        B = skew_basis(d)
        nb = len(B)
        ns = samples or (nb + 60)
        rows = np.zeros((ns, nb))
        chunk = 64
        done = 0
        Zs = []
        while done < ns:
            m = min(chunk, ns - done)
            Z = rng.standard_normal((m, d))
            g = inv.octic_gradient(Z)
            rows[done:done + m] = np.einsum('xij,si,sj->sx', B, g, Z,
                                            optimize=True)
            Zs.append(Z)
            done += m
        _, ker = rank_and_kernel(rows)
        expected = family(3, kappa).full_basis()
        ref = np.einsum('xij,aij->ax', B, expected)
        Z2 = rng.standard_normal((32, d))
        g2 = inv.octic_gradient(Z2)
        fresh = np.einsum('xij,si,sj,kx->sk', B, g2, Z2, ker, optimize=True)
    else:
        raise ValueError('family index must be 1, 2 or 3')

    ref_basis, _ = orthonormalize_span(ref)
    _, residual = project_coeffs(ref_basis, ker)
    out = {
        'dim': ker.shape[0],
        'kernel': ker,
        'isotropy_residual': residual,
        'basis': B,
    }
    if fresh is not None:
        scale = max(1.0, float(np.max(np.abs(rows))))
        out['fresh_residual'] = float(np.max(np.abs(fresh))) / scale
    return out
