"""Local cohomology as a colimit of Koszul cohomology, degree by degree.

An independent check on the Ext/Cartier side. For a set of variables
x_S whose ideal is primary to the irrelevant ideal modulo I, H^i_m(R) is
the colimit over t of H^i(K(x_S^t; R)), with transitions multiplying the
component of a subset T by prod_{j in T} x_j. Everything happens on
standard-monomial bases of R = A/I with dense mod-p linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import NotStabilized, UnitIdeal
from .groebner import IdealPresentation, krull_dim
from .linalg import Quotient, kernel_basis, rank, rref

MAX_STAGE = 8


def radical_variables(I: IdealPresentation):
    """A smallest set of variable indices whose ideal is m-primary modulo I."""
    ring = I.ring
    try:
        d = krull_dim(I)
    except UnitIdeal:
        return ()
    for size in range(d, ring.n + 1):
        for S in itertools.combinations(range(ring.n), size):
            J = I + [ring.var(k) for k in S]
            try:
                if krull_dim(J) == 0:
                    return S
            except UnitIdeal:
                return S
    return tuple(range(ring.n))


class QuotientRingBasis:
    """Standard-monomial bases of R_m and normal forms of monomials, cached."""

    def __init__(self, I: IdealPresentation):
        self.I = I
        self.ring = I.ring
        self.p = I.ring.p
        gb = I.groebner()
        self.gb = gb
        self.ko = gb.ko
        self.leads = gb.lead_exponents()
        self._basis = {}
        self._nf = {}

    def basis(self, m):
        if m not in self._basis:
            if m < 0:
                b = []
            else:
                b = [e for e in self.ring.monomials_of_degree(m)
                     if not any(all(a >= c for a, c in zip(e, l)) for l in self.leads)]
            self._basis[m] = (b, {e: k for k, e in enumerate(b)})
        return self._basis[m]

    def nf(self, e):
        """Normal form of x^e as {standard exponent: coeff}."""
        if e not in self._nf:
            if not any(all(a >= c for a, c in zip(e, l)) for l in self.leads):
                self._nf[e] = {e: 1}
            else:
                rem = self.gb.engine.reduce({self.ko.key(e, 0): 1}, None, full=True)
                self._nf[e] = {self.ko.exp(k): v for k, v in rem.items()}
        return self._nf[e]

    def monomial_map(self, m, a):
        """Matrix of multiplication by x^a : R_m -> R_{m + deg a}."""
        src, _ = self.basis(m)
        tgt, idx = self.basis(m + self.ring.degree_of(a))
        M = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for k, e in enumerate(src):
            for f, c in self.nf(tuple(x + y for x, y in zip(e, a))).items():
                M[idx[f], k] = c
        return M

    def frobenius_map(self, m):
        """Matrix of f -> f^p : R_m -> R_{pm} (F_p-linear on coefficient vectors)."""
        p = self.p
        src, _ = self.basis(m)
        tgt, idx = self.basis(p * m)
        M = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for k, e in enumerate(src):
            for f, c in self.nf(tuple(p * x for x in e)).items():
                M[idx[f], k] = c
        return M


@dataclass
class KoszulStage:
    """H^i(K(x_S^t; R))_d with a basis of cocycle representatives."""

    t: int
    i: int
    d: int
    subsets: list  # subsets of size i (ordered)
    offsets: list  # block offsets of the cochain space C^i_d
    size: int
    quotient: Quotient = None
    reps: np.ndarray = None  # rows: cocycles representing a basis of H

    @property
    def dim(self):
        return self.quotient.dim


class KoszulComplex:
    def __init__(self, I: IdealPresentation, variables=None):
        self.I = I
        self.ring = I.ring
        self.p = I.ring.p
        self.vars = tuple(radical_variables(I) if variables is None else variables)
        self.R = QuotientRingBasis(I)
        self._stages = {}

    def _exp_of(self, S, t):
        e = [0] * self.ring.n
        for k in S:
            e[self.vars[k]] = t
        return tuple(e)

    def _wdeg(self, S, t):
        return sum(t * self.ring.weights[self.vars[k]] for k in S)

    def _layout(self, i, t, d):
        subsets = list(itertools.combinations(range(len(self.vars)), i)) if 0 <= i <= len(self.vars) else []
        offsets, size = [], 0
        for S in subsets:
            offsets.append(size)
            size += len(self.R.basis(d + self._wdeg(S, t))[0])
        return subsets, offsets, size

    def differential(self, i, t, d):
        """Matrix C^i_d -> C^{i+1}_d at stage t."""
        src_sub, src_off, src_size = self._layout(i, t, d)
        tgt_sub, tgt_off, tgt_size = self._layout(i + 1, t, d)
        M = np.zeros((tgt_size, src_size), dtype=np.int64)
        tpos = {T: k for k, T in enumerate(tgt_sub)}
        for a, S in enumerate(src_sub):
            m = d + self._wdeg(S, t)
            for j in range(len(self.vars)):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                b = tpos[T]
                sign = (-1) ** sum(1 for k in S if k < j)
                block = self.R.monomial_map(m, self._exp_of((j,), t))
                if block.size:
                    r0, c0 = tgt_off[b], src_off[a]
                    M[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] = (sign * block) % self.p
        return M

    def stage(self, i, t, d) -> KoszulStage:
        key = (i, t, d)
        if key not in self._stages:
            subsets, offsets, size = self._layout(i, t, d)
            st = KoszulStage(t, i, d, subsets, offsets, size)
            p = self.p
            if size == 0:
                Z = np.zeros((0, 0), dtype=np.int64)
                B = np.zeros((0, 0), dtype=np.int64)
            else:
                D_out = self.differential(i, t, d)
                Z = kernel_basis(D_out, p) if D_out.shape[0] else np.eye(size, dtype=np.int64)
                if i > 0:
                    D_in = self.differential(i - 1, t, d)
                    B = D_in.T.copy() if D_in.size else np.zeros((0, size), dtype=np.int64)
                else:
                    B = np.zeros((0, size), dtype=np.int64)
            st.quotient = Quotient(Z, B, p, size)
            st.reps = st.quotient.reps
            self._stages[key] = st
        return self._stages[key]

    def transition(self, i, t, t2, d):
        """Cohomology matrix of stage t -> stage t2 (multiply block S by x_S^(t2-t))."""
        a = self.stage(i, t, d)
        b = self.stage(i, t2, d)
        if a.dim == 0 or b.dim == 0:
            return np.zeros((b.dim, a.dim), dtype=np.int64)
        images = np.zeros((a.dim, b.size), dtype=np.int64)
        for k, S in enumerate(a.subsets):
            m = d + self._wdeg(S, t)
            block = self.R.monomial_map(m, self._exp_of(S, t2 - t))
            lo, hi = a.offsets[k], a.offsets[k] + len(self.R.basis(m)[0])
            b0 = b.offsets[k]
            images[:, b0 : b0 + block.shape[0]] = (a.reps[:, lo:hi] @ block.T) % self.p
        return b.quotient.coords(images).T

    def frobenius(self, i, t, d):
        """Cohomology matrix of f -> f^p from stage t degree d to stage tp degree pd."""
        p = self.p
        a = self.stage(i, t, d)
        b = self.stage(i, t * p, p * d)
        if a.dim == 0 or b.dim == 0:
            return np.zeros((b.dim, a.dim), dtype=np.int64)
        images = np.zeros((a.dim, b.size), dtype=np.int64)
        for k, S in enumerate(a.subsets):
            m = d + self._wdeg(S, t)
            block = self.R.frobenius_map(m)
            lo, hi = a.offsets[k], a.offsets[k] + len(self.R.basis(m)[0])
            b0 = b.offsets[k]
            images[:, b0 : b0 + block.shape[0]] = (a.reps[:, lo:hi] @ block.T) % p
        return b.quotient.coords(images).T

    def is_iso(self, i, t, d):
        M = self.transition(i, t, t + 1, d)
        da, db = M.shape[1], M.shape[0]
        return da == db and (da == 0 or rank(M, self.p) == da)

    def stable_stage(self, i, d, start=1, max_stage=MAX_STAGE):
        """First t >= start with stage t -> t+1 -> t+2 both isomorphisms in degree d.

        Stages below the one where every cochain block of degree d is nonempty
        are trivially zero, so the search starts above it.
        """
        if d < 0 and self.vars:
            wmin = min(self.ring.weights[v] for v in self.vars)
            start = max(start, -d // wmin + 1)
        for t in range(start, max(max_stage, start + 2) + 1):
            if self.is_iso(i, t, d) and self.is_iso(i, t + 1, d):
                return t
        raise NotStabilized(f"degree {d} of H^{i} not stable by stage {max_stage}")


@dataclass
class OracleResult:
    i: int
    window: tuple
    dims: dict
    frobenius: dict  # d -> matrix H_d -> H_pd in stable-stage bases
    stages: dict  # d -> stable stage
    variables: tuple = ()
    transitions: dict = field(default_factory=dict)

    def dims_list(self):
        lo, hi = self.window
        return [self.dims[d] for d in range(lo, hi + 1)]


def _solve(T, X, p):
    """Y with T Y = X for square invertible T."""
    n = T.shape[0]
    if n == 0:
        return np.zeros((0, X.shape[1]), dtype=np.int64)
    aug = np.concatenate([T % p, X % p], axis=1)
    R, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise NotStabilized("transition to the Frobenius stage is not invertible")
    return R[:n, n:] % p


def koszul_oracle(I: IdealPresentation, i: int, window, t: int = 1, max_stage: int = MAX_STAGE,
                  complex_: KoszulComplex | None = None) -> OracleResult:
    """Degreewise H^i_m(R) and its Frobenius, read off stabilized Koszul stages.

    For each d in the window the first stable stage t_d >= t is found; the
    Frobenius H_d -> H_pd is computed at stage t_d, landing in stage p*t_d,
    and pulled back to the stable basis of degree pd through the transition.
    """
    lo, hi = window
    K = complex_ or KoszulComplex(I)
    p = I.ring.p
    dims, frob, stages = {}, {}, {}
    for d in range(lo, hi + 1):
        s = K.stable_stage(i, d, start=t, max_stage=max_stage)
        stages[d] = s
        dims[d] = K.stage(i, s, d).dim
    for d in range(lo, hi + 1):
        pd = p * d
        if dims[d] == 0:
            frob[d] = np.zeros((0, 0), dtype=np.int64)
            continue
        s_pd = stages.get(pd)
        if s_pd is None:
            s_pd = K.stable_stage(i, pd, start=t, max_stage=max_stage)
        dim_pd = K.stage(i, s_pd, pd).dim
        if dim_pd == 0:
            frob[d] = np.zeros((0, dims[d]), dtype=np.int64)
            continue
        s = max(stages[d], s_pd)
        # both degrees are stable from stage s on
        to_s = K.transition(i, stages[d], s, d) if s != stages[d] else np.eye(dims[d], dtype=np.int64)
        X = K.frobenius(i, s, d) @ to_s % p
        T = K.transition(i, s_pd, s * p, pd)
        frob[d] = _solve(T, X, p)
    return OracleResult(i, (lo, hi), dims, frob, stages, K.vars)
