"""Frobenius on Ext modules: the comparison map delta, the trace tau, and the Cartier operator.

For R = A/I and N = Ext^j_A(R, A), the quotient A/I^[q] -> A/I induces
delta : N -> Ext^j(A/I^[q], A) = F^e_A(N). Composing with the contraction
F_A(N) -> N, sum h_s F(u_s) |-> sum tau(h_s) u_s, gives the p^-1-linear
operator Theta, graded dual (via local duality with twist D) to the
Frobenius action on H^{n-j}_m(R).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, LiftFailure, WindowTooSmall
from .groebner import IdealPresentation
from .homological import (
    GradedModulePresentation,
    ModuleMap,
    Submodule,
    ambient_coordinates,
    chain_lift,
    ext_modules,
    frobenius_functor,
    pull_back_cocycle,
    resolution_of,
    _cache,
)
from .polynomials import Polynomial

HSL_CAP = 30

__all__ = [
    "frobenius_functor",
    "trace",
    "comparison_delta",
    "CartierOperator",
    "cartier_theta",
    "theta_image",
    "hsl_iterate",
    "SemilinearMapWindow",
    "materialize_H",
]


def trace(f: Polynomial) -> Polynomial:
    """tau(x^b) = x^((b - (p-1)) / p) when every b_i = p-1 mod p, else 0."""
    p = f.ring.p
    out = {}
    for b, c in f.terms.items():
        if all(a % p == p - 1 for a in b):
            out[tuple((a - (p - 1)) // p for a in b)] = c
    return Polynomial(f.ring, out)


def _frobenius_chain_lift(I: IdealPresentation, e: int):
    cache = _cache(I)
    key = ("lift", e)
    if key not in cache:
        res = resolution_of(I)
        fres = res.frobenius(e)
        phi = ModuleMap(fres.module, res.module, [[I.ring.one()]])
        cache[key] = chain_lift(phi, fres, res)
    return cache[key]


def comparison_delta(I: IdealPresentation, j: int, e: int = 1) -> ModuleMap:
    """delta : Ext^j(A/I, A) -> F^e_A(Ext^j(A/I, A)), degree 0."""
    cache = _cache(I)
    key = ("delta", j, e)
    if key in cache:
        return cache[key]
    ring = I.ring
    q = ring.p**e
    N = ext_modules(I)[j]
    FN = frobenius_functor(N, e)
    cols = []
    if N.rank:
        phi_j = _frobenius_chain_lift(I, e)[j]
        for z in N.meta["generators"]:
            w = pull_back_cocycle(phi_j, z, ring)
            cols.append(ambient_coordinates(N, w, q))
    delta = ModuleMap(N, FN, cols, degree=0)
    cache[key] = delta
    return delta


@dataclass
class CartierOperator:
    """Theta_r(v) = eps(delta(r v)) on N = Ext^j(A/I, A) (e = 1).

    `matrix[t][s]` is the F(u_s)-coefficient of delta(u_t); `table` maps
    (t, c) to Theta(x^c u_t) for the residues c that give a nonzero value
    (every other c in {0..p-1}^n gives 0).
    """

    N: GradedModulePresentation
    matrix: list
    multiplier: Polynomial
    j: int
    table: dict

    @property
    def ring(self):
        return self.N.ring

    @property
    def p(self):
        return self.N.ring.p

    def _pre_trace(self, v):
        """The polynomials h_s = r * sum_t v_t a_{s,t} with delta(r v) = sum h_s F(u_s)."""
        ring = self.ring
        h = [ring.zero() for _ in range(self.N.rank)]
        for t, f in enumerate(v):
            if f.is_zero():
                continue
            for s, a in enumerate(self.matrix[t]):
                if not a.is_zero():
                    h[s] = h[s] + f * a
        if not self.multiplier.is_constant() or self.multiplier.constant_term() != 1:
            h = [self.multiplier * x for x in h]
        return h

    def apply(self, v):
        """Theta_r(v), reduced modulo the relations of N."""
        out = [trace(x) for x in self._pre_trace(v)]
        return self.N.reduce(out) if self.N.rank else out

    def residue_images(self, v):
        """{c : Theta(x^c v)} over the residues c with a possibly nonzero value."""
        p = self.p
        h = self._pre_trace(v)
        groups = {}
        for s, f in enumerate(h):
            for b, coeff in f.terms.items():
                c = tuple((-1 - a) % p for a in b)
                groups.setdefault(c, [dict() for _ in h])[s][tuple(a + ci for a, ci in zip(b, c))] = coeff
        out = {}
        for c in sorted(groups):
            vec = [trace(Polynomial(self.ring, t)) for t in groups[c]]
            out[c] = vec
        return out

    def value(self, t, c):
        ring = self.ring
        return self.table.get((t, tuple(c)), [ring.zero() for _ in range(self.N.rank)])

    def image_generators(self, vectors):
        gens = []
        for v in vectors:
            gens.extend(self.residue_images(v).values())
        return gens

    def output_degree(self, d):
        """Degree of Theta(v) for v of degree d, None when it is not an integer."""
        p = self.p
        num = d + self.multiplier_degree() - (p - 1) * self.ring.D
        return num // p if num % p == 0 else None

    def multiplier_degree(self):
        return 0 if self.multiplier.is_constant() else self.multiplier.weighted_degree()


def cartier_theta(I: IdealPresentation, j: int, r: Polynomial | None = None) -> CartierOperator:
    ring = I.ring
    r = ring.one() if r is None else r
    delta = comparison_delta(I, j, 1)
    N = delta.source
    op = CartierOperator(N, delta.matrix, r, j, {})
    for t in range(N.rank):
        for c, vec in op.residue_images(N.unit_vector(t)).items():
            op.table[(t, c)] = vec
    return op


def theta_image(theta: CartierOperator) -> Submodule:
    """Theta(N), the A-span of Theta(x^c u_s)."""
    return Submodule(theta.N, list(theta.table.values()))


def hsl_iterate(theta: CartierOperator, cap: int = HSL_CAP):
    """Iterate N >= Theta(N) >= Theta^2(N) >= ... until two consecutive terms agree.

    Returns (e, stable) with Theta^e(N) = Theta^(e+1)(N) = stable. The
    Frobenius action on the dual local cohomology is nilpotent iff stable is 0.
    """
    N = theta.N
    current = Submodule(N, [N.unit_vector(s) for s in range(N.rank)])
    for e in range(cap + 1):
        nxt = Submodule(N, theta.image_generators(current.gens))
        if nxt.contains_submodule(current):
            return e, current
        current = nxt
    raise CapExceeded(f"image chain did not stabilize within {cap} steps")


# ----------------------------------------------------------------------
# degreewise materialization


@dataclass
class SemilinearMapWindow:
    """Graded pieces H_d of H^i_m(R) with the Frobenius matrices H_d -> H_{pd}.

    H_d is identified with the dual of N_{-d-D}, N = Ext^{n-i}(R, A), using
    the standard-monomial basis of N; `frobenius[d]` has shape
    (dim H_{pd}, dim H_d).
    """

    i: int
    p: int
    window: tuple
    dims: dict
    frobenius: dict
    socle_degrees: list
    bases: dict

    def dims_list(self):
        lo, hi = self.window
        return [self.dims[d] for d in range(lo, hi + 1)]

    def total_dim(self):
        return sum(self.dims.values())


def _coords(N, basis_index, vec):
    """Coordinates of a reduced vector in the standard-monomial basis of its degree."""
    out = np.zeros(len(basis_index), dtype=np.int64)
    for s, f in enumerate(vec):
        for e, c in f.terms.items():
            out[basis_index[(s, e)]] = c
    return out


def theta_slice(theta: CartierOperator, d_src: int):
    """Matrix of Theta : N_{d_src} -> N_{d_tgt} in standard-monomial bases; returns (d_tgt, M)."""
    N = theta.N
    d_tgt = theta.output_degree(d_src)
    src = N.basis_in_degree(d_src)
    if d_tgt is None:
        return None, np.zeros((0, len(src)), dtype=np.int64)
    tgt = N.basis_in_degree(d_tgt)
    index = {b: k for k, b in enumerate(tgt)}
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    ring = N.ring
    for k, (s, e) in enumerate(src):
        v = N.zero_vector()
        v[s] = ring.monomial(e)
        img = theta.apply(v)
        if tgt:
            M[:, k] = _coords(N, index, img)
    return d_tgt, M


def materialize_H(I: IdealPresentation, i: int, window, check_socle: bool = True) -> SemilinearMapWindow:
    lo, hi = window
    ring = I.ring
    n, D, p = ring.n, ring.D, ring.p
    j = n - i
    exts = ext_modules(I)
    if j < 0 or j > n:
        raise ValueError(f"cohomological index {i} out of range")
    N = exts[j]
    socle = sorted({-g - D for g in N.gen_degrees})
    if check_socle and any(d < lo or d > hi for d in socle):
        raise WindowTooSmall(f"socle degrees {socle} not inside window [{lo}, {hi}]")
    theta = cartier_theta(I, j)
    dims, frob, bases = {}, {}, {}
    for d in range(lo, hi + 1):
        basis = N.basis_in_degree(-d - D)
        dims[d] = len(basis)
        bases[d] = basis
        # Frobenius H_d -> H_pd is the transpose of Theta : N_{-pd-D} -> N_{-d-D}
        d_tgt, M = theta_slice(theta, -p * d - D)
        if d_tgt is not None and d_tgt != -d - D:
            raise LiftFailure("degree bookkeeping mismatch in the Cartier slice")
        frob[d] = (M.T % p) if M.size else np.zeros((len(N.basis_in_degree(-p * d - D)), len(basis)), dtype=np.int64)
    return SemilinearMapWindow(i, p, (lo, hi), dims, frob, socle, bases)
