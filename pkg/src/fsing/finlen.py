"""Finite-length modules carrying a p-linear Frobenius action.

A module is a finite-dimensional vector space k^m together with commuting
matrices for the ring variables and a matrix whose j-th column is F(b_j),
so that F(sum v_j b_j) = sum v_j^p F(b_j). The field is either a finite
field (perfect) or F_p(t) (not perfect).

Subspaces are kept in reduced row echelon form, which makes them canonical
and hashable; F-stable submodules of small modules over finite fields are
enumerated exhaustively as sums of cyclic closures.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DimensionCapExceeded, PreconditionViolated

# enumeration budget: q^m <= 2^DIM_CAP_BITS (dimension 6 over F_2)
DIM_CAP_BITS = 6


# ----------------------------------------------------------------------
# linear algebra over an abstract field


def _rref(field, rows, width):
    """Reduced row echelon form of `rows`; returns (rows, pivots) as tuples."""
    rows = [list(r) for r in rows if any(not field.is_zero(a) for a in r)]
    out, pivots = [], []
    col = 0
    while rows and col < width:
        k = next((i for i, r in enumerate(rows) if not field.is_zero(r[col])), None)
        if k is None:
            col += 1
            continue
        r = rows.pop(k)
        inv = field.inv(r[col])
        r = [field.mul(inv, a) for a in r]
        for other in (out, rows):
            for i, s in enumerate(other):
                c = s[col]
                if not field.is_zero(c):
                    other[i] = [field.sub(a, field.mul(c, b)) for a, b in zip(s, r)]
        out.append(r)
        pivots.append(col)
        rows = [s for s in rows if any(not field.is_zero(a) for a in s)]
        col += 1
    return tuple(tuple(r) for r in out), tuple(pivots)


def _kernel(field, matrix, ncols):
    """Basis of {v : matrix v = 0} for a list of rows."""
    R, piv = _rref(field, matrix, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in zip(R, piv):
            v[pc] = field.neg(r[f])
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^m given by its reduced echelon basis."""

    field: object
    m: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field, m, vectors):
        rows, piv = _rref(field, vectors, m)
        return cls(field, m, rows, piv)

    @classmethod
    def zero(cls, field, m):
        return cls(field, m, (), ())

    @classmethod
    def whole(cls, field, m):
        return cls.span(field, m, [_unit(field, m, j) for j in range(m)])

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        f = self.field
        v = list(v)
        for r, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if not f.is_zero(c):
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, r)]
        return tuple(v)

    def contains(self, v):
        return all(self.field.is_zero(a) for a in self.reduce(v))

    def __le__(self, other):
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other):
        return Subspace.span(self.field, self.m, self.basis + other.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.m == other.m and self.basis == other.basis

    def __hash__(self):
        return hash((self.m, self.basis))

    def quotient_coords(self, v):
        """Coordinates of v in k^m / self along the non-pivot positions."""
        red = self.reduce(v)
        return tuple(red[c] for c in range(self.m) if c not in self.pivots)


def _unit(field, m, j):
    v = [field.zero] * m
    v[j] = field.one
    return tuple(v)


def _matvec(field, A, v):
    out = []
    for row in A:
        s = field.zero
        for a, b in zip(row, v):
            if not field.is_zero(a) and not field.is_zero(b):
                s = field.add(s, field.mul(a, b))
        out.append(s)
    return tuple(out)


def _matmul(field, A, B):
    cols = list(zip(*B)) if B else []
    return tuple(tuple(_dot(field, r, c) for c in cols) for r in A)


def _dot(field, r, c):
    s = field.zero
    for a, b in zip(r, c):
        s = field.add(s, field.mul(a, b))
    return s


def _matpow(field, A, k):
    m = len(A)
    out = tuple(_unit(field, m, j) for j in range(m))
    for _ in range(k):
        out = _matmul(field, out, A)
    return out


def _frob_mat(field, A):
    return tuple(tuple(field.frob(a) for a in row) for row in A)


def _as_matrix(field, A):
    return tuple(tuple(a if not isinstance(a, int) or not hasattr(field, "const") else field.const(a)
                       for a in row) for row in A)


# ----------------------------------------------------------------------
# modules


class FinLenFrobeniusModule:
    """k^m with nilpotent commuting actions and a p-linear F.

    `frobenius` and each entry of `actions` are m x m matrices (lists of
    rows); column j of `frobenius` is F(b_j). Integer entries are accepted
    over F_p(t) and converted to constants.
    """

    def __init__(self, field, frobenius, actions=(), check=True, require_nilpotent=True):
        self.field = field
        self.F = _as_matrix(field, frobenius)
        self.m = len(self.F)
        self.actions = tuple(_as_matrix(field, A) for A in actions)
        if check:
            self._validate(require_nilpotent)

    def __repr__(self):
        return f"FinLenFrobeniusModule({self.field!r}, dim={self.m}, actions={len(self.actions)})"

    def _validate(self, require_nilpotent):
        f, m, p = self.field, self.m, self.field.p
        if any(len(r) != m for r in self.F):
            raise PreconditionViolated("Frobenius matrix must be square")
        for k, A in enumerate(self.actions):
            if len(A) != m or any(len(r) != m for r in A):
                raise PreconditionViolated(f"action {k} has the wrong shape")
            if require_nilpotent and any(not f.is_zero(a) for r in _matpow(f, A, m) for a in r):
                raise PreconditionViolated(f"action {k} is not nilpotent")
            # F(x v) = x^p F(v)
            if _matmul(f, self.F, _frob_mat(f, A)) != _matmul(f, _matpow(f, A, p), self.F):
                raise PreconditionViolated(f"Frobenius is not p-linear against action {k}")
            for B in self.actions[k + 1:]:
                if _matmul(f, A, B) != _matmul(f, B, A):
                    raise PreconditionViolated("actions do not commute")

    # -- elementwise -------------------------------------------------------

    def apply_F(self, v):
        return _matvec(self.field, self.F, tuple(self.field.frob(a) for a in v))

    def act(self, k, v):
        return _matvec(self.field, self.actions[k], v)

    def zero(self):
        return Subspace.zero(self.field, self.m)

    def whole(self):
        return Subspace.whole(self.field, self.m)

    def span(self, vectors):
        return Subspace.span(self.field, self.m, vectors)

    def twisted(self, r_matrix):
        """The module with Frobenius r*F, for r acting by `r_matrix`."""
        return FinLenFrobeniusModule(self.field, _matmul(self.field, r_matrix, self.F), self.actions,
                                     check=False)

    # -- predicates --------------------------------------------------------

    def is_ring_stable(self, N: Subspace):
        return all(N.contains(self.act(k, b)) for k in range(len(self.actions)) for b in N.basis)

    def is_F_stable(self, N: Subspace):
        return all(N.contains(self.apply_F(b)) for b in N.basis) and self.is_ring_stable(N)

    def frobenius_preimage(self, N: Subspace) -> Subspace:
        """{v : F(v) in N}, a k-subspace because F is p-linear.

        Writing the coordinates of F(b_j) modulo N as sum_s t_s g_{j,s}^p over a
        p-basis t_s of k, the condition sum_j v_j^p F(b_j) in N becomes the
        k-linear system sum_j v_j g_{j,s} = 0 for every s.
        """
        f, m = self.field, self.m
        cols = [N.quotient_coords(tuple(self.F[i][j] for i in range(m))) for j in range(m)]
        nq = m - N.dim
        nb = len(f.p_basis())
        rows = []
        parts = [[f.decompose(c[i]) for i in range(nq)] for c in cols]
        for s in range(nb):
            for i in range(nq):
                rows.append([parts[j][i][s] for j in range(m)])
        return self.span(_kernel(f, rows, m))

    def F_injective_mod(self, N: Subspace) -> bool:
        return self.frobenius_preimage(N) <= N

    def F_injective(self) -> bool:
        return self.F_injective_mod(self.zero())

    def is_full(self) -> bool:
        return r_span_of_F(self, self.whole()) == self.whole()


def fstable_closure(M: FinLenFrobeniusModule, vectors) -> Subspace:
    """Smallest subspace containing `vectors` and stable under F and the ring actions."""
    N = M.span(vectors)
    queue = list(N.basis)
    while queue:
        v = queue.pop()
        for w in [M.apply_F(v)] + [M.act(k, v) for k in range(len(M.actions))]:
            if not N.contains(w):
                N = M.span(N.basis + (w,))
                queue.append(w)
    return N


def _ring_closure(M, vectors):
    N = M.span(vectors)
    queue = list(N.basis)
    while queue:
        v = queue.pop()
        for k in range(len(M.actions)):
            w = M.act(k, v)
            if not N.contains(w):
                N = M.span(N.basis + (w,))
                queue.append(w)
    return N


def r_span_of_F(M: FinLenFrobeniusModule, N: Subspace) -> Subspace:
    """The R-span of F(N); by p-linearity the F(b) for b in a basis of N suffice."""
    return _ring_closure(M, [M.apply_F(b) for b in N.basis])


def is_full_submodule(M, N) -> bool:
    return r_span_of_F(M, N) == N


def nilpotent_part(M: FinLenFrobeniusModule) -> Subspace:
    """The union of the kernels of F^e."""
    K = M.zero()
    while True:
        nxt = M.frobenius_preimage(K)
        if nxt == K:
            return K
        K = nxt


def intersect_xL(M: FinLenFrobeniusModule, N: Subspace, x: int) -> Subspace:
    """x^n N for the first n with x^(n+1) N = x^n N."""
    L = N
    while True:
        nxt = M.span([M.act(x, b) for b in L.basis])
        if nxt == L:
            return L
        L = nxt


def lemma52_check(M: FinLenFrobeniusModule, L: Subspace) -> bool:
    """Whether F on M/L is injective, for F injective on M and L F-stable."""
    if not M.F_injective():
        raise PreconditionViolated("F is not injective on M")
    if not M.is_F_stable(L):
        raise PreconditionViolated("L is not F-stable")
    return M.F_injective_mod(L)


# ----------------------------------------------------------------------
# enumeration


def _check_cap(M, cap_bits):
    q = getattr(M.field, "q", None)
    if q is None:
        raise DimensionCapExceeded(f"cannot enumerate submodules over the infinite field {M.field!r}")
    if M.m * math.log2(q) > cap_bits + 1e-9:
        raise DimensionCapExceeded(f"dimension {M.m} over F_{q} exceeds the enumeration cap")


def fstable_submodules(M: FinLenFrobeniusModule, cap_bits: int = DIM_CAP_BITS):
    """Every F-stable submodule, as sums of closures of single vectors."""
    _check_cap(M, cap_bits)
    f = M.field
    cyclic = set()
    for v in itertools.product(list(f.elements()), repeat=M.m):
        if any(v):
            cyclic.add(fstable_closure(M, [v]))
    cyclic = sorted(cyclic, key=lambda S: (S.dim, S.basis))
    found = {M.zero()}
    frontier = [M.zero()]
    while frontier:
        nxt = []
        for A in frontier:
            for C in cyclic:
                if C <= A:
                    continue
                S = A + C
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    return sorted(found, key=lambda S: (S.dim, S.basis))


@dataclass
class AntiNilpotentResult:
    value: bool
    witness: Subspace | None  # a non-full F-stable submodule on failure
    route: str
    submodules_checked: int

    def __bool__(self):
        return self.value


def is_anti_nilpotent(M: FinLenFrobeniusModule, route: str = "full", candidates=None,
                      cap_bits: int = DIM_CAP_BITS) -> AntiNilpotentResult:
    """Whether F is injective on M/N for every F-stable N.

    route "quotient" tests the definition directly; route "full" tests that
    every F-stable submodule is full. Over an infinite field only the given
    `candidates` can be checked: a failure among them is conclusive, success
    is not and raises DimensionCapExceeded.
    """
    if route not in ("full", "quotient"):
        raise ValueError(f"unknown route {route!r}")
    if candidates is None:
        subs = fstable_submodules(M, cap_bits)
        exhaustive = True
    else:
        subs = [M.zero()] + [N for N in candidates if M.is_F_stable(N)]
        exhaustive = False
    for k, N in enumerate(subs, start=1):
        if route == "quotient":
            bad = not M.F_injective_mod(N)
            if bad:
                # the closure of N and a Frobenius-kernel element is not full
                pre = M.frobenius_preimage(N)
                extra = next(b for b in pre.basis if not N.contains(b))
                witness = fstable_closure(M, N.basis + (extra,))
                return AntiNilpotentResult(False, witness, route, k)
        elif not is_full_submodule(M, N):
            return AntiNilpotentResult(False, N, route, k)
    if not exhaustive:
        raise DimensionCapExceeded("candidate submodules passed but the search is not exhaustive")
    return AntiNilpotentResult(True, None, route, len(subs))


# ----------------------------------------------------------------------
# constructions


def frobenius_compatible_maps(field, actions, m):
    """Basis of the matrices F with F frob(A) = A^p F for every action A (prime fields only)."""
    p = field.p
    eqs = []
    for A in actions:
        Ap = _matpow(field, A, p)
        FA = _frob_mat(field, A)
        # unknown F[r][c] at index r*m + c
        for r in range(m):
            for c in range(m):
                row = [field.zero] * (m * m)
                for k in range(m):
                    row[r * m + k] = field.add(row[r * m + k], FA[k][c])
                    row[k * m + c] = field.sub(row[k * m + c], Ap[r][k])
                eqs.append(row)
    if not eqs:
        return [tuple(tuple(field.one if (r * m + c) == idx else field.zero for c in range(m)) for r in range(m))
                for idx in range(m * m)]
    return [tuple(tuple(v[r * m + c] for c in range(m)) for r in range(m)) for v in _kernel(field, eqs, m * m)]


def random_module(field, m, rng, n_actions=1, injective=False):
    """A random module: actions are polynomials in one strictly upper triangular matrix."""
    f = field
    if injective:
        # injective F with nilpotent actions forces the actions to vanish
        while True:
            Fm = tuple(tuple(f.random(rng) for _ in range(m)) for _ in range(m))
            M = FinLenFrobeniusModule(f, Fm, (), check=False)
            if M.F_injective():
                return M
    Nmat = tuple(tuple(f.random(rng) if c > r else f.zero for c in range(m)) for r in range(m))
    actions = []
    for _ in range(n_actions):
        A = tuple(tuple(f.zero for _ in range(m)) for _ in range(m))
        power = Nmat
        for _k in range(1, m):
            c = f.random(rng)
            A = tuple(tuple(f.add(a, f.mul(c, b)) for a, b in zip(ra, rb)) for ra, rb in zip(A, power))
            power = _matmul(f, power, Nmat)
        actions.append(A)
    basis = frobenius_compatible_maps(f, actions, m)
    Fm = tuple(tuple(f.zero for _ in range(m)) for _ in range(m))
    for B in basis:
        c = f.random(rng)
        Fm = tuple(tuple(f.add(a, f.mul(c, b)) for a, b in zip(ra, rb)) for ra, rb in zip(Fm, B))
    return FinLenFrobeniusModule(f, Fm, actions)


def nonperfect_counterexample(p: int):
    """F_p(t)^2 with F(f, g) = (f^p + t g^p, 0) and the F-stable line L = span{e1}."""
    from .fields import RationalFunctionField

    k = RationalFunctionField(p)
    M = FinLenFrobeniusModule(k, [[k.one, k.t], [k.zero, k.zero]])
    L = M.span([(k.one, k.zero)])
    return M, L
