"""Dense linear algebra over F_p on top of numpy int64 arrays."""

from __future__ import annotations

import numpy as np

from .fields import PrimeField, field_inv


class FpMatrix:
    """An immutable rows x cols matrix with entries in 0..p-1."""

    def __init__(self, entries, p: int | PrimeField, shape=None):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.p = self.field.p
        a = np.array(entries, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim == 1 and shape is None:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        self.a = np.mod(a, self.p)
        self.a.flags.writeable = False

    @classmethod
    def zeros(cls, rows, cols, p):
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n, p):
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def __eq__(self, other):
        return isinstance(other, FpMatrix) and self.p == other.p and np.array_equal(self.a, other.a)

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.a.tolist()})"

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            return FpMatrix(matmul(self.a, other.a, self.p), self.p)
        return matmul(self.a, np.asarray(other, dtype=np.int64), self.p)

    @property
    def T(self):
        return FpMatrix(self.a.T, self.p)

    def rank(self) -> int:
        return rank(self.a, self.p)

    def kernel(self):
        return mat_kernel(self)

    def is_zero(self) -> bool:
        return not self.a.any()


def matmul(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1] if b.ndim == 2 else 0), dtype=np.int64)
    if p < 3_000_000:
        # chunk the inner dimension so int64 accumulation cannot overflow
        chunk = max(1, (2**62) // ((p - 1) ** 2 + 1))
        if a.shape[1] <= chunk:
            return (a @ b) % p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for s in range(0, a.shape[1], chunk):
            out = (out + a[:, s : s + chunk] @ b[s : s + chunk]) % p
        return out
    return np.array([[sum(int(x) * int(y) for x, y in zip(r, c)) % p for c in b.T] for r in a], dtype=np.int64)


def rref(a, p):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = field_inv(int(m[r, c]), PrimeField(p)) if p > 2 else 1
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, p)[1])


def kernel_basis(a, p):
    """Basis (as rows of an array) of {v : a @ v = 0}."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


def mat_kernel(M: FpMatrix):
    """Kernel basis of M as a list of tuples; count = cols - rank."""
    return [tuple(int(x) for x in row) for row in kernel_basis(M.a, M.p)]


def row_space(a, p):
    """RREF basis of the row space of a."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64), []
    return rref(a, p)


class Quotient:
    """The quotient space Z/B for row-spaces B <= Z <= F_p^n.

    `coords(v)` gives coordinates of the class of v (v in Z) in a fixed
    basis of representatives.
    """

    def __init__(self, z, b, p, n):
        self.p = p
        self.n = n
        if n == 0:
            self.b_rref, self.b_piv = np.zeros((0, 0), dtype=np.int64), []
            self.reps, self.rep_piv, self.dim = np.zeros((0, 0), dtype=np.int64), [], 0
            return
        z = np.asarray(z, dtype=np.int64).reshape(-1, n)
        b = np.asarray(b, dtype=np.int64).reshape(-1, n)
        self.b_rref, self.b_piv = row_space(b, p) if b.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
        reduced = self.reduce(z) if z.shape[0] else z
        reps, piv = row_space(reduced, p) if reduced.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
        self.reps = reps
        self.rep_piv = piv
        self.dim = reps.shape[0]

    def reduce(self, vs):
        """Reduce rows of vs modulo B (to the canonical form w.r.t. B's pivots)."""
        vs = np.array(vs, dtype=np.int64)
        vs = vs.reshape(vs.shape[0] if vs.ndim == 2 else -1, self.n) % self.p
        for i, c in enumerate(self.b_piv):
            f = vs[:, c].copy()
            nz = np.nonzero(f)[0]
            if nz.size:
                vs[nz] = (vs[nz] - np.outer(f[nz], self.b_rref[i])) % self.p
        return vs

    def coords(self, vs):
        """Coordinates (rows) of the classes of the rows of vs."""
        vs = self.reduce(vs)
        out = np.zeros((vs.shape[0], self.dim), dtype=np.int64)
        for i, c in enumerate(self.rep_piv):
            f = vs[:, c].copy()
            out[:, i] = f
            nz = np.nonzero(f)[0]
            if nz.size:
                vs[nz] = (vs[nz] - np.outer(f[nz], self.reps[i])) % self.p
        if vs.any():
            raise ValueError("vector does not lie in Z (+ B)")
        return out
