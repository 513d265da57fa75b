"""Coefficient fields.

`PrimeField` is the coefficient field of every polynomial ring in the package.
`GF` and `RationalFunctionField` are used by the finite-length Frobenius
laboratory (:mod:`fsing.finlen`), which needs a perfect field F_q and the
non-perfect field F_p(t).

All field elements are plain hashable Python values (ints for finite fields,
pairs of coefficient tuples for F_p(t)); fields expose arithmetic as methods.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import NonPrimeCharacteristic, ZeroInverse


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The prime field F_p with elements the integers 0..p-1."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p!r} is not prime")
        self.p = p
        self.q = p
        self.perfect = True

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    # -- FieldAbstraction protocol ------------------------------------
    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return field_inv(a, self)

    def is_zero(self, a):
        return a % self.p == 0

    def frob(self, a):
        return a

    def pth_root(self, a):
        return a

    def p_basis(self):
        return [1]

    def decompose(self, a):
        return [a]

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def fmt(self, a):
        return str(a)


@lru_cache(maxsize=None)
def _inverse_table(p):
    table = [0] * p
    for a in range(1, p):
        table[a] = pow(a, p - 2, p)
    return tuple(table)


def field_inv(a: int, field: PrimeField) -> int:
    """Multiplicative inverse of `a` in F_p."""
    p = field.p
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse in F_{p}")
    if p < 1 << 16:
        return _inverse_table(p)[a]
    return pow(a, p - 2, p)


# ----------------------------------------------------------------------
# univariate polynomials over F_p as coefficient tuples (low degree first)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _upadd(a, b, p):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def _upscale(a, c, p):
    return _trim(x * c % p for x in a)


def _upmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _updivmod(a, b, p):
    if not b:
        raise ZeroInverse("division by the zero polynomial")
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return _trim(q), _trim(a)


def _upgcd(a, b, p):
    while b:
        a, b = b, _updivmod(a, b, p)[1]
    if a:
        a = _upscale(a, pow(a[-1], p - 2, p), p)
    return a


def _irreducible(p, e):
    """Smallest monic irreducible polynomial of degree e over F_p (brute force)."""
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        f = tuple(tail) + (1,)
        if f[0] == 0:
            continue
        reducible = False
        for d in range(1, e // 2 + 1):
            for gt in itertools.product(range(p), repeat=d):
                g = tuple(gt) + (1,)
                if not _updivmod(f, g, p)[1]:
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return f
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The finite field F_q, q = p^e, elements encoded as integers 0..q-1.

    The integer sum(c_i p^i) encodes the residue of sum(c_i a^i) modulo a
    fixed irreducible polynomial. Multiplication goes through log/exp tables,
    so q should stay small (this class serves exhaustive enumeration).
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p!r} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p, self.e, self.q = p, e, p**e
        self.perfect = True
        self.modulus = _irreducible(p, e)
        q = self.q
        self._add = [[self._encode(_upadd(self._decode(a), self._decode(b), p)) for b in range(q)] for a in range(q)]
        self._exp, self._log = self._log_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, GF) and (other.p, other.e) == (self.p, self.e)

    def __hash__(self):
        return hash(("GF", self.p, self.e))

    def _decode(self, a):
        c = []
        while a:
            a, r = divmod(a, self.p)
            c.append(r)
        return tuple(c)

    def _encode(self, c):
        return sum(x * self.p**i for i, x in enumerate(c))

    def _polymul(self, a, b):
        prod = _upmul(self._decode(a), self._decode(b), self.p)
        return self._encode(_updivmod(prod, self.modulus, self.p)[1])

    def _log_tables(self):
        q = self.q
        if q == 2:
            return [1], {1: 0}
        for g in range(2, q) if q > 2 else []:
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._polymul(x, g)
                exp.append(x)
            if len(set(exp)) == q - 1:
                return exp, {v: i for i, v in enumerate(exp)}
        # q == p prime: any primitive root found above; unreachable otherwise
        raise AssertionError("no primitive element")

    zero = 0
    one = 1

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._encode(tuple(-x % self.p for x in self._decode(a)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in {self!r}")
        return self._exp[-self._log[a] % (self.q - 1)]

    def pow(self, a, k):
        if a == 0:
            return 0 if k else 1
        return self._exp[self._log[a] * k % (self.q - 1)]

    def is_zero(self, a):
        return a == 0

    def frob(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        return self.pow(a, self.q // self.p)

    def p_basis(self):
        return [1]

    def decompose(self, a):
        return [self.pth_root(a)]

    def elements(self):
        return range(self.q)

    def random(self, rng):
        return rng.randrange(self.q)

    def fmt(self, a):
        return str(a)


class RationalFunctionField:
    """F_p(t) with elements (numerator, denominator) as coefficient tuples.

    Denominators are monic and coprime to numerators. The field is not
    perfect: t has no p-th root. Its p-basis over the subfield of p-th powers
    is 1, t, ..., t^(p-1).
    """

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p!r} is not prime")
        self.p = p
        self.perfect = False
        self.zero = ((), (1,))
        self.one = ((1,), (1,))
        self.t = ((0, 1), (1,))

    def __repr__(self):
        return f"F_{self.p}(t)"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp(t)", self.p))

    def make(self, num, den=(1,)):
        p = self.p
        num, den = _trim(x % p for x in num), _trim(x % p for x in den)
        if not den:
            raise ZeroInverse("zero denominator")
        if not num:
            return self.zero
        g = _upgcd(num, den, p)
        num, den = _updivmod(num, g, p)[0], _updivmod(den, g, p)[0]
        lc = pow(den[-1], p - 2, p)
        return _upscale(num, lc, p), _upscale(den, lc, p)

    def const(self, c):
        return self.make((c,))

    def add(self, a, b):
        p = self.p
        return self.make(_upadd(_upmul(a[0], b[1], p), _upmul(b[0], a[1], p), p), _upmul(a[1], b[1], p))

    def neg(self, a):
        return (_upscale(a[0], self.p - 1, self.p), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        p = self.p
        return self.make(_upmul(a[0], b[0], p), _upmul(a[1], b[1], p))

    def inv(self, a):
        if not a[0]:
            raise ZeroInverse("0 has no inverse in F_p(t)")
        return self.make(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def _frob_poly(self, c):
        out = [0] * (self.p * (len(c) - 1) + 1) if c else []
        for i, x in enumerate(c):
            out[self.p * i] = x
        return tuple(out)

    def frob(self, a):
        return (self._frob_poly(a[0]), self._frob_poly(a[1]))

    def p_basis(self):
        return [self.make((0,) * j + (1,)) for j in range(self.p)]

    def decompose(self, a):
        """Return g_0..g_{p-1} with a = sum_j t^j g_j^p."""
        p = self.p
        num, den = a
        # a = num * den^(p-1) / den^p; split the numerator by exponent residue
        top = num
        for _ in range(p - 1):
            top = _upmul(top, den, p)
        parts = []
        for j in range(p):
            coeffs = top[j::p]
            parts.append(self.make(coeffs, den))
        return parts

    def random(self, rng, degree=2):
        num = tuple(rng.randrange(self.p) for _ in range(degree + 1))
        den = tuple(rng.randrange(self.p) for _ in range(degree)) + (1,)
        return self.make(num, den)

    def fmt(self, a):
        def show(c):
            terms = [f"{x}*t^{i}" if i else str(x) for i, x in enumerate(c) if x]
            return " + ".join(terms) or "0"

        if a[1] == (1,):
            return show(a[0])
        return f"({show(a[0])})/({show(a[1])})"
