"""Weighted polynomial rings over prime fields.

A `PolyRingSpec` is F_p[x_1, ..., x_n] with positive integer weights; the
weighted degree of x^a is sum(a_i * w_i). A `Polynomial` is an immutable map
from exponent tuples to nonzero coefficients in 0..p-1.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import ExponentOverflow, NonHomogeneous, ParseError, ZeroPolynomial
from .fields import PrimeField

# exponents must stay machine-sized; bracket powers multiply them by p^e
EXPONENT_LIMIT = 2**62


class PolyRingSpec:
    """F_p[x_1..x_n] with positive weights; `D` is the total weight."""

    def __init__(self, p: int, names: Iterable[str], weights: Iterable[int] | None = None):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.p = self.field.p
        self.names = tuple(names)
        if not self.names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        self.n = len(self.names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.n
        if len(self.weights) != self.n or any(int(w) != w or w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers, one per variable")
        self.D = sum(self.weights)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __repr__(self):
        vs = " ".join(f"{x}:{w}" for x, w in zip(self.names, self.weights))
        return f"PolyRingSpec(p={self.p}, {vs})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRingSpec)
            and (self.p, self.names, self.weights) == (other.p, other.names, other.weights)
        )

    def __hash__(self):
        return hash((self.p, self.names, self.weights))

    def index(self, name: str) -> int:
        return self._index[name]

    def degree_of(self, exp) -> int:
        return sum(a * w for a, w in zip(exp, self.weights))

    # constructors ------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, exp, coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exp): coeff})

    def var(self, which) -> "Polynomial":
        i = which if isinstance(which, int) else self._index[which]
        exp = [0] * self.n
        exp[i] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def monomials_of_degree(self, d: int):
        """All exponent vectors of weighted degree d, in a fixed order."""
        out = []
        w = self.weights
        n = self.n

        def rec(i, remaining, prefix):
            if i == n - 1:
                if remaining % w[i] == 0:
                    out.append(tuple(prefix) + (remaining // w[i],))
                return
            for a in range(remaining // w[i], -1, -1):
                prefix.append(a)
                rec(i + 1, remaining - a * w[i], prefix)
                prefix.pop()

        if d < 0:
            return []
        rec(0, d, [])
        return out


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRingSpec, terms: Mapping[tuple, int]):
        p = ring.p
        clean = {}
        for e, c in terms.items():
            c %= p
            if c:
                clean[tuple(e)] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # basic protocol ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exp, coeff: int = 1) -> "Polynomial":
        p = self.ring.p
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): c * coeff % p for e, c in self.terms.items()}
        )

    def frobenius_power(self, q: int) -> "Polynomial":
        """f^q for q a power of p: exponents scale by q, F_p coefficients are fixed."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a * q for a in e)
            if any(a >= EXPONENT_LIMIT for a in ne):
                raise ExponentOverflow(f"exponent overflow raising to the power {q}")
            out[ne] = c
        return Polynomial._raw(self.ring, out)

    # degrees -----------------------------------------------------------
    def degrees(self):
        return {self.ring.degree_of(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weighted_degree(self) -> int:
        """The common weighted degree of all terms.

        Raises ZeroPolynomial for 0 and NonHomogeneous when terms disagree.
        """
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        ds = self.degrees()
        if len(ds) != 1:
            raise NonHomogeneous(f"{self} is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.n, 0)

    def variables(self):
        return sorted({i for e in self.terms for i, a in enumerate(e) if a})

    def substitute(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variable i by values[i] (others stay)."""
        ring = self.ring
        result = ring.zero()
        for e, c in self.terms.items():
            term = ring.const(c)
            rest = list(e)
            for i, v in values.items():
                if e[i]:
                    term = term * v ** e[i]
                    rest[i] = 0
            result = result + term * ring.monomial(rest)
        return result

    # display -----------------------------------------------------------
    def sorted_terms(self):
        """Terms sorted by decreasing degree then decreasing exponents."""
        return sorted(self.terms.items(), key=lambda t: (self.ring.degree_of(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if a == 1 else f"{name}^{a}" for name, a in zip(self.ring.names, e) if a
            )
            # print coefficients in the symmetric range for readability
            sign = "+"
            if c > p // 2 and p > 2:
                sign, c = "-", p - c
            if mono:
                body = mono if c == 1 else f"{c}*{mono}"
            else:
                body = str(c)
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def weighted_degree(f: Polynomial) -> int:
    return f.weighted_degree()


# ----------------------------------------------------------------------
# expression parser: + - * ^, integer literals, parentheses, variable names

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*^()−]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        num, name, op = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            tokens.append(("num", int(num), col))
        elif name is not None:
            tokens.append(("name", name, col))
        else:
            op = {"−": "-", "**": "^"}.get(op, op)
            tokens.append(("op", op, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", column=col)

    def parse(self):
        f = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", column=col)
        return f

    def expr(self):
        kind, val, _ = self.peek()
        neg = False
        if kind == "op" and val in "+-":
            self.take()
            neg = val == "-"
        f = self.term()
        if neg:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.power()
            elif kind in ("name", "num") or (kind == "op" and val == "("):
                # implicit multiplication, e.g. 2x or x(y+1)
                f = f * self.power()
            else:
                return f

    def power(self):
        base = self.atom()
        kind, val, col = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, col = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", column=col)
            return base**exp
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", column=col)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect(")")
            return f
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}", column=col)


def parse_polynomial(ring: PolyRingSpec, text: str) -> Polynomial:
    return _Parser(ring, text).parse()
