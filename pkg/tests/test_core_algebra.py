import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fsing.errors import (
    ExponentOverflow,
    NonHomogeneous,
    NonPrimeCharacteristic,
    ParseError,
    ZeroInverse,
    ZeroPolynomial,
)
from fsing.fields import GF, PrimeField, RationalFunctionField, field_inv
from fsing.linalg import FpMatrix, kernel_basis, mat_kernel, rank
from fsing.polynomials import PolyRingSpec, weighted_degree

PRIMES = [2, 3, 5, 7, 11, 101]


@pytest.mark.parametrize("a,p,expected", [(2, 5, 3), (1, 7, 1), (4, 7, 2)])
def test_field_inv_examples(a, p, expected):
    assert field_inv(a, PrimeField(p)) == expected


def test_field_inv_zero():
    with pytest.raises(ZeroInverse):
        field_inv(0, PrimeField(5))


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
def test_non_prime_characteristic(p):
    with pytest.raises(NonPrimeCharacteristic):
        PrimeField(p)
    with pytest.raises(NonPrimeCharacteristic):
        PolyRingSpec(p, ["x"])


@given(st.sampled_from(PRIMES), st.integers(min_value=1, max_value=10**6))
def test_field_inv_involution(p, a):
    F = PrimeField(p)
    a %= p
    if a == 0:
        return
    inv = field_inv(a, F)
    assert a * inv % p == 1
    assert field_inv(inv, F) == a


@pytest.mark.parametrize("field", [GF(2), GF(3), GF(2, 2), GF(3, 2), GF(2, 3)], ids=repr)
def test_finite_field_axioms_exhaustive(field):
    els = list(field.elements())
    assert len(els) == field.q
    for a in els:
        assert field.add(a, field.neg(a)) == field.zero
        if a:
            assert field.mul(a, field.inv(a)) == field.one
        assert field.frob(field.pth_root(a)) == a
    for a, b in itertools.product(els, repeat=2):
        assert field.add(a, b) == field.add(b, a)
        assert field.mul(a, b) == field.mul(b, a)
        # Frobenius is a ring endomorphism
        assert field.frob(field.add(a, b)) == field.add(field.frob(a), field.frob(b))
        assert field.frob(field.mul(a, b)) == field.mul(field.frob(a), field.frob(b))
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rational_function_field(p):
    k = RationalFunctionField(p)
    assert not k.perfect
    rng = random.Random(p)
    for _ in range(60):
        a, b, c = k.random(rng), k.random(rng), k.random(rng)
        assert k.add(a, b) == k.add(b, a)
        assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
        assert k.frob(k.mul(a, b)) == k.mul(k.frob(a), k.frob(b))
        if not k.is_zero(a):
            assert k.mul(a, k.inv(a)) == k.one
        # a = sum_j t^j g_j^p over the p-basis 1, t, ..., t^(p-1)
        parts = k.decompose(a)
        total = k.zero
        for tj, g in zip(k.p_basis(), parts):
            total = k.add(total, k.mul(tj, k.frob(g)))
        assert total == a
    # t has no p-th root: its decomposition has no component on the basis element 1
    parts = k.decompose(k.t)
    assert k.is_zero(parts[0]) and parts[1] == k.one


def test_mat_kernel_examples():
    assert mat_kernel(FpMatrix.identity(2, 3)) == []
    K = mat_kernel(FpMatrix.zeros(2, 3, 5))
    assert sorted(map(tuple, K)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    K = mat_kernel(FpMatrix([[1, 1], [2, 2]], 5))
    assert len(K) == 1
    v = np.array(K[0]) * field_inv(int(K[0][0]), PrimeField(5)) % 5
    assert tuple(v) == (1, 4)
    # brute force over all 25 vectors
    brute = [(a, b) for a in range(5) for b in range(5) if (a + b) % 5 == 0 and (2 * a + 2 * b) % 5 == 0]
    assert len(brute) == 5 ** len(K)


@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=1, max_value=6),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_rank_nullity(p, rows, cols, seed):
    a = np.random.default_rng(seed).integers(0, p, size=(rows, cols))
    K = kernel_basis(a, p)
    r = rank(a, p)
    assert r <= min(rows, cols)
    assert r + len(K) == cols
    for v in K:
        assert not (a @ np.asarray(v) % p).any()
    if len(K):
        assert rank(np.asarray(K), p) == len(K)


def test_weighted_degree_examples():
    R = PolyRingSpec(5, ["U", "V", "Y", "Z"], [2, 2, 1, 2])
    assert weighted_degree(R.parse("U*V")) == 4
    assert weighted_degree(R.parse("Z*(V - Y^2)")) == 4
    S = PolyRingSpec(5, ["x", "y"])
    with pytest.raises(NonHomogeneous):
        weighted_degree(S.parse("x + y^2"))
    with pytest.raises(ZeroPolynomial):
        weighted_degree(S.zero())


def test_ring_spec_invariants():
    R = PolyRingSpec(3, ["a", "b", "c"], [1, 2, 3])
    assert R.D == 6 and R.n == 3
    with pytest.raises(ValueError):
        PolyRingSpec(3, [], [])
    with pytest.raises(ValueError):
        PolyRingSpec(3, ["a"], [0])


def test_parse_and_print():
    R = PolyRingSpec(5, ["x", "y", "z"])
    f = R.parse("(x + 2*y)^2 - 3*x*z")
    assert f == R.parse("x^2 + 4*x*y + 4*y^2 + 2*x*z")
    assert R.parse(str(f)) == f
    assert R.parse("-x") == R.parse("4*x")
    with pytest.raises(ParseError) as err:
        R.parse("x + w")
    assert err.value.column == 5
    with pytest.raises(ParseError):
        R.parse("x +")


def test_frobenius_power_and_overflow():
    R = PolyRingSpec(2, ["x", "y"])
    assert R.parse("x + y").frobenius_power(2) == R.parse("x^2 + y^2")
    assert (R.parse("x + y") ** 4) == R.parse("x^4 + y^4")
    with pytest.raises(ExponentOverflow):
        R.parse("x").frobenius_power(2**70)


def _poly_strategy(ring):
    mono = st.tuples(*[st.integers(0, 3) for _ in range(ring.n)])
    return st.dictionaries(mono, st.integers(1, ring.p - 1), max_size=5).map(
        lambda t: sum((ring.monomial(e, c) for e, c in t.items()), ring.zero())
    )


RING = PolyRingSpec(5, ["x", "y", "z"], [1, 2, 3])


@given(_poly_strategy(RING), _poly_strategy(RING), _poly_strategy(RING))
def test_polynomial_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == RING.zero()
    assert f + RING.zero() == f and f * RING.one() == f


@given(st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3), st.integers(1, 4))
def test_degree_of_product(a, b, c):
    f = RING.monomial(a, c) + RING.monomial(a, 1) * 0
    g = RING.monomial(b, 1)
    assert (f * g).weighted_degree() == f.weighted_degree() + g.weighted_degree()
    assert f.is_homogeneous()
