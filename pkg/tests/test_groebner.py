import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fsing.errors import UnitIdeal
from fsing.groebner import (
    IdealPresentation,
    MonomialOrder,
    bracket_colon,
    bracket_power,
    colon,
    colon_element,
    eliminate,
    hilbert_sample,
    intersect,
    krull_dim,
    normal_form,
    reduced_groebner,
)
from fsing.polynomials import PolyRingSpec

from _util import random_homogeneous


def ideal(p, names, gens, weights=None):
    R = PolyRingSpec(p, names, weights)
    return R, IdealPresentation(R, [R.parse(g) for g in gens])


def test_groebner_examples():
    R, I = ideal(5, "xy", ["x^2", "x*y"])
    assert sorted(map(str, I.groebner())) == sorted(["x^2", "x*y"])
    R, I = ideal(7, "xyz", ["x*y - z^2", "y^2 - x*z"])
    G = I.groebner()
    # y^3 - xyz... the S-pair produces a degree-3 element
    assert any(g.weighted_degree() == 3 for g in G)
    for g in I.gens:
        assert G.contains(g)
    R, I = ideal(3, "xy", ["x", "x + 1*y", "y"])
    assert sorted(I.groebner().lead_exponents()) == [(0, 1), (1, 0)]


def test_normal_form_examples():
    R, I = ideal(5, "xy", ["x^2", "x*y"])
    G = I.groebner()
    rem, quots = normal_form(R.parse("x^2*y + y^3"), G)
    assert rem == R.parse("y^3")
    total = rem
    for q, g in zip(quots, G):
        total = total + q * g
    assert total == R.parse("x^2*y + y^3")
    assert G.contains(R.parse("x^3 + x*y^2"))
    assert not G.contains(R.parse("y^2"))


def test_hilbert_and_dimension_examples():
    _, I = ideal(5, "xy", ["x^2", "x*y"])
    assert hilbert_sample(I, 0, 3) == [1, 2, 1, 1]
    assert krull_dim(I) == 1
    _, I = ideal(5, "xyz", ["x*y", "x*z", "y*z"])
    assert hilbert_sample(I, 0, 2) == [1, 3, 3]
    assert krull_dim(I) == 1
    _, I = ideal(5, "xyz", [])
    assert hilbert_sample(I, 0, 2) == [1, 3, 6]
    assert krull_dim(I) == 3
    _, I = ideal(5, "xy", ["x", "y"])
    assert hilbert_sample(I, 1, 1) == [0]
    assert krull_dim(I) == 0
    _, I = ideal(5, "xy", ["x + 0*y", "x"])
    assert krull_dim(I) == 1
    R = PolyRingSpec(5, "xy")
    with pytest.raises(UnitIdeal):
        krull_dim(IdealPresentation(R, [R.one()]))


def test_fixture_dimensions(fixture_data):
    assert krull_dim(fixture_data("semigroup").ideal) == 2
    assert krull_dim(fixture_data("fedder-singh").ideal) == 2
    assert krull_dim(fixture_data("segre-p2").ideal) == 3


def test_colon_examples():
    R, I = ideal(5, "xy", ["x^2", "x*y"])
    C = colon_element(I, R.parse("x"))
    assert C.equals(IdealPresentation(R, [R.parse("x"), R.parse("y")]))
    C = colon_element(I, R.parse("y"))
    assert C.equals(IdealPresentation(R, [R.parse("x")]))
    R, I = ideal(3, "uvz", ["u*v", "u*z", "v*z"])
    C = colon(I, IdealPresentation(R, [R.parse("u")]))
    assert C.equals(IdealPresentation(R, [R.parse("v"), R.parse("z")]))
    assert colon_element(I, R.zero()).is_unit()


def test_intersection_example():
    R = PolyRingSpec(5, "uvz")
    A = IdealPresentation(R, [R.parse("u")])
    B = IdealPresentation(R, [R.parse("v"), R.parse("z")])
    C = intersect(A, B)
    assert C.equals(IdealPresentation(R, [R.parse("u*v"), R.parse("u*z")]))


def test_bracket_power_composition():
    R, I = ideal(3, "xyz", ["x*y - z^2", "x + y"])
    assert bracket_power(bracket_power(I, 1), 1).equals(bracket_power(I, 2))
    assert bracket_power(I, 0).equals(I)


@pytest.mark.parametrize(
    "p,gens",
    [(2, ["u*v", "u*z", "v*z"]), (3, ["x^2"]), (5, ["x*y - z^2"]), (3, ["x^2", "y^2"])],
)
def test_bracket_colon_matches_two_step(p, gens):
    R, I = ideal(p, "uvz" if "u" in gens[0] else "xyz", gens)
    fast = bracket_colon(I, 1)
    slow = colon(bracket_power(I, 1), I)
    assert fast.equals(slow)


def test_bracket_colon_degree_cap_keeps_low_generators():
    R, I = ideal(2, "uvz", ["u*v", "u*z", "v*z"])
    capped = bracket_colon(I, 1, max_degree=3)
    assert capped.contains(R.parse("u*v*z"))


@pytest.mark.parametrize("seed", range(6))
def test_generator_shuffle_invariance(seed):
    R = PolyRingSpec(5, "xyzw")
    rng = random.Random(seed)
    gens = [random_homogeneous(R, 2, rng, terms=3) for _ in range(3)]
    I = IdealPresentation(R, gens)
    shuffled = gens[:]
    rng.shuffle(shuffled)
    J = IdealPresentation(R, shuffled + [gens[0] * R.parse("x")])
    assert sorted(map(str, I.groebner())) == sorted(map(str, J.groebner()))


def test_elimination():
    R = PolyRingSpec(7, "txy")
    I = IdealPresentation(R, [R.parse("x - t"), R.parse("y - t")])
    elim = eliminate(I, 1)
    assert elim and all(IdealPresentation(R, [R.parse("x - y")]).contains(g) for g in elim)
    gb = reduced_groebner(I, MonomialOrder("elim", 1))
    assert gb.contains(R.parse("x - y"))


SMALL = PolyRingSpec(2, "xy")


def _all_polys_of_degree(ring, d):
    monos = list(ring.monomials_of_degree(d))
    for coeffs in itertools.product(range(ring.p), repeat=len(monos)):
        yield sum((ring.monomial(m, c) for m, c in zip(monos, coeffs) if c), ring.zero())


@given(st.lists(st.sampled_from(list(_all_polys_of_degree(SMALL, 2))), min_size=1, max_size=3))
def test_membership_matches_brute_force(gens):
    """In degree 3 over F_2, I_3 is the span of {x,y} * gens; compare with GB membership."""
    I = IdealPresentation(SMALL, gens)
    span = set()
    products = [SMALL.parse(v) * g for v in "xy" for g in gens]
    for coeffs in itertools.product(range(2), repeat=len(products)):
        f = sum((c * h for c, h in zip(coeffs, products)), SMALL.zero())
        span.add(f)
    for f in _all_polys_of_degree(SMALL, 3):
        assert I.contains(f) == (f in span)


@given(st.integers(0, 2**32 - 1))
def test_colon_property(seed):
    R = PolyRingSpec(3, "xyz")
    rng = random.Random(seed)
    I = IdealPresentation(R, [random_homogeneous(R, 2, rng, terms=2) for _ in range(2)])
    J = IdealPresentation(R, [random_homogeneous(R, 1, rng, terms=2)])
    C = colon(I, J)
    for c in C.gens:
        for g in J.gens:
            assert I.contains(c * g)
    assert C.contains_ideal(I)


def test_zero_column_is_its_own_syzygy():
    from fsing.groebner import syzygy_polys

    R = PolyRingSpec(2, "xy")
    syz = syzygy_polys(R, (0,), [R.parse("x"), R.zero(), R.parse("y")])
    assert [R.zero(), R.one(), R.zero()] in syz
    assert len(syz) == 2
