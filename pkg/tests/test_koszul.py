import numpy as np
import pytest

from fsing.cartier import materialize_H
from fsing.groebner import IdealPresentation
from fsing.koszul import KoszulComplex, koszul_oracle, radical_variables
from fsing.polynomials import PolyRingSpec
from fsing.report import compare_windows, oracle_report

CASES = [
    ("semigroup", 1, (-2, 3)),
    ("semigroup", 2, (-3, 1)),
    ("stanley-reisner-p2", 1, (-2, 2)),
    ("stanley-reisner-p3", 1, (-2, 2)),
    ("stanley-reisner-p5", 1, (-2, 2)),
    ("segre-p2", 2, (-2, 2)),
]


@pytest.mark.parametrize("name,i,window", CASES)
def test_duality_agrees_with_koszul(fixture_data, name, i, window):
    I = fixture_data(name).ideal
    dual = materialize_H(I, i, window, check_socle=False)
    assert all(window[0] <= d <= window[1] for d in dual.socle_degrees)
    oracle = koszul_oracle(I, i, window)
    assert dual.dims == oracle.dims
    assert compare_windows(dual, oracle, I.ring.p) == []


def test_oracle_report_structure(fixture_data):
    rep = oracle_report(fixture_data("semigroup"), 1, (-2, 3))
    assert rep["agree"] and rep["mismatches"] == []
    row = [r for r in rep["degrees"] if r["degree"] == 1][0]
    assert row["dim_duality"] == row["dim_koszul"] == 1


def test_polynomial_ring_top_cohomology():
    R = PolyRingSpec(3, "xy")
    I = IdealPresentation(R, [])
    oracle = koszul_oracle(I, 2, (-4, 0))
    assert oracle.dims_list() == [3, 2, 1, 0, 0]
    dual = materialize_H(I, 2, (-4, 0))
    assert compare_windows(dual, oracle, 3) == []


def test_radical_variables(fixture_data):
    assert len(radical_variables(fixture_data("semigroup").ideal)) == 2
    R = PolyRingSpec(5, "xyz")
    assert radical_variables(IdealPresentation(R, [R.parse("x")])) == (1, 2)


def test_compare_detects_differences(fixture_data):
    I = fixture_data("segre-p7").ideal
    dual = materialize_H(I, 2, (-1, 1))
    oracle = koszul_oracle(I, 2, (-1, 1))
    assert compare_windows(dual, oracle, 7) == []
    oracle.frobenius[0] = np.array([[3]])
    assert compare_windows(dual, oracle, 7)
    oracle.dims[1] = 5
    assert any(m["what"] == "dimension" for m in compare_windows(dual, oracle, 7))


def test_koszul_complex_is_a_complex(fixture_data):
    K = KoszulComplex(fixture_data("semigroup").ideal)
    for t in (1, 2):
        for d in range(-1, 4):
            a = K.differential(0, t, d)
            b = K.differential(1, t, d)
            if a.size and b.size:
                assert not (b @ a % 5).any()


def _random_quotients(count):
    from fsing.deform import random_instances

    for desc, I, x in random_instances(11, count):
        yield desc, I + x


@pytest.mark.parametrize("k", range(6))
def test_duality_agrees_with_koszul_on_random_quotients(k):
    from fsing.homological import ext_modules

    desc, J = list(_random_quotients(6))[k]
    n = J.ring.n
    checked = 0
    for j, N in enumerate(ext_modules(J)):
        if N.rank == 0:
            continue
        window = (-3, 2)
        dual = materialize_H(J, n - j, window, check_socle=False)
        oracle = koszul_oracle(J, n - j, window)
        assert compare_windows(dual, oracle, J.ring.p) == [], desc
        checked += 1
    assert checked
