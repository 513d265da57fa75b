"""Frobenius action on graded pieces of local cohomology, cross-checked against a Koszul computation."""

from fsing.cartier import materialize_H
from fsing.koszul import koszul_oracle
from fsing.report import compare_windows, load_fixture

I = load_fixture("semigroup").ideal
H = materialize_H(I, 1, (-2, 3))
print("dim H^1 by degree:", H.dims)
for d, M in H.frobenius.items():
    if H.dims[d]:
        # H^1 vanishes in degree d*p, so Frobenius is zero on H^1_d
        print(f"Frobenius H^1_{d} -> H^1_{d * I.ring.p}: shape {M.shape}, zero {not M.any()}")

oracle = koszul_oracle(I, 1, (-2, 3))
print("Koszul dims agree:", oracle.dims == H.dims)
print("mismatches:", compare_windows(H, oracle, I.ring.p))
