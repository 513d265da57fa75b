"""Minimal free resolutions, Betti numbers, depth and the Ext modules behind local duality."""

from fsing.homological import depth_via_AB, ext_modules, resolution_of
from fsing.report import load_fixture

I = load_fixture("semigroup").ideal
res = resolution_of(I)
print("graded Betti numbers:", res.betti())
print("depth:", depth_via_AB(I))
n = I.ring.n
for j, N in enumerate(ext_modules(I)):
    if not N.is_zero():
        print(f"Ext^{j}(R, A) is nonzero; it is dual to H^{n - j} of the maximal ideal")
