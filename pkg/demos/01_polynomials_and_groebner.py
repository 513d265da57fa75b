"""Weighted polynomial arithmetic, Groebner bases, colon ideals and Hilbert functions."""

from fsing.groebner import IdealPresentation, hilbert_sample
from fsing.polynomials import PolyRingSpec

R = PolyRingSpec(3, "xyz")
f = R.parse("x + 2*y")
print("f^3 =", f ** 3, "(Frobenius is additive in characteristic 3)")

I = IdealPresentation(R, [R.parse(g) for g in ("x^2", "x*y", "y^3")])
print("reduced Groebner basis:", [str(g) for g in I.groebner()])
print("Hilbert function of A/I in degrees 0..4:", hilbert_sample(I, 0, 4))
print("x*y^2 in I?", I.contains(R.parse("x*y^2")))
