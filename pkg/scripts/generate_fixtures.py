"""Regenerate the bundled fixtures whose ideals come from an elimination.

    python3 scripts/generate_fixtures.py [--check]

semigroup: kernel of F_5[a,b,c,d] -> F_5[s,t], a,b,c,d -> s^4, s^3 t, s t^3, t^4.
segre-pP: kernel of F_p[xs,xt,ys,yt,zs,zt] -> F_p[x,y,z,s,t]/(x^3+y^3+z^3),
          uv -> u*v (the Segre product of the cubic cone and the plane).
The remaining fixtures are typed in by hand. With --check, the committed
files are compared against freshly eliminated ideals instead of rewritten.
"""

import argparse
import pathlib
import sys

from fsing.groebner import IdealPresentation, eliminate, reduced_groebner
from fsing.polynomials import PolyRingSpec, Polynomial
from fsing.ringfile import RingInput, format_input, read_input

HEADERS = {
    "semigroup.fring": "# toric ring of the semigroup generated by s^4, s^3t, st^3, t^4\n"
    "# (kernel of a,b,c,d -> s^4, s^3t, st^3, t^4; regenerate with scripts/generate_fixtures.py)\n",
    "segre-p2.fring": "# Segre product of the cubic cone x^3+y^3+z^3 with the plane k[s,t]\n"
    "# (regenerate with scripts/generate_fixtures.py)\n",
}
HEADERS["segre-p7.fring"] = HEADERS["segre-p2.fring"]

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "fsing" / "fixtures"


def semigroup():
    big = PolyRingSpec(5, ["s", "t", "a", "b", "c", "d"], [1, 1, 4, 4, 4, 4])
    images = {"a": "s^4", "b": "s^3*t", "c": "s*t^3", "d": "t^4"}
    I = IdealPresentation(big, [big.parse(f"{v} - {img}") for v, img in images.items()])
    kept = eliminate(I, 2)
    ring = PolyRingSpec(5, ["a", "b", "c", "d"], [1, 1, 1, 1])
    gens = [Polynomial(ring, {e[2:]: c for e, c in g.terms.items()}) for g in kept]
    return RingInput(IdealPresentation(ring, gens), {"x": ring.parse("a + d")}, "grevlex", "semigroup")


def segre(p):
    names = ["x", "y", "z", "s", "t", "xs", "xt", "ys", "yt", "zs", "zt"]
    big = PolyRingSpec(p, names, [1] * 5 + [2] * 6)
    rel = [big.parse(f"{u}{w} - {u}*{w}") for u in "xyz" for w in "st"]
    rel.append(big.parse("x^3 + y^3 + z^3"))
    kept = eliminate(IdealPresentation(big, rel), 5)
    ring = PolyRingSpec(p, names[5:], [1] * 6)
    gens = [Polynomial(ring, {e[5:]: c for e, c in g.terms.items()}) for g in kept]
    gb = reduced_groebner(IdealPresentation(ring, gens))
    return RingInput(IdealPresentation(ring, list(gb)), {"x": ring.parse("xs + yt")}, "grevlex", f"segre-p{p}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    built = {"semigroup.fring": semigroup(), "segre-p2.fring": segre(2), "segre-p7.fring": segre(7)}
    bad = 0
    for fname, data in built.items():
        path = OUT / fname
        if args.check:
            old = read_input(path)
            same = old.ideal.equals(data.ideal) and data.ideal.equals(old.ideal)
            print(f"{fname}: {'ok' if same else 'MISMATCH'}")
            bad += not same
        else:
            path.write_text(HEADERS[fname] + format_input(data), encoding="utf-8")
            print(f"wrote {path}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
