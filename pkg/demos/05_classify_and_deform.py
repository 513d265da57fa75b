"""Ring-level Frobenius verdicts and a deformation certificate."""

from fsing.classify import classify
from fsing.deform import deform_certify
from fsing.report import load_fixture

for name in ("semigroup", "stanley-reisner-p3", "fedder-singh"):
    d = load_fixture(name)
    r = classify(d.ideal, d.elements)
    print(f"{name}: F-pure {r.F_pure.status}, F-injective {r.F_injective.status}, "
          f"F-full {r.F_full.status}, depth {r.depth}, dim {r.dim}, f_m {r.f_m}")

d = load_fixture("fedder-singh")
cert = deform_certify(d.ideal, d.elements["y"], "anti-nilpotent")
print("F-anti-nilpotence via y:", cert.rule_ids)
for step in cert.steps:
    print("  ", step.rule, "->", step.anchor)
