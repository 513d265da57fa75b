"""Certificates from deformation theorems: what R/(x) tells us about R.

Facts are pairs (subject, property) with subject "R", "R/(x)", "x" or "k".
Base facts are decided by computation; rules derive new facts, and a
certificate is a shortest derivation (fewest rule applications) of the
target. Unknown base facts are never used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .classify import (
    FALSE,
    TRUE,
    UNKNOWN,
    classify,
    coherence_violations,
    fedder_test,
    fedder_witness,
    regular_element,
    strictly_filter_regular,
    surjective_element,
    twisted_injectivity,
)
from .errors import CapExceeded, NotRegular, UnitIdeal
from .groebner import IdealPresentation, eliminate, krull_dim
from .polynomials import PolyRingSpec, Polynomial

R, Q, X, K = "R", "R/(x)", "x", "k"

AN, INJ, FULL, SFI, PURE = "F-anti-nilpotent", "F-injective", "F-full", "strongly-F-injective", "F-pure"
CM, GCM, REG, SFR, PERFECT = "Cohen-Macaulay", "generalized-CM", "regular", "strictly-filter-regular", "perfect"
SURJ, DEPTH_FM = "surjective-element", "depth=f_m"
TWIST_ALL, TWIST_DEPTH = "x^(p-1)F injective on all H^i", "x^(p-1)F injective on H^depth"


@dataclass(frozen=True)
class Rule:
    id: str
    anchor: str
    premises: tuple
    conclusions: tuple


RULES = (
    Rule("R1", "R/(x) F-anti-nilpotent implies R F-anti-nilpotent", ((Q, AN), (X, REG)), ((R, AN),)),
    Rule("R2", "R/(x) F-full implies R F-full", ((Q, FULL), (X, REG)), ((R, FULL),)),
    Rule("R3", "R/(x) strongly F-injective implies R strongly F-injective", ((Q, SFI), (X, REG)), ((R, SFI),)),
    Rule("R4", "R/(x) F-full and F-injective implies R F-injective", ((Q, FULL), (Q, INJ), (X, REG)), ((R, INJ),)),
    Rule("R5", "R/(x) F-full implies x is a surjective element", ((Q, FULL), (X, REG)), ((X, SURJ),)),
    Rule("R6", "R/(x) F-injective implies depth R = f_m(R)", ((Q, INJ), (X, REG)), ((R, DEPTH_FM),)),
    Rule(
        "R7",
        "perfect residue field, x strictly filter regular, R/(x) F-injective: x^(p-1)F injective, R F-injective",
        ((K, PERFECT), (X, SFR), (Q, INJ), (X, REG)),
        ((R, TWIST_ALL), (R, INJ)),
    ),
    Rule("R8", "R/(x) F-injective and generalized CM implies R F-injective", ((Q, INJ), (Q, GCM), (X, REG)), ((R, INJ),)),
    Rule("R9", "F-pure implies F-anti-nilpotent", ((R, PURE),), ((R, AN),)),
    Rule("R9", "F-pure implies F-anti-nilpotent", ((Q, PURE),), ((Q, AN),)),
    Rule("R10", "R/(x) F-injective implies x^(p-1)F injective on H^t, t = depth R", ((Q, INJ), (X, REG)), ((R, TWIST_DEPTH),)),
    Rule("AN-INJ", "F-anti-nilpotent implies F-injective", ((R, AN),), ((R, INJ),)),
    Rule("AN-INJ", "F-anti-nilpotent implies F-injective", ((Q, AN),), ((Q, INJ),)),
    Rule("AN-FULL", "F-anti-nilpotent implies F-full", ((R, AN),), ((R, FULL),)),
    Rule("AN-FULL", "F-anti-nilpotent implies F-full", ((Q, AN),), ((Q, FULL),)),
    Rule("CM-FULL", "Cohen-Macaulay implies F-full", ((Q, CM),), ((Q, FULL),)),
    Rule("SFI-DEF", "F-injective and F-full is strongly F-injective", ((Q, INJ), (Q, FULL)), ((Q, SFI),)),
    Rule("SFI-DEF", "F-injective and F-full is strongly F-injective", ((R, INJ), (R, FULL)), ((R, SFI),)),
)

TARGETS = {
    "anti-nilpotent": AN,
    "f-anti-nilpotent": AN,
    "f-full": FULL,
    "full": FULL,
    "f-injective": INJ,
    "injective": INJ,
    "strongly-f-injective": SFI,
    "surjective": SURJ,
    "surjective-element": SURJ,
    "depth-fm": DEPTH_FM,
    "twisted-injective": TWIST_ALL,
}


def target_property(name: str) -> tuple:
    key = name.strip().lower()
    if key not in TARGETS:
        raise ValueError(f"unknown target {name!r}; choose from {sorted(TARGETS)}")
    prop = TARGETS[key]
    return (X if prop == SURJ else R, prop)


@dataclass
class Premise:
    subject: str
    prop: str
    status: str
    source: str  # "computed" or "step k"
    witness: object = None

    def to_json(self):
        out = {"statement": f"{self.subject} {self.prop}", "status": self.status, "source": self.source}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Step:
    rule: str
    anchor: str
    premises: list
    conclusions: list

    def to_json(self):
        return {
            "rule": self.rule,
            "anchor": self.anchor,
            "premises": [p.to_json() for p in self.premises],
            "conclusions": [f"{s} {p}" for s, p in self.conclusions],
        }


@dataclass
class DeformationCertificate:
    conclusion: str
    element: str
    steps: list

    proved = True

    @property
    def rule_ids(self):
        return [s.rule for s in self.steps]

    def to_json(self):
        return {
            "proved": True,
            "conclusion": self.conclusion,
            "element": self.element,
            "chain": [s.to_json() for s in self.steps],
        }


@dataclass
class Unprovable:
    conclusion: str
    element: str
    base_facts: list = field(default_factory=list)

    proved = False

    def to_json(self):
        return {
            "proved": False,
            "conclusion": self.conclusion,
            "element": self.element,
            "base_facts": [p.to_json() for p in self.base_facts],
        }


def _status(v):
    return v.status if hasattr(v, "status") else (TRUE if v else FALSE)


def base_facts(I: IdealPresentation, x: Polynomial, quotient_report=None, ring_pure=None):
    """Computationally decided facts feeding the rules (status, witness)."""
    facts = {}
    facts[(K, PERFECT)] = (TRUE, {"field": f"F_{I.ring.p}"})
    facts[(X, REG)] = (TRUE if regular_element(I, x) else FALSE, None)
    if facts[(X, REG)][0] != TRUE:
        return facts
    Iq = I + x
    qr = quotient_report or classify(Iq, anti_nilpotent_depth=0)
    facts[(Q, PURE)] = (qr.F_pure.status, qr.F_pure.witness)
    facts[(Q, INJ)] = (qr.F_injective.status, qr.F_injective.witness)
    facts[(Q, FULL)] = (qr.F_full.status, qr.F_full.witness)
    facts[(Q, CM)] = (TRUE if qr.is_CM else FALSE, {"depth": qr.depth, "dim": qr.dim})
    facts[(Q, GCM)] = (TRUE if qr.is_gCM else FALSE, None)
    try:
        facts[(X, SFR)] = (TRUE if strictly_filter_regular(I, x) else FALSE, None)
    except CapExceeded:
        facts[(X, SFR)] = (UNKNOWN, None)
    if ring_pure is None:
        try:
            ok, w = fedder_test(I)
            ring_pure = (TRUE if ok else FALSE, fedder_witness(w) if ok else None)
        except CapExceeded:
            ring_pure = (UNKNOWN, None)
    facts[(R, PURE)] = ring_pure
    return facts


def _derive(facts):
    """Shortest derivations: fact -> (size, rule, premise facts)."""
    best = {f: (0, None, ()) for f, (st, _) in facts.items() if st == TRUE}
    changed = True
    while changed:
        changed = False
        for rule in RULES:
            if not all(p in best for p in rule.premises):
                continue
            size = 1 + sum(best[p][0] for p in rule.premises)
            for c in rule.conclusions:
                if c not in best or best[c][0] > size:
                    best[c] = (size, rule, rule.premises)
                    changed = True
    return best


def _chain(best, facts, goal):
    steps, index = [], {}

    def visit(f):
        size, rule, prem = best[f]
        if rule is None:
            return
        key = (rule.id, rule.premises)
        if key in index:
            return
        for p in prem:
            visit(p)
        premises = []
        for p in prem:
            if best[p][1] is None:
                st, w = facts[p]
                premises.append(Premise(p[0], p[1], st, "computed", w))
            else:
                k = index[(best[p][1].id, best[p][1].premises)]
                premises.append(Premise(p[0], p[1], TRUE, f"step {k + 1}"))
        index[key] = len(steps)
        steps.append(Step(rule.id, rule.anchor, premises, list(rule.conclusions)))

    visit(goal)
    return steps


def deform_certify(I: IdealPresentation, x: Polynomial, target: str, facts=None):
    """A minimal rule chain proving `target` for R (or for x), or Unprovable."""
    subject, prop = target_property(target) if isinstance(target, str) else target
    if facts is None:
        if not regular_element(I, x):
            raise NotRegular(f"{x} is not a regular element")
        facts = base_facts(I, x)
    best = _derive(facts)
    goal = (subject, prop)
    label = f"{subject} {prop}"
    if goal not in best:
        return Unprovable(label, str(x), [Premise(s, p, st, "computed", w) for (s, p), (st, w) in sorted(facts.items())])
    return DeformationCertificate(label, str(x), _chain(best, facts, goal))


def certify_anti_nilpotent(I: IdealPresentation, report, elements, depth_left: int):
    """Certificate for F-anti-nilpotence of R: directly when F-pure, else by deforming.

    Candidates: declared elements, then the variables. A candidate must be
    regular; R/(x) must be F-pure, or (with depth to spare) itself certified.
    """
    ring = I.ring
    if report.F_pure.is_true:
        facts = {(R, PURE): (TRUE, report.F_pure.witness)}
        return DeformationCertificate(f"{R} {AN}", "", _chain(_derive(facts), facts, (R, AN)))
    candidates = list(elements.values()) + list(ring.gens())
    seen = set()
    for x in candidates:
        if x in seen or x.is_zero() or x.is_constant():
            continue
        seen.add(x)
        try:
            if not regular_element(I, x):
                continue
            Iq = I + x
            if Iq.is_unit():
                continue
            ok, w = fedder_test(Iq)
            facts = {(X, REG): (TRUE, None)}
            if ok:
                facts[(Q, PURE)] = (TRUE, fedder_witness(w))
                best = _derive(facts)
                return DeformationCertificate(f"{R} {AN}", str(x), _chain(best, facts, (R, AN)))
            if depth_left > 1:
                sub = classify(Iq, anti_nilpotent_depth=depth_left - 1)
                if sub.F_anti_nilpotent.is_true:
                    steps = [
                        Step("CERT", f"R/(x) certified F-anti-nilpotent (element {sub.certificate.element or 'none'})",
                             [Premise(Q, AN, TRUE, "nested certificate")], [(Q, AN)])
                    ]
                    r1 = next(r for r in RULES if r.id == "R1")
                    steps.append(Step("R1", r1.anchor, [Premise(Q, AN, TRUE, "step 1"), Premise(X, REG, TRUE, "computed")],
                                      list(r1.conclusions)))
                    return DeformationCertificate(f"{R} {AN}", str(x), steps)
        except (CapExceeded, UnitIdeal):
            continue
    return None


# ----------------------------------------------------------------------
# metamorphic cross-check


@dataclass
class Crosscheck:
    violations: list
    fired: list  # rules whose premises were verified

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


def consistency_crosscheck(I: IdealPresentation, x: Polynomial) -> Crosscheck:
    """For each rule with verified premises, verify its conclusion by direct computation."""
    if not regular_element(I, x):
        raise NotRegular(f"{x} is not a regular element")
    rr = classify(I, anti_nilpotent_depth=0)
    qr = classify(I + x, anti_nilpotent_depth=0)
    facts = base_facts(I, x, quotient_report=qr, ring_pure=(rr.F_pure.status, None))
    # anti-nilpotence of R/(x) is only known through purity here
    known = {f: st for f, (st, _) in facts.items()}
    known[(Q, AN)] = TRUE if qr.F_pure.is_true else UNKNOWN
    known[(Q, SFI)] = qr.strongly_F_injective.status

    lazy = {}

    def computed(fact):
        if fact in lazy:
            return lazy[fact]
        s, prop = fact
        if fact == (R, AN):
            # only the necessary conditions are decidable
            v = FALSE if (rr.F_injective.is_false or rr.F_full.is_false) else UNKNOWN
            if rr.F_pure.is_true:
                v = TRUE
        elif fact == (R, INJ):
            v = rr.F_injective.status
        elif fact == (R, FULL):
            v = rr.F_full.status
        elif fact == (R, SFI):
            v = rr.strongly_F_injective.status
        elif fact == (R, DEPTH_FM):
            v = TRUE if rr.f_m == rr.depth else FALSE
        elif fact == (X, SURJ):
            v = TRUE if surjective_element(I, x)[0] else FALSE
        elif fact == (R, TWIST_ALL):
            v = TRUE if all(twisted_injectivity(I, x, i) for i in range(0, rr.dim + 1)) else FALSE
        elif fact == (R, TWIST_DEPTH):
            v = TRUE if twisted_injectivity(I, x, rr.depth) else FALSE
        elif fact == (Q, AN):
            v = known[(Q, AN)]
        elif fact == (Q, INJ):
            v = qr.F_injective.status
        elif fact == (Q, FULL):
            v = qr.F_full.status
        elif fact == (Q, SFI):
            v = qr.strongly_F_injective.status
        else:
            v = UNKNOWN
        lazy[fact] = v
        return v

    violations, fired = [], []
    for rule in RULES:
        if not all(known.get(p) == TRUE for p in rule.premises):
            continue
        fired.append(rule.id)
        for c in rule.conclusions:
            try:
                v = computed(c)
            except CapExceeded:
                v = UNKNOWN
            if v == FALSE:
                violations.append({"rule": rule.id, "conclusion": f"{c[0]} {c[1]}", "computed": v})
    for a, b in ((rr, "R"), (qr, "R/(x)")):
        for msg in coherence_violations(a):
            violations.append({"rule": "coherence", "conclusion": f"{b}: {msg}", "computed": FALSE})
    return Crosscheck(violations, fired)


# ----------------------------------------------------------------------
# random instances


def _random_linear_form(ring, rng):
    terms = {}
    for k in range(ring.n):
        if ring.weights[k] == 1:
            c = rng.randrange(1, ring.p)
            e = [0] * ring.n
            e[k] = 1
            terms[tuple(e)] = c
    return Polynomial(ring, terms)


def random_monomial_ideal(rng, p):
    n = rng.choice([3, 4])
    ring = PolyRingSpec(p, [f"x{k}" for k in range(n)], [1] * n)
    gens = set()
    for _ in range(rng.randint(1, 4)):
        deg = rng.choice([2, 2, 3])
        support = rng.sample(range(n), min(deg, n))
        e = [0] * n
        for k in support:
            e[k] = 1
        if rng.random() < 0.3:
            e[support[0]] += 1
        gens.add(tuple(e))
    return IdealPresentation(ring, [ring.monomial(e) for e in sorted(gens)])


def random_toric_ideal(rng, p):
    """Kernel of y_k -> monomials of a fixed degree in s, t (a binomial prime ideal)."""
    deg = rng.choice([2, 3, 4])
    n = min(rng.choice([3, 4]), deg + 1)
    exps = sorted(rng.sample(range(deg + 1), n))
    if 0 not in exps:
        exps[0] = 0
    if deg not in exps:
        exps[-1] = deg
    exps = sorted(set(exps))
    n = len(exps)
    big = PolyRingSpec(p, ["s", "t"] + [f"y{k}" for k in range(n)], [1, 1] + [deg] * n)
    rel = [big.parse(f"y{k} - s^{deg - a}*t^{a}") for k, a in enumerate(exps)]
    kept = eliminate(IdealPresentation(big, rel), 2)
    ring = PolyRingSpec(p, [f"y{k}" for k in range(n)], [1] * n)
    return IdealPresentation(ring, [Polynomial(ring, {e[2:]: c for e, c in g.terms.items()}) for g in kept])


def random_instances(seed: int, count: int, max_tries: int = 400):
    """Seeded (description, I, x) triples with x a regular linear form."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        p = rng.choice([2, 3, 5])
        kind = rng.choice(["monomial", "toric"])
        I = random_monomial_ideal(rng, p) if kind == "monomial" else random_toric_ideal(rng, p)
        try:
            if I.is_unit() or krull_dim(I) < 1:
                continue
        except UnitIdeal:
            continue
        x = _random_linear_form(I.ring, rng)
        if not regular_element(I, x):
            continue
        desc = f"{kind} p={p} I=({', '.join(map(str, I.gens))}) x={x}"
        out.append((desc, I, x))
    return out
