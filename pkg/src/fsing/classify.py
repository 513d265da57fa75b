"""Ring-level Frobenius verdicts and element tests for R = A/I.

Index i of local cohomology pairs with N = Ext^{n-i}_A(R, A):
  F injective on H^i   <=>  Theta(N) = N
  F_A(H^i) -> H^i onto <=>  delta : N -> F_A(N) injective
  F nilpotent on H^i   <=>  Theta^e(N) = 0 for some e
F-purity comes from Fedder's criterion, (I^[p] : I) not inside m^[p].
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cartier import cartier_theta, comparison_delta, hsl_iterate, theta_image
from .errors import CapExceeded, NotRegular, UnitIdeal
from .groebner import IdealPresentation, bracket_colon, colon_element, krull_dim
from .homological import (
    depth_via_AB,
    ext_modules,
    finite_length,
    module_kernel,
    multiplication_map,
)
from .polynomials import Polynomial

TRUE, FALSE, UNKNOWN = "true", "false", "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: object = None

    def __post_init__(self):
        if self.status not in (TRUE, FALSE, UNKNOWN):
            raise ValueError(f"bad verdict status {self.status!r}")

    @property
    def is_true(self):
        return self.status == TRUE

    @property
    def is_false(self):
        return self.status == FALSE

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _both(a: Verdict, b: Verdict) -> Verdict:
    if a.is_false:
        return a
    if b.is_false:
        return b
    if a.is_true and b.is_true:
        return Verdict(TRUE)
    return Verdict(UNKNOWN)


def _vec_str(vec):
    return [str(f) for f in vec]


@dataclass
class IndexVerdicts:
    i: int
    ext_index: int
    h_zero: bool
    finite_length: bool | None
    F_injective: Verdict
    F_full: Verdict
    F_nilpotent: Verdict

    def to_json(self):
        return {
            "i": self.i,
            "ext_index": self.ext_index,
            "H_is_zero": self.h_zero,
            "H_finite_length": self.finite_length,
            "F_injective": self.F_injective.to_json(),
            "F_full": self.F_full.to_json(),
            "F_nilpotent": self.F_nilpotent.to_json(),
        }


@dataclass
class ClassificationReport:
    indices: list
    F_pure: Verdict
    F_injective: Verdict
    F_full: Verdict
    strongly_F_injective: Verdict
    F_anti_nilpotent: Verdict
    depth: int
    dim: int
    f_m: int | None  # None when every H^i is finitely generated
    is_CM: bool
    is_gCM: bool
    certificate: object = None  # DeformationCertificate for F_anti_nilpotent
    notes: list = field(default_factory=list)

    def index(self, i) -> IndexVerdicts:
        for v in self.indices:
            if v.i == i:
                return v
        raise KeyError(i)

    def to_json(self):
        return {
            "indices": [v.to_json() for v in self.indices],
            "ring": {
                "F_pure": self.F_pure.to_json(),
                "F_injective": self.F_injective.to_json(),
                "F_full": self.F_full.to_json(),
                "strongly_F_injective": self.strongly_F_injective.to_json(),
                "F_anti_nilpotent": self.F_anti_nilpotent.to_json(),
                "depth": self.depth,
                "dim": self.dim,
                "f_m": "infinity" if self.f_m is None else self.f_m,
                "is_CM": self.is_CM,
                "is_gCM": self.is_gCM,
            },
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "notes": list(self.notes),
        }


# ----------------------------------------------------------------------
# single tests


def fedder_test(I: IdealPresentation):
    """(True, witness) iff (I^[p] : I) is not contained in m^[p].

    Only colon generators of degree <= (p-1)D can carry a monomial with every
    exponent below p, so the colon is computed up to that degree.
    """
    ring = I.ring
    p = ring.p
    if I.is_zero():
        return True, ring.one()
    C = bracket_colon(I, 1, max_degree=(p - 1) * ring.D)
    for g in C.gens:
        for e in sorted(g.terms):
            if all(a < p for a in e):
                return True, g
    return False, None


WITNESS_TERMS = 8


def fedder_witness(g: Polynomial) -> dict:
    """JSON witness for a colon element outside m^[p]: the offending monomial, and g if short."""
    p = g.ring.p
    e = next(e for e in sorted(g.terms) if all(a < p for a in e))
    out = {"monomial": str(g.ring.monomial(e)), "degree": g.weighted_degree()}
    if len(g.terms) <= WITNESS_TERMS:
        out["colon_element"] = str(g)
    else:
        out["colon_element_terms"] = len(g.terms)
    return out


def regular_element(I: IdealPresentation, x: Polynomial) -> bool:
    """(I : x) = I."""
    if x.is_zero():
        return False
    C = colon_element(I, x)
    return all(I.contains(g) for g in C.gens)


def _require_regular(I, x):
    if not regular_element(I, x):
        raise NotRegular(f"{x} is not a regular element")


def _mult_kernels(I, x):
    for j, N in enumerate(ext_modules(I)):
        if N.rank == 0:
            continue
        yield j, N, module_kernel(multiplication_map(N, x))


def surjective_element(I: IdealPresentation, x: Polynomial):
    """(True, None) iff x is injective on every Ext^j(R, A); else (False, witness)."""
    _require_regular(I, x)
    n = I.ring.n
    for j, N, K in _mult_kernels(I, x):
        if K.rank:
            return False, {"i": n - j, "ext_index": j, "kernel_generator": _vec_str(K.meta["generators"][0])}
    return True, None


def strictly_filter_regular(I: IdealPresentation, x: Polynomial) -> bool:
    _require_regular(I, x)
    return all(finite_length(K)[0] for _, _, K in _mult_kernels(I, x))


def twisted_injectivity(I: IdealPresentation, x: Polynomial, i: int) -> bool:
    """x^(p-1) F injective on H^i_m(R), via surjectivity of the twisted Cartier operator."""
    _require_regular(I, x)
    n = I.ring.n
    j = n - i
    if j < 0 or j > n:
        return True
    theta = cartier_theta(I, j, x ** (I.ring.p - 1))
    return theta_image(theta).is_whole()


# ----------------------------------------------------------------------
# per-index verdicts


def _guard(fn):
    try:
        return fn()
    except CapExceeded as err:
        return Verdict(UNKNOWN, {"reason": str(err)})


def index_verdicts(I: IdealPresentation, i: int) -> IndexVerdicts:
    ring = I.ring
    n = ring.n
    j = n - i
    N = ext_modules(I)[j]
    if N.rank == 0:
        t = Verdict(TRUE)
        return IndexVerdicts(i, j, True, True, t, t, t)
    fin = finite_length(N)[0]

    def injective():
        image = theta_image(cartier_theta(I, j))
        s = image.missing_generator()
        if s is None:
            return Verdict(TRUE)
        return Verdict(FALSE, {"ext_generator": s, "degree": N.gen_degrees[s], "reason": "not in Theta(N)"})

    def full():
        K = module_kernel(comparison_delta(I, j, 1))
        if K.rank == 0:
            return Verdict(TRUE)
        g = K.meta["generators"][0]
        return Verdict(FALSE, {"kernel_generator": _vec_str(g), "degree": K.gen_degrees[0]})

    def nilpotent():
        e, stable = hsl_iterate(cartier_theta(I, j))
        if stable.is_zero():
            return Verdict(TRUE, {"steps": e})
        return Verdict(FALSE, {"steps": e, "stable_generators": len(stable.gens)})

    return IndexVerdicts(i, j, False, fin, _guard(injective), _guard(full), _guard(nilpotent))


def _fold(verdicts):
    out = Verdict(TRUE)
    for v in verdicts:
        out = _both(out, v)
    return out


def classify(I: IdealPresentation, elements=None, index=None, anti_nilpotent_depth: int = 1,
             fedder: bool = True) -> ClassificationReport:
    """Classify R = A/I. `elements` (name -> polynomial) are tried first when certifying F-anti-nilpotence."""
    ring = I.ring
    if I.is_unit():
        raise UnitIdeal("the zero ring has no Frobenius classification")
    n = ring.n
    dim = krull_dim(I)
    depth = depth_via_AB(I)
    exts = ext_modules(I)
    f_m = None
    for i in range(0, dim + 1):
        N = exts[n - i]
        if N.rank and not finite_length(N)[0]:
            f_m = i
            break
    is_cm = depth == dim
    is_gcm = is_cm or f_m == dim
    wanted = range(0, dim + 1) if index is None else [index]
    per = [index_verdicts(I, i) for i in wanted]
    if index is None:
        inj = _fold(v.F_injective for v in per)
        full = _fold(v.F_full for v in per)
        for v in per:
            if v.F_injective.is_false:
                inj = Verdict(FALSE, {"i": v.i})
                break
        for v in per:
            if v.F_full.is_false:
                full = Verdict(FALSE, {"i": v.i})
                break
    else:
        inj = full = Verdict(UNKNOWN, {"reason": "single index requested"})
    pure = Verdict(UNKNOWN, {"reason": "not computed"})
    if fedder:
        try:
            ok, w = fedder_test(I)
            pure = Verdict(TRUE, fedder_witness(w)) if ok else Verdict(FALSE)
        except CapExceeded as err:
            pure = Verdict(UNKNOWN, {"reason": str(err)})
    report = ClassificationReport(
        indices=per,
        F_pure=pure,
        F_injective=inj,
        F_full=full,
        strongly_F_injective=_both(inj, full),
        F_anti_nilpotent=Verdict(UNKNOWN),
        depth=depth,
        dim=dim,
        f_m=f_m,
        is_CM=is_cm,
        is_gCM=is_gcm,
    )
    _certify_anti_nilpotent(I, report, elements or {}, anti_nilpotent_depth)
    return report


def _certify_anti_nilpotent(I, report, elements, depth_left):
    from .deform import certify_anti_nilpotent

    if report.F_pure.is_true:
        cert = certify_anti_nilpotent(I, report, elements, depth_left)
        report.F_anti_nilpotent = Verdict(TRUE, {"route": "F-pure"})
        report.certificate = cert
        return
    if report.F_injective.is_false or report.F_full.is_false:
        report.F_anti_nilpotent = Verdict(FALSE, {"reason": "F-anti-nilpotent rings are F-injective and F-full"})
        return
    if report.F_injective.is_true and report.F_full.is_true and depth_left > 0:
        cert = certify_anti_nilpotent(I, report, elements, depth_left)
        if cert is not None:
            report.F_anti_nilpotent = Verdict(TRUE, {"route": "deformation", "element": cert.element})
            report.certificate = cert
            return
    report.F_anti_nilpotent = Verdict(UNKNOWN, {"reason": "no certificate found"})


def coherence_violations(report: ClassificationReport):
    """Implications every report must satisfy; returns the violated ones."""
    bad = []
    an, inj, full, pure = report.F_anti_nilpotent, report.F_injective, report.F_full, report.F_pure
    if an.is_true and not (inj.is_true and full.is_true):
        bad.append("F-anti-nilpotent without F-injective and F-full")
    if pure.is_true and not an.is_true:
        bad.append("F-pure without F-anti-nilpotent")
    if pure.is_true and inj.is_false:
        bad.append("F-pure but not F-injective")
    if report.is_CM and full.is_false:
        bad.append("Cohen-Macaulay but not F-full")
    if report.strongly_F_injective != _both(inj, full):
        bad.append("strongly F-injective differs from F-injective and F-full")
    if report.is_CM != (report.depth == report.dim):
        bad.append("CM flag inconsistent with depth and dim")
    return bad
