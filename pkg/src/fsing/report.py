"""JSON reports, oracle comparison and the bundled reproduction checks.

Reports are plain dicts serialized with sorted keys, so identical inputs and
flags give byte-identical output. Wall-clock timing is only included on
request because it would break that.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .cartier import materialize_H
from .classify import classify, coherence_violations, fedder_test, regular_element
from .deform import deform_certify
from .errors import NotRegular, PreconditionViolated, UnknownFixture
from .homological import ext_modules, finite_length
from .koszul import koszul_oracle
from .linalg import rank
from .ringfile import RingInput, parse_input

SCHEMA = 1


def seed() -> int:
    return int(os.environ.get("FSING_SEED", "0"))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def input_echo(data: RingInput) -> dict:
    ring = data.ring
    return {
        "name": Path(data.name).name if data.name else None,
        "char": ring.p,
        "vars": [{"name": n, "weight": w} for n, w in zip(ring.names, ring.weights)],
        "order": data.order,
        "ideal": [str(g) for g in data.ideal.gens],
        "elements": {k: str(v) for k, v in data.elements.items()},
    }


def _envelope(command, data, body, started=None):
    out = {"schema": SCHEMA, "command": command, "seed": seed(), "input": input_echo(data) if data else None}
    out.update(body)
    if started is not None:
        out["timing"] = {"seconds": round(time.perf_counter() - started, 3)}
    return out


def resolve_element(data: RingInput, name: str):
    """A declared element by name, or else an expression in the ring variables."""
    if name in data.elements:
        return data.elements[name]
    return data.ring.parse(name)


# ----------------------------------------------------------------------
# commands as functions returning dicts


def classify_report(data: RingInput, index=None, timing=False) -> dict:
    started = time.perf_counter() if timing else None
    rep = classify(data.ideal, data.elements, index=index)
    body = rep.to_json()
    body["coherence_violations"] = coherence_violations(rep) if index is None else []
    return _envelope("classify", data, {"report": body}, started)


def deform_report(data: RingInput, element: str, target: str, timing=False) -> dict:
    started = time.perf_counter() if timing else None
    x = resolve_element(data, element)
    if not regular_element(data.ideal, x):
        raise NotRegular(f"{element} = {x} is not a regular element")
    cert = deform_certify(data.ideal, x, target)
    body = {"element": {"name": element, "value": str(x)}, "target": target, "certificate": cert.to_json()}
    return _envelope("deform", data, body, started)


def _mat(M):
    return np.asarray(M, dtype=np.int64).tolist()


def compare_windows(dual, oracle, p):
    """Mismatches between two degreewise Frobenius descriptions of H^i.

    The bases differ, so matrices are compared through basis-free data:
    dimensions, ranks of F and of F composed with itself where both degrees
    are present, and for the degree-0 endomorphism the ranks of
    (F - c)^k for every scalar c (exact for 1 x 1 blocks).
    """
    bad = []
    lo, hi = dual.window
    for d in range(lo, hi + 1):
        if dual.dims[d] != oracle.dims[d]:
            bad.append({"degree": d, "what": "dimension", "duality": dual.dims[d], "koszul": oracle.dims[d]})
            continue
        if dual.dims[d] == 0:
            # a map out of the zero space carries no information, whatever its stored shape
            continue
        A, B = np.asarray(dual.frobenius[d]), np.asarray(oracle.frobenius[d])
        if A.shape != B.shape:
            bad.append({"degree": d, "what": "frobenius shape", "duality": list(A.shape), "koszul": list(B.shape)})
            continue
        if rank(A, p) != rank(B, p):
            bad.append({"degree": d, "what": "frobenius rank", "duality": rank(A, p), "koszul": rank(B, p)})
            continue
        pd = p * d
        if pd != d and lo <= pd <= hi and np.asarray(dual.frobenius[pd]).size:
            ra = rank(np.asarray(dual.frobenius[pd]) @ A % p, p)
            rb = rank(np.asarray(oracle.frobenius[pd]) @ B % p, p)
            if ra != rb:
                bad.append({"degree": d, "what": "rank of F^2", "duality": ra, "koszul": rb})
        if pd == d and A.size:
            n = A.shape[0]
            eye = np.eye(n, dtype=np.int64)
            for c in range(p):
                Pa, Pb = (A - c * eye) % p, (B - c * eye) % p
                Xa, Xb = eye.copy(), eye.copy()
                for k in range(1, n + 1):
                    Xa, Xb = Xa @ Pa % p, Xb @ Pb % p
                    if rank(Xa, p) != rank(Xb, p):
                        bad.append({"degree": d, "what": f"rank of (F - {c})^{k}"})
    return bad


def oracle_report(data: RingInput, i: int, window, stage: int = 1, timing=False) -> dict:
    started = time.perf_counter() if timing else None
    I = data.ideal
    n = I.ring.n
    N = ext_modules(I)[n - i] if 0 <= n - i <= n else None
    fin = True if N is None or N.rank == 0 else finite_length(N)[0]
    dual = materialize_H(I, i, window, check_socle=fin)
    orc = koszul_oracle(I, i, window, t=stage)
    mism = compare_windows(dual, orc, I.ring.p)
    lo, hi = window
    body = {
        "index": i,
        "window": [lo, hi],
        "finite_length": fin,
        "koszul_variables": [I.ring.names[k] for k in orc.variables],
        "degrees": [
            {
                "degree": d,
                "dim_duality": dual.dims[d],
                "dim_koszul": orc.dims[d],
                "frobenius_duality": _mat(dual.frobenius[d]),
                "frobenius_koszul": _mat(orc.frobenius[d]),
                "koszul_stage": orc.stages[d],
            }
            for d in range(lo, hi + 1)
        ],
        "mismatches": mism,
        "agree": not mism,
    }
    return _envelope("oracle-check", data, body, started)


# ----------------------------------------------------------------------
# bundled fixtures


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("fsing") / "fixtures" / f"{name}.fring"))


def load_fixture(name: str) -> RingInput:
    path = fixture_path(name)
    if not path.exists():
        raise UnknownFixture(name)
    return parse_input(path.read_text(encoding="utf-8"), name=path.name)


@dataclass
class Assertion:
    name: str
    passed: bool
    detail: object = None

    def to_json(self):
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def _nonzero_degrees(W):
    return [d for d in range(W.window[0], W.window[1] + 1) if W.dims[d]]


def _frobenius_zero(W):
    return all(not np.asarray(M).any() for M in W.frobenius.values())


def _oracle_assertion(data, i, window):
    rep = oracle_report(data, i, window)
    return Assertion(f"duality and Koszul oracle agree on H^{i} over {list(window)}", rep["agree"],
                     rep["mismatches"] or None)


def _bundle_semigroup():
    data = load_fixture("semigroup")
    I = data.ideal
    W = materialize_H(I, 1, (-2, 3))
    r = classify(I, data.elements)
    degs = _nonzero_degrees(W)
    return [
        Assertion("dim H^1 = 1", W.total_dim() == 1, {"dims": {str(d): W.dims[d] for d in degs}}),
        Assertion("H^1 sits in a single positive degree", len(degs) == 1 and degs[0] > 0, {"degrees": degs}),
        Assertion("Frobenius kills H^1", _frobenius_zero(W)),
        Assertion("R is not F-full", r.F_full.is_false, r.F_full.witness),
        Assertion("R is not F-injective", r.F_injective.is_false, r.F_injective.witness),
        Assertion("depth R = 1", r.depth == 1, {"depth": r.depth}),
        Assertion("dim R = 2", r.dim == 2, {"dim": r.dim}),
        Assertion("R is generalized Cohen-Macaulay", r.is_gCM, {"f_m": r.f_m}),
        _oracle_assertion(data, 1, (-2, 3)),
    ]


def _bundle_segre(p):
    data = load_fixture(f"segre-p{p}")
    I = data.ideal
    W = materialize_H(I, 2, (-2, 2))
    r = classify(I, data.elements)
    out = [
        Assertion("H^2 over [-2, 2] has dims [0, 0, 1, 0, 0]", W.dims_list() == [0, 0, 1, 0, 0], {"dims": W.dims_list()}),
    ]
    F0 = np.asarray(W.frobenius[0])
    if p % 3 == 2:
        out += [
            Assertion("Frobenius on [H^2]_0 is zero", not F0.any(), {"matrix": _mat(F0)}),
            Assertion("R is not F-full", r.F_full.is_false, r.F_full.witness),
            Assertion("R is not F-injective", r.F_injective.is_false, r.F_injective.witness),
            Assertion("R is not F-pure", r.F_pure.is_false),
            _oracle_assertion(data, 2, (-2, 2)),
        ]
    else:
        out += [
            Assertion("Frobenius on [H^2]_0 is nonzero", bool(F0.any()), {"matrix": _mat(F0)}),
            Assertion("R is F-pure", r.F_pure.is_true, r.F_pure.witness),
            Assertion("R is F-injective", r.F_injective.is_true),
            Assertion("R is F-full", r.F_full.is_true),
        ]
    return out


def _bundle_fedder_singh():
    data = load_fixture("fedder-singh")
    I = data.ideal
    y = data.elements["y"]
    r = classify(I, data.elements)
    quotient_pure, _ = fedder_test(I + y)
    cert = deform_certify(I, y, "anti-nilpotent")
    chain = cert.rule_ids if cert.proved else []
    return [
        Assertion("y is a regular element", regular_element(I, y)),
        Assertion("R/(y) is F-pure", quotient_pure),
        Assertion("R is not F-pure", r.F_pure.is_false),
        Assertion("chain [R9, R1] certifies R F-anti-nilpotent", chain == ["R9", "R1"], {"chain": chain}),
        Assertion("R is F-full", r.F_full.is_true),
        Assertion("R is F-injective", r.F_injective.is_true),
        Assertion("depth R = f_m(R)", r.depth == r.f_m, {"depth": r.depth, "f_m": r.f_m}),
    ]


def _bundle_nonperfect():
    from .fields import GF
    from .finlen import (
        FinLenFrobeniusModule,
        fstable_submodules,
        lemma52_check,
        nonperfect_counterexample,
        random_module,
    )

    out = []
    for p in (2, 3, 5):
        M, L = nonperfect_counterexample(p)
        out.append(Assertion(f"F_{p}(t): F injective on M", M.F_injective()))
        out.append(Assertion(f"F_{p}(t): L = span(e1) is F-stable", M.is_F_stable(L)))
        out.append(Assertion(f"F_{p}(t): induced action on M/L is not injective", not lemma52_check(M, L)))
        k = GF(p)
        flat = FinLenFrobeniusModule(k, [[1, 1], [0, 0]])
        out.append(Assertion(f"F_{p}: the same formula is not injective on M", not flat.F_injective()))
    rng = random.Random(seed())
    failures = 0
    count = 0
    for q_p, q_e in ((2, 1), (3, 1), (2, 2)):
        k = GF(q_p, q_e)
        for _ in range(10):
            M = random_module(k, rng.randint(1, 3 if k.q < 4 else 2), rng, injective=True)
            for N in fstable_submodules(M):
                count += 1
                try:
                    failures += not lemma52_check(M, N)
                except PreconditionViolated:
                    failures += 1
    out.append(Assertion("perfect fields: quotients by F-stable submodules stay injective", failures == 0,
                         {"checked": count, "failures": failures}))
    return out


BUNDLES = {
    "ex-semigroup": _bundle_semigroup,
    "ex-segre-p2": lambda: _bundle_segre(2),
    "ex-segre-p7": lambda: _bundle_segre(7),
    "ex-fedder-singh": _bundle_fedder_singh,
    "ex-nonperfect": _bundle_nonperfect,
}


def reproduce(fixture_id: str) -> list:
    if fixture_id not in BUNDLES:
        raise UnknownFixture(f"unknown fixture {fixture_id!r}; known: {', '.join(sorted(BUNDLES))}")
    return BUNDLES[fixture_id]()


def reproduce_report(fixture_id: str, timing=False) -> dict:
    started = time.perf_counter() if timing else None
    results = reproduce(fixture_id)
    body = {"fixture": fixture_id, "assertions": [a.to_json() for a in results],
            "passed": all(a.passed for a in results)}
    return _envelope("reproduce", None, body, started)
