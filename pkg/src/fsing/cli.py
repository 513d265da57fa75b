"""Command-line entry point `fsing`.

Exit codes: 0 when a command completes (verdicts may still be "unknown"),
1 when a reproduction assertion or an oracle comparison fails, 2 on input
errors, 3 when a computation budget is exhausted.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    CapExceeded,
    FsingError,
    NonHomogeneous,
    NonPrimeCharacteristic,
    NotRegular,
    NotStabilized,
    ParseError,
    UnitIdeal,
    UnknownFixture,
    WindowTooSmall,
)
from .report import classify_report, deform_report, dumps, oracle_report, reproduce_report
from .ringfile import read_input

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

INPUT_ERRORS = (
    ParseError,
    NonHomogeneous,
    NonPrimeCharacteristic,
    NotRegular,
    UnknownFixture,
    UnitIdeal,
    WindowTooSmall,
    NotStabilized,
    OSError,
    ValueError,
)


def _window(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("window must look like lo..hi")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("window bounds must be integers") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window")
    return lo, hi


def build_parser():
    ap = argparse.ArgumentParser(prog="fsing", description="Frobenius singularity verdicts for graded rings A/I.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="per-index and ring-level Frobenius verdicts")
    c.add_argument("file")
    c.add_argument("--index", type=int, default=None, help="only this local cohomology index")
    c.add_argument("--json", action="store_true")
    c.add_argument("--pair-cap", type=int, default=None, help="S-pair budget per Groebner computation")
    c.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")

    d = sub.add_parser("deform", help="certify a property of R by deforming along an element")
    d.add_argument("file")
    d.add_argument("--element", required=True, help="declared element name or an expression")
    d.add_argument("--target", required=True)
    d.add_argument("--json", action="store_true")
    d.add_argument("--pair-cap", type=int, default=None)

    r = sub.add_parser("reproduce", help="run a bundled fixture's assertions")
    r.add_argument("fixture_id")
    r.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle-check", help="compare duality and Koszul computations of H^i")
    o.add_argument("file")
    o.add_argument("--index", type=int, required=True)
    o.add_argument("--window", type=_window, required=True, help="lo..hi")
    o.add_argument("--stage", type=int, default=1, help="first Koszul stage to examine")
    o.add_argument("--json", action="store_true")
    o.add_argument("--pair-cap", type=int, default=None)
    return ap


# ----------------------------------------------------------------------
# plain-text renderings


def _status(v):
    return v["status"]


def _text_classify(rep):
    body = rep["report"]
    ring = body["ring"]
    lines = [f"input: {rep['input']['name']}"]
    for v in body["indices"]:
        if v["H_is_zero"]:
            lines.append(f"H^{v['i']}: zero")
            continue
        lines.append(
            f"H^{v['i']} (Ext^{v['ext_index']}): finite length {v['H_finite_length']}, "
            f"F-injective {_status(v['F_injective'])}, F-full {_status(v['F_full'])}, "
            f"F-nilpotent {_status(v['F_nilpotent'])}"
        )
    for key in ("F_pure", "F_injective", "F_full", "strongly_F_injective", "F_anti_nilpotent"):
        lines.append(f"{key}: {_status(ring[key])}")
    lines.append(f"depth {ring['depth']}, dim {ring['dim']}, f_m {ring['f_m']}, CM {ring['is_CM']}, gCM {ring['is_gCM']}")
    cert = body.get("certificate")
    if cert:
        lines.append("certificate: " + " -> ".join(s["rule"] for s in cert["chain"]))
    for msg in body.get("coherence_violations", []):
        lines.append(f"COHERENCE VIOLATION: {msg}")
    return "\n".join(lines) + "\n"


def _text_deform(rep):
    cert = rep["certificate"]
    head = f"{cert['conclusion']} via {rep['element']['name']} = {rep['element']['value']}"
    if not cert["proved"]:
        facts = ", ".join(f"{f['statement']}: {f['status']}" for f in cert["base_facts"])
        return f"unprovable: {head}\nbase facts: {facts}\n"
    lines = [f"proved: {head}"]
    for k, s in enumerate(cert["chain"], start=1):
        prem = "; ".join(f"{p['statement']} [{p['source']}]" for p in s["premises"])
        lines.append(f"  {k}. {s['rule']}: {s['anchor']} (from {prem})")
    return "\n".join(lines) + "\n"


def _text_reproduce(rep):
    lines = [f"fixture {rep['fixture']}"]
    for a in rep["assertions"]:
        lines.append(f"{'PASS' if a['passed'] else 'FAIL'} {a['name']}")
    lines.append("all passed" if rep["passed"] else "FAILURES")
    return "\n".join(lines) + "\n"


def _text_oracle(rep):
    lines = [f"H^{rep['index']} over [{rep['window'][0]}, {rep['window'][1]}], Koszul variables {rep['koszul_variables']}"]
    for row in rep["degrees"]:
        lines.append(
            f"  degree {row['degree']}: dim {row['dim_duality']} / {row['dim_koszul']}, "
            f"F {row['frobenius_duality']} / {row['frobenius_koszul']}"
        )
    lines.append("agree" if rep["agree"] else f"MISMATCH {rep['mismatches']}")
    return "\n".join(lines) + "\n"


def _join_negative_window(argv):
    """Let `--window -2..3` through: argparse would read "-2..3" as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_window(argv))
    try:
        if args.command == "classify":
            rep = classify_report(read_input(args.file, pair_cap=args.pair_cap), args.index, args.timing)
            out.write(dumps(rep) if args.json else _text_classify(rep))
            return EXIT_OK
        if args.command == "deform":
            rep = deform_report(read_input(args.file, pair_cap=args.pair_cap), args.element, args.target)
            out.write(dumps(rep) if args.json else _text_deform(rep))
            return EXIT_OK
        if args.command == "reproduce":
            rep = reproduce_report(args.fixture_id)
            out.write(dumps(rep) if args.json else _text_reproduce(rep))
            return EXIT_OK if rep["passed"] else EXIT_FAILED
        if args.command == "oracle-check":
            data = read_input(args.file, pair_cap=args.pair_cap)
            rep = oracle_report(data, args.index, args.window, args.stage)
            out.write(dumps(rep) if args.json else _text_oracle(rep))
            return EXIT_OK if rep["agree"] else EXIT_FAILED
    except CapExceeded as err:
        print(f"fsing: budget exhausted: {err}", file=sys.stderr)
        return EXIT_CAP
    except INPUT_ERRORS as err:
        print(f"fsing: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INPUT
    except FsingError as err:
        print(f"fsing: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAILED
    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
