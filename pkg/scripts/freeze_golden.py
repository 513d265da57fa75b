"""Regenerate the golden JSON reports under tests/golden.

Run only after an intentional output change, then review the diff:

    FSING_SEED=0 python3 scripts/freeze_golden.py
"""

import io
import os
import sys
from pathlib import Path

from fsing.cli import run
from fsing.report import fixture_path

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

# golden name -> argv (fixture names are replaced by their bundled paths)
CASES = {
    "classify-semigroup": ["classify", "@semigroup", "--json"],
    "classify-fedder-singh": ["classify", "@fedder-singh", "--json"],
    "classify-stanley-reisner-p2": ["classify", "@stanley-reisner-p2", "--json"],
    "classify-segre-p2": ["classify", "@segre-p2", "--json"],
    "classify-zero-ideal": ["classify", "@zero-ideal", "--json"],
    "classify-semigroup-index1": ["classify", "@semigroup", "--index", "1", "--json"],
    "deform-fedder-singh": ["deform", "@fedder-singh", "--element", "y", "--target", "anti-nilpotent", "--json"],
    "deform-semigroup": ["deform", "@semigroup", "--element", "x", "--target", "f-full", "--json"],
    "reproduce-ex-semigroup": ["reproduce", "ex-semigroup", "--json"],
    "reproduce-ex-nonperfect": ["reproduce", "ex-nonperfect", "--json"],
    "oracle-semigroup": ["oracle-check", "@semigroup", "--index", "1", "--window", "-2..3", "--json"],
}


def resolve(argv):
    return [str(fixture_path(a[1:])) if a.startswith("@") else a for a in argv]


def render(argv):
    buf = io.StringIO()
    code = run(resolve(argv), buf)
    return code, buf.getvalue()


def main():
    if os.environ.get("FSING_SEED", "0") != "0":
        sys.exit("golden files are frozen with FSING_SEED=0")
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        code, text = render(argv)
        if code != 0:
            sys.exit(f"{name}: exit code {code}")
        (GOLDEN / f"{name}.json").write_text(text, encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main()
