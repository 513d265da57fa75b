"""The line-oriented `.fring` input format.

    # comment
    char 5
    vars U:2 V:2 Y:1 Z:2
    order grevlex
    ideal
      U*V
      U*Z
      Z*(V - Y^2)
    element y = Y

Generator lines under `ideal` are indented. A variable without `:w` has weight 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NonHomogeneous, ParseError
from .groebner import IdealPresentation
from .polynomials import PolyRingSpec

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9']*$")


@dataclass
class RingInput:
    ideal: IdealPresentation
    elements: dict = field(default_factory=dict)  # name -> Polynomial
    order: str = "grevlex"
    name: str | None = None

    @property
    def ring(self) -> PolyRingSpec:
        return self.ideal.ring

    def __eq__(self, other):
        if not isinstance(other, RingInput):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and list(self.ideal.gens) == list(other.ideal.gens)
            and self.elements == other.elements
        )


def _int(tok, lineno, col, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno, col) from None


def parse_input(text: str, name: str | None = None, pair_cap: int | None = None) -> RingInput:
    p = None
    names, weights = None, None
    order = "grevlex"
    gens_src = []  # (lineno, column, text)
    elem_src = []  # (lineno, column, name, text)
    in_ideal = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        if in_ideal and indent > 0:
            gens_src.append((lineno, indent + 1, line.strip()))
            continue
        in_ideal = False
        if indent > 0:
            raise ParseError("unexpected indented line", lineno, 1)
        head, _, rest = line.partition(" ")
        rest_col = len(head) + 2
        if head == "char":
            p = _int(rest.strip(), lineno, rest_col, "characteristic")
        elif head == "vars":
            names, weights = [], []
            col = rest_col
            for tok in rest.split():
                col = line.index(tok, col - 1) + 1
                nm, _, w = tok.partition(":")
                if not _NAME.match(nm):
                    raise ParseError(f"bad variable name {nm!r}", lineno, col)
                if nm in names:
                    raise ParseError(f"duplicate variable {nm!r}", lineno, col)
                wt = _int(w, lineno, col + len(nm) + 1, "weight") if w else 1
                if wt < 1:
                    raise ParseError("weights must be positive", lineno, col)
                names.append(nm)
                weights.append(wt)
                col += len(tok)
            if not names:
                raise ParseError("no variables declared", lineno, rest_col)
        elif head == "order":
            order = rest.strip()
            if order != "grevlex":
                raise ParseError(f"unsupported monomial order {order!r}", lineno, rest_col)
        elif head == "ideal":
            if rest.strip():
                raise ParseError("generators go on indented lines after 'ideal'", lineno, rest_col)
            in_ideal = True
        elif head == "element":
            nm, eq, expr = rest.partition("=")
            if not eq or not _NAME.match(nm.strip()):
                raise ParseError("expected 'element <name> = <expression>'", lineno, rest_col)
            elem_src.append((lineno, rest_col + len(nm) + 1, nm.strip(), expr))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1)
    if p is None:
        raise ParseError("missing 'char' line")
    if names is None:
        raise ParseError("missing 'vars' line")
    ring = PolyRingSpec(p, names, weights)

    def parse_expr(src, lineno, col):
        try:
            return ring.parse(src)
        except ParseError as err:
            c = None if err.column is None else col + err.column - 1
            raise ParseError(str(err).split(" (line")[0].split(" (column")[0], lineno, c) from None

    gens = []
    for lineno, col, src in gens_src:
        f = parse_expr(src, lineno, col)
        if not f.is_zero() and not f.is_homogeneous():
            raise NonHomogeneous(f"generator {src!r} on line {lineno} is not homogeneous")
        gens.append(f)
    elements = {}
    for lineno, col, nm, src in elem_src:
        lead = len(src) - len(src.lstrip())
        f = parse_expr(src.strip(), lineno, col + lead)
        if not f.is_zero() and not f.is_homogeneous():
            raise NonHomogeneous(f"element {nm!r} on line {lineno} is not homogeneous")
        elements[nm] = f
    return RingInput(IdealPresentation(ring, gens, pair_cap=pair_cap), elements, order, name)


def format_input(data: RingInput) -> str:
    ring = data.ring
    lines = [f"char {ring.p}"]
    lines.append("vars " + " ".join(f"{n}:{w}" for n, w in zip(ring.names, ring.weights)))
    lines.append(f"order {data.order}")
    lines.append("ideal")
    for g in data.ideal.gens:
        lines.append(f"  {g}")
    for nm, f in data.elements.items():
        lines.append(f"element {nm} = {f}")
    return "\n".join(lines) + "\n"


def read_input(path, pair_cap=None) -> RingInput:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_input(text, name=str(path), pair_cap=pair_cap)
