"""Buchberger's algorithm for homogeneous ideals and submodules of graded free modules.

Terms are stored under *order keys*: for the term x^a e_c of a free module
with degree shifts s, the key is

    (deg(a) + s_c, [front-block degree,] -a_{n-1}, ..., -a_0, -c)

Comparing keys as tuples is the module order (weighted degree first, then
grevlex, then position, with an optional elimination block). Keys are
additive: multiplying a term by x^b adds the key of the monomial x^b, so the
reduction loop never re-derives sort keys. A vector is a dict key -> coeff.

The engine is homogeneous and processes input generators and S-pairs degree
by degree (normal strategy). This makes it double as a minimal-generator
finder: an input that reduces to zero against everything of degree <= its own
is redundant.
"""

from __future__ import annotations

import heapq
import itertools
import operator
from dataclasses import dataclass
from typing import Sequence

from .errors import NonHomogeneous, PairCapExceeded, UnitIdeal
from .fields import field_inv
from .polynomials import EXPONENT_LIMIT, ExponentOverflow, PolyRingSpec, Polynomial

DEFAULT_PAIR_CAP = 200_000

_add = operator.add
_sub = operator.sub


@dataclass(frozen=True)
class MonomialOrder:
    """`grevlex`, or `elim` with the first `block` variables eliminated."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("an elimination order needs a positive front-block size")


GREVLEX = MonomialOrder()


class KeyOrder:
    def __init__(self, ring: PolyRingSpec, shifts: Sequence[int] = (0,), order: MonomialOrder = GREVLEX):
        self.ring = ring
        self.w = ring.weights
        self.n = ring.n
        self.shifts = tuple(shifts)
        self.block = order.block if order.kind == "elim" else 0
        self.off = 2 if self.block else 1
        self.order = order

    def key(self, exp, comp=0):
        d = sum(a * w for a, w in zip(exp, self.w)) + self.shifts[comp]
        neg = tuple(-a for a in reversed(exp))
        if self.block:
            bd = sum(a * w for a, w in zip(exp[: self.block], self.w))
            return (d, bd) + neg + (-comp,)
        return (d,) + neg + (-comp,)

    def mono(self, exp):
        d = sum(a * w for a, w in zip(exp, self.w))
        neg = tuple(-a for a in reversed(exp))
        if self.block:
            bd = sum(a * w for a, w in zip(exp[: self.block], self.w))
            return (d, bd) + neg + (0,)
        return (d,) + neg + (0,)

    def exp(self, key):
        return tuple(-x for x in reversed(key[self.off : self.off + self.n]))

    def comp(self, key):
        return -key[-1]

    def lcm(self, k1, k2):
        e = tuple(max(a, b) for a, b in zip(self.exp(k1), self.exp(k2)))
        return self.key(e, self.comp(k1))

    # conversions -------------------------------------------------------
    def vector(self, column) -> dict:
        """Polynomial column (one entry per component) -> key dict."""
        if isinstance(column, Polynomial):
            column = [column]
        out = {}
        for c, f in enumerate(column):
            if f is None:
                continue
            for e, v in f.terms.items():
                out[self.key(e, c)] = v
        return out

    def polys(self, vec, rank) -> list:
        terms = [dict() for _ in range(rank)]
        for k, v in vec.items():
            terms[-k[-1]][self.exp(k)] = v
        return [Polynomial._raw(self.ring, t) for t in terms]

    def degree(self, vec):
        ds = {k[0] for k in vec}
        if len(ds) != 1:
            raise NonHomogeneous("vector is zero or not homogeneous")
        return ds.pop()


def _mul_term(vec, qkey, c, p):
    """c * x^q * vec as a new dict."""
    return {tuple(map(_add, k, qkey)): v * c % p for k, v in vec.items()}


def _neg(key):
    """Order-reversing involution on keys (all entries are integers)."""
    return tuple(-a for a in key)


def _axpy(target, vec, qkey, c, p):
    """target -= c * x^q * vec (in place)."""
    for k, v in vec.items():
        nk = tuple(map(_add, k, qkey))
        nv = (target.get(nk, 0) - c * v) % p
        if nv:
            target[nk] = nv
        else:
            target.pop(nk, None)


def _rep_axpy(target, rep, qexp, c, p):
    """target -= c * x^qexp * rep for tracking vectors keyed (index, exp)."""
    for (j, e), v in rep.items():
        nk = (j, tuple(map(_add, e, qexp)))
        nv = (target.get(nk, 0) - c * v) % p
        if nv:
            target[nk] = nv
        else:
            target.pop(nk, None)


class Buchberger:
    """Homogeneous Buchberger over a graded free module.

    Parameters
    ----------
    gens : list of key dicts (homogeneous, possibly zero)
    track : keep, for every basis element, its expression in the inputs;
        enables lifts and syzygies.
    """

    def __init__(self, ko: KeyOrder, gens, track=False, pair_cap=None, rank=1, max_degree=None,
                 untracked=()):
        self.ko = ko
        self.p = ko.ring.p
        self.track = track
        # stop after this degree; the basis is then a truncated Groebner basis
        self.max_degree = max_degree
        # inputs whose tracking expression starts empty (syzygies come out projected)
        self.untracked = frozenset(untracked)
        self.rank = rank
        self.pair_cap = DEFAULT_PAIR_CAP if pair_cap is None else pair_cap
        self.pairs_processed = 0
        self.inputs = [dict(g) for g in gens]
        self.basis = []  # monic key dicts
        self.leads = []
        self.lead_exps = []
        self.reps = []
        self.by_comp = {}
        self.minimal = []  # indices of inputs kept as minimal generators
        self.redundant = {}  # input index -> tracking expression of it in kept inputs
        self.pair_syz = []  # tracking vectors that are syzygies of the inputs
        self._run()
        self._interreduce()

    # -- reduction -----------------------------------------------------
    def _divisor(self, key):
        comp = -key[-1]
        cand = self.by_comp.get(comp)
        if not cand:
            return None
        off, n = self.ko.off, self.ko.n
        kk = key[off : off + n]
        for i in cand:
            lk = self.leads[i]
            # exponents are negated inside keys
            for a, b in zip(kk, lk[off : off + n]):
                if a > b:
                    break
            else:
                return i
        return None

    def reduce(self, vec, rep=None, full=True, quot=None):
        """Reduce vec against the current basis.

        rep: tracking dict updated alongside; quot: dict (basis index, exp)
        -> coeff accumulating the quotients. Returns the remainder.
        Pending keys sit in a max-heap of negated keys; stale entries
        (cancelled or already handled) are skipped when popped.
        """
        p = self.p
        f = dict(vec)
        rem = {}
        heap = [_neg(k) for k in f]
        heapq.heapify(heap)
        seen = set(f)
        while heap:
            k = _neg(heapq.heappop(heap))
            seen.discard(k)
            c = f.get(k)
            if c is None:
                continue
            i = self._divisor(k)
            if i is None:
                if not full:
                    rem.update(f)
                    return rem
                rem[k] = c
                del f[k]
                continue
            qkey = tuple(map(_sub, k, self.leads[i]))
            for bk, v in self.basis[i].items():
                nk = tuple(map(_add, bk, qkey))
                nv = (f.get(nk, 0) - c * v) % p
                if nv:
                    f[nk] = nv
                    if nk not in seen:
                        seen.add(nk)
                        heapq.heappush(heap, _neg(nk))
                else:
                    f.pop(nk, None)
            if rep is not None or quot is not None:
                qexp = self.ko.exp(qkey)
                if rep is not None:
                    _rep_axpy(rep, self.reps[i], qexp, c, p)
                if quot is not None:
                    kq = (i, qexp)
                    nv = (quot.get(kq, 0) + c) % p
                    if nv:
                        quot[kq] = nv
                    else:
                        quot.pop(kq, None)
        return rem

    # -- main loop -----------------------------------------------------
    def _add(self, vec, rep):
        p = self.p
        k = max(vec)
        c = vec[k]
        if c != 1:
            inv = field_inv(c, self.ko.ring.field)
            vec = {kk: v * inv % p for kk, v in vec.items()}
            if rep is not None:
                rep = {kk: v * inv % p for kk, v in rep.items()}
        idx = len(self.basis)
        self.basis.append(vec)
        self.leads.append(k)
        self.lead_exps.append(self.ko.exp(k))
        self.reps.append(rep)
        self.by_comp.setdefault(-k[-1], []).append(idx)
        self._update_pairs(idx)

    def _update_pairs(self, h):
        ko = self.ko
        lead_h = self.leads[h]
        comp = -lead_h[-1]
        eh = self.lead_exps[h]
        use_product = (not self.track) and self.rank == 1
        new = []
        for i in self.by_comp[comp]:
            if i == h:
                continue
            ei = self.lead_exps[i]
            lcm_e = tuple(max(a, b) for a, b in zip(ei, eh))
            coprime = all(a == 0 or b == 0 for a, b in zip(ei, eh))
            new.append((lcm_e, i, coprime))
        # criterion M: drop pairs whose lcm is a proper multiple of another new lcm
        kept = []
        for lcm_e, i, cop in new:
            dominated = False
            for lcm2, j, _ in new:
                if j != i and lcm2 != lcm_e and all(a <= b for a, b in zip(lcm2, lcm_e)):
                    dominated = True
                    break
            if not dominated:
                kept.append((lcm_e, i, cop))
        # among equal lcms keep one (drop all if any is coprime under the product criterion)
        groups = {}
        for lcm_e, i, cop in kept:
            groups.setdefault(lcm_e, []).append((i, cop))
        survivors = []
        for lcm_e, members in groups.items():
            if use_product and any(cop for _, cop in members):
                continue
            survivors.append((lcm_e, min(i for i, _ in members)))
        # criterion B on old pairs
        old = []
        for pair in self.pairs:
            deg, lk, i, j, lcm_e = pair
            if -lk[-1] == comp and all(a <= b for a, b in zip(eh, lcm_e)):
                ei, ej = self.lead_exps[i], self.lead_exps[j]
                lih = tuple(max(a, b) for a, b in zip(ei, eh))
                ljh = tuple(max(a, b) for a, b in zip(ej, eh))
                if lih != lcm_e and ljh != lcm_e:
                    continue
            old.append(pair)
        self.pairs = old
        for lcm_e, i in survivors:
            lk = ko.key(lcm_e, comp)
            self.pairs.append((lk[0], lk, i, h, lcm_e))

    def _spoly(self, i, j, lk):
        p = self.p
        qi = tuple(map(_sub, lk, self.leads[i]))
        qj = tuple(map(_sub, lk, self.leads[j]))
        s = _mul_term(self.basis[i], qi, 1, p)
        _axpy(s, self.basis[j], qj, 1, p)
        rep = None
        if self.track:
            rep = {}
            _rep_axpy(rep, self.reps[i], self.ko.exp(qi), p - 1, p)
            _rep_axpy(rep, self.reps[j], self.ko.exp(qj), 1, p)
        return s, rep

    def _run(self):
        order = sorted(
            (i for i, g in enumerate(self.inputs)),
            key=lambda i: (self.ko.degree(self.inputs[i]) if self.inputs[i] else -(10**18), i),
        )
        self.pairs = []
        pending = [i for i in order if self.inputs[i]]
        for i in order:
            if not self.inputs[i]:
                # a zero input is its own (unit) syzygy
                tracked = self.track and i not in self.untracked
                self.redundant[i] = {(i, (0,) * self.ko.n): 1} if tracked else {}
        pos = 0
        while pos < len(pending) or self.pairs:
            d_in = self.ko.degree(self.inputs[pending[pos]]) if pos < len(pending) else None
            d_pair = min(pr[0] for pr in self.pairs) if self.pairs else None
            d = min(x for x in (d_in, d_pair) if x is not None)
            if self.max_degree is not None and d > self.max_degree:
                break
            # S-pairs of degree d first
            while True:
                todo = sorted((pr for pr in self.pairs if pr[0] == d), key=lambda pr: (pr[1], pr[2], pr[3]))
                if not todo:
                    break
                self.pairs = [pr for pr in self.pairs if pr[0] != d]
                for _, lk, i, j, _ in todo:
                    self.pairs_processed += 1
                    if self.pairs_processed > self.pair_cap:
                        raise PairCapExceeded(f"S-pair cap {self.pair_cap} exceeded")
                    s, rep = self._spoly(i, j, lk)
                    s = self.reduce(s, rep, full=False)
                    if s:
                        self._add(s, rep)
                    elif self.track:
                        if rep:
                            self.pair_syz.append(rep)
            # then inputs of degree d
            while pos < len(pending) and self.ko.degree(self.inputs[pending[pos]]) == d:
                idx = pending[pos]
                pos += 1
                rep = None
                if self.track:
                    rep = {} if idx in self.untracked else {(idx, (0,) * self.ko.n): 1}
                r = self.reduce(self.inputs[idx], rep, full=False)
                if r:
                    self.minimal.append(idx)
                    self._add(r, rep)
                else:
                    self.redundant[idx] = rep

    def _interreduce(self):
        """Turn the basis into the reduced Groebner basis (leads are already minimal)."""
        for i in range(len(self.basis)):
            lead = self.leads[i]
            tail = {k: v for k, v in self.basis[i].items() if k != lead}
            rep = self.reps[i]
            if rep is not None:
                rep = dict(rep)
            # reduce the tail only; never against itself since tail terms are smaller than lead
            rem = self.reduce(tail, rep, full=True)
            rem[lead] = 1
            self.basis[i] = rem
            self.reps[i] = rep
        self.order_idx = sorted(range(len(self.basis)), key=lambda i: self.leads[i], reverse=True)

    # -- derived data --------------------------------------------------
    def syzygies(self, include_redundant=True):
        """Tracking vectors generating the syzygy module of the inputs."""
        out = [dict(s) for s in self.pair_syz]
        if include_redundant:
            for idx, rep in sorted(self.redundant.items()):
                if rep is not None:
                    out.append(dict(rep))
                else:
                    out.append({})
        return [s for s in out if s]


# ----------------------------------------------------------------------
# public ideal layer


class GroebnerBasis:
    """Reduced Groebner basis of an ideal with its engine (normal forms)."""

    def __init__(self, ring, order, engine: Buchberger, ko: KeyOrder):
        self.ring = ring
        self.order = order
        self.engine = engine
        self.ko = ko
        self.polys = [ko.polys(engine.basis[i], 1)[0] for i in engine.order_idx]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def lead_exponents(self):
        return [self.engine.lead_exps[i] for i in self.engine.order_idx]

    def is_unit(self):
        return any(not any(e) for e in self.lead_exponents())

    def normal_form(self, f: Polynomial):
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self)[0].is_zero()


class IdealPresentation:
    """A homogeneous ideal I of a weighted polynomial ring, R = A/I."""

    def __init__(self, ring: PolyRingSpec, gens: Sequence[Polynomial], pair_cap=None):
        self.ring = ring
        gens = [g if isinstance(g, Polynomial) else ring.parse(g) for g in gens]
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_homogeneous():
                raise NonHomogeneous(f"generator {g} is not homogeneous")
        self.gens = tuple(g for g in gens if not g.is_zero())
        self.pair_cap = pair_cap
        self._gb = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        # write-once cache: recomputation is deterministic, so first result wins
        gb = self._gb.get(order)
        if gb is None:
            gb = self._gb.setdefault(order, reduced_groebner(self, order))
        return gb

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return self.groebner().is_unit()

    def __add__(self, other):
        if isinstance(other, IdealPresentation):
            other = other.gens
        elif isinstance(other, Polynomial):
            other = [other]
        return IdealPresentation(self.ring, list(self.gens) + list(other), pair_cap=self.pair_cap)

    def equals(self, other: "IdealPresentation") -> bool:
        return all(other.contains(g) for g in self.gens) and all(self.contains(g) for g in other.gens)

    def contains_ideal(self, other: "IdealPresentation") -> bool:
        return all(self.contains(g) for g in other.gens)


def reduced_groebner(I: IdealPresentation, order: MonomialOrder = GREVLEX, pair_cap=None) -> GroebnerBasis:
    ko = KeyOrder(I.ring, (0,), order)
    cap = pair_cap if pair_cap is not None else I.pair_cap
    eng = Buchberger(ko, [ko.vector(g) for g in I.gens], track=False, pair_cap=cap, rank=1)
    return GroebnerBasis(I.ring, order, eng, ko)


def normal_form(f: Polynomial, G: GroebnerBasis):
    """Return (remainder, quotients) with f = sum(q_i * G[i]) + remainder."""
    eng, ko = G.engine, G.ko
    quot = {}
    rem = eng.reduce(ko.vector(f), None, full=True, quot=quot)
    position = {eng_i: pos for pos, eng_i in enumerate(eng.order_idx)}
    qs = [dict() for _ in G.polys]
    for (i, e), c in quot.items():
        qs[position[i]][e] = c
    ring = G.ring
    return ko.polys(rem, 1)[0], [Polynomial(ring, q) for q in qs]


def bracket_power(I: IdealPresentation, e: int) -> IdealPresentation:
    """I^[q] with q = p^e, generated by the q-th powers of the generators."""
    if e < 0:
        raise ValueError("e must be non-negative")
    q = I.ring.p**e
    if q >= EXPONENT_LIMIT:
        raise ExponentOverflow("bracket power exponent overflow")
    return IdealPresentation(I.ring, [g.frobenius_power(q) for g in I.gens], pair_cap=I.pair_cap)


def syzygy_polys(ring, shifts, columns, pair_cap=None):
    """Generators of the syzygy module of the given columns (lists of polynomials).

    Returns lists of len(columns) polynomials.
    """
    ko = KeyOrder(ring, shifts, GREVLEX)
    vecs = [ko.vector(c) for c in columns]
    eng = Buchberger(ko, vecs, track=True, pair_cap=pair_cap, rank=len(shifts))
    return [_rep_to_polys(ring, s, len(columns)) for s in eng.syzygies()]


def _rep_to_polys(ring, rep, k):
    terms = [dict() for _ in range(k)]
    for (j, e), c in rep.items():
        terms[j][e] = c
    return [Polynomial._raw(ring, t) for t in terms]


def intersect(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    """I cap J from the syzygies of (f_1..f_k, -g_1..-g_l)."""
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return IdealPresentation(ring, [])
    cols = list(I.gens) + [-g for g in J.gens]
    k = len(I.gens)
    out = []
    for s in syzygy_polys(ring, (0,), cols, pair_cap=I.pair_cap):
        h = ring.zero()
        for a, f in zip(s[:k], I.gens):
            h = h + a * f
        if not h.is_zero():
            out.append(h)
    return IdealPresentation(ring, out, pair_cap=I.pair_cap)


def colon_element(I: IdealPresentation, g: Polynomial) -> IdealPresentation:
    """(I : g) as the g-coefficients of the syzygies of (g, f_1, ..., f_k)."""
    ring = I.ring
    if g.is_zero():
        return IdealPresentation(ring, [ring.one()])
    if I.is_zero():
        return IdealPresentation(ring, [])
    cols = [g] + list(I.gens)
    out = [s[0] for s in syzygy_polys(ring, (0,), cols, pair_cap=I.pair_cap) if not s[0].is_zero()]
    return IdealPresentation(ring, out, pair_cap=I.pair_cap)


def colon(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    """(I : J) = intersection over generators g of J of (I : g)."""
    if J.is_zero():
        return IdealPresentation(I.ring, [I.ring.one()], pair_cap=I.pair_cap)
    result = None
    for g in J.gens:
        c = colon_element(I, g)
        result = c if result is None else intersect(result, c)
    return IdealPresentation(I.ring, list(reduced_groebner(result)), pair_cap=I.pair_cap)


def bracket_colon(I: IdealPresentation, e: int = 1, max_degree=None) -> IdealPresentation:
    """(I^[q] : I) for q = p^e, optionally only its generators of degree <= max_degree.

    One syzygy computation in A^m, m = #gens(I): f lies in the colon iff
    f * (g_1, ..., g_m) is in I^[q] A^m. The q-th powers of a Groebner basis
    of I form one of I^[q], so those columns are seeded without tracking and
    the syzygies come out already projected onto the f coordinate.
    """
    ring = I.ring
    if I.is_zero():
        return IdealPresentation(ring, [ring.one()], pair_cap=I.pair_cap)
    q = ring.p**e
    if q >= EXPONENT_LIMIT:
        raise ExponentOverflow("bracket power exponent overflow")
    gens = list(I.gens)
    m = len(gens)
    shifts = tuple(-g.weighted_degree() for g in gens)
    ko = KeyOrder(ring, shifts, GREVLEX)
    cols = [ko.vector(gens)]
    powers = [g.frobenius_power(q) for g in I.groebner()]
    for k in range(m):
        for h in powers:
            col = [None] * m
            col[k] = h
            cols.append(ko.vector(col))
    eng = Buchberger(ko, cols, track=True, pair_cap=I.pair_cap, rank=m, max_degree=max_degree,
                     untracked=range(1, len(cols)))
    out = [_rep_to_polys(ring, s, 1)[0] for s in eng.syzygies()]
    return IdealPresentation(ring, [f for f in out if not f.is_zero()] + powers, pair_cap=I.pair_cap)


def eliminate(I: IdealPresentation, block: int):
    """Generators of I cap k[x_{block+1}, ..., x_n] (elimination order)."""
    gb = I.groebner(MonomialOrder("elim", block))
    return [g for g in gb.polys if all(not any(e[:block]) for e in g.terms)]


def standard_monomials(lead_exps, ring: PolyRingSpec, d: int):
    out = []
    for e in ring.monomials_of_degree(d):
        if not any(all(a >= b for a, b in zip(e, l)) for l in lead_exps):
            out.append(e)
    return out


def hilbert_sample(I: IdealPresentation, lo: int, hi: int):
    """dim_k (A/I)_d for d = lo..hi (standard monomial counts)."""
    leads = I.groebner().lead_exponents()
    return [len(standard_monomials(leads, I.ring, d)) for d in range(lo, hi + 1)]


def monomial_dim(lead_exps, n: int) -> int:
    """Krull dimension of A/J for the monomial ideal J generated by lead_exps.

    Largest set S of variables such that no generator is supported in S; -1
    for the unit ideal.
    """
    if any(not any(e) for e in lead_exps):
        return -1
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in lead_exps]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def krull_dim(I: IdealPresentation) -> int:
    gb = I.groebner()
    if gb.is_unit():
        raise UnitIdeal("the unit ideal has no Krull dimension")
    return monomial_dim(gb.lead_exponents(), I.ring.n)
