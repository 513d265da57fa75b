"""Graded presentations, minimal free resolutions, Ext into A and chain lifts.

Conventions. A free module F = sum A(-a_s) has basis vectors e_s of degree
a_s; its `shifts` are (a_1, ..., a_r). Matrices are stored as lists of
columns; a column is a list of polynomials, one per basis vector of the
target. The dual F* = Hom(F, A) has shifts (-a_1, ..., -a_r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import LiftFailure, NonHomogeneous
from .fields import field_inv
from .groebner import (
    GREVLEX,
    Buchberger,
    IdealPresentation,
    KeyOrder,
    monomial_dim,
    standard_monomials,
)
from .polynomials import PolyRingSpec, Polynomial


def column_degree(col, shifts):
    """Degree of a homogeneous column, None for the zero column."""
    degs = set()
    for f, a in zip(col, shifts):
        for e in f.terms:
            degs.add(f.ring.degree_of(e) + a)
    if not degs:
        return None
    if len(degs) != 1:
        raise NonHomogeneous(f"column is not homogeneous (degrees {sorted(degs)})")
    return degs.pop()


def is_zero_col(col):
    return all(f.is_zero() for f in col)


def frob_col(col, q):
    return [f.frobenius_power(q) for f in col]


def mat_apply(matrix, col, ring, rows):
    """sum_s col[s] * matrix[s]; matrix is a list of columns of length `rows`."""
    out = [ring.zero() for _ in range(rows)]
    for c, m in zip(col, matrix):
        if c.is_zero():
            continue
        for i in range(rows):
            if not m[i].is_zero():
                out[i] = out[i] + c * m[i]
    return out


class Engine:
    """A tracking Groebner basis for the submodule of F generated by `columns`."""

    def __init__(self, ring, shifts, columns, pair_cap=None, track=True, _eng=None, _ko=None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.columns = list(columns)
        if _eng is not None:
            self.ko, self.eng = _ko, _eng
            return
        self.ko = KeyOrder(ring, self.shifts, GREVLEX)
        vecs = [self.ko.vector(c) for c in self.columns]
        self.eng = Buchberger(self.ko, vecs, track=track, pair_cap=pair_cap, rank=max(len(self.shifts), 1))

    @property
    def minimal(self):
        return sorted(self.eng.minimal)

    def reduce(self, col):
        if not self.shifts:
            return []
        return self.ko.polys(self.eng.reduce(self.ko.vector(col), None, full=True), len(self.shifts))

    def contains(self, col) -> bool:
        if not self.shifts:
            return True
        return not self.eng.reduce(self.ko.vector(col), None, full=False)

    def lift(self, col):
        """Coefficients c (one per input column) with sum c_i col_i = col, or None."""
        k = len(self.columns)
        if not self.shifts:
            return [self.ring.zero() for _ in range(k)]
        rep = {}
        rem = self.eng.reduce(self.ko.vector(col), rep, full=False)
        if rem:
            return None
        # rep accumulated "minus" the quotients
        p = self.ring.p
        terms = [dict() for _ in range(k)]
        for (j, e), c in rep.items():
            terms[j][e] = (-c) % p
        return [Polynomial(self.ring, t) for t in terms]

    def syzygies(self):
        k = len(self.columns)
        out = []
        for s in self.eng.syzygies():
            terms = [dict() for _ in range(k)]
            for (j, e), c in s.items():
                terms[j][e] = c
            out.append([Polynomial(self.ring, t) for t in terms])
        return out

    def lead_exps_by_comp(self):
        out = {c: [] for c in range(len(self.shifts))}
        for i in range(len(self.eng.basis)):
            out[-self.eng.leads[i][-1]].append(self.eng.lead_exps[i])
        return out

    def frobenius(self, q):
        """The engine of the Frobenius-twisted columns.

        Entrywise q-th powers of a Groebner basis form a Groebner basis of the
        twisted module (S-pairs and standard representations twist along), so
        nothing is recomputed.
        """
        ko = KeyOrder(self.ring, tuple(q * a for a in self.shifts), GREVLEX)
        old = self.eng
        new = Buchberger.__new__(Buchberger)
        new.ko = ko
        new.p = old.p
        new.track = old.track
        new.rank = old.rank

        def tw(key):
            return tuple(q * x for x in key[:-1]) + (key[-1],)

        new.basis = [{tw(k): v for k, v in b.items()} for b in old.basis]
        new.leads = [tw(k) for k in old.leads]
        new.lead_exps = [tuple(q * a for a in e) for e in old.lead_exps]
        new.reps = [
            None if r is None else {(j, tuple(q * a for a in e)): v for (j, e), v in r.items()} for r in old.reps
        ]
        new.by_comp = {c: list(ix) for c, ix in old.by_comp.items()}
        new.minimal = list(old.minimal)
        new.redundant = {}
        new.pair_syz = []
        new.order_idx = list(old.order_idx)
        return Engine(self.ring, ko.shifts, [frob_col(c, q) for c in self.columns], _eng=new, _ko=ko)


class GradedModulePresentation:
    """M = coker(relations) over A, generators in the given degrees."""

    def __init__(self, ring: PolyRingSpec, gen_degrees: Sequence[int], relations=(), pair_cap=None, meta=None):
        self.ring = ring
        self.gen_degrees = tuple(gen_degrees)
        rels = []
        for col in relations:
            col = list(col)
            if len(col) != len(self.gen_degrees):
                raise ValueError("relation column has the wrong length")
            if not is_zero_col(col):
                column_degree(col, self.gen_degrees)
                rels.append(col)
        self.relations = rels
        self.pair_cap = pair_cap
        self.meta = dict(meta or {})
        self._engine = None

    @property
    def rank(self):
        return len(self.gen_degrees)

    def __repr__(self):
        return f"GradedModulePresentation(gens in degrees {list(self.gen_degrees)}, {len(self.relations)} relations)"

    @classmethod
    def quotient_ring(cls, I: IdealPresentation):
        return cls(I.ring, (0,), [[g] for g in I.gens], pair_cap=I.pair_cap)

    @classmethod
    def free(cls, ring, shifts):
        return cls(ring, shifts, [])

    def zero_vector(self):
        return [self.ring.zero() for _ in range(self.rank)]

    def unit_vector(self, s):
        v = self.zero_vector()
        v[s] = self.ring.one()
        return v

    def engine(self) -> Engine:
        if self._engine is None:
            self._engine = Engine(self.ring, self.gen_degrees, self.relations, pair_cap=self.pair_cap)
        return self._engine

    def reduce(self, vec):
        return self.engine().reduce(vec)

    def is_zero_element(self, vec) -> bool:
        return self.engine().contains(vec)

    def is_zero(self) -> bool:
        """Zero iff every generator has normal form zero modulo the relations."""
        return all(self.is_zero_element(self.unit_vector(s)) for s in range(self.rank))

    # degreewise data ---------------------------------------------------
    def basis_in_degree(self, d):
        """Standard monomials (comp, exp) spanning M_d."""
        if not self.rank:
            return []
        leads = self.engine().lead_exps_by_comp()
        out = []
        for s, g in enumerate(self.gen_degrees):
            for e in standard_monomials(leads[s], self.ring, d - g):
                out.append((s, e))
        return out

    def hilbert(self, d) -> int:
        return len(self.basis_in_degree(d))

    def hilbert_sample(self, lo, hi):
        return [self.hilbert(d) for d in range(lo, hi + 1)]

    def krull_dim(self) -> int:
        """Krull dimension of M (-1 for the zero module) from the lead-term modules."""
        if not self.rank:
            return -1
        leads = self.engine().lead_exps_by_comp()
        return max(monomial_dim(leads[s], self.ring.n) if leads[s] else self.ring.n for s in range(self.rank))

    def frobenius(self, e: int = 1) -> "GradedModulePresentation":
        return frobenius_functor(self, e)

    def prune(self):
        """Cancel unit entries of the relation matrix; see `prune_presentation`."""
        return prune_presentation(self)


def frobenius_functor(M: GradedModulePresentation, e: int = 1) -> GradedModulePresentation:
    """F_A^e(M): generator degrees times q = p^e, relation entries to the q-th power."""
    q = M.ring.p**e
    out = GradedModulePresentation(
        M.ring, [q * g for g in M.gen_degrees], [frob_col(c, q) for c in M.relations], pair_cap=M.pair_cap
    )
    if M._engine is not None:
        out._engine = M._engine.frobenius(q)
    return out


def prune_presentation(M: GradedModulePresentation):
    """Remove generators that a relation expresses through the others.

    Returns (pruned, kept, express): `kept` lists surviving generator indices,
    `express[s]` writes old generator s as a column over the kept ones.
    """
    ring = M.ring
    gens = list(range(M.rank))
    rels = [list(c) for c in M.relations]
    express = [[ring.one() if i == s else ring.zero() for i in range(M.rank)] for s in range(M.rank)]
    changed = True
    while changed:
        changed = False
        for ci, col in enumerate(rels):
            unit_row = next((r for r, f in enumerate(col) if not f.is_zero() and f.is_constant()), None)
            if unit_row is None:
                continue
            inv = field_inv(col[unit_row].constant_term(), ring.field)

            def eliminate(v):
                c = v[unit_row]
                if c.is_zero():
                    return v[:unit_row] + v[unit_row + 1 :]
                factor = c.scale(inv)
                w = [a - factor * b for a, b in zip(v, col)]
                return w[:unit_row] + w[unit_row + 1 :]

            rels = [eliminate(c) for k, c in enumerate(rels) if k != ci]
            rels = [c for c in rels if not is_zero_col(c)]
            express = [eliminate(v) for v in express]
            del gens[unit_row]
            changed = True
            break
    pruned = GradedModulePresentation(ring, [M.gen_degrees[s] for s in gens], rels, pair_cap=M.pair_cap, meta=M.meta)
    return pruned, gens, express


@dataclass
class ModuleMap:
    """A homogeneous map source -> target given by images of the generators."""

    source: GradedModulePresentation
    target: GradedModulePresentation
    matrix: list  # one column (over target generators) per source generator
    degree: int = 0

    def apply(self, vec):
        return mat_apply(self.matrix, vec, self.source.ring, self.target.rank)

    def verify(self) -> bool:
        """Relations of the source map into relations of the target."""
        for col in self.source.relations:
            if not self.target.is_zero_element(self.apply(col)):
                return False
        for s, col in enumerate(self.matrix):
            if is_zero_col(col):
                continue
            d = column_degree(col, self.target.gen_degrees)
            if d != self.source.gen_degrees[s] + self.degree:
                return False
        return True


def multiplication_map(M: GradedModulePresentation, f: Polynomial) -> ModuleMap:
    cols = []
    for s in range(M.rank):
        col = M.zero_vector()
        col[s] = f
        cols.append(col)
    return ModuleMap(M, M, cols, degree=f.weighted_degree())


def module_kernel(phi: ModuleMap) -> GradedModulePresentation:
    """Presentation of ker(phi); its `meta['generators']` are columns over the source generators."""
    src, tgt = phi.source, phi.target
    ring = src.ring
    r = src.rank
    if r == 0:
        return GradedModulePresentation(ring, [], meta={"generators": []})
    if tgt.rank == 0:
        cand = [src.unit_vector(s) for s in range(r)]
    else:
        cols = [list(c) for c in phi.matrix] + list(tgt.relations)
        # zero images are fine: their unit syzygies are produced by the engine
        eng = Engine(ring, tgt.gen_degrees, cols, pair_cap=src.pair_cap)
        cand = [s[:r] for s in eng.syzygies()]
    cand = [c for c in cand if not is_zero_col(c)]
    # minimal generators of the preimage, then relations modulo im(source relations)
    if not cand:
        return GradedModulePresentation(ring, [], meta={"generators": []})
    mins = Engine(ring, src.gen_degrees, cand, pair_cap=src.pair_cap, track=False).minimal
    K = [cand[i] for i in mins]
    return subquotient(ring, src.gen_degrees, K, src.relations, pair_cap=src.pair_cap)


def subquotient(ring, shifts, gens, rels, pair_cap=None):
    """Presentation of (span(gens) + span(rels)) / span(rels) inside the free module."""
    k = len(gens)
    if k == 0:
        return GradedModulePresentation(ring, [], meta={"generators": []})
    degs = [column_degree(g, shifts) for g in gens]
    eng = Engine(ring, shifts, list(gens) + list(rels), pair_cap=pair_cap)
    relations = [s[:k] for s in eng.syzygies()]
    M = GradedModulePresentation(ring, degs, [c for c in relations if not is_zero_col(c)], pair_cap=pair_cap)
    pruned, kept, express = prune_presentation(M)
    pruned.meta = {
        "generators": [gens[i] for i in kept],
        "ambient_shifts": tuple(shifts),
        "engine": eng,
        "candidates": k,
        "express": express,
        "twins": {},
    }
    return pruned


def ambient_coordinates(N: GradedModulePresentation, w, q: int = 1):
    """Write an ambient element w (a cocycle) over the generators of the subquotient N.

    With q > 1, w lives in the Frobenius twist of the ambient free module and
    the answer is over the generators of F^e(N), q = p^e.
    """
    meta = N.meta
    if N.rank == 0 and not meta.get("candidates"):
        return []
    eng = meta["engine"]
    if q != 1:
        twins = meta["twins"]
        if q not in twins:
            twins[q] = eng.frobenius(q)
        eng = twins[q]
    c = eng.lift(w)
    if c is None:
        raise LiftFailure("element is not in the span of the cocycles and coboundaries")
    ring = N.ring
    out = [ring.zero() for _ in range(N.rank)]
    for s in range(meta["candidates"]):
        if c[s].is_zero():
            continue
        ex = meta["express"][s]
        for t in range(N.rank):
            if not ex[t].is_zero():
                out[t] = out[t] + c[s] * (ex[t] if q == 1 else ex[t].frobenius_power(q))
    return out


class Submodule:
    """The submodule of M generated by the given columns (over M's generators)."""

    def __init__(self, M: GradedModulePresentation, gens):
        self.M = M
        gens = [list(g) for g in gens if not M.is_zero_element(g)]
        self.engine = Engine(M.ring, M.gen_degrees, gens + list(M.relations), pair_cap=M.pair_cap)
        k = len(gens)
        self.gens = [gens[i] for i in self.engine.minimal if i < k]

    def contains(self, vec) -> bool:
        return self.engine.contains(vec)

    def is_zero(self) -> bool:
        return not self.gens

    def is_whole(self) -> bool:
        return all(self.contains(self.M.unit_vector(s)) for s in range(self.M.rank))

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.gens)

    def missing_generator(self):
        """Index of a generator of M outside this submodule, or None."""
        for s in range(self.M.rank):
            if not self.contains(self.M.unit_vector(s)):
                return s
        return None

    def presentation(self) -> GradedModulePresentation:
        return subquotient(self.M.ring, self.M.gen_degrees, self.gens, self.M.relations, self.M.pair_cap)


def finite_length(M: GradedModulePresentation):
    """(True, length) when dim M <= 0, else (False, None)."""
    if M.krull_dim() > 0:
        return False, None
    leads = M.engine().lead_exps_by_comp() if M.rank else {}
    total = 0
    for s in range(M.rank):
        total += _count_standard(leads[s], M.ring.n)
    return True, total


def _count_standard(leads, n):
    """Number of monomials outside the (Artinian) monomial ideal spanned by leads."""
    bounds = []
    for i in range(n):
        powers = [e[i] for e in leads if all(a == 0 for j, a in enumerate(e) if j != i) and e[i] > 0]
        bounds.append(min(powers))
    count = 0

    def rec(i, prefix):
        nonlocal count
        if i == n:
            e = tuple(prefix)
            if not any(all(a >= b for a, b in zip(e, l)) for l in leads):
                count += 1
            return
        for a in range(bounds[i]):
            prefix.append(a)
            rec(i + 1, prefix)
            prefix.pop()

    rec(0, [])
    return count


# ----------------------------------------------------------------------
# resolutions


@dataclass
class FreeResolution:
    """F_L -> ... -> F_1 -> F_0 -> M -> 0 with F_0 free on M's generators."""

    ring: PolyRingSpec
    module: GradedModulePresentation
    shifts: list  # shifts[k] = degree shifts of F_k
    maps: list  # maps[k-1] = d_k as columns in F_{k-1}
    complete: bool = True
    engines: dict = field(default_factory=dict)  # k -> (Engine over d_k columns, position map)

    @property
    def length(self):
        return len(self.shifts) - 1

    def betti(self):
        return [len(s) for s in self.shifts]

    def d(self, k):
        return self.maps[k - 1]

    def is_minimal(self) -> bool:
        for m in self.maps:
            for col in m:
                for f in col:
                    if not f.is_zero() and f.is_constant():
                        return False
        return True

    def check_dd(self) -> bool:
        for k in range(2, self.length + 1):
            for col in self.maps[k - 1]:
                img = mat_apply(self.maps[k - 2], col, self.ring, len(self.shifts[k - 2]))
                if not is_zero_col(img):
                    return False
        return True

    def lift_through(self, k, vec):
        """Column c over F_k with d_k c = vec (vec in F_{k-1}), or None."""
        if k > self.length:
            return None if not is_zero_col(vec) else []
        if k not in self.engines:
            self.engines[k] = Engine(self.ring, self.shifts[k - 1], self.maps[k - 1], pair_cap=self.module.pair_cap)
        return self.engines[k].lift(vec)

    def frobenius(self, e: int = 1) -> "FreeResolution":
        """Entrywise q-th powers: a resolution of F_A^e(M) since Frobenius is flat on A."""
        q = self.ring.p**e
        return FreeResolution(
            self.ring,
            frobenius_functor(self.module, e),
            [tuple(q * a for a in s) for s in self.shifts],
            [[frob_col(c, q) for c in m] for m in self.maps],
            self.complete,
        )


def minimal_free_resolution(M: GradedModulePresentation, length_cap: int | None = None) -> FreeResolution:
    """Minimal graded free resolution (generators pruned, syzygies minimized by degree)."""
    ring = M.ring
    if length_cap is None:
        length_cap = ring.n + 1
    M, _, _ = prune_presentation(M)
    shifts = [tuple(M.gen_degrees)]
    maps = []
    engines = {}
    cand = [list(c) for c in M.relations]
    complete = True
    k = 1
    while True:
        cand = [c for c in cand if not is_zero_col(c)]
        if not cand:
            break
        if k > length_cap:
            complete = False
            break
        eng = Engine(ring, shifts[k - 1], cand, pair_cap=M.pair_cap)
        mins = eng.minimal
        pos = {i: j for j, i in enumerate(mins)}
        cols = [cand[i] for i in mins]
        maps.append(cols)
        shifts.append(tuple(column_degree(c, shifts[k - 1]) for c in cols))
        engines[k] = _ReindexedEngine(eng, pos, len(cols))
        # syzygies among the kept columns only
        nxt = []
        for s in eng.eng.pair_syz:
            terms = [dict() for _ in cols]
            for (j, e), c in s.items():
                terms[pos[j]][e] = c
            nxt.append([Polynomial(ring, t) for t in terms])
        cand = nxt
        k += 1
    return FreeResolution(ring, M, shifts, maps, complete, engines)


class _ReindexedEngine:
    """An Engine whose inputs include redundant columns; lifts report kept positions."""

    def __init__(self, engine, pos, k):
        self.engine = engine
        self.pos = pos
        self.k = k

    def lift(self, vec):
        c = self.engine.lift(vec)
        if c is None:
            return None
        out = [self.engine.ring.zero() for _ in range(self.k)]
        for i, f in enumerate(c):
            if not f.is_zero():
                out[self.pos[i]] = f
        return out


def resolution_of(I: IdealPresentation) -> FreeResolution:
    cache = _cache(I)
    if "res" not in cache:
        cache["res"] = minimal_free_resolution(GradedModulePresentation.quotient_ring(I))
    return cache["res"]


def _cache(I):
    if not hasattr(I, "_cache"):
        I._cache = {}
    return I._cache


def projective_dimension(I: IdealPresentation) -> int:
    return resolution_of(I).length


def depth_via_AB(I: IdealPresentation) -> int:
    """depth A/I = n - pd(A/I) (Auslander-Buchsbaum)."""
    if I.is_unit():
        from .errors import UnitIdeal

        raise UnitIdeal("depth of the zero ring is undefined")
    return I.ring.n - projective_dimension(I)


# ----------------------------------------------------------------------
# Ext


def _transpose_columns(matrix, src_rank, tgt_rank, ring):
    """Columns of the transpose: matrix has `src_rank` columns of length `tgt_rank`."""
    return [[matrix[t][s] for t in range(src_rank)] for s in range(tgt_rank)]


def ext_module(res: FreeResolution, j: int) -> GradedModulePresentation:
    """Ext^j(M, A) as the cohomology of Hom(F_., A) at F_j*.

    meta: 'generators' (cocycles over F_j*), 'ambient_shifts' (shifts of F_j*),
    'engine' (Engine over cocycles + coboundaries), 'j'.
    """
    ring = res.ring
    L = res.length
    if j > L or j < 0:
        M = GradedModulePresentation(ring, [], meta={"generators": [], "ambient_shifts": (), "j": j})
        return M
    Fj = res.shifts[j]
    dual = tuple(-a for a in Fj)
    rj = len(Fj)
    # cocycles: kernel of d_{j+1}^T
    if j == L:
        Z = [[ring.one() if s == t else ring.zero() for s in range(rj)] for t in range(rj)]
    else:
        Fn = res.shifts[j + 1]
        cols = _transpose_columns(res.maps[j], len(Fn), rj, ring)
        eng = Engine(ring, tuple(-a for a in Fn), cols, pair_cap=res.module.pair_cap)
        Z = [s for s in eng.syzygies() if not is_zero_col(s)]
        if Z:
            Z = [Z[i] for i in Engine(ring, dual, Z, pair_cap=res.module.pair_cap, track=False).minimal]
    # coboundaries: image of d_j^T
    if j == 0:
        B = []
    else:
        B = _transpose_columns(res.maps[j - 1], rj, len(res.shifts[j - 1]), ring)
        B = [b for b in B if not is_zero_col(b)]
    N = subquotient(ring, dual, Z, B, pair_cap=res.module.pair_cap)
    N.meta["j"] = j
    N.meta["ambient_shifts"] = dual
    N.meta["boundaries"] = B
    return N


def ext_modules(I: IdealPresentation):
    """[Ext^j_A(A/I, A) for j = 0..n]."""
    cache = _cache(I)
    if "ext" not in cache:
        res = resolution_of(I)
        cache["ext"] = [ext_module(res, j) for j in range(I.ring.n + 1)]
    return cache["ext"]


def chain_lift(phi: ModuleMap, source_res: FreeResolution, target_res: FreeResolution, verify=True):
    """Chain map phi_k : F_k(source) -> F_k(target) over phi (phi_0 = phi.matrix)."""
    ring = phi.source.ring
    maps = [[list(c) for c in phi.matrix]]
    for k in range(1, source_res.length + 1):
        prev = maps[-1]
        rows_prev = len(target_res.shifts[k - 1])
        cols = []
        for col in source_res.maps[k - 1]:
            v = mat_apply(prev, col, ring, rows_prev)
            if is_zero_col(v):
                width = len(target_res.shifts[k]) if k <= target_res.length else 0
                cols.append([ring.zero() for _ in range(width)])
                continue
            c = target_res.lift_through(k, v)
            if c is None:
                raise LiftFailure(f"no lift at homological degree {k}")
            cols.append(c)
        maps.append(cols)
    if verify:
        for k in range(1, source_res.length + 1):
            if k > target_res.length:
                continue
            for col, lifted in zip(source_res.maps[k - 1], maps[k]):
                lhs = mat_apply(target_res.maps[k - 1], lifted, ring, len(target_res.shifts[k - 1]))
                rhs = mat_apply(maps[k - 1], col, ring, len(target_res.shifts[k - 1]))
                if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                    raise LiftFailure(f"square {k} does not commute")
    return maps


def pull_back_cocycle(phi_j, z, ring):
    """phi_j^T z: precompose a cochain z on the target F_j with phi_j."""
    out = []
    for col in phi_j:
        acc = ring.zero()
        for a, b in zip(col, z):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


def induced_ext_map(phi: ModuleMap, source_res: FreeResolution, target_res: FreeResolution, j: int,
                    source_ext=None, target_ext=None) -> ModuleMap:
    """Ext^j(target, A) -> Ext^j(source, A) induced by phi : source -> target."""
    ring = phi.source.ring
    N_t = target_ext if target_ext is not None else ext_module(target_res, j)
    N_s = source_ext if source_ext is not None else ext_module(source_res, j)
    maps = chain_lift(phi, source_res, target_res)
    cols = []
    for z in N_t.meta["generators"]:
        if j > source_res.length:
            cols.append([])
            continue
        w = pull_back_cocycle(maps[j], z, ring) if j < len(maps) else []
        cols.append(ambient_coordinates(N_s, w) if N_s.rank or N_s.meta.get("candidates") else [])
    return ModuleMap(N_t, N_s, cols, degree=-phi.degree)
