"""Buchberger engine for ideals and submodules of free modules over QQ[x].

Vectors are handled internally as sparse maps ``(component, exponent) ->
Fraction``; an ideal is the rank-one case.  The pair queue uses the normal
selection strategy (lowest lcm degree first) with the coprimality criterion
(ideals only) and the chain criterion, so the computed reduced basis is
deterministic for a fixed order.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import AmbientMismatch, InvalidArgument, NotInSpan
from .ring import (DEGREVLEX, BlockOrder, ModuleOrder, MonomialOrder, Poly,
                   PolyRing, PolyVec, exact_div)

# ---------------------------------------------------------------------------
# sparse vector helpers


def _vec_of(g, rank: int) -> dict:
    if isinstance(g, Poly):
        if rank != 1:
            raise AmbientMismatch("mixing Poly and PolyVec generators")
        return {(0, e): c for e, c in g.terms.items()}
    if isinstance(g, PolyVec):
        if g.rank != rank:
            raise AmbientMismatch("vectors of different rank")
        return {(i, e): c for i, p in enumerate(g.entries)
                for e, c in p.terms.items()}
    raise InvalidArgument(f"not a polynomial or vector: {g!r}")


def _to_public(v: dict, ring: PolyRing, rank: int):
    if rank == 1:
        return Poly(ring, {e: c for (_, e), c in v.items()})
    comps = [dict() for _ in range(rank)]
    for (i, e), c in v.items():
        comps[i][e] = c
    return PolyVec([Poly(ring, t) for t in comps])


def _add_scaled(dst: dict, src: dict, exp, coeff) -> None:
    for (i, e), c in src.items():
        key = (i, tuple(a + b for a, b in zip(e, exp)))
        s = dst.get(key, _ZERO) + c * coeff
        if s:
            dst[key] = s
        elif key in dst:
            del dst[key]


_ZERO = Fraction(0)


def _tr_add_scaled(dst: list, src: list, exp, coeff) -> None:
    for d, s in zip(dst, src):
        for e, c in s.items():
            key = tuple(a + b for a, b in zip(e, exp))
            v = d.get(key, _ZERO) + c * coeff
            if v:
                d[key] = v
            elif key in d:
                del d[key]


def _divisible(term, lead) -> bool:
    return term[0] == lead[0] and all(a >= b for a, b in zip(term[1], lead[1]))


# ---------------------------------------------------------------------------
# public result types


class GroebnerBasis:
    """A reduced Groebner basis together with its order and ambient data."""

    def __init__(self, ring, rank, order, vecs, transform=None, inputs=None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self._vecs = vecs
        self._leads = [max(v, key=order.key) for v in vecs]
        self.transform = transform
        self.inputs = inputs
        self.reduced = True

    @property
    def generators(self):
        return [_to_public(v, self.ring, self.rank) for v in self._vecs]

    def __len__(self):
        return len(self._vecs)

    def __iter__(self):
        return iter(self.generators)

    def contains(self, f) -> bool:
        return normal_form(f, self).is_zero()

    def lead_monomials(self):
        """Leading (component, exponent) pairs, canonically sorted."""
        return list(self._leads)


class SyzygyResult:
    """Generators of the syzygy module of the given inputs."""

    def __init__(self, generators: list):
        self.generators = generators

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


# ---------------------------------------------------------------------------
# division


def _reduce_vec(work: dict, basis, leads, okey, transform=None, tr_basis=None):
    """Full division of work by the basis; returns the remainder.

    When transform tracking is on, subtracted multiples are accumulated into
    ``transform`` (a cofactor list parallel to the original inputs).
    """
    remainder: dict = {}
    while work:
        term = max(work, key=okey)
        coeff = work.pop(term)
        hit = -1
        for b, lead in enumerate(leads):
            if _divisible(term, lead):
                hit = b
                break
        if hit < 0:
            remainder[term] = coeff
            continue
        lead = leads[hit]
        shift = tuple(a - b for a, b in zip(term[1], lead[1]))
        factor = coeff / basis[hit][lead]
        _add_scaled(work, basis[hit], shift, -factor)
        work.pop(term, None)
        if transform is not None:
            _tr_add_scaled(transform, tr_basis[hit], shift, -factor)
    return remainder


# ---------------------------------------------------------------------------
# Buchberger


def buchberger(gens: Sequence, order: MonomialOrder | ModuleOrder | None = None,
               with_transform: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal or submodule generated by gens.

    ``gens`` is a non-empty list of Poly (ideal case) or of PolyVec of a
    common rank.  With ``with_transform`` each basis element also records its
    expression in the input generators.
    """
    gens = list(gens)
    if not gens:
        raise InvalidArgument("no generators")
    first = gens[0]
    ring = first.ring
    rank = 1 if isinstance(first, Poly) else first.rank
    for g in gens:
        if g.ring != ring:
            raise AmbientMismatch("generators in different rings")
    if order is None:
        order = ring.order
    morder = order if isinstance(order, ModuleOrder) else ModuleOrder(order)
    okey = morder.key

    vecs = [_vec_of(g, rank) for g in gens]
    basis: list = []
    leads: list = []
    tr_basis: list = []

    def insert(v: dict, tr) -> None:
        lead = max(v, key=okey)
        c = v[lead]
        if c != 1:
            v = {k: x / c for k, x in v.items()}
            if tr is not None:
                tr = [{e: x / c for e, x in d.items()} for d in tr]
        basis.append(v)
        leads.append(lead)
        tr_basis.append(tr)

    nexps = ring.n
    for i, v in enumerate(vecs):
        if not v:
            continue
        tr = None
        if with_transform:
            tr = [dict() for _ in vecs]
            tr[i][(0,) * nexps] = Fraction(1)
        insert(dict(v), tr)

    pending: set = set()
    heap: list = []

    def push_pairs(j: int) -> None:
        lj = leads[j]
        for i in range(j):
            li = leads[i]
            if li[0] != lj[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(li[1], lj[1]))
            if rank == 1 and lcm == tuple(a + b for a, b in zip(li[1], lj[1])):
                continue  # coprime leads, S-polynomial reduces to zero
            pending.add((i, j))
            heapq.heappush(heap, (sum(lcm), okey((li[0], lcm)), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        lcm = tuple(max(a, b) for a, b in zip(li[1], lj[1]))
        chain = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            lk = leads[k]
            if lk[0] == li[0] and all(a >= b for a, b in zip(lcm, lk[1])):
                pi = (min(i, k), max(i, k))
                pj = (min(j, k), max(j, k))
                if pi not in pending and pj not in pending:
                    chain = True
                    break
        if chain:
            continue
        si = tuple(a - b for a, b in zip(lcm, li[1]))
        sj = tuple(a - b for a, b in zip(lcm, lj[1]))
        work: dict = {}
        _add_scaled(work, basis[i], si, Fraction(1))
        _add_scaled(work, basis[j], sj, Fraction(-1))
        tr = None
        if with_transform:
            tr = [dict() for _ in vecs]
            _tr_add_scaled(tr, tr_basis[i], si, Fraction(1))
            _tr_add_scaled(tr, tr_basis[j], sj, Fraction(-1))
        rem = _reduce_vec(work, basis, leads, okey, tr,
                          tr_basis if with_transform else None)
        if rem:
            insert(rem, tr)
            push_pairs(len(basis) - 1)

    # minimalise, then tail-reduce for the unique reduced basis
    idx = sorted(range(len(basis)), key=lambda k: okey(leads[k]))
    keep = []
    for k in idx:
        if not any(_divisible(leads[k], leads[m]) for m in keep):
            keep.append(k)
    out_vecs, out_tr = [], []
    for k in keep:
        others = [m for m in keep if m != k]
        ob = [basis[m] for m in others]
        ol = [leads[m] for m in others]
        otr = [tr_basis[m] for m in others] if with_transform else None
        tr = None
        if with_transform:
            tr = [dict(d) for d in tr_basis[k]]
        rem = _reduce_vec(dict(basis[k]), ob, ol, okey, tr, otr)
        out_vecs.append(rem)
        out_tr.append(tr)
    paired = sorted(zip(out_vecs, out_tr),
                    key=lambda p: okey(max(p[0], key=okey)), reverse=True)
    out_vecs = [p[0] for p in paired]
    out_tr = [p[1] for p in paired] if with_transform else None
    return GroebnerBasis(ring, rank, morder, out_vecs, out_tr, gens)


def normal_form(f, gb: GroebnerBasis):
    """Remainder of f modulo the basis; idempotent and deterministic."""
    v = _vec_of(f, gb.rank)
    rem = _reduce_vec(dict(v), gb._vecs, gb._leads, gb.order.key)
    return _to_public(rem, gb.ring, gb.rank)


def reduce_with_cofactors(f, gb: GroebnerBasis):
    """Return (cofactors over gb.inputs, remainder) with f = sum c*g + r.

    Requires a basis computed with ``with_transform=True``.
    """
    if gb.transform is None:
        raise InvalidArgument("basis was computed without transform tracking")
    v = dict(_vec_of(f, gb.rank))
    okey = gb.order.key
    cof = [dict() for _ in gb.inputs]
    remainder: dict = {}
    while v:
        term = max(v, key=okey)
        coeff = v.pop(term)
        hit = -1
        for b, lead in enumerate(gb._leads):
            if _divisible(term, lead):
                hit = b
                break
        if hit < 0:
            remainder[term] = coeff
            continue
        lead = gb._leads[hit]
        shift = tuple(a - b for a, b in zip(term[1], lead[1]))
        factor = coeff / gb._vecs[hit][lead]
        _add_scaled(v, gb._vecs[hit], shift, -factor)
        v.pop(term, None)
        _tr_add_scaled(cof, gb.transform[hit], shift, factor)
    ring = gb.ring
    cofactors = [Poly(ring, d) for d in cof]
    return cofactors, _to_public(remainder, ring, gb.rank)


def lift_through(f, gens: Sequence, order=None):
    """Express f as a combination of gens, or raise NotInSpan."""
    gb = buchberger(gens, order, with_transform=True)
    cof, rem = reduce_with_cofactors(f, gb)
    if not rem.is_zero():
        raise NotInSpan(f"{f} is not in the span of the generators")
    return cof


# ---------------------------------------------------------------------------
# syzygies


def syzygies(gens: Sequence, order: MonomialOrder | None = None) -> SyzygyResult:
    """Generating set of the module of relations among gens.

    Works by computing a basis of the graph module {(sum c_i g_i, c)} with a
    position-over-term order in which the value block dominates; basis
    elements with zero value block are exactly the syzygies.
    """
    gens = list(gens)
    if not gens:
        raise InvalidArgument("no generators")
    ring = gens[0].ring
    rank = 1 if isinstance(gens[0], Poly) else gens[0].rank
    s = len(gens)
    base = order or (ring.order if not isinstance(ring.order, ModuleOrder)
                     else DEGREVLEX)
    aug = []
    zero = ring.zero()
    for i, g in enumerate(gens):
        comps = [g] if isinstance(g, Poly) else list(g.entries)
        tail = [zero] * s
        tail[i] = ring.one()
        aug.append(PolyVec(comps + tail))
    gb = buchberger(aug, ModuleOrder(base, "pot"))
    rels = []
    for v in gb._vecs:
        if all(i >= rank for (i, _e) in v):
            shifted = {(i - rank, e): c for (i, e), c in v.items()}
            rels.append(_to_public(shifted, ring, s))
    return SyzygyResult(rels)


# ---------------------------------------------------------------------------
# colon ideals, dimension, regular sequences


def colon_ideal(gens: Sequence[Poly], f: Poly,
                order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced basis of (I : f) = {g : g*f in I}, via tag-variable elimination.

    Computes I cap (f) as the tag-free part of (t*I + (t-1)*f) and divides
    the intersection generators by f.
    """
    if f.is_zero():
        raise InvalidArgument("colon by the zero polynomial")
    ring = f.ring
    tag = "_t"
    while tag in ring.names:
        tag += "_"
    ext = ring.extend([tag], order=BlockOrder(1), prepend=True)
    t = ext.var(0)
    lifted = [t * ring.inject(g, ext) for g in gens]
    lifted.append((t - 1) * ring.inject(f, ext))
    gb = buchberger([g for g in lifted if not g.is_zero()], ext.order)
    quotient = []
    for g in gb.generators:
        if g.degree_in(0) > 0:
            continue
        back = Poly(ring, {e[1:]: c for e, c in g.terms.items()})
        quotient.append(exact_div(back, f))
    if not quotient:
        quotient = [ring.zero()]
    nonzero = [q for q in quotient if not q.is_zero()]
    if not nonzero:
        return GroebnerBasis(ring, 1, ModuleOrder(order or ring.order), [])
    return buchberger(nonzero, order or ring.order)


def dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the quotient by the ideal, or -1 for the unit ideal.

    Combinatorial: the dimension equals the size of a largest set S of
    variables such that no leading monomial involves only variables of S.
    """
    if gb.rank != 1:
        raise InvalidArgument("dimension is defined for ideals")
    n = gb.ring.n
    supports = []
    for (_, e) in gb._leads:
        if not any(e):
            return -1  # a unit lies in the ideal
        supports.append(frozenset(i for i, k in enumerate(e) if k))
    if not supports:
        return n
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            sset = set(S)
            if all(not supp <= sset for supp in supports):
                return size
    return 0


def dimension_by_cover(gb: GroebnerBasis) -> int:
    """Independent oracle: n minus the smallest vertex cover of the supports."""
    if gb.rank != 1:
        raise InvalidArgument("dimension is defined for ideals")
    n = gb.ring.n
    supports = []
    for (_, e) in gb._leads:
        if not any(e):
            return -1
        supports.append(set(i for i, k in enumerate(e) if k))
    if not supports:
        return n
    for size in range(0, n + 1):
        for C in combinations(range(n), size):
            cset = set(C)
            if all(supp & cset for supp in supports):
                return n - size
    return 0


def is_regular_sequence(elems: Sequence[Poly], symbol_indices) -> bool:
    """Whether elems form a regular sequence in QQ[x, xi].

    Each element must be homogeneous in the symbol block.  The test reduces
    to codim(I) == len(elems), which characterises regular sequences here
    because the polynomial ring is Cohen-Macaulay.
    """
    elems = list(elems)
    if not elems:
        return True
    symbol_indices = list(symbol_indices)
    for p in elems:
        degs = {sum(e[i] for i in symbol_indices) for e in p.terms}
        if len(degs) > 1:
            raise InvalidArgument("element not homogeneous in the symbols")
    if any(p.is_zero() for p in elems):
        return False
    ring = elems[0].ring
    gb = buchberger(elems, ring.order)
    dim = dimension(gb)
    if dim < 0:
        return False
    return ring.n - dim == len(elems)
