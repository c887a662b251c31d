"""Buchberger engine for ideals and submodules of graded free modules.

Elements of a rank-r free module are tuples of r polynomials.  Module terms
are compared position-over-term (position 0 strongest, ties broken by the
ring's term order).  All inputs must be homogeneous for a twist vector: the
degree of a term x^a*e_i is |a| + twists[i].  Homogeneity makes the sugar of
an S-pair its exact degree, so the normal selection strategy processes pairs
degree by degree.

Everything here is deterministic: pairs are popped in (degree, i, j) order,
reducers are scanned in insertion order, and reduced bases are sorted by
leading term.

Syzygies and lifting both go through :class:`ColumnSpan`, which runs
Buchberger on the graph of a set of columns inside F (+) S^m under an
elimination order (F positions first).  Basis elements supported only in the
tracking block form a Groebner basis of the syzygy module; reducing b (+) 0
yields the canonical representation of b in terms of the columns.
"""

from __future__ import annotations

import heapq
from math import comb

from .rings import Polynomial, PolynomialRing


def vector_degree(vec, twists) -> int:
    """Degree of a nonzero homogeneous module element (-1 if zero)."""
    for pos, poly in enumerate(vec):
        if poly and not poly.is_zero:
            return poly.homogeneous_degree() + twists[pos]
    return -1


def vector_is_homogeneous(vec, twists) -> bool:
    degs = set()
    for pos, poly in enumerate(vec):
        if poly.is_zero:
            continue
        if not poly.is_homogeneous():
            return False
        degs.add(poly.homogeneous_degree() + twists[pos])
    return len(degs) <= 1


class _Element:
    __slots__ = ("comps", "lead_pos", "lead_mon", "degree", "pure")

    def __init__(self, comps, lead_pos, lead_mon, degree):
        self.comps = comps
        self.lead_pos = lead_pos
        self.lead_mon = lead_mon
        self.degree = degree
        self.pure = sum(1 for c in comps if c) == 1


def _monomial_divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Engine:
    """Mutable Buchberger state over a fixed free module."""

    def __init__(self, ring: PolynomialRing, rank: int, twists):
        self.ring = ring
        self.okey = ring.order.key
        self.rank = rank
        self.twists = tuple(twists)
        if len(self.twists) != rank:
            raise ValueError("twist vector does not match rank")
        self.p = ring.field.characteristic
        self.field = ring.field
        self.basis: list[_Element] = []
        self.by_pos: list[list[int]] = [[] for _ in range(rank)]
        self.pairs: list[tuple[int, int, int]] = []
        self.done: set[tuple[int, int]] = set()

    # -- raw component helpers ------------------------------------------

    def comps_from_vector(self, vec):
        if len(vec) != self.rank:
            raise ValueError("vector length does not match rank")
        comps = []
        for poly in vec:
            if poly.ring != self.ring:
                raise ValueError("vector entry from the wrong ring")
            comps.append(dict(poly.terms))
        return comps

    def vector_from_comps(self, comps):
        return tuple(Polynomial(self.ring, dict(c)) for c in comps)

    def _lead(self, comps):
        for pos in range(self.rank):
            if comps[pos]:
                return pos, max(comps[pos], key=self.okey)
        return None

    def _find_reducer(self, pos, mon):
        for idx in self.by_pos[pos]:
            if _monomial_divides(self.basis[idx].lead_mon, mon):
                return idx
        return None

    def reduce_comps(self, comps):
        """Full normal form of raw components against the current basis."""
        out = [dict() for _ in range(self.rank)]
        work = [dict(c) for c in comps]
        okey = self.okey
        p = self.p
        while True:
            lead = self._lead(work)
            if lead is None:
                break
            pos, mon = lead
            idx = self._find_reducer(pos, mon)
            if idx is None:
                out[pos][mon] = work[pos].pop(mon)
                continue
            g = self.basis[idx]
            c = work[pos][mon]
            shift = tuple(a - b for a, b in zip(mon, g.lead_mon))
            for q, gd in enumerate(g.comps):
                if not gd:
                    continue
                wd = work[q]
                if p:
                    for gm, gc in gd.items():
                        t = tuple(a + b for a, b in zip(gm, shift))
                        v = (wd.get(t, 0) - c * gc) % p
                        if v:
                            wd[t] = v
                        elif t in wd:
                            del wd[t]
                else:
                    for gm, gc in gd.items():
                        t = tuple(a + b for a, b in zip(gm, shift))
                        v = wd.get(t, 0) - c * gc
                        if v:
                            wd[t] = v
                        elif t in wd:
                            del wd[t]
        return out

    # -- basis growth -----------------------------------------------------

    def _insert(self, comps):
        lead = self._lead(comps)
        pos, mon = lead
        c = comps[pos][mon]
        if c != self.field.one:
            cinv = self.field.inv(c)
            p = self.p
            for d in comps:
                for m in d:
                    d[m] = d[m] * cinv % p if p else d[m] * cinv
        degree = sum(mon) + self.twists[pos]
        element = _Element(comps, pos, mon, degree)
        j = len(self.basis)
        self.basis.append(element)
        self.by_pos[pos].append(j)
        for i in self.by_pos[pos]:
            if i == j:
                continue
            other = self.basis[i]
            lcm = tuple(max(a, b) for a, b in zip(other.lead_mon, mon))
            heapq.heappush(self.pairs, (sum(lcm) + self.twists[pos], i, j))
        return j

    def add_generators(self, vectors):
        for vec in vectors:
            comps = self.comps_from_vector(vec)
            if not vector_is_homogeneous(vec, self.twists):
                raise ValueError("generators must be homogeneous")
            nf = self.reduce_comps(comps)
            if any(nf[q] for q in range(self.rank)):
                self._insert(nf)

    def _chain_skip(self, i, j, lcm, pos) -> bool:
        for k in self.by_pos[pos]:
            if k == i or k == j:
                continue
            if not _monomial_divides(self.basis[k].lead_mon, lcm):
                continue
            a = (i, k) if i < k else (k, i)
            b = (k, j) if k < j else (j, k)
            if a in self.done and b in self.done:
                return True
        return False

    def complete(self):
        """Process all pending S-pairs (Buchberger's algorithm)."""
        while self.pairs:
            _, i, j = heapq.heappop(self.pairs)
            if (i, j) in self.done:
                continue
            self.done.add((i, j))
            gi, gj = self.basis[i], self.basis[j]
            pos = gi.lead_pos
            lcm = tuple(max(a, b) for a, b in zip(gi.lead_mon, gj.lead_mon))
            if (
                gi.pure
                and gj.pure
                and all(a + b == c for a, b, c in zip(gi.lead_mon, gj.lead_mon, lcm))
            ):
                continue
            if self._chain_skip(i, j, lcm, pos):
                continue
            si = tuple(a - b for a, b in zip(lcm, gi.lead_mon))
            sj = tuple(a - b for a, b in zip(lcm, gj.lead_mon))
            spair = [dict() for _ in range(self.rank)]
            p = self.p
            for q in range(self.rank):
                d = spair[q]
                for m, c in gi.comps[q].items():
                    d[tuple(a + b for a, b in zip(m, si))] = c
                for m, c in gj.comps[q].items():
                    t = tuple(a + b for a, b in zip(m, sj))
                    v = (d.get(t, 0) - c) % p if p else d.get(t, 0) - c
                    if v:
                        d[t] = v
                    elif t in d:
                        del d[t]
            nf = self.reduce_comps(spair)
            if any(nf[q] for q in range(self.rank)):
                self._insert(nf)

    def reduced_basis(self):
        """Inter-reduced, monic, deterministically sorted basis components."""
        keep = []
        for j, g in enumerate(self.basis):
            redundant = False
            for i in self.by_pos[g.lead_pos]:
                if i == j:
                    continue
                other = self.basis[i]
                if _monomial_divides(other.lead_mon, g.lead_mon) and (
                    other.lead_mon != g.lead_mon or i < j
                ):
                    redundant = True
                    break
            if not redundant:
                keep.append(j)
        reduced = []
        for j in keep:
            g = self.basis[j]
            sub = _Engine(self.ring, self.rank, self.twists)
            for i in keep:
                if i != j:
                    sub._insert([dict(d) for d in self.basis[i].comps])
            nf = sub.reduce_comps(g.comps)
            reduced.append(nf)
        def sort_key(comps):
            pos, mon = self._lead(comps)
            return (pos, self.okey(mon))

        reduced.sort(key=sort_key)
        return reduced


class GroebnerBasis:
    """A reduced Groebner basis of a submodule of a graded free module.

    For ideals use rank 1; elements are then 1-tuples of polynomials.
    """

    def __init__(self, ring, rank, twists, elements, engine):
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists)
        self.elements = tuple(elements)
        self._engine = engine

    def normal_form(self, vec):
        single = isinstance(vec, Polynomial)
        if single:
            vec = (vec,)
        comps = self._engine.comps_from_vector(vec)
        nf = self._engine.vector_from_comps(self._engine.reduce_comps(comps))
        return nf[0] if single else nf

    def contains(self, vec) -> bool:
        nf = self.normal_form(vec)
        if isinstance(nf, Polynomial):
            return nf.is_zero
        return all(p.is_zero for p in nf)

    def lead_terms(self):
        """Leading (position, monomial) pairs of the reduced basis."""
        out = []
        for vec in self.elements:
            for pos, poly in enumerate(vec):
                if not poly.is_zero:
                    out.append((pos, poly.leading_monomial()))
                    break
        return out

    def lead_monomial_ideal(self, pos=0):
        """Minimal generators of the leading-term monomial ideal at a position."""
        mons = [m for q, m in self.lead_terms() if q == pos]
        return _minimalize_monomials(mons)

    def quotient_hilbert_function(self, t: int) -> int:
        """dim_k of degree-t piece of F / (this submodule)."""
        n = self.ring.nvars
        total = 0
        for pos in range(self.rank):
            numer = self._position_numerator(pos)
            total += _evaluate_quotient_hf(numer, n, t - self.twists[pos])
        return total

    def submodule_hilbert_function(self, t: int) -> int:
        """dim_k of the degree-t piece of the submodule itself."""
        n = self.ring.nvars
        total = 0
        for pos in range(self.rank):
            e = t - self.twists[pos]
            full = comb(e + n - 1, n - 1) if e >= 0 else 0
            numer = self._position_numerator(pos)
            total += full - _evaluate_quotient_hf(numer, n, e)
        return total

    def quotient_is_finite_length(self) -> bool:
        """True when F / submodule is a finite-dimensional vector space."""
        nvars = self.ring.nvars
        for pos in range(self.rank):
            gens = self.lead_monomial_ideal(pos)
            covered = set()
            for m in gens:
                support = [i for i, e in enumerate(m) if e]
                if len(support) == 1:
                    covered.add(support[0])
            if len(covered) < nvars:
                return False
        return True

    def _position_numerator(self, pos):
        cache = getattr(self, "_numerators", None)
        if cache is None:
            cache = {}
            self._numerators = cache
        if pos not in cache:
            cache[pos] = _hilbert_numerator(tuple(self.lead_monomial_ideal(pos)))
        return cache[pos]


def groebner_basis(generators, ring=None, twists=None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal (list of polynomials) or submodule
    (list of equal-length polynomial tuples, with an optional twist vector).
    """
    generators = list(generators)
    vectors = []
    rank = None
    for g in generators:
        if isinstance(g, Polynomial):
            vec = (g,)
        else:
            vec = tuple(g)
        if rank is None:
            rank = len(vec)
        elif len(vec) != rank:
            raise ValueError("mixed vector lengths")
        vectors.append(vec)
    if rank is None:
        if ring is None:
            raise ValueError("empty generator list needs an explicit ring")
        rank = 1
    if ring is None:
        ring = next(
            p.ring for vec in vectors for p in vec if isinstance(p, Polynomial)
        )
    if twists is None:
        twists = (0,) * rank
    engine = _Engine(ring, rank, twists)
    engine.add_generators([v for v in vectors if any(not p.is_zero for p in v)])
    engine.complete()
    reduced = engine.reduced_basis()
    final = _Engine(ring, rank, twists)
    for comps in reduced:
        final._insert([dict(d) for d in comps])
    elements = [final.vector_from_comps(c) for c in reduced]
    return GroebnerBasis(ring, rank, twists, elements, final)


# ---------------------------------------------------------------------------
# column spans: membership, lifting, syzygies

class ColumnSpan:
    """The submodule of a graded free module spanned by given columns.

    Maintains a Groebner basis of the graph {(col_j, e_j)} in F (+) S^m under
    the elimination order with F first, which answers membership, canonical
    lifting, and syzygy questions about the columns in one computation.
    """

    def __init__(self, ring, target_twists, columns, column_degrees):
        self.ring = ring
        self.target_twists = tuple(target_twists)
        self.columns = [tuple(col) for col in columns]
        self.column_degrees = tuple(column_degrees)
        if len(self.columns) != len(self.column_degrees):
            raise ValueError("need one degree per column")
        self.rank = len(self.target_twists)
        self.ncols = len(self.columns)
        aug_twists = self.target_twists + self.column_degrees
        self._engine = _Engine(ring, self.rank + self.ncols, aug_twists)
        zero = ring.zero
        one = ring.one
        augmented = []
        for j, col in enumerate(self.columns):
            if len(col) != self.rank:
                raise ValueError("column length does not match target rank")
            tail = tuple(one if i == j else zero for i in range(self.ncols))
            augmented.append(col + tail)
        self._engine.add_generators(augmented)
        self._engine.complete()

    def normal_form(self, vec):
        """Normal form of vec in F modulo the column span."""
        comps = self._engine.comps_from_vector(tuple(vec) + (self.ring.zero,) * self.ncols)
        nf = self._engine.reduce_comps(comps)
        return self._engine.vector_from_comps(nf)[: self.rank]

    def contains(self, vec) -> bool:
        return all(p.is_zero for p in self.normal_form(vec))

    def solve(self, vec):
        """Coefficients x with columns . x = vec, or None if vec is outside."""
        comps = self._engine.comps_from_vector(tuple(vec) + (self.ring.zero,) * self.ncols)
        nf = self._engine.reduce_comps(comps)
        if any(nf[q] for q in range(self.rank)):
            return None
        tail = self._engine.vector_from_comps(nf)[self.rank:]
        return tuple(-p for p in tail)

    def syzygies(self):
        """Generators of the syzygy module of the columns (a Groebner basis
        of it, in the tracking block's induced order)."""
        out = []
        for g in self._engine.basis:
            if any(g.comps[q] for q in range(self.rank)):
                continue
            tail = [dict(d) for d in g.comps[self.rank:]]
            out.append(tuple(Polynomial(self.ring, d) for d in tail))
        out.sort(key=lambda vec: _vector_sort_key(vec, self.ring))
        return out


def _vector_sort_key(vec, ring):
    key = []
    for pos, poly in enumerate(vec):
        if not poly.is_zero:
            m = poly.leading_monomial()
            key.append((pos, ring.order.key(m)))
    return (vector_degree(vec, (0,) * len(vec)), tuple(key))


def minimal_generators(vectors, ring, twists):
    """A minimal homogeneous generating subset of the span of the vectors.

    Processes candidates in increasing degree, keeping those outside the span
    of the ones already kept (graded Nakayama); the result minimally generates
    the same submodule.
    """
    vectors = [tuple(v) for v in vectors]
    rank = len(twists)
    for v in vectors:
        if not vector_is_homogeneous(v, twists):
            raise ValueError("generators must be homogeneous")
    order = sorted(
        (v for v in vectors if any(not p.is_zero for p in v)),
        key=lambda v: (vector_degree(v, twists), _vector_sort_key(v, ring)),
    )
    engine = _Engine(ring, rank, twists)
    kept = []
    for v in order:
        comps = engine.comps_from_vector(v)
        nf = engine.reduce_comps(comps)
        if any(nf[q] for q in range(rank)):
            kept.append(v)
            engine._insert(nf)
            engine.complete()
    return kept


# ---------------------------------------------------------------------------
# dimension of quotients by ideals

def dimension(generators, ring=None):
    """(Krull dim, codim) of S/I for a homogeneous ideal I.

    Computed combinatorially from the leading-term ideal of a Groebner basis:
    the dimension is the largest number of variables spanning a coordinate
    subspace that meets the lead-term ideal only in 0.

    Raises ValueError("empty scheme (unit ideal)") when I = (1).
    """
    generators = [g for g in generators if not (isinstance(g, Polynomial) and g.is_zero)]
    if ring is None:
        if not generators:
            raise ValueError("dimension of the zero ideal needs an explicit ring")
        ring = generators[0].ring
    if not generators:
        return ring.nvars, 0
    G = groebner_basis(generators, ring=ring)
    leads = G.lead_monomial_ideal(0)
    if any(sum(m) == 0 for m in leads):
        raise ValueError("empty scheme (unit ideal)")
    return monomial_dimension(leads, ring.nvars)


def codimension(generators, ring=None) -> int:
    return dimension(generators, ring=ring)[1]


def monomial_dimension(lead_monomials, nvars: int):
    """(dim, codim) of S/J for the monomial ideal J with the given generators."""
    from itertools import combinations

    supports = []
    for m in lead_monomials:
        s = frozenset(i for i, e in enumerate(m) if e)
        if not s:
            raise ValueError("empty scheme (unit ideal)")
        supports.append(s)
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return size, nvars - size
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Hilbert functions of monomial quotients

def _minimalize_monomials(mons):
    mons = sorted(set(tuple(m) for m in mons), key=lambda m: (sum(m), m))
    out = []
    for m in mons:
        if not any(_monomial_divides(g, m) for g in out):
            out.append(m)
    return out


_numerator_cache: dict[tuple, dict[int, int]] = {}


def _hilbert_numerator(gens: tuple) -> dict[int, int]:
    """Numerator K(z) with HS(S/J) = K(z)/(1-z)^n, as {degree: coefficient}.

    Standard pivot recursion K(J) = K(J + (x)) + z * K(J : x) on minimal
    generator sets, with closed form for sets of pure powers.
    """
    gens = tuple(_minimalize_monomials(gens))
    if gens in _numerator_cache:
        return _numerator_cache[gens]
    if not gens:
        return {0: 1}
    supports = [[i for i, e in enumerate(m) if e] for m in gens]
    mixed = [s for s in supports if len(s) >= 2]
    if not mixed:
        numer = {0: 1}
        for m in gens:
            d = sum(m)
            new = dict(numer)
            for j, c in numer.items():
                new[j + d] = new.get(j + d, 0) - c
            numer = {j: c for j, c in new.items() if c}
    else:
        counts = {}
        for s in mixed:
            for v in s:
                counts[v] = counts.get(v, 0) + 1
        pivot = min(v for v, c in counts.items() if c == max(counts.values()))
        nvars = len(gens[0])
        unit = tuple(1 if i == pivot else 0 for i in range(nvars))
        plus = [unit] + [m for m in gens if m[pivot] == 0]
        colon = [
            tuple(e - 1 if i == pivot and e else e for i, e in enumerate(m))
            for m in gens
        ]
        k_plus = _hilbert_numerator(tuple(plus))
        k_colon = _hilbert_numerator(tuple(colon))
        numer = dict(k_plus)
        for j, c in k_colon.items():
            numer[j + 1] = numer.get(j + 1, 0) + c
        numer = {j: c for j, c in numer.items() if c}
    _numerator_cache[gens] = numer
    return numer


def _evaluate_quotient_hf(numerator: dict[int, int], nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    total = 0
    for j, c in numerator.items():
        e = degree - j
        if e >= 0:
            total += c * comb(e + nvars - 1, nvars - 1)
    return total


def monomial_quotient_hf(lead_monomials, nvars: int, degree: int) -> int:
    """Hilbert function of S/J at a degree, J the given monomial ideal."""
    return _evaluate_quotient_hf(_hilbert_numerator(tuple(lead_monomials)), nvars, degree)
