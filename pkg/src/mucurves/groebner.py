"""Buchberger Groebner bases, ideal operations, Hilbert data, and syzygies.

Everything is exact over Q.  The module-level engine computes Groebner bases
of submodules of a free module R^k under a position-over-term order whose
first `nelim` components dominate; the syzygy, cofactor-certificate and
kernel computations all ride on it via the classical graph construction
{(g_i, e_i)}.  Instances here are tiny (at most 13 variables), so plain
Buchberger with the two standard pair criteria is used for ideals and a
criterion-free completion for modules, where the coprimality criterion is
unsound.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import (GREVLEX, BlockOrder, Grevlex, Mono, MonomialOrder,
                   MultiPoly, PolyRing, WeightAssignment)

Vec = dict  # {(component, mono): Fraction}


def _mono_div(a: Mono, b: Mono):
    """a / b if b divides a, else None."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# module engine
# ---------------------------------------------------------------------------

class ModuleOrder:
    """Position-over-term order on R^k; components < nelim beat the rest."""

    def __init__(self, mono_order: MonomialOrder, nelim: int = 0):
        self.mono_order = mono_order
        self.nelim = nelim

    def key(self, term):
        comp, mono = term
        return (1 if comp < self.nelim else 0, -comp, self.mono_order.key(mono))


def _vec_leading(v: Vec, key):
    return max(v, key=key)


def _vec_axpy(v: Vec, coeff: Fraction, mono: Mono, w: Vec):
    """v += coeff * x^mono * w, in place."""
    for (c, m), cw in w.items():
        t = (c, _mono_mul(mono, m))
        s = v.get(t, 0) + coeff * cw
        if s:
            v[t] = s
        elif t in v:
            del v[t]


def _vec_normal_form(v: Vec, basis: list, key) -> Vec:
    """Full normal form of v against basis = [(ltc, ltm, ltcoeff, vec)]."""
    v = dict(v)
    done: set = set()
    while True:
        cand = [t for t in v if t not in done]
        if not cand:
            return v
        t = max(cand, key=key)
        comp, mono = t
        for ltc, ltm, ltco, w in basis:
            if ltc != comp:
                continue
            q = _mono_div(mono, ltm)
            if q is not None:
                _vec_axpy(v, -v[t] / ltco, q, w)
                break
        else:
            done.add(t)


def module_groebner(vectors: list[Vec], order: ModuleOrder) -> list[Vec]:
    """Buchberger completion of a list of free-module vectors.

    No pair-elimination criteria: every S-vector reduction matters when the
    zero-component tails carry syzygy certificates."""
    key = order.key
    basis = []
    for v in vectors:
        if v:
            t = _vec_leading(v, key)
            basis.append((t[0], t[1], v[t], v))
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)
             if basis[i][0] == basis[j][0]]
    while pairs:
        # normal strategy: smallest lcm first
        pairs.sort(key=lambda p: key((basis[p[0]][0],
                                      _mono_lcm(basis[p[0]][1], basis[p[1]][1]))),
                   reverse=True)
        i, j = pairs.pop()
        ci, mi, coi, vi = basis[i]
        cj, mj, coj, vj = basis[j]
        lcm = _mono_lcm(mi, mj)
        s: Vec = {}
        _vec_axpy(s, Fraction(1) / coi, _mono_div(lcm, mi), vi)
        _vec_axpy(s, Fraction(-1) / coj, _mono_div(lcm, mj), vj)
        r = _vec_normal_form(s, basis, key)
        if r:
            t = _vec_leading(r, key)
            k = len(basis)
            basis.append((t[0], t[1], r[t], r))
            pairs.extend((k, l) for l in range(k) if basis[l][0] == t[0])
    return [b[3] for b in basis]


# ---------------------------------------------------------------------------
# ideal-level Buchberger
# ---------------------------------------------------------------------------

def _poly_normal_form(f: MultiPoly, basis: list, order: MonomialOrder) -> MultiPoly:
    """basis: [(ltm, ltcoeff, poly)]; full tail reduction."""
    key = order.key
    terms = dict(f.terms)
    done: set = set()
    while True:
        cand = [m for m in terms if m not in done]
        if not cand:
            return MultiPoly(f.ring, terms)
        m = max(cand, key=key)
        for ltm, ltco, g in basis:
            q = _mono_div(m, ltm)
            if q is not None:
                c = terms[m] / ltco
                for gm, gc in g.terms.items():
                    t = _mono_mul(q, gm)
                    s = terms.get(t, 0) - c * gc
                    if s:
                        terms[t] = s
                    elif t in terms:
                        del terms[t]
                break
        else:
            done.add(m)


def _buchberger(gens: list[MultiPoly], order: MonomialOrder) -> list[MultiPoly]:
    basis = []
    for g in gens:
        if not g.is_zero():
            m, c = g.leading(order)
            basis.append((m, c, g))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    done_lcms = []

    def coprime(a: Mono, b: Mono) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    while pairs:
        key = order.key
        i, j = min(pairs, key=lambda p: key(_mono_lcm(basis[p[0]][0], basis[p[1]][0])))
        pairs.discard((i, j))
        mi, ci, gi = basis[i]
        mj, cj, gj = basis[j]
        if coprime(mi, mj):
            continue
        lcm = _mono_lcm(mi, mj)
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _mono_div(lcm, basis[k][0]) is not None:
                a = (max(i, k), min(i, k))
                b = (max(j, k), min(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = gi.mul_term(_mono_div(lcm, mi), Fraction(1) / ci) - \
            gj.mul_term(_mono_div(lcm, mj), Fraction(1) / cj)
        r = _poly_normal_form(s, basis, order)
        if not r.is_zero():
            m, c = r.leading(order)
            k = len(basis)
            basis.append((m, c, r))
            pairs.update((k, l) for l in range(k))
    return [b[2] for b in basis]


def _interreduce(polys: list[MultiPoly], order: MonomialOrder) -> list[MultiPoly]:
    polys = [p for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            p = polys[i]
            if p.is_zero():
                continue
            # reduce against the live values of all other elements
            rest = []
            for j, q in enumerate(polys):
                if j != i and not q.is_zero():
                    m, c = q.leading(order)
                    rest.append((m, c, q))
            r = _poly_normal_form(p, rest, order)
            if r.terms != p.terms:
                polys[i] = r
                changed = True
        polys = [p for p in polys if not p.is_zero()]
    polys = [p.monic(order) for p in polys]
    polys.sort(key=lambda p: order.key(p.leading(order)[0]), reverse=True)
    return polys


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for a fixed order.

    With certificates=True the basis carries, for each element, its cofactor
    row over the original generators, plus a generating set of syzygies of
    those generators (graph construction, position-over-term elimination)."""

    def __init__(self, ring: PolyRing, gens: Sequence[MultiPoly],
                 order: MonomialOrder | None = None, certificates: bool = False):
        self.ring = ring
        self.order = order or ring.order
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if g.ring != ring:
                raise ValueError("generator outside the ring")
        self._syzygies = None
        self._cofactors = None
        if certificates:
            self._compute_with_certificates()
        else:
            self.basis = _interreduce(_buchberger(list(self.gens), self.order), self.order)
        self._lt = [(g.leading(self.order)[0], g.leading(self.order)[1], g)
                    for g in self.basis]

    # -- construction --------------------------------------------------------

    def _compute_with_certificates(self):
        s = len(self.gens)
        order = ModuleOrder(self.order, nelim=1)
        vectors = []
        for i, g in enumerate(self.gens):
            v: Vec = {(0, m): c for m, c in g.terms.items()}
            v[(i + 1, self.ring._zero_mono)] = Fraction(1)
            vectors.append(v)
        gb = module_groebner(vectors, order)
        polys, cofs, syz = [], [], []
        for v in gb:
            p = {m: c for (comp, m), c in v.items() if comp == 0}
            row = [dict() for _ in range(s)]
            for (comp, m), c in v.items():
                if comp > 0:
                    row[comp - 1][m] = c
            row = [MultiPoly(self.ring, r) for r in row]
            if p:
                polys.append((MultiPoly(self.ring, p), row))
            else:
                syz.append(row)
        # inter-reduce the polynomial parts, dragging cofactor rows along
        changed = True
        while changed:
            changed = False
            for i in range(len(polys)):
                p, row = polys[i]
                if p.is_zero():
                    continue
                rest = [(q.leading(self.order)[0], q.leading(self.order)[1], (q, r2))
                        for j, (q, r2) in enumerate(polys) if j != i and not q.is_zero()]
                q, qrow = self._reduce_dragging(p, row, rest)
                if q.terms != p.terms:
                    changed = True
                    if q.is_zero():
                        syz.append(qrow)
                    polys[i] = (q, qrow)
            polys = [(p, r) for p, r in polys if not p.is_zero()]
        norm = []
        for p, row in polys:
            _, c = p.leading(self.order)
            inv = Fraction(1) / c
            norm.append((p * inv, [r * inv for r in row]))
        norm.sort(key=lambda pr: self.order.key(pr[0].leading(self.order)[0]), reverse=True)
        self.basis = [p for p, _ in norm]
        self._cofactors = [r for _, r in norm]
        self._syzygies = syz

    def _reduce_dragging(self, p: MultiPoly, row, rest):
        key = self.order.key
        terms = dict(p.terms)
        row = [dict(r.terms) for r in row]
        done: set = set()
        while True:
            cand = [m for m in terms if m not in done]
            if not cand:
                break
            m = max(cand, key=key)
            for ltm, ltco, (g, grow) in rest:
                q = _mono_div(m, ltm)
                if q is not None:
                    c = terms[m] / ltco
                    for gm, gc in g.terms.items():
                        t = _mono_mul(q, gm)
                        s = terms.get(t, 0) - c * gc
                        if s:
                            terms[t] = s
                        elif t in terms:
                            del terms[t]
                    for k, r in enumerate(grow):
                        for gm, gc in r.terms.items():
                            t = _mono_mul(q, gm)
                            s = row[k].get(t, 0) - c * gc
                            if s:
                                row[k][t] = s
                            elif t in row[k]:
                                del row[k][t]
                    break
            else:
                done.add(m)
        return MultiPoly(self.ring, terms), [MultiPoly(self.ring, r) for r in row]

    # -- queries --------------------------------------------------------------

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        return _poly_normal_form(f, self._lt, self.order)

    def contains(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()

    def reduce(self, f: MultiPoly):
        """Division with remainder: f = sum q_i * basis_i + r, r reduced."""
        key = self.order.key
        terms = dict(f.terms)
        quots = [dict() for _ in self.basis]
        done: set = set()
        while True:
            cand = [m for m in terms if m not in done]
            if not cand:
                break
            m = max(cand, key=key)
            for i, (ltm, ltco, g) in enumerate(self._lt):
                q = _mono_div(m, ltm)
                if q is not None:
                    c = terms[m] / ltco
                    quots[i][q] = quots[i].get(q, 0) + c
                    for gm, gc in g.terms.items():
                        t = _mono_mul(q, gm)
                        s = terms.get(t, 0) - c * gc
                        if s:
                            terms[t] = s
                        elif t in terms:
                            del terms[t]
                    break
            else:
                done.add(m)
        return [MultiPoly(self.ring, q) for q in quots], MultiPoly(self.ring, terms)

    def cofactors_on_gens(self, f: MultiPoly):
        """Write f = sum c_k * gens_k; None if f is not in the ideal.
        Requires certificates."""
        if self._cofactors is None:
            raise ValueError("GroebnerBasis built without certificates")
        quots, r = self.reduce(f)
        if not r.is_zero():
            return None
        out = [self.ring.zero() for _ in self.gens]
        for q, row in zip(quots, self._cofactors):
            if q.is_zero():
                continue
            for k, c in enumerate(row):
                if not c.is_zero():
                    out[k] = out[k] + q * c
        return out

    def syzygies(self):
        if self._syzygies is None:
            raise ValueError("GroebnerBasis built without certificates")
        return self._syzygies

    def leading_monomials(self) -> list[Mono]:
        return [m for m, _, _ in self._lt]

    def __repr__(self):
        return f"GroebnerBasis({len(self.basis)} elements, {self.order})"


class Ideal:
    """An ideal given by generators; membership is order-independent."""

    def __init__(self, ring: PolyRing, gens: Iterable[MultiPoly]):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb: dict = {}

    def groebner(self, order: MonomialOrder | None = None,
                 certificates: bool = False) -> GroebnerBasis:
        order = order or self.ring.order
        key = (order.name, certificates)
        if key not in self._gb:
            self._gb[key] = GroebnerBasis(self.ring, self.gens, order, certificates)
        return self._gb[key]

    def contains(self, f: MultiPoly) -> bool:
        return self.groebner().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        gb = self.groebner()
        return all(gb.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        """Ideal equality by mutual normal-form membership of generators."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def __iter__(self):
        return iter(self.gens)

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens in {self.ring})"


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(f)


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder | None = None,
               certificates: bool = False) -> GroebnerBasis:
    if not gens:
        raise ValueError("no generators")
    ring = gens[0].ring
    return GroebnerBasis(ring, gens, order, certificates)


# ---------------------------------------------------------------------------
# elimination, intersection, quotient, saturation
# ---------------------------------------------------------------------------

def _extended_ring(ring: PolyRing, extra: Sequence[str]) -> PolyRing:
    return PolyRing(tuple(extra) + ring.names,
                    BlockOrder(len(extra), Grevlex(), ring.order))


def eliminate(ideal: Ideal, drop: Iterable[str]) -> Ideal:
    """Intersection with the subring omitting `drop`, by the elimination
    theorem: reorder so dropped variables form the leading block, take a
    Groebner basis, and keep elements free of them."""
    drop = set(drop)
    for v in drop:
        if v not in ideal.ring.index:
            raise ValueError(f"unknown variable {v}")
    names = tuple(sorted(drop, key=ideal.ring.index.__getitem__)) + \
        tuple(v for v in ideal.ring.names if v not in drop)
    work = PolyRing(names, BlockOrder(len(drop), Grevlex(), Grevlex()))
    gens = [g.map_ring(work) for g in ideal.gens]
    gb = GroebnerBasis(work, gens, work.order)
    kept = []
    for g in gb.basis:
        if all(all(m[i] == 0 for i in range(len(drop))) for m in g.terms):
            kept.append(g.map_ring(ideal.ring))
    return Ideal(ideal.ring, kept)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J via the auxiliary variable t and elimination of t from
    t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    work = _extended_ring(I.ring, ("_t_",))
    t = work.var("_t_")
    gens = [t * f.map_ring(work) for f in I.gens]
    gens += [(work.one() - t) * g.map_ring(work) for g in J.gens]
    K = eliminate(Ideal(work, gens), {"_t_"})
    return Ideal(I.ring, [g.map_ring(I.ring) for g in K.gens])


def exact_div(f: MultiPoly, d: MultiPoly) -> MultiPoly:
    """f / d when d divides f exactly; raises otherwise."""
    order = f.ring.order
    rem = f
    out = f.ring.zero()
    dm, dc = d.leading(order)
    while not rem.is_zero():
        m, c = rem.leading(order)
        q = _mono_div(m, dm)
        if q is None:
            raise ValueError("exact_div: not divisible")
        term = rem.ring.monomial(q, c / dc)
        out = out + term
        rem = rem - term * d
    return out


def ideal_quotient(I: Ideal, f: MultiPoly) -> Ideal:
    """I : f, via (I cap <f>) / f."""
    K = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [exact_div(g, f) for g in K.gens])


def saturate(I: Ideal, f: MultiPoly, method: str = "rabinowitsch",
             max_iter: int = 50) -> Ideal:
    """I : f^infinity.

    rabinowitsch: eliminate z from I + <1 - z f> (single exact step).
    quotient: iterate I : f to stability, hard-capped; exceeding the cap
    signals a bug, not a math fact."""
    if method == "rabinowitsch":
        work = _extended_ring(I.ring, ("_z_",))
        z = work.var("_z_")
        gens = [g.map_ring(work) for g in I.gens]
        gens.append(work.one() - z * f.map_ring(work))
        K = eliminate(Ideal(work, gens), {"_z_"})
        return Ideal(I.ring, [g.map_ring(I.ring) for g in K.gens])
    if method == "quotient":
        cur = I
        for _ in range(max_iter):
            nxt = ideal_quotient(cur, f)
            if cur.equals(nxt):
                return cur
            cur = nxt
        raise RuntimeError("saturation failed to stabilize within the cap")
    raise ValueError(f"unknown method {method!r}")


def saturate_irrelevant(I: Ideal, names: Sequence[str] | None = None) -> Ideal:
    """Saturation by the irrelevant maximal ideal: the intersection of the
    saturations by each variable."""
    names = list(names or I.ring.names)
    out = None
    for v in names:
        S = saturate(I, I.ring.var(v))
        out = S if out is None else intersect(out, S)
    return out


# ---------------------------------------------------------------------------
# monomial staircase: Hilbert data, dimension, weight bases
# ---------------------------------------------------------------------------

def _minimalize(monos: Iterable[Mono]) -> list[Mono]:
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(_mono_div(m, o) is not None for o in out):
            out.append(m)
    return out


def standard_decomposition(lt_gens: Sequence[Mono], n: int):
    """Disjoint decomposition of the standard monomials of a monomial ideal
    as translated coordinate cones: a list of (prefix monomial, frozenset of
    free variable indices)."""
    zero = (0,) * n

    def rec(gens, alive):
        gens = _minimalize(gens)
        if any(g == zero for g in gens):
            return []
        if not gens:
            return [(zero, frozenset(alive))]
        x = next(i for g in gens for i in alive if g[i] > 0)
        # monomials with no x: kill x in the ring
        without = rec([g for g in gens if g[x] == 0], alive - {x})
        # monomials divisible by x: shift by the colon ideal
        colon = []
        for g in gens:
            h = list(g)
            if h[x] > 0:
                h[x] -= 1
            colon.append(tuple(h))
        ex = tuple(1 if i == x else 0 for i in range(n))
        withx = [(_mono_mul(ex, m), A) for m, A in rec(colon, alive)]
        return without + withx

    return rec(list(lt_gens), frozenset(range(n)))


def krull_dimension(I: Ideal) -> int:
    """dim R/I = largest free cone in the staircase of any leading-term
    ideal; -1 for the unit ideal."""
    gb = I.groebner()
    pieces = standard_decomposition(gb.leading_monomials(), I.ring.n)
    if not pieces:
        return -1
    return max(len(A) for _, A in pieces)


class InfiniteWeightSpace(Exception):
    pass


def weight_standard_monomials(gb: GroebnerBasis, wts: WeightAssignment, w: int) -> list[Mono]:
    """All standard monomials of the given torus weight, exactly.

    Requires each free cone of the staircase decomposition to carry weights
    of one strict sign, which holds for the curve quotients used here; a
    mixed-sign or zero-weight cone would make some weight space
    infinite-dimensional and raises."""
    n = gb.ring.n
    pieces = standard_decomposition(gb.leading_monomials(), n)
    wv = wts.vector
    out = []
    for prefix, A in pieces:
        base = sum(e * wt for e, wt in zip(prefix, wv))
        free = sorted(A)
        for i in free:
            if wv[i] == 0:
                raise InfiniteWeightSpace(f"zero-weight free direction {gb.ring.names[i]}")
        signs = {wv[i] > 0 for i in free}
        if len(signs) > 1:
            raise InfiniteWeightSpace("mixed-sign free cone; weight spaces not finite")

        def rec(idx, rem, acc):
            if idx == len(free):
                if rem == 0:
                    out.append(_mono_mul(prefix, tuple(acc)))
                return
            i = free[idx]
            wi = wv[i]
            e = 0
            while True:
                left = rem - e * wi
                # one strict sign: the residual weight cannot cross zero
                if (wi > 0 and left < 0) or (wi < 0 and left > 0):
                    break
                acc[i] = e
                rec(idx + 1, left, acc)
                acc[i] = 0
                e += 1

        rec(0, w - base, [0] * n)
    return sorted(set(out))


def hilbert_numerator(lt_gens: Sequence[Mono], n: int) -> dict[int, int]:
    """Numerator K(t) of the Hilbert series K(t)/(1-t)^n of R/L for a
    monomial ideal L, by the standard pivot-variable recursion."""

    def rec(gens):
        gens = tuple(_minimalize(gens))
        return _hs_cached(gens, n)

    return rec(lt_gens)


@lru_cache(maxsize=None)
def _hs_cached(gens: tuple, n: int) -> dict:
    zero = (0,) * n
    if any(g == zero for g in gens):
        return {}
    if not gens:
        return {0: 1}
    # a generator that is a single variable: drop that variable
    for g in gens:
        if sum(g) == 1:
            x = g.index(1)
            rest = tuple(_minimalize([h for h in gens if h[x] == 0]))
            inner = _hs_cached(rest, n)
            out: dict[int, int] = {}
            for j, c in inner.items():
                out[j] = out.get(j, 0) + c
                out[j + 1] = out.get(j + 1, 0) - c
            return {j: c for j, c in out.items() if c}
    x = next(i for g in gens for i in range(n) if g[i] > 0)
    ex = tuple(1 if i == x else 0 for i in range(n))
    plus = tuple(_minimalize(list(gens) + [ex]))
    colon = []
    for g in gens:
        h = list(g)
        if h[x] > 0:
            h[x] -= 1
        colon.append(tuple(h))
    colon = tuple(_minimalize(colon))
    a = _hs_cached(plus, n)
    b = _hs_cached(colon, n)
    out = dict(a)
    for j, c in b.items():
        out[j + 1] = out.get(j + 1, 0) + c
    return {j: c for j, c in out.items() if c}


def hilbert_polynomial(I: Ideal) -> MultiPoly:
    """Hilbert polynomial of R/I (I homogeneous) as a polynomial in m,
    computed from the leading-term ideal.  Saturate curve ideals by the
    irrelevant ideal first: the dm+1 convention presumes the saturated
    ideal."""
    gb = I.groebner()
    K = hilbert_numerator(gb.leading_monomials(), I.ring.n)
    mring = PolyRing(("m",))
    m = mring.var("m")
    n = I.ring.n
    out = mring.zero()
    for j, c in K.items():
        # binom(m - j + n - 1, n - 1) as a polynomial in m
        term = mring.one()
        for k in range(1, n):
            term = term * (m + (k - j)) * Fraction(1, k)
        out = out + term * c
    return out


# ---------------------------------------------------------------------------
# syzygies and module kernels
# ---------------------------------------------------------------------------

def syzygies(gens: Sequence[MultiPoly], order: MonomialOrder | None = None,
             relations: Sequence[MultiPoly] = ()) -> list[list[MultiPoly]]:
    """Generators of { sigma : sum sigma_i g_i in <relations> } in R^len(gens).

    With empty relations this is the full syzygy module of the generators
    (the graph construction; reductions of all S-vectors are kept, which is
    Schreyer's generating set).  Every returned vector dots to zero against
    the generators modulo the relations."""
    gens = list(gens)
    full = gens + list(relations)
    if not full:
        return []
    ring = full[0].ring
    gb = GroebnerBasis(ring, full, order or ring.order, certificates=True)
    out = []
    for row in gb.syzygies():
        head = row[:len(gens)]
        if any(not h.is_zero() for h in head):
            out.append(head)
    return out


def module_kernel(rows: Sequence[Sequence[MultiPoly]], ncols: int,
                  modulo: Ideal | None = None) -> list[list[MultiPoly]]:
    """Generators of { phi in R^ncols : M phi = 0 mod I } for the matrix M
    with the given rows, I = modulo (or 0).

    Returned vectors are lifted representatives; M v lies in I * R^rows for
    each.  Computed as syzygies of the columns of [M | I-multiples of unit
    vectors], projected to the first ncols coordinates."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    if nrows == 0:
        # kernel is everything: unit vectors generate
        ring = modulo.ring if modulo is not None else None
        if ring is None:
            raise ValueError("empty matrix needs modulo to fix the ring")
        out = []
        for j in range(ncols):
            v = [ring.zero()] * ncols
            v[j] = ring.one()
            out.append(v)
        return out
    ring = rows[0][0].ring
    vectors = []
    for j in range(ncols):
        v: Vec = {}
        for i in range(nrows):
            for m, c in rows[i][j].terms.items():
                v[(i, m)] = c
        v[(nrows + j, ring._zero_mono)] = Fraction(1)
        vectors.append(v)
    extra = 0
    if modulo is not None:
        for q in modulo.gens:
            for i in range(nrows):
                v = {(i, m): c for m, c in q.terms.items()}
                v[(nrows + ncols + extra, ring._zero_mono)] = Fraction(1)
                vectors.append(v)
                extra += 1
    total = nrows + ncols + extra
    gb = module_groebner(vectors, ModuleOrder(ring.order, nelim=nrows))
    out = []
    for v in gb:
        if any(comp < nrows for comp, _ in v):
            continue
        phi = [dict() for _ in range(ncols)]
        for (comp, m), c in v.items():
            if nrows <= comp < nrows + ncols:
                phi[comp - nrows][m] = c
        phi = [MultiPoly(ring, p) for p in phi]
        if any(not p.is_zero() for p in phi):
            out.append(phi)
    return out


def module_contains(vector: Sequence[MultiPoly], generators: Sequence[Sequence[MultiPoly]],
                    modulo: Ideal | None = None) -> bool:
    """Membership of a column in the submodule of (R/modulo)^k spanned by the
    generator columns, via a module normal form."""
    vector = list(vector)
    k = len(vector)
    ring = vector[0].ring
    vecs = []
    for g in generators:
        vecs.append({(i, m): c for i, p in enumerate(g) for m, c in p.terms.items()})
    if modulo is not None:
        for q in modulo.gens:
            for i in range(k):
                vecs.append({(i, m): c for m, c in q.terms.items()})
    order = ModuleOrder(ring.order, nelim=0)
    gb = module_groebner([v for v in vecs if v], order)
    basis = []
    for v in gb:
        t = _vec_leading(v, order.key)
        basis.append((t[0], t[1], v[t], v))
    target = {(i, m): c for i, p in enumerate(vector) for m, c in p.terms.items()}
    return not _vec_normal_form(target, basis, order.key)
