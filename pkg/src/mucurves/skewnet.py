"""The net of alternating two-forms as a skew matrix pencil, its Pfaffians,
and apolarity for ternary forms.

The pencil variables y2, y0, y_m2 are dual to the ordered net generators,
whose weights run 2, 0, -2; duality reverses weight, so y_k multiplies the
matrix of the weight -k generator.  With the weight convention y_k -> k the
seven principal Pfaffians come out torus-homogeneous.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .groebner import Ideal
from .linalg import det, nullspace, rref
from .poly import GREVLEX, MultiPoly, PolyRing
from .sl2 import RepVector

Y_RING = PolyRing(("y2", "y0", "y_m2"), GREVLEX)
Y_WEIGHTS = {"y2": 2, "y0": 0, "y_m2": -2}


class SkewNet:
    """Three 7x7 skew rational matrices: the coefficients of y2, y0, y_m2."""

    def __init__(self, mat_by_var):
        self.mats = {v: [[Fraction(x) for x in row] for row in mat_by_var[v]]
                     for v in ("y2", "y0", "y_m2")}
        self.size = len(self.mats["y2"])
        for v, m in self.mats.items():
            if len(m) != self.size or any(len(r) != self.size for r in m):
                raise ValueError("net matrices must be square of one size")
            for i in range(self.size):
                for j in range(self.size):
                    if m[i][j] != -m[j][i]:
                        raise ValueError(f"coefficient matrix of {v} is not skew")

    def pencil(self, ring: PolyRing = Y_RING):
        """The symbolic matrix y2*M2 + y0*M0 + y_m2*Mm2."""
        out = [[ring.zero() for _ in range(self.size)] for _ in range(self.size)]
        for v, m in self.mats.items():
            yv = ring.var(v)
            for i in range(self.size):
                for j in range(self.size):
                    if m[i][j]:
                        out[i][j] = out[i][j] + yv * m[i][j]
        return out

    def entry(self, i: int, j: int, ring: PolyRing = Y_RING) -> MultiPoly:
        out = ring.zero()
        for v, m in self.mats.items():
            if m[i][j]:
                out = out + ring.var(v) * m[i][j]
        return out


def net_from_forms(forms: Sequence[RepVector]) -> SkewNet:
    """Matrix pencil of a 3-dimensional net of alternating forms on the
    7-dimensional module, ordered by descending weight 2, 0, -2.

    Entry (i, j) of the matrix attached to a form is its coefficient on
    dw_i ^ dw_j; the form of weight -k becomes the coefficient matrix of
    y_k."""
    if len(forms) != 3:
        raise ValueError("a net has three generators")
    wts = [f.weight() for f in forms]
    if wts != [2, 0, -2]:
        raise ValueError(f"expected generator weights [2, 0, -2], got {wts}")
    space = forms[0].space
    n = space.base.dim
    by_weight = {-2: "y2", 0: "y0", 2: "y_m2"}
    mats = {}
    for f, w in zip(forms, wts):
        m = [[Fraction(0)] * n for _ in range(n)]
        for c, (i, j) in zip(f.coords, space.pairs):
            if c:
                m[i][j] += c
                m[j][i] -= c
        mats[by_weight[w]] = m
    return SkewNet(mats)


def pfaffian(mat) -> MultiPoly | Fraction:
    """Pfaffian of a skew matrix (entries MultiPoly or Fraction), by
    recursive expansion along the first row; pf(M)^2 = det(M)."""
    n = len(mat)
    if n % 2 != 0:
        raise ValueError("pfaffian needs even size")
    sample = mat[0][0] if n else Fraction(0)
    zero = sample.ring.zero() if isinstance(sample, MultiPoly) else Fraction(0)

    def is_zero(x):
        return x.is_zero() if isinstance(x, MultiPoly) else x == 0

    for i in range(n):
        for j in range(n):
            lhs = mat[i][j]
            rhs = mat[j][i]
            diff = lhs + rhs if isinstance(lhs, MultiPoly) else lhs + rhs
            if not is_zero(diff):
                raise ValueError("matrix is not skew-symmetric")

    def rec(rows):
        k = len(rows)
        if k == 0:
            one = sample.ring.one() if isinstance(sample, MultiPoly) else Fraction(1)
            return one
        total = zero
        for t, j in enumerate(rows[1:], start=2):
            a = mat[rows[0]][j]
            if is_zero(a):
                continue
            rest = [r for r in rows if r != rows[0] and r != j]
            term = a * rec(rest)
            total = total + term if t % 2 == 0 else total - term
        return total

    return rec(list(range(n)))


def principal_pfaffian_ideal(net: SkewNet, ring: PolyRing = Y_RING) -> Ideal:
    """Ideal of the seven Pfaffians of the principal 6x6 minors of the
    pencil (delete row and column i)."""
    pencil = net.pencil(ring)
    n = net.size
    gens = []
    for i in range(n):
        keep = [r for r in range(n) if r != i]
        minor = [[pencil[r][c] for c in keep] for r in keep]
        p = pfaffian(minor)
        if not p.is_zero():
            gens.append(p)
    return Ideal(ring, gens)


# -- apolarity for ternary forms ---------------------------------------------

def diff_poly(f: MultiPoly, var: str) -> MultiPoly:
    i = f.ring.index[var]
    terms = {}
    for m, c in f.terms.items():
        if m[i] > 0:
            m2 = list(m)
            m2[i] -= 1
            terms[tuple(m2)] = terms.get(tuple(m2), 0) + c * m[i]
    return MultiPoly(f.ring, terms)


def apply_diff_operator(op: MultiPoly, target: MultiPoly) -> MultiPoly:
    """Interpret op's variables as partial derivatives and apply to target
    (same ring, factorial convention of differentiation)."""
    out = target.ring.zero()
    for m, c in op.terms.items():
        g = target
        for i, e in enumerate(m):
            for _ in range(e):
                g = diff_poly(g, target.ring.names[i])
                if g.is_zero():
                    break
        out = out + g * c
    return out


def _degree_monomials(ring: PolyRing, d: int):
    def rec(i, rem):
        if i == ring.n - 1:
            yield (rem,)
            return
        for e in range(rem + 1):
            for rest in rec(i + 1, rem - e):
                yield (e,) + rest
    return sorted(rec(0, d), key=GREVLEX.key, reverse=True)


def _coeff_vector(f: MultiPoly, monos):
    return [f.terms.get(m, Fraction(0)) for m in monos]


def cubic_annihilator_space(cubics: Sequence[MultiPoly], ring: PolyRing = Y_RING):
    """Complement of a span of cubics under the differential pairing: all
    degree-3 operators D with D(c) = 0 for every c in the span."""
    monos3 = _degree_monomials(ring, 3)
    rows = []
    for c in cubics:
        row = []
        for m in monos3:
            op = ring.monomial(m)
            val = apply_diff_operator(op, c)
            row.append(val.constant())
        rows.append(row)
    basis = nullspace(rows, len(monos3))
    red, _ = rref(basis) if basis else ([], [])
    return [sum((ring.monomial(m, c) for m, c in zip(monos3, v) if c), ring.zero())
            for v in red]


def _twist(op: MultiPoly, substitution) -> MultiPoly:
    """Rewrite a form as a differential operator through a coordinate
    substitution (the equivariant identification of the 3-space with its
    dual) before letting its variables differentiate."""
    if substitution is None:
        return op
    return op.substitute(substitution)


def apolar_quartic(cubics: Sequence[MultiPoly], ring: PolyRing = Y_RING,
                   operator_substitution=None) -> MultiPoly:
    """The quartic whose degree-3 apolar ideal contains a given 7-dimensional
    space of cubics; raises unless the solution space is a single projective
    point.

    Each input cubic, read as a third-order differential operator, must kill
    the quartic: 21 linear conditions on the 15 coefficients, with a
    one-dimensional solution exactly when the input is an honest apolar
    system.  `operator_substitution` rewrites the cubics through the
    identification of the space with its dual first; passing the equivariant
    identification makes the construction sl2-equivariant."""
    monos3 = _degree_monomials(ring, 3)
    span_rows = [_coeff_vector(c, monos3) for c in cubics]
    red, _ = rref(span_rows)
    if len(red) != 7:
        raise ValueError(f"input space has dimension {len(red)}, expected 7")
    monos4 = _degree_monomials(ring, 4)
    monos1 = _degree_monomials(ring, 1)
    rows = []
    for D in cubics:
        D = _twist(D, operator_substitution)
        # D applied to a general quartic is linear; each linear coefficient
        # gives one condition on the 15 quartic coefficients
        for lin_m in monos1:
            row = []
            for qm in monos4:
                val = apply_diff_operator(D, ring.monomial(qm))
                row.append(val.terms.get(lin_m, Fraction(0)))
            rows.append(row)
    basis = nullspace(rows, len(monos4))
    if len(basis) != 1:
        raise ValueError(f"apolar quartic space has dimension {len(basis)}, expected 1")
    v = basis[0]
    return sum((ring.monomial(m, c) for m, c in zip(monos4, v) if c), ring.zero())


def apolar_cubics_of(quartic: MultiPoly, ring: PolyRing = Y_RING,
                     operator_substitution=None):
    """Degree-3 part of the apolar ideal of a quartic: cubic operators
    killing it under (possibly twisted) differentiation."""
    monos3 = _degree_monomials(ring, 3)
    monos1 = _degree_monomials(ring, 1)
    rows = []
    for lin_m in monos1:
        row = []
        for cm in monos3:
            D = _twist(ring.monomial(cm), operator_substitution)
            val = apply_diff_operator(D, quartic)
            row.append(val.terms.get(lin_m, Fraction(0)))
        rows.append(row)
    basis = nullspace(rows, len(monos3))
    red, _ = rref(basis) if basis else ([], [])
    return [sum((ring.monomial(m, c) for m, c in zip(monos3, v) if c), ring.zero())
            for v in red]


def poly_square_root(f: MultiPoly) -> MultiPoly | None:
    """g with g^2 = f, if one exists (leading coefficient made positive)."""
    import math

    if f.is_zero():
        return f.ring.zero()
    m, c = f.leading()
    if any(e % 2 for e in m) or c < 0:
        return None
    sn = math.isqrt(c.numerator)
    sd = math.isqrt(c.denominator)
    if sn * sn != c.numerator or sd * sd != c.denominator:
        return None
    g = f.ring.monomial(tuple(e // 2 for e in m), Fraction(sn, sd))
    rem = f - g * g
    # greedy completion: peel leading terms of the residual
    for _ in range(200):
        if rem.is_zero():
            return g
        rm, rc = rem.leading()
        gm, gc = g.leading()
        qm = tuple(a - b for a, b in zip(rm, gm))
        if any(e < 0 for e in qm):
            return None
        t = f.ring.monomial(qm, rc / (2 * gc))
        g = g + t
        rem = f - g * g
    return None
