"""The concrete equivariant tower: W3, its dual, Sym^2, the 7-dimensional
invariant space U6 with its w-basis, the net q of quadrics, the alternating
net on the dual of U6, and the induced action on the pencil variables.

Everything is derived from the sl2 action alone; the printed generators
enter only as cross-check fixtures (the pipeline logs one proportionality
scalar per derived vector).  Exception: the three alternating forms that
define the matrix pencil keep the normalization fixed by the source model,
since the Pfaffian ideal is compared literally in those coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .poly import GREVLEX, MultiPoly, PolyRing, WeightAssignment
from .sl2 import (RepSpace, RepVector, apolar_annihilator, construct,
                  highest_weight_vectors, lowering_orbit, pair_poly_map,
                  subrepresentation)
from .skewnet import SkewNet, net_from_forms

U_RING = PolyRing(("u3", "u1", "u_m1", "u_m3"), GREVLEX)
U_WEIGHTS = WeightAssignment(U_RING, {"u3": 3, "u1": 1, "u_m1": -1, "u_m3": -3})
DU_RING = PolyRing(("du3", "du1", "du_m1", "du_m3"), GREVLEX)

W_LABELS = ("w6", "w4", "w2", "w0", "w_m2", "w_m4", "w_m6")
W_WEIGHTS = (6, 4, 2, 0, -2, -4, -6)

# SL2-equivariant identification of the dual basis with differential
# operators: partial_{3} = 6 du_m3, partial_1 = 2 du_m1, etc.  Stored as
# data and applied only where the pairing convention needs it.
DUAL_DIFFERENTIAL_IDENTIFICATION = {
    "du_m3": ("d3", 6),
    "du_m1": ("d1", 2),
    "du1": ("d_m1", 2),
    "du3": ("d_m3", 6),
}


def content_normalize(v: RepVector) -> tuple[RepVector, Fraction]:
    """Scale to integral coefficients with content 1 and positive first
    nonzero coordinate; returns (normalized, scalar) with v = scalar * out."""
    nums = [c for c in v.coords if c != 0]
    if not nums:
        raise ValueError("zero vector")
    den_lcm = 1
    for c in nums:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    ints = [c * den_lcm for c in nums]
    g = 0
    for c in ints:
        g = gcd(g, abs(c.numerator))
    scale = Fraction(den_lcm, g)
    if next(c for c in v.coords if c != 0) < 0:
        scale = -scale
    out = v * scale
    return out, Fraction(1) / scale


@dataclass
class Tower:
    W3: RepSpace
    W3_dual: RepSpace
    sym2_W3: RepSpace
    sym2_W3_dual: RepSpace
    u6_orbit: list          # raw f-orbit of the top vector of Sym^2 W3
    w_vectors: list         # content-normalized orbit: the w-basis
    w_scalars: list         # orbit[i] = w_scalars[i] * w_vectors[i]
    U6: RepSpace
    U6_dual: RepSpace
    wedge2_U6_dual: RepSpace
    u3_vectors: list        # the 3-dimensional invariant complement
    q_vectors: list         # the net of quadrics in Sym^2 W3*
    net_hwv: RepVector      # derived highest weight vector of the net
    net_derived: list       # canonical derived net: [hwv, f/2, f^2/2 applied]
    w_polys: list           # w-basis as quadrics in U_RING
    u3_polys: list
    q_polys: list           # q generators as quadrics in DU_RING

    def net_space(self, forms) -> RepSpace:
        return subrepresentation(self.wedge2_U6_dual, forms, ("n2", "n0", "n_m2"))

    def apolarity_substitution(self, forms) -> dict:
        """The equivariant identification of the pencil space with its dual,
        as a variable substitution applied to forms before they act as
        differential operators.

        The unique invariant bilinear form B on the net sends the dual
        coordinate of the weight -k generator to a multiple of the weight k
        generator; k-th partials pair with the opposite dual coordinate, so
        the substitution swaps y2 with y_m2 and rescales y0 by the middle
        entry of B^{-1}."""
        from .skewnet import Y_RING
        from .sl2 import invariant_bilinear_form
        N = self.net_space(forms)
        B = invariant_bilinear_form(N)
        # basis (g1, g2, g3) of weights (2, 0, -2): B is antidiagonal-plus-
        # middle: B(g1,g3) = s, B(g2,g2) = b
        s, b = B[0][2], B[1][1]
        if s == 0 or b == 0 or B[0][0] != 0:
            raise ValueError("unexpected invariant form shape")
        return {
            "y2": Y_RING.var("y_m2") * (Fraction(1) / s),
            "y0": Y_RING.var("y0") * (Fraction(1) / b),
            "y_m2": Y_RING.var("y2") * (Fraction(1) / s),
        }

    def y_action(self, forms) -> dict:
        """Derivation action of e and f on the pencil variables, induced by
        the net spanned by `forms` (ordered by weights 2, 0, -2).

        The pencil variable y_k is dual to the weight -k generator, so the
        dual module is taken with basis reordered (y2, y0, y_m2)."""
        N = self.net_space(forms)
        Nd = construct("dual", N)
        # Nd basis = (dn2, dn0, dn_m2) with weights (-2, 0, 2): y2 = dn_m2,
        # y0 = dn0, y_m2 = dn2
        reorder = [2, 1, 0]
        names = ("y2", "y0", "y_m2")
        from .skewnet import Y_RING
        out = {}
        for op, mat in (("e", Nd.act_e), ("f", Nd.act_f)):
            images = {}
            for col_pos, j in enumerate(reorder):
                img = Y_RING.zero()
                for row_pos, i in enumerate(reorder):
                    c = mat[j][i]
                    if c:
                        img = img + Y_RING.var(names[row_pos]) * c
                images[names[col_pos]] = img
            out[op] = images
        return out


@lru_cache(maxsize=1)
def standard_tower() -> Tower:
    W3 = sym_power_std_cached(3)
    W3d = construct("dual", W3)
    sym2 = construct("sym2", W3)
    sym2d = construct("sym2", W3d)

    # top of Sym^2 W3: the unique weight-6 highest weight vector, u3^2
    (top,) = highest_weight_vectors(sym2, 6)
    orbit = lowering_orbit(top)
    if len(orbit) != 7:
        raise RuntimeError(f"U6 orbit has length {len(orbit)}, expected 7")
    normalized = [content_normalize(v) for v in orbit]
    w_vectors = [n for n, _ in normalized]
    w_scalars = [s for _, s in normalized]
    U6 = subrepresentation(sym2, w_vectors, W_LABELS)

    # the 3-dimensional complement: weight-2 highest weight vector downstairs
    (hw2,) = highest_weight_vectors(sym2, 2)
    u3_vectors = [content_normalize(v)[0] for v in lowering_orbit(hw2)]

    # net of quadrics on the dual side
    (qtop,) = highest_weight_vectors(sym2d, 2)
    q_vectors = [content_normalize(v)[0] for v in lowering_orbit(qtop)]

    U6d = construct("dual", U6)
    wedge = construct("wedge2", U6d)
    (net_hwv,) = highest_weight_vectors(wedge, 2)
    net_derived = [net_hwv,
                   wedge.f(net_hwv) * Fraction(1, 2),
                   wedge.f(wedge.f(net_hwv)) * Fraction(1, 2)]

    to_upoly = pair_poly_map(sym2, U_RING)
    to_qpoly = pair_poly_map(sym2d, DU_RING)
    return Tower(
        W3=W3, W3_dual=W3d, sym2_W3=sym2, sym2_W3_dual=sym2d,
        u6_orbit=orbit, w_vectors=w_vectors, w_scalars=w_scalars,
        U6=U6, U6_dual=U6d, wedge2_U6_dual=wedge,
        u3_vectors=u3_vectors, q_vectors=q_vectors,
        net_hwv=net_hwv, net_derived=net_derived,
        w_polys=[to_upoly(v) for v in w_vectors],
        u3_polys=[to_upoly(v) for v in u3_vectors],
        q_polys=[to_qpoly(v) for v in q_vectors],
    )


@lru_cache(maxsize=8)
def sym_power_std_cached(d: int) -> RepSpace:
    from .sl2 import sym_power_std
    return sym_power_std(d)


def apolar_annihilator_of_q(tower: Tower) -> list[RepVector]:
    return apolar_annihilator(tower.q_vectors, tower.sym2_W3)


def parse_wedge_form(space: RepSpace, entries: dict) -> RepVector:
    """A wedge2 vector from {\"dwi dwj\": coeff string} data; indices may come
    in either orientation, signs handled by antisymmetry."""
    base = space.base
    coords = [Fraction(0)] * space.dim
    index = {p: k for k, p in enumerate(space.pairs)}
    for key, val in entries.items():
        a, b = key.split()
        i, j = base.labels.index(a), base.labels.index(b)
        c = Fraction(val)
        if i == j:
            raise ValueError("repeated wedge factor")
        if i < j:
            coords[index[(i, j)]] += c
        else:
            coords[index[(j, i)]] -= c
    return RepVector(space, coords)
