"""Parametric curves in the Grassmannian, their degrees and isotropy, the
universal cubic family, and the catalog of torus-fixed curve records.

A parametric curve is a 3x7 matrix over Q[s, t] whose rows span the moving
3-plane.  Degrees are read off the Plucker embedding: homogenize the rows,
take all 35 maximal minors, clear their common monomial factor, and take the
common degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .charts import ChartModel, Chart
from .groebner import Ideal, eliminate
from .linalg import solve as linalg_solve
from .poly import GREVLEX, MultiPoly, PolyRing
from .skewnet import SkewNet
from .tower import W_WEIGHTS

ST_RING = PolyRing(("s", "t"), GREVLEX)


@dataclass
class ParametricCurve:
    """Rows over a two-variable parameter ring, generically of rank 3."""

    rows: list                      # 3 x 7 MultiPoly matrix
    ring: PolyRing = ST_RING

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], ring: PolyRing = ST_RING):
        return cls([[ring.parse(e) for e in row] for row in rows], ring)

    def homogenized(self):
        """Pad each row to uniform degree with the missing parameter; rows
        already bihomogeneous are untouched, mixed inhomogeneous entries in
        both variables are rejected."""
        si, ti = self.ring.index["s"], self.ring.index["t"]
        out = []
        for row in self.rows:
            deg = max((e.total_degree() for e in row if not e.is_zero()), default=0)
            uses_s = any(m[si] for e in row for m in e.terms)
            uses_t = any(m[ti] for e in row for m in e.terms)
            if uses_s and uses_t:
                for e in row:
                    for m in e.terms:
                        if sum(m) != deg:
                            raise ValueError("mixed-variable rows must be homogeneous")
                out.append(list(row))
                continue
            pad = si if uses_t or not uses_s else ti
            new_row = []
            for e in row:
                terms = {}
                for m, c in e.terms.items():
                    mm = list(m)
                    mm[pad] += deg - sum(m)
                    terms[tuple(mm)] = c
                new_row.append(MultiPoly(self.ring, terms))
            out.append(new_row)
        return out


def _minors3(rows, ring):
    out = []
    n = len(rows[0])
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                m = (rows[0][a] * (rows[1][b] * rows[2][c] - rows[1][c] * rows[2][b])
                     - rows[0][b] * (rows[1][a] * rows[2][c] - rows[1][c] * rows[2][a])
                     + rows[0][c] * (rows[1][a] * rows[2][b] - rows[1][b] * rows[2][a]))
                if not m.is_zero():
                    out.append(m)
    return out


def _monomial_gcd(polys):
    g = None
    for p in polys:
        for m in p.terms:
            g = m if g is None else tuple(min(a, b) for a, b in zip(g, m))
    return g


def plucker_degree(curve: ParametricCurve):
    """(degree, parameter weight): the common degree of the 35 maximal
    minors after clearing their monomial gcd, and the torus weight carried
    by t/s, inferred from entry homogeneity (error if the matrix is not
    equivariant)."""
    rows = curve.homogenized()
    minors = _minors3(rows, curve.ring)
    if not minors:
        raise ValueError("matrix has rank < 3")
    g = _monomial_gcd(minors)
    cleared_degrees = set()
    for p in minors:
        degs = {sum(m) - sum(g) for m in p.terms}
        if len(degs) != 1:
            raise ValueError("inhomogeneous minor")
        cleared_degrees.add(degs.pop())
    if len(cleared_degrees) != 1:
        raise ValueError(f"minors of mixed degrees {sorted(cleared_degrees)}")
    return cleared_degrees.pop(), parameter_weight(curve)


def parameter_weight(curve: ParametricCurve) -> int:
    """Weight tau of t/s: entries must satisfy wt(w_col) + (t-deg) * tau =
    row constant; solved exactly over all nonzero monomials."""
    ti = curve.ring.index["t"]
    rows = curve.homogenized()
    # unknowns: tau, rho_0, rho_1, rho_2
    eqs = []
    rhs = []
    for r in range(3):
        for c in range(7):
            for m in rows[r][c].terms:
                row = [Fraction(0)] * 4
                row[0] = Fraction(m[ti])
                row[1 + r] = Fraction(-1)
                eqs.append(row)
                rhs.append(Fraction(-W_WEIGHTS[c]))
    sol = linalg_solve(eqs, rhs)
    if sol is None:
        raise ValueError("matrix is not torus-equivariant")
    tau = sol[0]
    if tau.denominator != 1:
        raise ValueError(f"non-integral parameter weight {tau}")
    return int(tau)


def family_isotropy(rows, net: SkewNet):
    """P eta_k P^T = 0 identically in all parameters for k = 2, 0, -2;
    returns (ok, offending (pair, pencil variable) or None)."""
    ring = rows[0][0].ring
    for i, j in ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)):
        for yvar, mat in net.mats.items():
            s = ring.zero()
            for a in range(7):
                if rows[i][a].is_zero():
                    continue
                for b in range(7):
                    c = mat[a][b]
                    if c and not rows[j][b].is_zero():
                        s = s + rows[i][a] * rows[j][b] * c
            if not s.is_zero():
                return False, ((i, j), yvar)
    return True, None


def implicitize_into_chart(curve: ParametricCurve, model: ChartModel,
                           affine: str = "t") -> Ideal:
    """Chart ideal of a parametric curve.

    Dehomogenize at the declared affine parameter (the part of the curve
    inside the chart must be exactly the affine-parameter image, which holds
    for the fixed curves here: the missing points sit in other charts), row
    reduce to the chart template, and eliminate the parameter.  Requires the
    pinned block to have constant determinant after dehomogenizing."""
    from .charts import _adj3, _det3
    other = "s" if affine == "t" else "t"
    tring = PolyRing((affine,), GREVLEX)
    rows = []
    for row in curve.homogenized():
        rows.append([e.substitute({other: tring.one(),
                                   affine: tring.var(affine)}) for e in row])
    chart = model.chart
    B = [[rows[r][c] for c in chart.pins] for r in range(3)]
    den = _det3(B)
    if den.is_zero() or den.total_degree() > 0:
        raise ValueError("pinned block must be constant-invertible after "
                         "dehomogenizing")
    dinv = Fraction(1) / den.constant()
    adj = _adj3(B)
    N = [[sum((adj[r][k] * rows[k][c] for k in range(3)), tring.zero()) * dinv
          for c in range(7)] for r in range(3)]
    names = tuple(model.ring.names) + (affine,)
    work = PolyRing(names, GREVLEX)
    gens = []
    for v, (r, c) in chart.positions.items():
        if model.param is not None and v not in model.ring.names:
            continue
        gens.append(work.var(v) - N[r][c].map_ring(work))
    for rel in model.relations.gens:
        gens.append(rel.map_ring(work))
    J = eliminate(Ideal(work, gens), {affine})
    return Ideal(model.ring, [g.map_ring(model.ring) for g in J.gens])


# ---------------------------------------------------------------------------
# the universal cubic family over the top chart
# ---------------------------------------------------------------------------

U_PARAM_NAMES = ("a9", "a10", "a11")


def universal_cubic_ring():
    return PolyRing(("u3", "u1", "u_m1", "u_m3") + U_PARAM_NAMES, GREVLEX)


def universal_cubic_rows(model: ChartModel, w_polys, point=None):
    """The three quadrics P . (w_6 ... w_-6)^T of the universal curve over
    the top chart, in Q[u; a] (or Q[u] at a rational point)."""
    if model.param is None:
        raise ValueError("universal cubic needs the parameterized top chart")
    ring = universal_cubic_ring()
    uring = PolyRing(("u3", "u1", "u_m1", "u_m3"), GREVLEX)
    target = uring if point is not None else ring
    mat = model.template_matrix()
    out = []
    for r in range(3):
        q = target.zero()
        for c in range(7):
            coeff = mat[r][c]
            if coeff.is_zero():
                continue
            if point is not None:
                val = coeff.substitute({v: model.ring.const(point[v])
                                        for v in model.ring.names}).constant()
                if val == 0:
                    continue
                q = q + w_polys[c].map_ring(target) * val
            else:
                q = q + w_polys[c].map_ring(target) * coeff.map_ring(target)
        out.append(q)
    return target, out


def minor_matrix_ideal(matrix_rows, ring) -> Ideal:
    """Ideal of the 2x2 minors of a 3x2 matrix."""
    gens = []
    for i in range(3):
        for j in range(i + 1, 3):
            gens.append(matrix_rows[i][0] * matrix_rows[j][1]
                        - matrix_rows[i][1] * matrix_rows[j][0])
    return Ideal(ring, gens)


# ---------------------------------------------------------------------------
# curve records
# ---------------------------------------------------------------------------

@dataclass
class CurveRecord:
    """A torus-fixed curve: per-chart generators (short lists of ambient
    chart polynomials), optional parametric form, expected invariants, and
    the deformation plan consumed by the gluing stage."""

    label: str
    kind: str                        # h3 | h4 | aux
    chart_gens: dict = field(default_factory=dict)   # label -> list of ambient polys (strings)
    parametric: ParametricCurve | None = None
    expected_degree: int | None = None
    base_charts: tuple = ()
    ext_charts: tuple = ()
    paper_weights: tuple | None = None
    expected_weights: tuple | None = None
    mirror_of: str | None = None

    def gens_on(self, models: dict, label: str):
        """Curve generators as elements of the chart's working ring."""
        model = models[label]
        chart = model.chart
        out = []
        for s in self.chart_gens[label]:
            out.append(model.express(chart.ring.parse(s)))
        return out

    def ideal_on(self, models: dict, label: str) -> Ideal:
        model = models[label]
        gens = list(self.gens_on(models, label)) + list(model.relations.gens)
        return Ideal(model.ring, gens)


def mirror_record(rec: CurveRecord, suffix: str = "_mirror") -> CurveRecord:
    """The image of a record under w_i <-> w_{-i}: chart labels swap with
    their mirrors and generators are renamed."""
    new_gens = {}
    for label, gens in rec.chart_gens.items():
        chart = Chart.build(label)
        mlabel = {"p12": "p-12", "p-12": "p12", "p10": "p-10", "p-10": "p10"}[label]
        mchart = Chart.build(mlabel)
        vmap = chart.mirror_map()
        new_gens[mlabel] = [str(chart.ring.parse(s).map_ring(mchart.ring, vmap))
                            for s in gens]
    mirror_label = {"p12": "p-12", "p-12": "p12", "p10": "p-10", "p-10": "p10"}
    return CurveRecord(
        label=rec.label + suffix,
        kind=rec.kind,
        chart_gens=new_gens,
        parametric=None,
        expected_degree=rec.expected_degree,
        base_charts=tuple(mirror_label[c] for c in rec.base_charts),
        ext_charts=tuple(mirror_label[c] for c in rec.ext_charts),
        paper_weights=tuple(-w for w in rec.paper_weights) if rec.paper_weights else None,
        expected_weights=tuple(sorted((-w for w in rec.expected_weights), reverse=True))
        if rec.expected_weights else None,
        mirror_of=rec.label,
    )
