"""Affine charts of the threefold inside Gr(3, 7).

Each torus-fixed decomposable 3-plane p gives a row-echelon template: the
3x7 matrix with the identity in the pinned columns and one named coordinate
in each free position, numbered row-major over the free columns.  The chart
of the threefold is the tri-isotropy locus P eta P^T = 0: nine equations in
the twelve coordinates.

The chart around the top fixed point is a polynomial graph over its three
tangent coordinates; the middle charts are not (their dependent coordinates
are honest rational functions), so they are modelled by the ambient
coordinate ring modulo the nine equations instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import GroebnerBasis, Ideal, saturate
from .poly import (GREVLEX, BlockOrder, Grevlex, Lex, MultiPoly, PolyRing,
                   WeightAssignment)
from .skewnet import SkewNet
from .tower import W_WEIGHTS

CHART_COLUMNS = 7

# label -> (pinned columns, coordinate prefix, mirror label)
CHART_SPECS = {
    "p12": ((0, 1, 2), "a", "p-12"),
    "p10": ((0, 1, 3), "b", "p-10"),
    "p-10": ((3, 5, 6), "c", "p10"),
    "p-12": ((4, 5, 6), "d", "p12"),
}

# free coordinates over which the graph charts parameterize
GRAPH_FREE = {"p12": ("a9", "a10", "a11"), "p-12": ("d4", "d3", "d2")}


@dataclass
class Chart:
    label: str
    pins: tuple
    prefix: str
    ring: PolyRing
    weights: WeightAssignment
    positions: dict        # variable name -> (row, col)

    @classmethod
    def build(cls, label: str) -> "Chart":
        pins, prefix, _ = CHART_SPECS[label]
        free_cols = [c for c in range(CHART_COLUMNS) if c not in pins]
        names = [f"{prefix}{i}" for i in range(1, 13)]
        ring = PolyRing(tuple(names), GREVLEX)
        positions = {}
        k = 1
        for r in range(3):
            for c in free_cols:
                positions[f"{prefix}{k}"] = (r, c)
                k += 1
        wts = {v: W_WEIGHTS[pins[r]] - W_WEIGHTS[c]
               for v, (r, c) in positions.items()}
        return cls(label, tuple(pins), prefix, ring,
                   WeightAssignment(ring, wts), positions)

    def template(self, ring: PolyRing | None = None, images: dict | None = None):
        """The 3x7 echelon matrix; entries in `ring` (default ambient), with
        coordinates substituted through `images` when given."""
        ring = ring or self.ring
        mat = [[ring.zero() for _ in range(CHART_COLUMNS)] for _ in range(3)]
        for r, c in enumerate(self.pins):
            mat[r][c] = ring.one()
        for v, (r, c) in self.positions.items():
            mat[r][c] = images[v] if images is not None else ring.var(v)
        return mat

    def mirror_map(self) -> dict:
        """Variable renaming onto the mirror chart under w_i <-> w_{-i}."""
        mirror = CHART_SPECS[self.label][2]
        mprefix = CHART_SPECS[mirror][1]
        return {f"{self.prefix}{i}": f"{mprefix}{13 - i}" for i in range(1, 13)}

    def __repr__(self):
        return f"Chart({self.label})"


def chart_equations(chart: Chart, net: SkewNet) -> Ideal:
    """The nine tri-isotropy polynomials of P eta_k P^T = 0, ordered by row
    pair (1,2), (1,3), (2,3) and pencil variable y2, y0, y_m2."""
    P = chart.template()
    gens = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        for yvar in ("y2", "y0", "y_m2"):
            mat = net.mats[yvar]
            s = chart.ring.zero()
            for a in range(CHART_COLUMNS):
                if P[i][a].is_zero():
                    continue
                for b in range(CHART_COLUMNS):
                    c = mat[a][b]
                    if c and not P[j][b].is_zero():
                        s = s + P[i][a] * P[j][b] * c
            gens.append(s)
    return Ideal(chart.ring, [g for g in gens if not g.is_zero()])


@dataclass
class ChartParam:
    """Polynomial parameterization of a graph chart: every coordinate as a
    polynomial in the three free ones."""

    chart: Chart
    free_ring: PolyRing
    images: dict           # chart variable -> MultiPoly over free_ring
    weights: WeightAssignment

    def substitute(self, f: MultiPoly) -> MultiPoly:
        if f.ring != self.chart.ring:
            raise ValueError("expected a polynomial in the ambient chart ring")
        return f.substitute(self.images)


def chart_parameterize(chart: Chart, equations: Ideal,
                       free: Sequence[str]) -> ChartParam:
    """Solve the nine equations for the dependent coordinates as polynomials
    in the free ones; error if the system is not triangularly solvable over
    the chosen free set (the middle charts are genuinely not polynomial
    graphs: their dependent coordinates are rational, not polynomial)."""
    free = tuple(free)
    free_ring = PolyRing(free, GREVLEX)
    amb = chart.ring
    deps = [v for v in amb.names if v not in free]
    solved: dict = {}   # dep -> ambient polynomial in the free variables only

    def full_map():
        m = {v: amb.var(v) for v in amb.names}
        m.update(solved)
        return m

    for _ in range(40):
        unsolved = [v for v in deps if v not in solved]
        if not unsolved:
            break
        m = full_map()
        cur = [g.substitute(m) for g in equations.gens]
        cur = [g for g in cur if not g.is_zero()]
        for g in cur:
            if not (_vars_of(g) & set(unsolved)):
                raise ValueError(f"chart {chart.label}: nonzero residual {g}")
        # single-variable linear solves first
        progress = False
        for g in cur:
            parts = _linear_split(g, unsolved, amb)
            if parts is None:
                continue
            coeffs, rest = parts
            present = sorted(v for v, c in coeffs.items() if c != 0)
            if len(present) == 1 and not (_vars_of(rest) & set(unsolved)):
                v = present[0]
                solved[v] = rest * (Fraction(-1) / coeffs[v])
                progress = True
                break
        if progress:
            continue
        # joint linear blocks with constant rational coefficients, split
        # into connected components by shared unknowns
        block = []
        for g in cur:
            parts = _linear_split(g, unsolved, amb)
            if parts is None:
                continue
            coeffs, rest = parts
            if not (_vars_of(rest) & set(unsolved)):
                block.append((coeffs, rest))
        for comp in _connected_components(block):
            comp_vars = sorted({v for cs, _ in comp for v, c in cs.items() if c != 0})
            rows = [[cs.get(v, Fraction(0)) for v in comp_vars] for cs, _ in comp]
            sol = _solve_poly_rhs(rows, [-r for _, r in comp], amb)
            if sol is not None:
                solved.update(zip(comp_vars, sol))
                progress = True
        if progress:
            continue
        raise ValueError(
            f"chart {chart.label} is not triangularly solvable over {free}")
    # verification: every equation dies under the substitution
    m = full_map()
    for g in equations.gens:
        if not g.substitute(m).is_zero():
            raise ValueError(f"chart {chart.label}: parameterization does not "
                             f"kill {g}")
    # move into the 3-variable ring; raises if any image involves a dependent
    images = {v: m[v].map_ring(free_ring) for v in amb.names}
    wts = WeightAssignment(free_ring, {v: chart.weights[v] for v in free})
    return ChartParam(chart, free_ring, images, wts)


def _vars_of(f: MultiPoly):
    out = set()
    for m in f.terms:
        for i, e in enumerate(m):
            if e:
                out.add(f.ring.names[i])
    return out


def _connected_components(block):
    """Group linear equations into components sharing unknowns."""
    groups = []
    for coeffs, rest in block:
        vs = {v for v, c in coeffs.items() if c != 0}
        hit = [g for g in groups if g[0] & vs]
        for g in hit:
            groups.remove(g)
        merged_vars = vs.union(*(g[0] for g in hit)) if hit else vs
        merged_eqs = [(coeffs, rest)]
        for g in hit:
            merged_eqs.extend(g[1])
        groups.append((merged_vars, merged_eqs))
    return [eqs for _, eqs in groups]


def _linear_split(g: MultiPoly, unknowns, ring):
    """Write g = sum c_v * v + rest with rational c_v over the unknowns and
    rest free of them; None if g is nonlinear in the unknowns."""
    idx = {ring.index[v]: v for v in unknowns}
    coeffs = {}
    rest = {}
    for m, c in g.terms.items():
        hits = [(i, e) for i, e in enumerate(m) if e and i in idx]
        if not hits:
            rest[m] = c
        elif len(hits) == 1 and hits[0][1] == 1 and sum(e for i, e in enumerate(m)
                                                        if i not in idx) == 0:
            coeffs[idx[hits[0][0]]] = coeffs.get(idx[hits[0][0]], 0) + c
        else:
            return None
    return coeffs, MultiPoly(ring, rest)


def _solve_poly_rhs(rows, rhs, ring):
    """Gaussian elimination with rational matrix and polynomial right side."""
    rows = [list(map(Fraction, r)) for r in rows]
    rhs = list(rhs)
    n = len(rows[0])
    piv = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if k is None:
            return None  # underdetermined block
        rows[r], rows[k] = rows[k], rows[r]
        rhs[r], rhs[k] = rhs[k], rhs[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        rhs[r] = rhs[r] * inv
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                rhs[i] = rhs[i] - rhs[r] * f
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if not rhs[i].is_zero():
            return None
    if len(piv) != n:
        return None
    return [rhs[piv.index(c)] for c in range(n)]


# ---------------------------------------------------------------------------
# chart models and transitions
# ---------------------------------------------------------------------------

@dataclass
class ChartModel:
    """Working presentation of one chart for module computations: either the
    polynomial graph (3-variable ring, no relations) or the ambient ring
    modulo the nine isotropy equations."""

    chart: Chart
    relations: Ideal               # in `ring`; zero ideal for graph charts
    param: ChartParam | None

    @property
    def ring(self) -> PolyRing:
        return self.param.free_ring if self.param else self.chart.ring

    @property
    def weights(self) -> WeightAssignment:
        return self.param.weights if self.param else self.chart.weights

    def coord(self, name: str) -> MultiPoly:
        """A chart coordinate function as an element of the working ring."""
        if self.param:
            return self.param.images[name]
        return self.ring.var(name)

    def express(self, f: MultiPoly) -> MultiPoly:
        """An ambient-chart polynomial as an element of the working ring."""
        if self.param:
            return self.param.substitute(f)
        return f

    def template_matrix(self):
        ring = self.ring
        if self.param:
            return self.chart.template(ring, self.param.images)
        return self.chart.template()

    def __repr__(self):
        kind = "graph" if self.param else "ambient"
        return f"ChartModel({self.chart.label}, {kind})"


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _adj3(m):
    def c(i, j):
        r = [k for k in range(3) if k != i]
        s = [k for k in range(3) if k != j]
        minor = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]]
        return minor if (i + j) % 2 == 0 else -minor
    return [[c(j, i) for j in range(3)] for i in range(3)]


@dataclass
class Transition:
    """Coordinates of the target chart as rational functions num/den on the
    source chart, obtained by exact row reduction of the source template."""

    src: ChartModel
    tgt: ChartModel
    den: MultiPoly                 # over src.ring
    coord_num: dict                # tgt chart variable -> numerator over src.ring

    def value(self, name: str):
        """(numerator, power) with coordinate = numerator / den^power."""
        return self.coord_num[name], 1


def build_transition(src: ChartModel, tgt: ChartModel) -> Transition:
    M = src.template_matrix()
    B = [[M[r][c] for c in tgt.chart.pins] for r in range(3)]
    den = _det3(B)
    if den.is_zero():
        raise ValueError(f"transition {src.chart.label} -> {tgt.chart.label}: "
                         "pinned block is singular")
    adj = _adj3(B)
    N = [[sum((adj[r][k] * M[k][c] for k in range(3)), src.ring.zero())
          for c in range(CHART_COLUMNS)] for r in range(3)]
    # pinned columns of adj(B) * M must reproduce den * identity
    for r in range(3):
        for k, c in enumerate(tgt.chart.pins):
            expect = den if k == r else src.ring.zero()
            if N[r][c] != expect:
                raise RuntimeError("row reduction failed")
    nums = {v: N[r][c] for v, (r, c) in tgt.chart.positions.items()}
    return Transition(src, tgt, den, nums)


def push_rational(f: MultiPoly, reverse: Transition):
    """Rewrite a source-ring element on the target chart via the reverse
    transition: returns (numerator over tgt-of-reverse ring, power k) meaning
    numerator / reverse.den^k."""
    ring = reverse.src.ring     # the chart we are pushing into
    total = f.total_degree()
    if total <= 0:
        total = 0
    num = ring.zero()
    den = reverse.den
    src_ring = f.ring
    den_pows = [ring.one()]
    for _ in range(total):
        den_pows.append(den_pows[-1] * den)
    for m, c in f.terms.items():
        term = ring.const(c)
        deg = 0
        for i, e in enumerate(m):
            if e == 0:
                continue
            name = src_ring.names[i]
            term = term * reverse.coord_num[name] ** e
            deg += e
        num = num + term * den_pows[total - deg]
    return num, total


def saturated_curve_gb(ideal: Ideal, den: MultiPoly) -> GroebnerBasis:
    """Groebner basis of the den-saturation of a curve ideal: the test ideal
    for polynomial extension across a chart overlap."""
    return saturate(ideal, den).groebner()


def build_models(net: SkewNet) -> dict:
    """All four chart models: polynomial graphs around the extreme fixed
    points, ambient quotients (ring mod the nine equations) around the middle
    ones."""
    models = {}
    for label in CHART_SPECS:
        chart = Chart.build(label)
        eqs = chart_equations(chart, net)
        if label in GRAPH_FREE:
            param = chart_parameterize(chart, eqs, GRAPH_FREE[label])
            models[label] = ChartModel(chart, Ideal(param.free_ring, []), param)
        else:
            models[label] = ChartModel(chart, eqs, None)
    return models
