"""Deformation modules of torus-fixed curves and their global gluing.

For a curve C with ideal I on one chart, Hom(I, O_C) is computed from a
presentation: generators g, a generating set of syzygies sigma (relative to
the chart relations), and the kernel condition sigma . phi in I.  The global
tangent space at a fixed point of the Hilbert scheme is assembled weight by
weight: a finite basis of each weight piece of the chart Hom module is cut
down by the linear conditions that its transport across every chart
transition extends polynomially (membership in the saturation-plus-
denominator-power test ideal), and, where a curve needs two base charts, that
the transports into the shared overlap agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .charts import ChartModel, Transition, build_transition, push_rational
from .groebner import (GroebnerBasis, Ideal, buchberger, module_kernel,
                       saturate, syzygies, weight_standard_monomials)
from .poly import INHOMOGENEOUS, MultiPoly, weight_of

WEIGHT_SCAN = range(-12, 13)
DENOMINATOR_CAP = 8


@dataclass
class HomElement:
    """A column over the ordered curve generators on one chart."""

    chart_label: str
    column: list
    weight: int | None = None


@dataclass
class TangentReport:
    label: str
    dimension: int
    weights: tuple
    per_chart: dict = field(default_factory=dict)
    boundary_hits: tuple = ()

    def negative_count(self) -> int:
        return sum(1 for w in self.weights if w < 0)


class CurveChartData:
    """Cached presentation of one curve on one chart: generators, their
    weights, the full ideal (curve + chart relations), its Groebner basis,
    and a generating set of syzygies."""

    def __init__(self, model: ChartModel, gens: Sequence[MultiPoly]):
        self.model = model
        self.gens = list(gens)
        self.full = Ideal(model.ring, list(gens) + list(model.relations.gens))
        self.gb = self.full.groebner()
        self.gen_weights = []
        for g in gens:
            w = weight_of(g, model.weights)
            if w is INHOMOGENEOUS:
                raise ValueError(f"curve generator {g} is not weight-homogeneous")
            self.gen_weights.append(w)
        self._syz = None

    @property
    def syz(self):
        if self._syz is None:
            self._syz = syzygies(self.gens, order=self.model.ring.order,
                                 relations=self.model.relations.gens)
        return self._syz


def hom_module(data: CurveChartData):
    """Generators of Hom(I_C, O_C) on one chart, as lifted columns: the
    kernel of the syzygy matrix over the quotient by the full curve ideal."""
    rows = data.syz
    cols = module_kernel(rows, len(data.gens), modulo=data.full)
    return [HomElement(data.model.chart.label, c) for c in cols]


def verify_hom(data: CurveChartData, column: Sequence[MultiPoly]) -> bool:
    """Every syzygy of the generators contracts into the curve ideal."""
    if len(column) != len(data.gens):
        raise ValueError("column length does not match the generators")
    for sigma in data.syz:
        s = data.model.ring.zero()
        for a, b in zip(sigma, column):
            s = s + a * b
        if not data.gb.contains(s):
            return False
    return True


def hom_weight(data: CurveChartData, column: Sequence[MultiPoly]) -> int:
    """wt(generator) - wt(image entry), constant across nonzero entries."""
    weight = None
    for g_w, entry in zip(data.gen_weights, column):
        if entry.is_zero():
            continue
        w = weight_of(entry, data.model.weights)
        if w is INHOMOGENEOUS:
            raise ValueError(f"entry {entry} is not weight-homogeneous")
        this = g_w - w
        if weight is None:
            weight = this
        elif weight != this:
            raise ValueError("column is not weight-homogeneous")
    if weight is None:
        raise ValueError("zero column has no weight")
    return weight


def hom_weight_basis(data: CurveChartData, lam: int):
    """Exact basis of the weight-lam piece of Hom(I_C, O_C) on the chart:
    entries run over standard monomials of O_C in the right weight, cut by
    the syzygy conditions."""
    slots = []
    for w in data.gen_weights:
        monos = weight_standard_monomials(data.gb, data.model.weights, w - lam)
        slots.append(monos)
    unknowns = [(j, m) for j, monos in enumerate(slots) for m in monos]
    if not unknowns:
        return []
    ring = data.model.ring
    rows_index: dict = {}
    rows: list = []

    def add_condition(linear):
        # linear: list of (unknown_index, poly) contributions; the normal
        # form of the sum must vanish identically
        cols = {}
        support = set()
        for ui, poly in linear:
            nf = data.gb.normal_form(poly)
            cols[ui] = nf
            support.update(nf.terms)
        for mono in support:
            key = len(rows)
            row = [Fraction(0)] * len(unknowns)
            for ui, nf in cols.items():
                row[ui] = nf.terms.get(mono, Fraction(0))
            rows.append(row)

    for sigma in data.syz:
        linear = []
        for ui, (j, m) in enumerate(unknowns):
            if sigma[j].is_zero():
                continue
            linear.append((ui, sigma[j] * ring.monomial(m)))
        if linear:
            add_condition(linear)
    null = linalg.nullspace(rows, len(unknowns)) if rows else \
        [[Fraction(1) if i == k else Fraction(0) for i in range(len(unknowns))]
         for k in range(len(unknowns))]
    basis = []
    for v in null:
        col = [ring.zero() for _ in data.gens]
        for ui, c in enumerate(v):
            if c:
                j, m = unknowns[ui]
                col[j] = col[j] + ring.monomial(m, c)
        basis.append(col)
    return basis


class ChartLink:
    """Everything needed to transport hom columns from a base chart into a
    target chart and test polynomial extension there."""

    def __init__(self, base: CurveChartData, target: CurveChartData):
        self.base = base
        self.target = target
        # target coordinates as functions on the base, and back
        self.to_base = build_transition(base.model, target.model)
        self.to_target = build_transition(target.model, base.model)
        self.den_base = self.to_base.den          # over base ring
        self.den_target = self.to_target.den      # over target ring
        # the denominator must survive on the curve in the target chart
        if target.gb.contains(self.den_target):
            raise ValueError(
                f"transition denominator vanishes identically on the curve in "
                f"{target.model.chart.label}")
        self.sat = saturate(target.full, self.den_target)
        self.sat_gb = self.sat.groebner()
        self._cof_gb = None
        self._cmatrix = None
        self._test_gbs: dict = {}

    @property
    def cmatrix(self):
        """C with target_gen_j = sum_k C_jk base_gen_k over the overlap;
        entries are (numerator over base ring, power of den_base)."""
        if self._cmatrix is not None:
            return self._cmatrix
        base = self.base
        if self._cof_gb is None:
            self._cof_gb = buchberger(
                list(base.gens) + list(base.model.relations.gens),
                order=base.model.ring.order, certificates=True)
        out = []
        for g in self.target.gens:
            num, k = push_rational(g, self.to_base)
            cof = None
            extra = 0
            f = num
            for extra in range(DENOMINATOR_CAP):
                cof = self._cof_gb.cofactors_on_gens(f)
                if cof is not None:
                    break
                f = f * self.den_base
            if cof is None:
                raise ValueError("target generator does not pull into the "
                                 "base curve ideal")
            out.append([(c, k + extra) for c in cof[:len(base.gens)]])
        self._cmatrix = out
        return out

    def transport(self, column: Sequence[MultiPoly]):
        """Column values on the target side: list of (numerator over target
        ring, power of den_target)."""
        out = []
        for row in self.cmatrix:
            p_max = max(k for _, k in row)
            val = self.base.model.ring.zero()
            for (num, k), entry in zip(row, column):
                if num.is_zero() or entry.is_zero():
                    continue
                val = val + num * entry * self.den_base ** (p_max - k)
            if val.is_zero():
                out.append((self.target.model.ring.zero(), 0))
                continue
            n, p = push_rational(val, self.to_target)
            # 1/den_base pushes to den_target exactly on the overlap
            out.append((n * self.den_target ** p_max, p))
        return out

    def test_gb(self, power: int) -> GroebnerBasis:
        """Groebner basis of saturation + <den^power>: membership there is
        exactly polynomial extendability across this link."""
        if power not in self._test_gbs:
            gens = list(self.sat.gens) + [self.den_target ** power]
            self._test_gbs[power] = Ideal(self.target.model.ring, gens).groebner()
        return self._test_gbs[power]


@dataclass
class GluePlan:
    """How to assemble the global tangent space at one fixed curve."""

    record_label: str
    bases: list                    # list of CurveChartData
    exts: list                     # list of (base_index, CurveChartData)
    match: tuple | None = None     # (i, j) base indices glued over an overlap


def glue_tangent(plan: GluePlan, expected_dimension: int | None = None) -> TangentReport:
    """Global tangent weight multiset: per weight, the joint nullspace of the
    extension and matching conditions on the chart-level weight pieces."""
    links = [ChartLink(plan.bases[i], tgt) for i, tgt in plan.exts]
    link_base = [i for i, _ in plan.exts]
    cross = None
    if plan.match is not None:
        i, j = plan.match
        cross = ChartLink(plan.bases[i], plan.bases[j])
    weights = []
    per_chart: dict = {}
    boundary = []
    for lam in WEIGHT_SCAN:
        bases_pieces = [hom_weight_basis(b, lam) for b in plan.bases]
        if all(not p for p in bases_pieces):
            continue
        offsets = []
        total = 0
        for p in bases_pieces:
            offsets.append(total)
            total += len(p)
        rows = []

        def add_rows(entries, gb, ncols=total):
            support = set()
            nfs = {}
            for ui, poly in entries:
                nf = gb.normal_form(poly)
                nfs[ui] = nf
                support.update(nf.terms)
            for mono in support:
                row = [Fraction(0)] * ncols
                for ui, nf in nfs.items():
                    row[ui] = nf.terms.get(mono, Fraction(0))
                rows.append(row)

        # extension conditions per link
        for (bi, _), link in zip(plan.exts, links):
            piece = bases_pieces[bi]
            if not piece:
                continue
            transported = [link.transport(col) for col in piece]
            for j in range(len(link.target.gens)):
                p_j = max((t[j][1] for t in transported), default=0)
                gb = link.test_gb(p_j)
                entries = []
                for a, t in enumerate(transported):
                    n, p = t[j]
                    if n.is_zero():
                        continue
                    entries.append((offsets[bi] + a,
                                    n * link.den_target ** (p_j - p)))
                if entries:
                    add_rows(entries, gb)
        # matching condition between the two bases
        if cross is not None:
            i, j = plan.match
            piece_i = bases_pieces[i]
            piece_j = bases_pieces[j]
            transported = [cross.transport(col) for col in piece_i]
            for slot in range(len(cross.target.gens)):
                p_slot = max((t[slot][1] for t in transported), default=0)
                gb = _matching_gb(cross, p_slot)
                entries = []
                for a, t in enumerate(transported):
                    n, p = t[slot]
                    if not n.is_zero():
                        entries.append((offsets[i] + a,
                                        n * cross.den_target ** (p_slot - p)))
                for b, col in enumerate(piece_j):
                    e = col[slot]
                    if not e.is_zero():
                        entries.append((offsets[j] + b,
                                        -e * cross.den_target ** p_slot))
                if entries:
                    add_rows(entries, gb)
        null = linalg.nullspace(rows, total) if rows else \
            [[Fraction(1) if a == b else Fraction(0) for a in range(total)]
             for b in range(total)]
        dim = len(null)
        if dim:
            weights.extend([lam] * dim)
            per_chart[lam] = {plan.bases[b].model.chart.label: len(p)
                              for b, p in enumerate(bases_pieces)}
            if abs(lam) == WEIGHT_SCAN.stop - 1:
                boundary.append(lam)
    report = TangentReport(plan.record_label, len(weights),
                           tuple(sorted(weights, reverse=True)), per_chart,
                           tuple(boundary))
    if expected_dimension is not None and report.dimension != expected_dimension:
        raise ValueError(f"{plan.record_label}: computed dimension "
                         f"{report.dimension} != expected {expected_dimension}")
    return report


def _matching_gb(cross: ChartLink, power: int) -> GroebnerBasis:
    # matching mod the saturated ideal only: both sides carry honest values,
    # no polynomial-existence quantifier, so no denominator-power generator
    return cross.sat_gb if power == 0 else cross.sat_gb


def column_in_global_space(plan: GluePlan, base_index: int,
                           column: Sequence[MultiPoly]) -> bool:
    """Does a chart-level column extend to a global section (checked through
    every link of the plan)?"""
    data = plan.bases[base_index]
    if not verify_hom(data, column):
        return False
    for bi, tgt in plan.exts:
        if bi != base_index:
            continue
        link = ChartLink(data, tgt)
        for j, (n, p) in enumerate(link.transport(column)):
            if n.is_zero():
                continue
            if not link.test_gb(p).contains(n):
                return False
    return True
