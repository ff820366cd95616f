"""The catalog of torus-fixed curves: chart ideals, parametric forms,
deformation plans, and the cross-checks tying them together.

Fixed points of the degree-3 Hilbert scheme: the triple line and the
line-plus-conic, with their mirrors.  Fixed points of the degree-4 one: the
thickened line of multiplicity four, the double-line-plus-conic, the
irreducible quartic, and the two-lines-plus-conic, with mirrors — six in
all, counted with the mirror pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .charts import ChartModel, build_transition, push_rational
from .curves import CurveRecord, ParametricCurve, implicitize_into_chart, mirror_record
from .deformation import CurveChartData, GluePlan
from .groebner import Ideal, intersect, saturate
from .poly import INHOMOGENEOUS, MultiPoly, weight_of


def _fixture(name: str):
    ref = resources.files("mucurves.fixtures") / name
    return ref.read_text()


def load_curve_fixtures():
    return json.loads(_fixture("curves.json"))


MIRROR = {"p12": "p-12", "p-12": "p12", "p10": "p-10", "p-10": "p10"}

CONIC_P10_GENS = ("b1", "b2", "b3 + 9*b8", "b4", "b5", "b6", "b7",
                  "b9", "b10", "b11", "b12")
LINE_P10_GENS = tuple(f"b{i}" for i in range(1, 13) if i != 9)
LINE_P12_GENS = ("a10", "a11")


def _mirror_strings(gens, src_label):
    from .charts import Chart
    src = Chart.build(src_label)
    dst = Chart.build(MIRROR[src_label])
    vmap = src.mirror_map()
    return tuple(str(src.ring.parse(s).map_ring(dst.ring, vmap)) for s in gens)


def transport_ideal(gens, src: ChartModel, dst: ChartModel) -> Ideal:
    """Closure in the target chart of a subvariety given on the source chart:
    push the generators, clear denominators, add the target relations, and
    saturate by the transition denominator."""
    tr = build_transition(dst, src)   # source coordinates as functions on dst
    nums = []
    for g in gens:
        n, _ = push_rational(g, tr)
        if not n.is_zero():
            nums.append(n)
    I = Ideal(dst.ring, nums + list(dst.relations.gens))
    return saturate(I, tr.den)


@dataclass
class Catalog:
    records: dict
    h3_labels: tuple
    h4_labels: tuple
    aux: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)


def build_catalog(models: dict) -> Catalog:
    data = load_curve_fixtures()
    chart_ideals = data["chart_ideals"]
    records = {}

    records["triple_line"] = CurveRecord(
        label="triple_line", kind="h3",
        chart_gens={"p12": chart_ideals["triple_line"]["p12"],
                    "p10": chart_ideals["triple_line"]["p10"]},
        base_charts=("p12",), ext_charts=("p10",),
        paper_weights=(6, 4, 2), expected_weights=(6, 4, 2))

    records["line_conic"] = CurveRecord(
        label="line_conic", kind="h3",
        chart_gens={"p10": chart_ideals["line_conic"]["p10"],
                    "p12": list(LINE_P12_GENS),
                    "p-10": list(_mirror_strings(CONIC_P10_GENS, "p10"))},
        base_charts=("p10",), ext_charts=("p12", "p-10"),
        paper_weights=(4, 2, -2), expected_weights=(4, 2, -2))

    records["quadruple_line"] = CurveRecord(
        label="quadruple_line", kind="h4",
        chart_gens={"p12": chart_ideals["quadruple_line"]["p12"],
                    "p10": chart_ideals["quadruple_line"]["p10"]},
        base_charts=("p12",), ext_charts=("p10",),
        paper_weights=(6, 4, 4, 2), expected_weights=(6, 4, 4, 2))

    # the double line on the top chart, transported from the printed ambient
    # presentation on the middle chart
    dl_printed = [s for s in data["ambient_ideals"]["double_line_p10"]]
    p10 = models["p10"]
    p12 = models["p12"]
    dl_gens_p10 = [p10.ring.parse(s) for s in dl_printed]
    dl_on_p12 = transport_ideal(dl_gens_p10, p10, p12)
    records["double_line_conic"] = CurveRecord(
        label="double_line_conic", kind="h4",
        chart_gens={"p10": chart_ideals["double_line_conic"]["p10"],
                    "p12": [str(g) for g in dl_on_p12.gens],
                    "p-10": list(_mirror_strings(CONIC_P10_GENS, "p10"))},
        base_charts=("p10",), ext_charts=("p12", "p-10"),
        paper_weights=(6, 2, 2, -2), expected_weights=(6, 6, 2, -2))

    quartic = ParametricCurve.parse(data["parametric"]["irreducible_quartic"]["rows"])
    records["irreducible_quartic"] = CurveRecord(
        label="irreducible_quartic", kind="h4",
        chart_gens={"p12": ["a9", "a10"], "p-12": ["d4", "d3"]},
        parametric=quartic, expected_degree=4,
        base_charts=("p12",), ext_charts=("p-12",),
        paper_weights=(4, 2, -2, -4), expected_weights=(4, 2, -2, -4))

    records["two_lines_conic"] = CurveRecord(
        label="two_lines_conic", kind="h4",
        chart_gens={"p10": chart_ideals["line_conic"]["p10"],
                    "p-10": list(_mirror_strings(chart_ideals["line_conic"]["p10"], "p10")),
                    "p12": list(LINE_P12_GENS),
                    "p-12": list(_mirror_strings(LINE_P12_GENS, "p12"))},
        base_charts=("p10", "p-10"), ext_charts=("p12", "p-12"),
        paper_weights=(4, 2, -2, -4), expected_weights=(4, 2, -2, -4))

    for label in ("triple_line", "line_conic", "quadruple_line", "double_line_conic"):
        records[records[label].label + "_mirror"] = mirror_record(records[label])

    aux = {name: ParametricCurve.parse(spec["rows"])
           for name, spec in data["parametric"].items()}

    h3 = ("triple_line", "line_conic", "line_conic_mirror", "triple_line_mirror")
    h4 = ("quadruple_line", "double_line_conic", "irreducible_quartic",
          "two_lines_conic", "double_line_conic_mirror", "quadruple_line_mirror")
    return Catalog(records=records, h3_labels=h3, h4_labels=h4, aux=aux)


def glue_plan(record: CurveRecord, models: dict) -> GluePlan:
    bases = [CurveChartData(models[c], record.gens_on(models, c))
             for c in record.base_charts]
    exts = []
    for c in record.ext_charts:
        tgt = CurveChartData(models[c], record.gens_on(models, c))
        # attach to the base that can see this end of the curve: the one
        # whose transition denominator survives on the target curve
        chosen = None
        for i, b in enumerate(bases):
            tr = build_transition(tgt.model, b.model)
            if not tgt.gb.contains(tr.den):
                chosen = i
                break
        if chosen is None:
            raise ValueError(f"no base chart reaches {c} for {record.label}")
        exts.append((chosen, tgt))
    match = (0, 1) if len(bases) == 2 else None
    return GluePlan(record.label, bases, exts, match)


# ---------------------------------------------------------------------------
# catalog validations
# ---------------------------------------------------------------------------

def validate_homogeneous(record: CurveRecord, models: dict):
    """Every chart generator is torus-weight-homogeneous."""
    bad = []
    for label, gens in record.chart_gens.items():
        chart = models[label].chart
        for s in gens:
            if weight_of(chart.ring.parse(s), chart.weights) is INHOMOGENEOUS:
                bad.append((label, s))
    return bad


def validate_ambient_ideal(models: dict, label: str, short_gens, printed):
    """printed ambient ideal == chart relations + short generators."""
    model = models[label]
    ring = model.chart.ring
    lhs = Ideal(ring, [ring.parse(s) for s in printed])
    rhs = Ideal(ring, [ring.parse(s) for s in short_gens]
                + list(model.relations.gens))
    return lhs.equals(rhs)


def double_line_conic_is_intersection(models: dict) -> bool:
    """The double-line-plus-conic ideal equals the intersection of the
    printed double-line ideal with the implicitized conic ideal."""
    data = load_curve_fixtures()
    p10 = models["p10"]
    ring = p10.ring
    dl = Ideal(ring, [ring.parse(s) for s in data["ambient_ideals"]["double_line_p10"]])
    conic = Ideal(ring, [ring.parse(s) for s in CONIC_P10_GENS])
    got = intersect(dl, conic)
    want = Ideal(ring, [ring.parse(s) for s in ("b4", "b11", "b8*b9")]
                 + list(p10.relations.gens))
    return got.equals(want)


def two_lines_conic_is_intersection(models: dict) -> bool:
    """Line cap conic assembly on the middle chart reproduces the printed
    line-plus-conic ideal."""
    p10 = models["p10"]
    ring = p10.ring
    line = Ideal(ring, [ring.parse(s) for s in LINE_P10_GENS])
    conic = Ideal(ring, [ring.parse(s) for s in CONIC_P10_GENS])
    got = intersect(line, conic)
    want = Ideal(ring, [ring.parse(s) for s in ("b10", "b11", "b8*b9")]
                 + list(p10.relations.gens))
    return got.equals(want)


def cm_filtration_memberships(models: dict, catalog: Catalog):
    """I_C subset I_W subset I_D subset I_L on the top chart with strict
    inclusions, mirroring the length filtration of the thick line."""
    p12 = models["p12"]
    ring = p12.ring

    def chart_ideal(strings):
        return Ideal(p12.ring,
                     [p12.express(p12.chart.ring.parse(s)) for s in strings])

    I_C = chart_ideal(catalog.records["quadruple_line"].chart_gens["p12"])
    I_W = chart_ideal(catalog.records["triple_line"].chart_gens["p12"])
    I_D = chart_ideal(catalog.records["double_line_conic"].chart_gens["p12"])
    I_L = chart_ideal(LINE_P12_GENS)
    chain = [I_C, I_W, I_D, I_L]
    for small, big in zip(chain, chain[1:]):
        if not big.contains_ideal(small):
            return False
        if small.contains_ideal(big):
            return False  # quotient must be nontrivial
    return True
