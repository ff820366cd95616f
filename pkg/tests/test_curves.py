"""Parametric fixed curves: degrees, isotropy, implicitization, and the
universal cubic family."""

import random
from fractions import Fraction

import pytest

from mucurves.charts import build_models
from mucurves.curves import (ParametricCurve, family_isotropy,
                             implicitize_into_chart, minor_matrix_ideal,
                             plucker_degree, universal_cubic_ring,
                             universal_cubic_rows)
from mucurves.groebner import Ideal, hilbert_polynomial, saturate_irrelevant
from mucurves.poly import GREVLEX, PolyRing
from mucurves.skewnet import net_from_forms
from mucurves.tower import parse_wedge_form, standard_tower


@pytest.fixture(scope="module")
def net(fixture_json_module):
    t = standard_tower()
    return net_from_forms([parse_wedge_form(t.wedge2_U6_dual, d)
                           for d in fixture_json_module("net_forms.json")])


@pytest.fixture(scope="module")
def models(net):
    return build_models(net)


@pytest.fixture(scope="module")
def curve_data(fixture_json_module):
    return fixture_json_module("curves.json")


def _parametric(curve_data, name):
    return ParametricCurve.parse(curve_data["parametric"][name]["rows"])


def test_parametric_degrees(curve_data):
    for name, spec in curve_data["parametric"].items():
        curve = ParametricCurve.parse(spec["rows"])
        degree, tau = plucker_degree(curve)
        assert degree == spec["degree"], name
    # specific parameter weights
    assert plucker_degree(_parametric(curve_data, "irreducible_quartic"))[1] == 6
    assert plucker_degree(_parametric(curve_data, "fixed_conic"))[1] == 10


def test_family_isotropy_printed_families(curve_data, net):
    AT = PolyRing(("a", "t"), GREVLEX)
    for name in ("l1_m1", "l3_m1"):
        rows = [[AT.parse(e) for e in row]
                for row in curve_data["families"][name]["rows"]]
        ok, offender = family_isotropy(rows, net)
        assert ok, (name, offender)


def test_family_isotropy_fixed_curves(curve_data, net):
    for name in curve_data["parametric"]:
        curve = _parametric(curve_data, name)
        ok, _ = family_isotropy(curve.rows, net)
        assert ok, name


def test_family_isotropy_detects_perturbation(curve_data, net):
    curve = _parametric(curve_data, "fixed_conic")
    rows = [list(r) for r in curve.rows]
    rows[0][2] = rows[0][2] + curve.ring.parse("s")
    ok, offender = family_isotropy(rows, net)
    assert not ok and offender is not None


def test_l1m1_section_at_zero_is_line(curve_data, net):
    # plugging a = 0 into the family over the 0-jumping line gives a line
    AT = PolyRing(("a", "t"), GREVLEX)
    ST = PolyRing(("s", "t"), GREVLEX)
    rows = []
    for row in curve_data["families"]["l1_m1"]["rows"]:
        rows.append([AT.parse(e).substitute({"a": ST.zero(), "t": ST.var("t")})
                     for e in row])
    curve = ParametricCurve(rows, ST)
    degree, tau = plucker_degree(curve)
    assert degree == 1


def test_sextic_section_degree(curve_data):
    assert plucker_degree(_parametric(curve_data, "sextic_section"))[0] == 6


def test_implicitize_quartic_into_top_chart(curve_data, models):
    curve = _parametric(curve_data, "irreducible_quartic")
    I = implicitize_into_chart(curve, models["p12"])
    R = models["p12"].ring
    assert I.equals(Ideal(R, [R.var("a9"), R.var("a10")]))


def test_implicitize_conic_into_middle_chart(curve_data, models):
    curve = _parametric(curve_data, "fixed_conic")
    I = implicitize_into_chart(curve, models["p10"], affine="t")
    R = models["p10"].ring
    expected = [R.parse(s) for s in
                ("b1", "b2", "b3 + 9*b8", "b4", "b5", "b6", "b7",
                 "b9", "b10", "b11", "b12")]
    assert I.equals(Ideal(R, expected))


def test_implicitize_line_into_charts(curve_data, models):
    curve = _parametric(curve_data, "fixed_line_plus")
    I12 = implicitize_into_chart(curve, models["p12"], affine="t")
    R = models["p12"].ring
    assert I12.equals(Ideal(R, [R.var("a10"), R.var("a11")]))
    I10 = implicitize_into_chart(curve, models["p10"], affine="s")
    R10 = models["p10"].ring
    expected = [R10.var(f"b{i}") for i in range(1, 13) if i != 9]
    assert I10.equals(Ideal(R10, expected))


def test_universal_cubic_at_origin(models):
    t = standard_tower()
    ring, rows = universal_cubic_rows(
        models["p12"], t.w_polys, point={"a9": 0, "a10": 0, "a11": 0})
    expect = [ring.parse(s) for s in
              ("u3^2", "u3*u1", "3*u1^2 + 2*u3*u_m1")]
    assert rows == expect


def test_universal_cubic_hilbert_polynomial_random_points(models):
    t = standard_tower()
    rng = random.Random(5)
    m_ring = PolyRing(("m",))
    m = m_ring.var("m")
    for _ in range(5):
        point = {v: Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                 for v in ("a9", "a10", "a11")}
        ring, rows = universal_cubic_rows(models["p12"], t.w_polys, point=point)
        I = saturate_irrelevant(Ideal(ring, rows))
        assert hilbert_polynomial(I) == 3 * m + 1


def test_printed_minor_matrix_matches_universal_curve(models, fixture_json):
    # the printed 3x2 matrix: its minors and the row quadrics cut the same
    # curve; here: rows lie in the minor ideal symbolically
    t = standard_tower()
    ring, rows = universal_cubic_rows(models["p12"], t.w_polys)
    printed = fixture_json("universal_cubic_matrix.json")
    big = PolyRing(("u3", "u1", "u_m1", "u_m3", "a9", "a10", "a11", "a12"), GREVLEX)
    mat = [[big.parse(e) for e in row] for row in printed]
    # substitute the dependent a12 by its image
    a12 = models["p12"].coord("a12").map_ring(big)
    sub = {v: big.var(v) for v in ("u3", "u1", "u_m1", "u_m3", "a9", "a10", "a11")}
    sub["a12"] = a12
    mat = [[e.substitute(sub) for e in row] for row in mat]
    minors = minor_matrix_ideal(mat, big)
    gb = minors.groebner()
    for q in rows:
        assert gb.normal_form(q.map_ring(big)).is_zero()


def test_minor_ideal_saturation_equals_universal_cubic(models, fixture_json):
    # symbolic check: saturating the row ideal by the irrelevant ideal of the
    # u-variables gives exactly the 2x2-minor ideal of the printed matrix
    t = standard_tower()
    ring, rows = universal_cubic_rows(models["p12"], t.w_polys)
    printed = fixture_json("universal_cubic_matrix.json")
    big = ring
    pr = PolyRing(("u3", "u1", "u_m1", "u_m3", "a9", "a10", "a11", "a12"), GREVLEX)
    a12 = models["p12"].coord("a12").map_ring(pr)
    sub = {v: pr.var(v) for v in ("u3", "u1", "u_m1", "u_m3", "a9", "a10", "a11")}
    sub["a12"] = a12
    mat = [[pr.parse(e).substitute(sub).map_ring(big) for e in row]
           for row in printed]
    minors = minor_matrix_ideal(mat, big)
    I = Ideal(big, rows)
    S = saturate_irrelevant(I, names=("u3", "u1", "u_m1", "u_m3"))
    assert S.equals(minors)
