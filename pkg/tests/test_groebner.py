"""Groebner engine: bases, normal forms, elimination, saturation, Hilbert
polynomials, syzygies, module kernels."""

import random
from fractions import Fraction

import pytest

from mucurves.groebner import (GroebnerBasis, Ideal, buchberger, eliminate,
                               exact_div, hilbert_polynomial, ideal_quotient,
                               intersect, krull_dimension, module_contains,
                               module_kernel, saturate, saturate_irrelevant,
                               standard_decomposition, syzygies,
                               weight_standard_monomials)
from mucurves.poly import GREVLEX, Lex, MultiPoly, PolyRing, WeightAssignment

U = PolyRing(("u3", "u1", "u_m1", "u_m3"))
U3_GENS = [U.parse("u1^2 - u3*u_m1"), U.parse("u1*u_m1 - u3*u_m3"),
           U.parse("u_m1^2 - u_m3*u1")]


def test_single_generator_is_its_own_basis():
    R = PolyRing(("x", "y"))
    gb = buchberger([R.parse("x")])
    assert gb.basis == [R.parse("x")]


def test_hand_buchberger_oracle_lex():
    # by hand: S(t-x, t^2-y) -> x^2 - y
    R = PolyRing(("t", "x", "y"), Lex())
    gb = buchberger([R.parse("t - x"), R.parse("t^2 - y")])
    assert R.parse("x^2 - y") in gb.basis


def test_twisted_cubic_basis_three_elements():
    gb = buchberger(U3_GENS)
    assert len(gb.basis) == 3
    # every S-polynomial of the reduced basis reduces to zero: idempotence
    gb2 = buchberger(gb.basis)
    assert gb2.basis == gb.basis


def test_spair_vanishing_exhaustive():
    gb = buchberger(U3_GENS)
    for i in range(len(gb.basis)):
        for j in range(i):
            gi, gj = gb.basis[i], gb.basis[j]
            mi, ci = gi.leading()
            mj, cj = gj.leading()
            lcm = tuple(max(a, b) for a, b in zip(mi, mj))
            s = gi.mul_term(tuple(a - b for a, b in zip(lcm, mi)), 1 / ci) - \
                gj.mul_term(tuple(a - b for a, b in zip(lcm, mj)), 1 / cj)
            assert gb.normal_form(s).is_zero()


def test_normal_form_membership():
    gb = buchberger(U3_GENS)
    tangent_dev = U.parse(
        "4*u_m3*u1^3 - 6*u3*u1*u_m1*u_m3 + 4*u3*u_m1^3 - 3*u1^2*u_m1^2 + u3^2*u_m3^2")
    assert gb.normal_form(tangent_dev).is_zero()
    assert gb.normal_form(U.parse("u3")) == U.parse("u3")
    R = PolyRing(("x", "y"))
    assert buchberger([R.parse("x")]).normal_form(R.parse("x")).is_zero()


def test_normal_form_is_additive_up_to_reduction():
    gb = buchberger(U3_GENS)
    rng = random.Random(3)
    for _ in range(10):
        f = U.zero()
        g = U.zero()
        for _ in range(4):
            f = f + U.monomial(tuple(rng.randint(0, 2) for _ in range(4)),
                               Fraction(rng.randint(-4, 4)))
            g = g + U.monomial(tuple(rng.randint(0, 2) for _ in range(4)),
                               Fraction(rng.randint(-4, 4)))
        assert gb.normal_form(f + g) == gb.normal_form(gb.normal_form(f) + g)


def test_membership_order_independent():
    rng = random.Random(11)
    R = PolyRing(("x", "y", "z", "w"))
    for trial in range(5):
        gens = []
        for _ in range(2):
            terms = {}
            for _ in range(2):
                mono = [0, 0, 0, 0]
                for _ in range(2):
                    mono[rng.randrange(4)] += 1
                terms[tuple(mono)] = Fraction(rng.randint(1, 3))
            gens.append(MultiPoly(R, terms))
        probe = gens[0] * R.parse("x + 2*y") + gens[-1] * R.parse("z^2 - w")
        gb1 = GroebnerBasis(R, gens, GREVLEX)
        gb2 = GroebnerBasis(R, gens, Lex())
        assert gb1.contains(probe) and gb2.contains(probe)
        foreign = R.parse("x*y*z*w + 1")
        assert gb1.contains(foreign) == gb2.contains(foreign)


def test_eliminate_implicitizes_parabola():
    R = PolyRing(("t", "x", "y"))
    I = Ideal(R, [R.parse("t - x"), R.parse("t^2 - y")])
    J = eliminate(I, {"t"})
    assert J.equals(Ideal(R, [R.parse("x^2 - y")]))
    K = eliminate(Ideal(R, [R.parse("x")]), {"y"})
    assert K.equals(Ideal(R, [R.parse("x")]))


def test_intersect_and_quotient_trivial():
    R = PolyRing(("x", "y"))
    I = intersect(Ideal(R, [R.parse("x")]), Ideal(R, [R.parse("y")]))
    assert I.equals(Ideal(R, [R.parse("x*y")]))
    Q = ideal_quotient(Ideal(R, [R.parse("x*y")]), R.parse("x"))
    assert Q.equals(Ideal(R, [R.parse("y")]))


def test_saturate_both_methods_agree():
    R = PolyRing(("x", "y"))
    I = Ideal(R, [R.parse("x*y"), R.parse("y^2")])
    s1 = saturate(I, R.parse("y"))
    s2 = saturate(I, R.parse("y"), method="quotient")
    assert s1.equals(s2)
    assert s1.equals(Ideal(R, [R.one()]))
    s3 = saturate(Ideal(R, [R.parse("x*y")]), R.parse("x"))
    assert s3.equals(Ideal(R, [R.parse("y")]))


def test_saturate_idempotent():
    R = PolyRing(("x", "y", "z"))
    I = Ideal(R, [R.parse("x^2*z - y^2*z"), R.parse("x*z^2")])
    f = R.parse("z")
    s1 = saturate(I, f)
    s2 = saturate(s1, f)
    assert s1.equals(s2)


def test_saturate_irrelevant_keeps_coordinate_line():
    # the line {x = 0} sits inside the hyperplane x = 0: saturating by x alone
    # would kill it, the irrelevant saturation must keep it
    R = PolyRing(("x", "y"))
    I = Ideal(R, [R.parse("x")])
    assert saturate_irrelevant(I).equals(I)


def test_exact_div():
    R = PolyRing(("x", "y"))
    f = R.parse("x^2*y + x*y^2")
    assert exact_div(f, R.parse("x*y")) == R.parse("x + y")
    with pytest.raises(ValueError):
        exact_div(R.parse("x + 1"), R.parse("x"))


def test_hilbert_polynomial_zero_ideal():
    I = Ideal(U, [])
    hp = hilbert_polynomial(I)
    m = hp.ring.var("m")
    binom = (m + 1) * (m + 2) * (m + 3) * Fraction(1, 6)
    assert hp == binom


def test_hilbert_polynomial_twisted_cubic():
    hp = hilbert_polynomial(Ideal(U, U3_GENS))
    m = hp.ring.var("m")
    assert hp == 3 * m + 1


def test_hilbert_polynomial_triple_line_cubic():
    # triple-line cubic at the chart origin; monomial-ideal oracle by hand:
    # LT ideal <u3^2, u3*u1, u1^2> leaves 3m+1 standard monomials in degree m
    I = Ideal(U, [U.parse("u3^2"), U.parse("u3*u1"),
                  U.parse("3*u1^2 + 2*u3*u_m1")])
    S = saturate_irrelevant(I)
    hp = hilbert_polynomial(S)
    m = hp.ring.var("m")
    assert hp == 3 * m + 1


def test_hilbert_polynomial_order_invariant():
    for gens in (U3_GENS, [U.parse("u3^2"), U.parse("u3*u1"),
                           U.parse("3*u1^2 + 2*u3*u_m1")]):
        h1 = hilbert_polynomial(Ideal(PolyRing(U.names, GREVLEX), [g.map_ring(PolyRing(U.names, GREVLEX)) for g in gens]))
        h2 = hilbert_polynomial(Ideal(PolyRing(U.names, Lex()), [g.map_ring(PolyRing(U.names, Lex())) for g in gens]))
        assert h1 == h2


def test_syzygies_koszul():
    R = PolyRing(("x", "y"))
    syz = syzygies([R.parse("x"), R.parse("y")])
    assert len(syz) == 1
    v = syz[0]
    assert (v[0] * R.parse("x") + v[1] * R.parse("y")).is_zero()


def _dot_in_ideal(vec, gens, ideal=None):
    s = vec[0].ring.zero()
    for a, g in zip(vec, gens):
        s = s + a * g
    if ideal is None:
        return s.is_zero()
    return ideal.contains(s)


def test_syzygies_hilbert_burch_generic_minors():
    R = PolyRing(("x1", "x2", "x3", "y1", "y2", "y3"))
    a, b, c, d, e, f = (R.var(v) for v in R.names)
    m1 = b * f - c * e   # minors of the generic 3x2 matrix [[a,d],[b,e],[c,f]]
    m2 = c * d - a * f
    m3 = a * e - b * d
    syz = syzygies([m1, m2, m3])
    assert len(syz) >= 2
    for v in syz:
        assert _dot_in_ideal(v, [m1, m2, m3])
    # the two Hilbert-Burch column syzygies appear
    cols = [[a, b, c], [d, e, f]]
    for col in cols:
        assert module_contains(col, syz)


def test_syzygies_of_twisted_cubic_two_linear():
    syz = syzygies(U3_GENS)
    for v in syz:
        assert _dot_in_ideal(v, U3_GENS)
    linear = [v for v in syz if max(x.total_degree() for x in v if not x.is_zero()) == 1]
    assert len(linear) >= 2
    # Koszul relations are contained in the syzygy module
    g = U3_GENS
    for i in range(3):
        for j in range(i):
            kos = [U.zero()] * 3
            kos[i] = g[j]
            kos[j] = -g[i]
            assert module_contains(kos, syz)


def test_module_kernel_basics():
    R = PolyRing(("x",))
    x = R.var("x")
    I = Ideal(R, [x])
    ker = module_kernel([[x]], 1, modulo=I)
    assert any(not v[0].is_zero() for v in ker)
    assert module_contains([R.one()], ker, modulo=I)
    # identity matrix mod 0 has trivial kernel
    ker2 = module_kernel([[R.one(), R.zero()], [R.zero(), R.one()]], 2,
                         modulo=Ideal(R, []))
    assert all(all(p.is_zero() for p in v) for v in ker2) or not ker2


def test_standard_decomposition_and_dimension():
    R = PolyRing(("x", "y"))
    I = Ideal(R, [R.parse("x*y")])
    assert krull_dimension(I) == 1
    assert krull_dimension(Ideal(R, [R.parse("x"), R.parse("y")])) == 0
    assert krull_dimension(Ideal(R, [])) == 2
    pieces = standard_decomposition([(1, 1)], 2)
    covered = set()
    for prefix, A in pieces:
        assert len(A) <= 1
        for k in range(4):
            for l in range(4):
                m = (k, l)
                fits = all(m[i] >= prefix[i] for i in range(2)) and \
                    all(m[i] == prefix[i] for i in range(2) if i not in A)
                if fits:
                    assert m not in covered
                    covered.add(m)
    assert covered == {(k, l) for k in range(4) for l in range(4) if k == 0 or l == 0}


def test_weight_standard_monomials():
    R = PolyRing(("x", "y", "z"))
    wts = WeightAssignment(R, {"x": 2, "y": 4, "z": 6})
    gb = buchberger([R.parse("x^2")])
    monos = weight_standard_monomials(gb, wts, 8)
    # x^2 excluded: solutions of 2a+4b+6c=8 with a<2: {(1,0,1),(0,2,0)}
    assert set(monos) == {(1, 0, 1), (0, 2, 0)}
