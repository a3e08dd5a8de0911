import random
from fractions import Fraction

import pytest

from edgelift.coeffs import prime_field, rationals, residue_ring
from edgelift.expr import VarTable, parse, render
from edgelift.grading import orthogonal_basis
from edgelift.lift import SplitRequest, _split_from_restriction, edge_restriction
from edgelift.newton import build
from edgelift.poly import SparsePoly, WeightedBound
from edgelift.unifactor import pmul, trim
from edgelift.weier import (NoCoprimeSplit, NoLooseEdgeInfo, NotDescendant,
                            NotMonic, NotPrepared, PadicFactors, PadicPoly,
                            WeierstrassInput, descendant_loose_edges,
                            lift_monic, padic_newton_factor, poly_divide,
                            weierstrass_normalize, weight_to_x_bound)

Q = rationals()
X12Y = VarTable(("x1", "x2", "y"))
EXAMPLE3 = "y^8 + (x1^3 - x2^2)*y^3 + x1^5*x2^4*y^2 - x1^15*x2^18"


def example3():
    return WeierstrassInput(parse(EXAMPLE3, X12Y, Q))


def test_descendant_edges_example3():
    edges = descendant_loose_edges(example3())
    assert [(e.a, e.b) for e in edges] == [((5, 4, 2), (15, 18, 0))]


def test_descendant_edges_monomial_and_polygon():
    wi = WeierstrassInput(parse("y^4", VarTable(("x", "y")), Q))
    assert descendant_loose_edges(wi) == []
    # Example 4 polygon at p = 2 as a plane polynomial over F_2
    f2 = prime_field(2)
    f = parse("y^3 + p*y + p^2", VarTable(("p", "y")), f2)
    wi2 = WeierstrassInput(f)
    edges = descendant_loose_edges(wi2)
    assert {(e.a, e.b) for e in edges} == {((1, 1), (0, 3)), ((1, 1), (2, 0))}
    assert all(e.descendant for e in edges)


def test_lift_monic_example3():
    wi = example3()
    edge = descendant_loose_edges(wi)[0]
    rest = edge_restriction(wi.f, edge)
    split = _split_from_restriction(rest, prefer_factored=True, monic_last=True)
    assert render(split.G, X12Y) == "y - x1^5*x2^7"
    ws = orthogonal_basis(edge.direction)
    bound = WeightedBound(ws.xi0, 60)
    gbar, hbar, cert = lift_monic(wi, edge, split, bound)
    assert (wi.f - gbar * hbar).truncate(bound) == SparsePoly.zero(3, Q)
    # the lifted monic factor keeps the pure-y vertex
    assert gbar.coeff((0, 0, 1)) == 1


def test_lift_monic_unit_cofactor():
    # the whole restriction as the monic part and a constant H: the cofactor
    # comes back as a unit
    vt = VarTable(("x", "y"))
    f = parse("y^2 - x^2 + x^3", vt, Q)
    wi = WeierstrassInput(f)
    edges = descendant_loose_edges(wi)
    assert edges
    edge = edges[0]
    rest = edge_restriction(f, edge)
    split = SplitRequest(rest.poly, SparsePoly.constant(2, Q, 1))
    ws = orthogonal_basis(edge.direction)
    bound = WeightedBound(ws.xi0, 40)
    gbar, hbar, _ = lift_monic(wi, edge, split, bound)
    assert (f - gbar * hbar).truncate(bound) == SparsePoly.zero(2, Q)
    assert hbar.coeff((0, 0)) == 1  # unit cofactor


def test_lift_monic_validation():
    wi = example3()
    edge = descendant_loose_edges(wi)[0]
    rest = edge_restriction(wi.f, edge)
    bound = WeightedBound(orthogonal_basis(edge.direction).xi0, 30)
    not_monic = SplitRequest(parse("x1^5*x2^4*y - x1^10*x2^11", X12Y, Q),
                             parse("y + x1^5*x2^7", X12Y, Q))
    with pytest.raises(NotMonic):
        lift_monic(wi, edge, not_monic, bound)
    np = build(wi.f)
    non_descendant = [e for e in np.edges if e.loose and not e.descendant]
    if non_descendant:
        with pytest.raises(NotDescendant):
            lift_monic(wi, non_descendant[0], not_monic, bound)


def test_weierstrass_normalize_identity_case():
    vt = VarTable(("x", "y"))
    g0 = parse("y^2 - x*y + x^3", vt, Q)  # already a Weierstrass polynomial
    u, g = weierstrass_normalize(g0, 2, 10)
    assert u == SparsePoly.constant(2, Q, 1)
    assert g == g0


def test_weierstrass_normalize_geometric_series():
    vt = VarTable(("x", "y"))
    gbar = parse("(1 + x)*y - x", vt, Q)
    n = 8
    u, g = weierstrass_normalize(gbar, 1, n)
    # oracle: g = y - x/(1+x) = y - x + x^2 - x^3 + ...
    series = {(k, 0): Fraction((-1) ** k) for k in range(1, n + 1)}
    series[(0, 1)] = Fraction(1)
    assert g == SparsePoly(2, Q, series)
    assert u == parse("1 + x", vt, Q)
    diff = u * g - gbar
    assert all(sum(e[:-1]) > n for e in diff.terms)


def test_weierstrass_normalize_rejects_unprepared():
    vt = VarTable(("x", "y"))
    with pytest.raises(NotPrepared):
        weierstrass_normalize(parse("x*y", vt, Q), 1, 5)
    with pytest.raises(NotPrepared):
        weierstrass_normalize(parse("y^2 + x", vt, Q), 1, 5)


def test_poly_divide_identity_and_random():
    vt = VarTable(("x", "y"))
    rng = random.Random(11)
    g = parse("y^2 + x*y + x^3", vt, Q)
    q, r = poly_divide(g, g, 12)
    assert q == SparsePoly.constant(2, Q, 1) and not r
    for _ in range(25):
        terms = {(rng.randint(0, 4), rng.randint(0, 4)): Fraction(rng.randint(-3, 3))
                 for _ in range(6)}
        f = SparsePoly(2, Q, terms)
        if not f:
            continue
        n = 10
        q, r = poly_divide(f, g, n)
        assert max((e[-1] for e in r.terms), default=-1) < 2
        diff = f - (q * g + r)
        assert all(sum(e[:-1]) > n for e in diff.terms)


def test_full_monic_pipeline_example3():
    wi = example3()
    edge = descendant_loose_edges(wi)[0]
    rest = edge_restriction(wi.f, edge)
    split = _split_from_restriction(rest, prefer_factored=True, monic_last=True)
    ws = orthogonal_basis(edge.direction)
    bound = WeightedBound(ws.xi0, 60)
    gbar, hbar, _ = lift_monic(wi, edge, split, bound)
    bx = weight_to_x_bound(ws, 60)
    u, g = weierstrass_normalize(gbar, 1, bx)
    # monic degree 1, unit constant term invertible, u*g matches gbar
    assert max(e[-1] for e in g.terms) == 1
    assert g.coeff((0, 0, 1)) == 1
    assert u.coeff((0, 0, 0)) != 0
    sub = [e for e in g.terms if e[-1] == 0]
    assert all(any(e[:-1]) for e in sub)  # lower coefficients vanish at x = 0
    diff = u * g - gbar
    assert all(sum(e[:-1]) > bx for e in diff.terms)
    h, r = poly_divide(wi.f, g, bx)
    resid = (wi.f - g * h).truncate(bound)
    assert not resid
    assert not r.truncate(bound)


def test_monic_pipeline_bound_stability():
    wi = example3()
    edge = descendant_loose_edges(wi)[0]
    rest = edge_restriction(wi.f, edge)
    split = _split_from_restriction(rest, prefer_factored=True, monic_last=True)
    ws = orthogonal_basis(edge.direction)
    g1, h1, _ = lift_monic(wi, edge, split, WeightedBound(ws.xi0, 30))
    g2, h2, _ = lift_monic(wi, edge, split, WeightedBound(ws.xi0, 60))
    w = sum(ws.weight(next(iter(split.G.terms))))
    z = sum(ws.weight(next(iter(split.H.terms))))
    assert g1.truncate(WeightedBound(ws.xi0, 30 - z)) == g2.truncate(WeightedBound(ws.xi0, 30 - z))
    assert h1.truncate(WeightedBound(ws.xi0, 30 - w)) == h2.truncate(WeightedBound(ws.xi0, 30 - w))
    # and the monic factor is monic at both bounds
    assert g1.coeff((0, 0, 1)) == 1 and g2.coeff((0, 0, 1)) == 1


# -- p-adic ----------------------------------------------------------------------

F4 = (540, 270, 0, 1)  # y^3 + 270 y + 540


def test_padic_poly_validation():
    with pytest.raises(ValueError):
        PadicPoly((1, 1), 4, 8)     # 4 not prime
    with pytest.raises(ValueError):
        PadicPoly((1, 1), 2, 1)     # k >= 2
    pp = PadicPoly(F4, 2, 32)
    assert pp.valuations() == [(2, 0), (1, 1), (0, 3)]


def test_padic_example_p2():
    pp = PadicPoly(F4, 2, 32)
    verdict = padic_newton_factor(pp)
    assert isinstance(verdict, PadicFactors)
    assert set(verdict.polygon.vertices) == {(0, 3), (1, 1), (2, 0)}
    g, h = verdict.factors
    ring = residue_ring(2, 32)
    assert pmul(list(g), list(h), ring) == [c % 2**32 for c in F4]
    degs = sorted(len(c) - 1 for c in (g, h))
    assert degs == [1, 2]
    # the quadratic factor is monic
    quad = g if len(g) == 3 else h
    assert quad[-1] == 1


def test_padic_example_p3():
    pp = PadicPoly(F4, 3, 8)
    verdict = padic_newton_factor(pp)
    assert isinstance(verdict, NoCoprimeSplit)
    assert set(verdict.polygon.vertices) == {(0, 3), (3, 0)}
    assert verdict.power == 3
    assert render(verdict.factor, VarTable(("p", "y"))) == "y + 2*p"


def test_padic_example_p5():
    pp = PadicPoly(F4, 5, 8)
    verdict = padic_newton_factor(pp)
    assert isinstance(verdict, NoCoprimeSplit)
    assert len(verdict.polygon.edges) == 1
    assert verdict.power == 1


def test_padic_single_vertex():
    pp = PadicPoly((0, 0, 1), 3, 4)  # y^2
    verdict = padic_newton_factor(pp)
    assert isinstance(verdict, NoLooseEdgeInfo)


def test_padic_requires_unit_leading_coefficient():
    with pytest.raises(ValueError):
        padic_newton_factor(PadicPoly((1, 0, 2), 2, 6))


def test_padic_random_products():
    # products of a monic polynomial with unit constant term and a factor
    # with all-divisible lower coefficients lift back to a true factorization
    rng = random.Random(31337)
    for _ in range(25):
        p = rng.choice((2, 3, 5))
        k = rng.randint(4, 10)
        mod = p**k
        ring = residue_ring(p, k)
        d1 = rng.randint(1, 2)
        g = [rng.randrange(1, mod) * p % mod for _ in range(d1)] + [1]
        if g[0] % p == 0:
            g[0] = (g[0] + p) % mod or p
        d2 = rng.randint(1, 2)
        h = [rng.randrange(mod) for _ in range(d2)] + [1]
        if h[0] % p == 0:
            h[0] = (h[0] + 1) % mod
        f = pmul(g, h, ring)
        pp = PadicPoly(tuple(f), p, k)
        verdict = padic_newton_factor(pp)
        if isinstance(verdict, PadicFactors):
            a, b = verdict.factors
            assert pmul(list(a), list(b), ring) == trim(f, ring)


def test_padic_monic_weierstrass_sanity():
    # for monic inputs whose lower coefficients are divisible by p, a loose
    # edge ending at (0, d) exists iff the verdict is not NoLooseEdgeInfo
    rng = random.Random(909)
    for _ in range(40):
        p = rng.choice((2, 3))
        k = 6
        d = rng.randint(1, 3)
        coeffs = [rng.randrange(p**k) * p % p**k for _ in range(d)] + [1]
        pp = PadicPoly(tuple(coeffs), p, k)
        verdict = padic_newton_factor(pp)
        touching = [e for e in verdict.polygon.edges
                    if (0, d) in (e.a, e.b) and e.loose]
        assert bool(touching) == (not isinstance(verdict, NoLooseEdgeInfo))


def test_padic_lift_with_linear_monic_part():
    # the alternate monic split of y^3 + p*y at p = 2: G the linear y factor,
    # H the quadratic part
    from edgelift.grading import orthogonal_basis as ob
    from edgelift.lift import EdgeRestriction, _line_form
    from edgelift.newton import build_from_support
    from edgelift.weier import _padic_lift

    p, k = 2, 16
    pp = PadicPoly(F4, p, k)
    polygon = build_from_support(pp.valuations(), 2)
    edge = polygon.edge_between((0, 3), (1, 1))
    fp = prime_field(2)
    restriction = SparsePoly(2, fp, {(0, 3): 1, (1, 1): 1})  # Y^3 + P Y
    ws = ob(edge.direction)
    content, uni = _line_form(restriction, edge.direction)
    rest = EdgeRestriction(restriction, edge, ws, content, tuple(uni))
    G = SparsePoly(2, fp, {(0, 1): 1})                # Y
    H = SparsePoly(2, fp, {(0, 2): 1, (1, 0): 1})     # Y^2 + P
    g, h, _ = _padic_lift(list(pp.coefficients), pp, rest, SplitRequest(G, H))
    ring = residue_ring(p, k)
    assert pmul(list(g), list(h), ring) == [c % p**k for c in F4]
    assert len(g) == 2 and g[-1] == 1  # monic linear factor
