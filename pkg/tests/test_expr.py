import random
from fractions import Fraction

import pytest

from edgelift.coeffs import prime_field, rationals, residue_ring
from edgelift.expr import (NegativeExponent, ParseError, UnknownVariable,
                           VarTable, parse, render)
from edgelift.poly import SparsePoly

Q = rationals()
XYZ = VarTable(("x", "y", "z"))


def test_parse_example_polynomial():
    f = parse("x^6*y^2 - z^4 + x*y*z^4 - x^7*y^5*z^2", XYZ, Q)
    assert f.terms == {
        (6, 2, 0): Fraction(1),
        (0, 0, 4): Fraction(-1),
        (1, 1, 4): Fraction(1),
        (7, 5, 2): Fraction(-1),
    }


def test_parse_zero_and_constants():
    assert not parse("0", XYZ, Q)
    f = parse("y^3 + 270*y + 540", VarTable(("y",)), Q)
    assert f.terms == {(3,): 270 * 0 + 1, (1,): 270, (0,): 540}


def test_parse_rational_literals_and_unary_minus():
    vt = VarTable(("x",))
    f = parse("-2/3*x + 1/2", vt, Q)
    assert f.terms == {(1,): Fraction(-2, 3), (0,): Fraction(1, 2)}
    g = parse("--x", vt, Q)
    assert g.terms == {(1,): 1}


def test_parse_parentheses_and_powers():
    vt = VarTable(("x", "y"))
    f = parse("(x + y)^2", vt, Q)
    assert f == parse("x^2 + 2*x*y + y^2", vt, Q)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse("x + ", XYZ, Q)
    assert err.value.position == 4
    with pytest.raises(UnknownVariable) as err:
        parse("x + w", XYZ, Q)
    assert err.value.position == 4 and err.value.name == "w"
    with pytest.raises(NegativeExponent):
        parse("x^-2", XYZ, Q)
    with pytest.raises(ParseError):
        parse("x y", XYZ, Q)  # no implicit multiplication
    with pytest.raises(ParseError):
        parse("x/2", XYZ, Q)  # '/' only inside rational literals
    with pytest.raises(ParseError):
        parse("", XYZ, Q)


def test_parse_literal_denominator_must_be_unit():
    with pytest.raises(ParseError):
        parse("1/5*x", XYZ, prime_field(5))


def test_render_zero():
    assert render(SparsePoly.zero(3, Q), XYZ) == "0"


def test_render_fixed_order():
    vt = VarTable(("x", "y", "z"))
    f = parse("x*y*z + x^3*y^3 + x^3*z^3 + y^3*z^3", vt, Q)
    assert render(f, vt) == "x*y*z + y^3*z^3 + x^3*z^3 + x^3*y^3"
    g = parse("x^6*y^2 - z^4 + x*y*z^4 - x^7*y^5*z^2", vt, Q)
    assert render(g, vt) == "-z^4 + x*y*z^4 + x^6*y^2 - x^7*y^5*z^2"


def random_poly(nvars, ring, rng):
    terms = {}
    for _ in range(rng.randint(0, 7)):
        e = tuple(rng.randint(0, 6) for _ in range(nvars))
        if ring.kind == "Q":
            c = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
        else:
            c = rng.randrange(ring.modulus)
        terms[e] = c
    return SparsePoly(nvars, ring, terms)


@pytest.mark.parametrize("ring", [Q, prime_field(7), residue_ring(2, 5)], ids=str)
def test_parse_render_round_trip(ring):
    rng = random.Random(1234)
    vt = VarTable(("a", "b2", "c_3"))
    for _ in range(1000):
        f = random_poly(3, ring, rng)
        assert parse(render(f, vt), vt, ring) == f


def test_render_injective_on_sample():
    rng = random.Random(99)
    seen = {}
    for _ in range(500):
        f = random_poly(2, Q, rng)
        text = render(f, VarTable(("x", "y")))
        if text in seen:
            assert seen[text] == f
        seen[text] = f


def test_vartable_validation():
    with pytest.raises(ValueError):
        VarTable(("x", "x"))
    with pytest.raises(ValueError):
        VarTable(("2x",))
    assert VarTable.split(" x , y ").names == ("x", "y")
