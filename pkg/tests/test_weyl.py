"""Weyl algebra: normal ordering, symbols, actions on h-fractions."""

import random
from fractions import Fraction

import pytest

from logdiv.checks import random_poly, random_weyl
from logdiv.errors import InvalidArgument, ParseError
from logdiv.ring import PolyRing, PolyVec
from logdiv.weyl import (WeylOp, apply_to_fraction, parse_operator,
                         principal_symbol, symbol_ring, weyl_mul, weyl_order)

from conftest import EXAMPLE_MATRIX, Q3_TEXT


@pytest.fixture(scope="module")
def R():
    return PolyRing(["x", "y", "z"])


def test_canonical_commutation(R):
    dx = WeylOp.partial(R, 0)
    x = WeylOp.from_poly(R.var(0))
    assert weyl_mul(dx, x) == parse_operator(R, "x*dx + 1")


def test_square_of_first_order(R):
    d2 = parse_operator(R, "(x*z+y)*dz")
    assert weyl_mul(d2, d2) == parse_operator(
        R, "(x*z+y)^2*dz^2 + x*(x*z+y)*dz")


def test_orders(R):
    assert weyl_order(parse_operator(R, "x*dx + 1")) == 1
    assert weyl_order(WeylOp.from_poly(R.parse("x^2-1"))) == 0
    assert WeylOp.zero(R).order() is None
    assert weyl_order(parse_operator(R, Q3_TEXT)) == 2


def test_symbols(R):
    S = symbol_ring(R)
    assert principal_symbol(parse_operator(R, "x*dx + 1"), S) \
        == S.parse("x*xi1")
    row1 = WeylOp.from_vector_field(
        PolyVec([R.parse(s) for s in EXAMPLE_MATRIX[0]]))
    assert principal_symbol(row1, S) == S.parse(
        "(x^2+5/4*x*y)*xi1 + (3/4*x*y+y^2)*xi2 + (1/4*x*z^2-1/4*x*z)*xi3")
    q3 = parse_operator(R, Q3_TEXT)
    assert principal_symbol(q3, S) == S.parse(
        "1/4*(4*x*z*xi2*xi3 + 4*y*z*xi2*xi3 - z^2*xi3^2 - 4*x*xi1*xi3"
        " - 5*y*xi1*xi3 + y*xi2*xi3 + z*xi3^2)")
    with pytest.raises(InvalidArgument):
        principal_symbol(WeylOp.zero(R), S)


def test_weyl_syzygy_of_example(R, example_qs):
    fields = [WeylOp.from_vector_field(PolyVec([R.parse(s) for s in row]))
              for row in EXAMPLE_MATRIX]
    total = WeylOp.zero(R)
    for q, w in zip(example_qs, fields):
        total = total + weyl_mul(q, w)
    assert total.is_zero()


def test_apply_to_fraction_basics(R):
    x = R.var(0)
    assert apply_to_fraction(WeylOp.partial(R, 0), R.one(), 1, x) \
        == (-R.one(), 2)
    assert apply_to_fraction(parse_operator(R, "dx^2"), R.one(), 0, x) \
        == (R.zero(), 0)
    p = parse_operator(R, "x*dx+y*dy")
    assert apply_to_fraction(p, R.zero(), 3, x) == (R.zero(), 0)


def test_presentation_annihilates(R, example_frame):
    h = example_frame.divisor.h
    for m in (1, 2, 3):
        for row, alpha in zip(example_frame.rows, example_frame.alphas):
            op = WeylOp.from_vector_field(row.coeffs) \
                + WeylOp.from_poly(m * alpha)
            assert apply_to_fraction(op, R.one(), m, h) == (R.zero(), 0)


def test_associativity_random(R):
    rng = random.Random(40)
    for _ in range(60):
        p, q, r = (random_weyl(rng, R) for _ in range(3))
        assert weyl_mul(weyl_mul(p, q), r) == weyl_mul(p, weyl_mul(q, r))


def test_symbol_multiplicativity_random(R):
    rng = random.Random(41)
    S = symbol_ring(R)
    for _ in range(40):
        p, q = random_weyl(rng, R), random_weyl(rng, R)
        if p.is_zero() or q.is_zero():
            continue
        prod = weyl_mul(p, q)
        assert prod.order() == p.order() + q.order()
        assert prod.principal_symbol(S) == \
            p.principal_symbol(S) * q.principal_symbol(S)


def test_action_compatibility_random(R):
    rng = random.Random(42)
    h = R.parse("x*y+z")
    for _ in range(25):
        p, q = random_weyl(rng, R, 1, 2, 1), random_weyl(rng, R, 1, 2, 1)
        g = random_poly(rng, R, 2, 2)
        m = rng.randint(0, 2)
        inner = apply_to_fraction(q, g, m, h)
        lhs = apply_to_fraction(p, inner[0], inner[1], h)
        rhs = apply_to_fraction(weyl_mul(p, q), g, m, h)
        assert lhs == rhs


def test_leibniz_on_products(R):
    rng = random.Random(43)
    for _ in range(30):
        f = random_poly(rng, R, 2, 2)
        g = random_poly(rng, R, 2, 2)
        i = rng.randrange(3)
        d = WeylOp.partial(R, i)
        assert d.apply_to_poly(f * g) \
            == d.apply_to_poly(f) * g + f * d.apply_to_poly(g)


def test_operator_parser_roundtrip(R, example_qs):
    for q in example_qs:
        assert parse_operator(R, str(q)) == q
    with pytest.raises(ParseError):
        parse_operator(R, "dw + 1")
