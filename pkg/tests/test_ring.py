"""Polynomial core: exact arithmetic, orders, parsing, determinants, gcd."""

import random
from fractions import Fraction

import pytest

from logdiv.errors import AmbientMismatch, InvalidDivisor, ParseError, ShapeError
from logdiv.ring import (DEGREVLEX, LEX, BlockOrder, Poly, PolyRing, PolyVec,
                         det, divmod_single, exact_div, poly_gcd,
                         squarefree_check)


@pytest.fixture(scope="module")
def R2():
    return PolyRing(["x", "y"])


def rand_poly(rng, ring, deg=3, terms=3):
    out = ring.zero()
    for _ in range(terms):
        e = [0] * ring.n
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(ring.n)] += 1
        out = out + ring.poly({tuple(e): Fraction(rng.randint(-4, 4),
                                                  rng.randint(1, 3))})
    return out


def test_difference_of_squares(R2):
    assert R2.parse("(x+y)*(x-y)") == R2.parse("x^2-y^2")


def test_additive_identity(R2):
    p = R2.parse("3*x^2-1/2*y")
    assert p + R2.zero() == p


def test_example_equation_expansion():
    R = PolyRing(["x", "y", "z"])
    h = R.parse("(x*z+y)*(x^4+y^5+x*y^4)")
    assert h == R.parse("x^2*y^4*z+x*y^5*z+x*y^5+y^6+x^5*z+x^4*y")


def test_partials():
    R = PolyRing(["x", "y", "z"])
    assert R.parse("x^2*y").partial(0) == R.parse("2*x*y")
    h = R.parse("(x*z+y)*(x^4+y^5+x*y^4)")
    assert h.partial(2) == R.parse("x^2*y^4+x*y^5+x^5")
    assert R.parse("7/2").partial(0).is_zero()


def test_ring_axioms_random():
    rng = random.Random(10)
    R = PolyRing(["x", "y", "z"])
    for _ in range(200):
        a, b, c = (rand_poly(rng, R) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_partial_is_derivation():
    rng = random.Random(11)
    R = PolyRing(["x", "y"])
    for _ in range(150):
        p, q = rand_poly(rng, R), rand_poly(rng, R)
        i = rng.randrange(2)
        assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


def test_ambient_mismatch():
    R, S = PolyRing(["x"]), PolyRing(["y"])
    with pytest.raises(AmbientMismatch):
        R.var(0) + S.var(0)


def test_det_examples():
    R = PolyRing(["x", "y", "z"])
    assert det([[R.var(0), R.zero(), R.zero()],
                [R.zero(), R.var(1), R.zero()],
                [R.zero(), R.zero(), R.var(2)]]) == R.parse("x*y*z")
    R2 = PolyRing(["x", "y"])
    cusp = [[R2.parse("3*x"), R2.parse("2*y")],
            [R2.parse("-3*y^2"), R2.parse("-2*x")]]
    assert det(cusp) == R2.parse("-6*x^2+6*y^3")
    assert det(cusp) == R2.const(-6) * R2.parse("x^2-y^3")
    with pytest.raises(ShapeError):
        det([[R.var(0), R.var(1)]])


def test_det_multiplicative_random():
    rng = random.Random(12)
    R = PolyRing(["x", "y"])
    for n in (2, 3):
        for _ in range(25):
            A = [[rand_poly(rng, R, 2, 2) for _ in range(n)] for _ in range(n)]
            B = [[rand_poly(rng, R, 2, 2) for _ in range(n)] for _ in range(n)]
            AB = [[sum((A[i][k] * B[k][j] for k in range(n)), R.zero())
                   for j in range(n)] for i in range(n)]
            assert det(AB) == det(A) * det(B)


def test_squarefree():
    R = PolyRing(["x", "y", "z"])
    assert not squarefree_check(R.parse("x^2*y"))
    assert squarefree_check(R.parse("(x*z+y)*(x^4+y^5+x*y^4)"))
    R2 = PolyRing(["x", "y"])
    assert squarefree_check(R2.parse("x^2-y^3"))
    with pytest.raises(InvalidDivisor):
        squarefree_check(R.zero())


def test_gcd():
    R = PolyRing(["x", "y"])
    assert poly_gcd(R.parse("x^2*y"), R.parse("x*y^2")) == R.parse("x*y")
    assert poly_gcd(R.parse("x^2-y^2"), R.parse("x+y")) == R.parse("x+y")
    assert poly_gcd(R.parse("x"), R.parse("y")).is_constant()
    f = R.parse("(x+y)^2*(x-2*y)")
    assert exact_div(f, R.parse("x+y")) == R.parse("(x+y)*(x-2*y)")


def test_division_single():
    R = PolyRing(["x", "y"])
    f = R.parse("x^2*y + x + 1")
    q, r = divmod_single(f, R.parse("x"))
    assert q * R.var(0) + r == f
    assert r == R.one()


def test_canonical_roundtrip_random():
    rng = random.Random(13)
    R = PolyRing(["x", "y", "z"])
    for _ in range(100):
        p = rand_poly(rng, R)
        assert R.parse(str(p)) == p


def test_parser_rejects_bad_input():
    R = PolyRing(["x", "y"])
    with pytest.raises(ParseError):
        R.parse("x + w")
    with pytest.raises(ParseError):
        R.parse("x +")
    with pytest.raises(ParseError):
        R.parse("x / y")
    assert R.parse("-x^2 + 1/4") == R.parse("1/4 - x^2")


def test_orders():
    R = PolyRing(["x", "y", "z"])
    p = R.parse("x^2 + x*y*z + y^3")
    # graded reverse lex: among the degree-3 terms y^3 beats x*y*z
    assert p.lead(DEGREVLEX)[0] == (0, 3, 0)
    assert p.lead(LEX)[0] == (2, 0, 0)
    # block order: the first variable dominates regardless of degree
    b = BlockOrder(1)
    assert p.lead(b)[0] == (2, 0, 0)
    q = R.parse("x + y^5")
    assert q.lead(b)[0] == (1, 0, 0)


def test_polyvec():
    R = PolyRing(["x", "y"])
    v = PolyVec([R.var(0), R.var(1)])
    w = PolyVec([R.var(1), -R.var(0)])
    assert v.dot(w).is_zero()
    assert (v + w)[0] == R.parse("x+y")
    with pytest.raises(ShapeError):
        v.dot(PolyVec([R.var(0)]))


def test_evaluate():
    R = PolyRing(["x", "y"])
    p = R.parse("x^2*y - 3/2*y + 2")
    assert p.evaluate([Fraction(2), Fraction(1)]) == Fraction(9, 2)
    assert p.evaluate([0, 0]) == 2
