"""Enveloping algebra: PBW normal form, the Weyl morphism, appendix lemmas."""

import random
from fractions import Fraction

import pytest

from logdiv.checks import (random_poly, random_uelement, random_word,
                           suite_absorption_lemma, suite_nu_rewrite_invariance)
from logdiv.enveloping import (LieRinehartData, UElement, augmentation_alpha,
                               commutation_identities, lemma_a4_identity,
                               lemma_a5_identity, nu_closed_form, nu_eval,
                               to_weyl, u_commutator, u_mul, u_mul_alt,
                               u_symbol)
from logdiv.errors import InvalidArgument
from logdiv.ring import PolyRing, PolyVec
from logdiv.weyl import parse_operator, principal_symbol, symbol_ring, weyl_mul


@pytest.fixture(scope="module")
def xyz_data(xyz_frame):
    return LieRinehartData.from_frame(xyz_frame)


def test_validation_rejects_bad_constants(R3):
    rows = [PolyVec([R3.var(0), R3.zero(), R3.zero()]),
            PolyVec([R3.zero(), R3.var(1), R3.zero()]),
            PolyVec([R3.zero(), R3.zero(), R3.var(2)])]
    zero3 = (R3.zero(),) * 3
    good = {(0, 1): zero3, (0, 2): zero3, (1, 2): zero3}
    LieRinehartData(R3, rows, good)
    bad = dict(good)
    bad[(0, 1)] = (R3.one(), R3.zero(), R3.zero())
    with pytest.raises(InvalidArgument):
        LieRinehartData(R3, rows, bad)


def test_commuting_basis(xyz_data):
    e1 = UElement.generator(xyz_data, 0)
    e2 = UElement.generator(xyz_data, 1)
    assert u_mul(e2, e1) == u_mul(e1, e2)


def test_example_pbw_rewrite(example_data, R3):
    e1 = UElement.generator(example_data, 0)
    e2 = UElement.generator(example_data, 1)
    c = UElement.from_poly(example_data, R3.parse("x+y-1/4*x*z"))
    assert u_mul(e2, e1) == u_mul(e1, e2) - u_mul(c, e2)


def test_coefficient_rewrite(example_data, R3):
    e1 = UElement.generator(example_data, 0)
    x = UElement.from_poly(example_data, R3.var(0))
    assert u_mul(e1, x) == u_mul(x, e1) \
        + UElement.from_poly(example_data, R3.parse("x^2+5/4*x*y"))


def test_to_weyl_examples(example_data, R3):
    e2 = UElement.generator(example_data, 1)
    assert to_weyl(e2) == parse_operator(R3, "(x*z+y)*dz")
    g = UElement.from_poly(example_data, R3.parse("x^2-y"))
    assert to_weyl(g) == parse_operator(R3, "x^2-y")
    e1 = UElement.generator(example_data, 0)
    assert to_weyl(u_mul(e1, e2)) == weyl_mul(to_weyl(e1), to_weyl(e2))


def test_confluence_and_associativity(example_data):
    rng = random.Random(50)
    for _ in range(40):
        a = random_uelement(rng, example_data, edeg=2, coeff_deg=1)
        b = random_uelement(rng, example_data, edeg=2, coeff_deg=1)
        assert u_mul(a, b) == u_mul_alt(a, b)
    for _ in range(15):
        a = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
        b = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
        c = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
        assert u_mul(u_mul(a, b), c) == u_mul(a, u_mul(b, c))


def test_symbol_compatibility(example_data, R3):
    rng = random.Random(51)
    S = symbol_ring(R3)
    for _ in range(15):
        a = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
        if a.is_zero():
            continue
        assert u_symbol(a, S) == principal_symbol(to_weyl(a), S)


def test_zeta_commutator(example_data, R3):
    """The order-zero shift of the first row brackets onto the second row."""
    e1 = UElement.generator(example_data, 0)
    e2 = UElement.generator(example_data, 1)
    zeta = e1 - R3.parse("5/4*x+7/4*y")
    coeff = UElement.from_poly(example_data, R3.parse("x+y-1/4*x*z"))
    assert u_commutator(zeta, e2) == u_mul(coeff, e2)
    assert u_commutator(e2, zeta) == -u_mul(coeff, e2)


def test_nu_base_case(example_data):
    rng = random.Random(52)
    m = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
    n = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
    assert nu_eval(example_data, m, [], n) == u_mul(m, n)


def test_nu_unfolds_once(example_data, R3):
    """nu_1(m, t, n) = (m t) n - (m n) lambda, straight from the recursion."""
    rng = random.Random(53)
    m = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
    n = random_uelement(rng, example_data, edeg=1, coeff_deg=1)
    a = R3.parse("x - 2")
    lam = (R3.one(), R3.zero(), R3.parse("y"))
    t = UElement.from_pair(example_data, a, lam)
    lam_u = UElement.from_pair(example_data, R3.zero(), lam)
    expect = u_mul(u_mul(m, t), n) - u_mul(u_mul(m, n), lam_u)
    assert nu_eval(example_data, m, [(a, lam)], n) == expect


def test_nu_closed_form_small(xyz_data, example_data):
    rng = random.Random(54)
    for data, rmax, reps in ((xyz_data, 4, 12), (example_data, 2, 4)):
        for _ in range(reps):
            r = rng.randint(0, rmax)
            word = random_word(rng, data, r, 1 if data is xyz_data else 0)
            m = random_uelement(rng, data, edeg=1, coeff_deg=0, terms=1)
            n = random_uelement(rng, data, edeg=1, coeff_deg=0, terms=1)
            assert nu_eval(data, m, word, n) == nu_closed_form(data, m, word, n)


def test_commutation_lemma_edge_cases(example_data, R3):
    a = R3.parse("x*y - 3")
    ts = [(R3.parse("x"), (R3.one(), R3.zero(), R3.zero())),
          (R3.zero(), (R3.zero(), R3.parse("y"), R3.zero())),
          (R3.one(), (R3.zero(), R3.zero(), R3.one()))]
    assert commutation_identities(example_data, ts, a, [])
    assert commutation_identities(example_data, ts, a, [0])
    assert commutation_identities(example_data, ts, a, [0, 1, 2])


def test_absorption_lemma_variants(example_data, R3):
    rng = random.Random(55)
    zero3 = (R3.zero(),) * 3
    # multiplicative alpha: polynomial tail entries absorb
    for _ in range(6):
        word = random_word(rng, example_data, rng.randint(0, 2), 0)
        word.append((random_poly(rng, R3, 2, 2), zero3))
        m = random_uelement(rng, example_data, edeg=1, coeff_deg=0, terms=1)
        n = random_uelement(rng, example_data, edeg=1, coeff_deg=0, terms=1)
        assert lemma_a4_identity(example_data, m, word, n)
    # the module-linear alpha supports a sub-basis tail entry
    sub = example_data.check_sub_basis([1])
    aug = augmentation_alpha(example_data)
    e2 = UElement.generator(example_data, 1)
    word = [(R3.parse("y"), (R3.zero(), R3.one(), R3.zero()))]
    m = UElement.generator(example_data, 0)
    assert lemma_a4_identity(example_data, m, word, e2, aug)
    # and the multiplicative alpha genuinely fails there
    assert not lemma_a4_identity(example_data, m, word, e2)


def test_sub_basis_closure(example_data):
    example_data.check_sub_basis([1])       # [d2] alone
    example_data.check_sub_basis([0, 1])    # [d1,d2] lands on d2
    example_data.check_sub_basis([1, 2])    # [d2,d3] lands on d2
    with pytest.raises(InvalidArgument):
        example_data.check_sub_basis([0, 2])  # [d1,d3] needs d2


def test_shift_lemma_degenerate_and_random(example_data, R3):
    rng = random.Random(56)
    m = random_uelement(rng, example_data, edeg=1, coeff_deg=0, terms=1)
    n = random_uelement(rng, example_data, edeg=1, coeff_deg=0, terms=1)
    lam1 = (R3.one(), R3.parse("x"), R3.zero())
    assert lemma_a5_identity(example_data, m, lam1, [], n)
    word = random_word(rng, example_data, 2, 0)
    assert lemma_a5_identity(example_data, m, lam1, word, n)


def test_rewrite_invariance_suites(frame_contexts):
    res = suite_nu_rewrite_invariance(random.Random(57), frame_contexts, 40)
    assert res.ok
    res = suite_absorption_lemma(random.Random(58), frame_contexts, 40)
    assert res.ok


def test_uelement_printing(example_data, R3):
    e1 = UElement.generator(example_data, 0)
    u = u_mul(e1, e1) - R3.parse("x*y") * e1 + 3
    s = str(u)
    assert "e1^2" in s and "3" in s
