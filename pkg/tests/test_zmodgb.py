import random

import pytest

from valgb.division import check_division_contract
from valgb.freemod import EQ, LT, Ambient, ModMonomial, Term, WeightedTermOrder
from valgb.groebner import buchberger, unreduced_pairs
from valgb.oracle import membership_probe
from valgb.samples import example_zmod_division, random_generators, random_instance
from valgb.valfield import INFINITY, DomainError
from valgb.zmodgb import (
    ZmodRing,
    v_zmod,
    zmod_buchberger,
    zmod_divides,
    zmod_is_groebner,
    zmod_lcm,
    zmod_normal_form,
    zmod_s_form,
    zmod_term_compare,
)

Z8 = ZmodRing(2, 3)


def T(ring, c, exps, pos=1):
    return Term(ring.convert(c), ModMonomial(exps, pos))


def test_valuation_examples():
    assert v_zmod(Z8.convert(4)) == 2
    assert v_zmod(Z8.convert(6)) == 1
    assert v_zmod(Z8.convert(0)) == INFINITY


def test_ring_checks():
    with pytest.raises(DomainError):
        ZmodRing(4, 2)
    with pytest.raises(DomainError):
        Z8.inverse(Z8.convert(2))
    assert Z8.convert(3) * Z8.inverse(Z8.convert(3)) == 1


@pytest.mark.parametrize("p,l", [(2, 3), (3, 2), (3, 3)])
def test_valuation_axioms_exhaustive(p, l):
    R = ZmodRing(p, l)
    els = R.elements()
    for a in els:
        for b in els:
            if a * b:
                assert R.val(a * b) == R.val(a) + R.val(b)
            if a + b:
                assert R.val(a + b) >= min(R.val(a), R.val(b))


@pytest.mark.parametrize("p,l", [(2, 3), (3, 2), (2, 4)])
def test_divides_matches_search(p, l):
    R = ZmodRing(p, l)
    els = R.elements()
    for a in els[1:]:
        for b in els:
            found = any(a * m == b for m in els)
            assert R.divides(a, b) == found
            if found:
                assert R.quotient(b, a) * a == b


def test_term_compare_examples():
    w = (1, 1)
    assert zmod_term_compare(T(Z8, 6, (0, 3), 2), T(Z8, 4, (3, 0), 1), w) == LT
    assert zmod_term_compare(T(Z8, 2, (1, 0), 1), T(Z8, 2, (0, 1), 2), w) == LT
    t = T(Z8, 2, (1, 0), 1)
    assert zmod_term_compare(t, t, w) == EQ


def test_divides_examples():
    assert zmod_divides(T(Z8, 6, (0, 1)), T(Z8, 4, (0, 2)))
    assert zmod_divides(T(Z8, 2, (0, 0)), T(Z8, 4, (0, 0)))
    assert not zmod_divides(T(Z8, 4, (0, 0)), T(Z8, 2, (0, 0)))


def test_lcm_examples_and_minimality():
    a, b = T(Z8, 4, (1, 1)), T(Z8, 2, (0, 2))
    assert zmod_lcm(a, b) == T(Z8, 4, (1, 2))
    assert zmod_lcm(T(Z8, 1, (1, 0), 1), T(Z8, 1, (1, 0), 2)) is None
    assert zmod_lcm(T(Z8, 6, (1, 0)), T(Z8, 6, (1, 0))) == T(Z8, 2, (1, 0))
    for R in (ZmodRing(2, 3), ZmodRing(3, 2)):
        for x in R.elements()[1:]:
            for y in R.elements()[1:]:
                L = R.coeff_lcm(x, y)
                assert R.divides(x, L) and R.divides(y, L)
                common = [m for m in R.elements() if m and R.divides(x, m) and R.divides(y, m)]
                assert R.val(L) == min(R.val(m) for m in common)


def test_s_form_z4_example():
    Z4 = ZmodRing(2, 2)
    amb = Ambient(Z4, ("x", "y"), 1)
    B = [amb.parse("2*x"), amb.parse("2*y")]
    assert not zmod_s_form(B[0], B[1], (0, 0))
    assert zmod_buchberger(B, (0, 0)).generators == B
    assert zmod_is_groebner(B, (0, 0))


def test_example_68():
    amb, f, S = example_zmod_division()
    o = WeightedTermOrder.make((1, 1))
    res = zmod_normal_form(f, S, (1, 1))
    assert check_division_contract(f, S, res, o)
    assert res.remainder == amb.parse("4*x^2*y*e2")
    # the commonly quoted value 6y^3 e2 + 4x^2 y e2 is not what min gives
    assert res.remainder != amb.parse("6*y^3*e2 + 4*x^2*y*e2")


def test_random_division_contract():
    for R in (ZmodRing(2, 3), ZmodRing(3, 2)):
        rng = random.Random(8)
        for _ in range(40):
            f, S, o = random_instance(R, rng, max_rank=2)
            res = zmod_normal_form(f, S, o)
            assert check_division_contract(f, S, res, o).ok


def test_annihilator_gap():
    Z4 = ZmodRing(2, 2)
    amb = Ambient(Z4, ("x", "y"), 1)
    o = WeightedTermOrder.make((0, 1))
    B = [amb.parse("2*x + y")]
    plain = buchberger(B, o)
    assert plain.generators == B
    twice = B[0].scale(Z4.convert(2))
    assert twice == amb.parse("2*y")
    from valgb.division import normal_form

    assert normal_form(twice, plain.generators, o).remainder  # member not reduced to 0
    full = buchberger(B, o, annihilators=True)
    assert not normal_form(twice, full.generators, o).remainder
    assert not unreduced_pairs(full, o)
    assert membership_probe(full, B, 50, seed=1)


def test_random_completion_fixpoint():
    rng = random.Random(9)
    for _ in range(15):
        amb, B, o = random_generators(ZmodRing(3, 2), rng)
        G = buchberger(B, o)
        assert not unreduced_pairs(G, o)
