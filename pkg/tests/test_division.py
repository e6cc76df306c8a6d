import random
from fractions import Fraction

import pytest

from valgb.division import (
    STRATEGIES,
    DivisionError,
    DivisionResult,
    check_division_contract,
    exact_division,
    normal_form,
)
from valgb.freemod import Ambient, WeightedTermOrder
from valgb.samples import DOMAINS, example_division, random_instance
from valgb.valfield import PAdicField

MAX = WeightedTermOrder.make((1, 1), "lex", "max")
MIN = WeightedTermOrder.make((1, 1), "lex", "min")


def test_dividend_in_divisors():
    amb, f, S = example_division()
    res = normal_form(S[0], S, MIN)
    assert not res.remainder
    assert res.quotients[0] == amb.poly_ring().one()
    assert not res.quotients[1]


def test_zero_dividend():
    amb, f, S = example_division()
    res = normal_form(amb.zero(), S, MIN)
    assert not res.remainder and res.iterations == 0


def test_max_convention_golden():
    amb, f, S = example_division()
    res = normal_form(f, S, MAX)
    assert res.remainder == amb.parse("7*y^3*e2 - 15/2*x*y^2*e2")
    assert res.quotients[0] == amb.poly_ring().parse("5/2*x")
    assert check_division_contract(f, S, res, MAX)


def test_min_convention_contract():
    amb, f, S = example_division()
    res = normal_form(f, S, MIN)
    rep = check_division_contract(f, S, res, MIN)
    assert rep.ok, rep.violations
    assert all(not (m.pos == 2 and m.exps[1] >= 1) for m in res.remainder.terms)


def test_checker_catches_tampering():
    amb, f, S = example_division()
    res = normal_form(f, S, MIN)
    bad = DivisionResult(res.remainder + amb.parse("x*e1"), res.quotients)
    rep = check_division_contract(f, S, bad, MIN)
    assert not rep and any(v.startswith("C1") for v in rep.violations)
    # a term divisible by in(g1) = 3y^2 e2 injected into r
    bad = DivisionResult(res.remainder + amb.parse("3*x*y^2*e2"), res.quotients)
    rep = check_division_contract(f, S, bad, MIN)
    assert any(v.startswith("C3") for v in rep.violations)


def test_rejects_bad_input():
    amb, f, S = example_division()
    with pytest.raises(DivisionError):
        normal_form(amb.parse("x*e1 + x^2*e1"), S, MIN)
    with pytest.raises(DivisionError):
        normal_form(f, [amb.zero()], MIN)
    with pytest.raises(DivisionError):
        normal_form(f, [amb.parse("x*e1 + y^2*e2")], MIN)


def test_deterministic():
    rng = random.Random(3)
    for _ in range(20):
        f, S, o = random_instance(DOMAINS["Qp3"], rng)
        a, b = normal_form(f, S, o), normal_form(f, S, o)
        assert a.remainder == b.remainder and a.quotients == b.quotients


def _cycling_instance():
    return random_instance(PAdicField(2), random.Random(1))


def test_literal_stash_rule_cycles():
    f, S, o = _cycling_instance()
    with pytest.raises(RuntimeError):
        normal_form(f, S, o, strategy="classic", budget=None, max_iterations=300)


def test_stash_all_terminates_on_cycle():
    f, S, o = _cycling_instance()
    res = normal_form(f, S, o, strategy="stash-all", budget=None)
    assert check_division_contract(f, S, res, o)
    assert not res.finished_exactly


def test_budget_finishes_cycle():
    f, S, o = _cycling_instance()
    res = normal_form(f, S, o)
    assert res.finished_exactly
    assert check_division_contract(f, S, res, o)


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("name", sorted(DOMAINS))
def test_random_contract(strategy, name):
    rng = random.Random(11)
    for _ in range(25):
        f, S, o = random_instance(DOMAINS[name], rng)
        res = normal_form(f, S, o, strategy=strategy)
        rep = check_division_contract(f, S, res, o)
        assert rep.ok, rep.violations
        assert all(v > 0 for v in res.rescale_vals)


def test_exact_division_alone():
    amb = Ambient(PAdicField(5), ("x", "y"), 1)
    S = [amb.parse("x + 5*y"), amb.parse("y^2")]
    f = amb.parse("3*x^2 + x*y + 25*y^2")
    o = WeightedTermOrder.make((0, 0))
    h, r = exact_division(f, S, o)
    assert f == S[0].mul_poly(h[0]) + S[1].mul_poly(h[1]) + r
    assert not r  # every degree-2 monomial is divisible by x or y^2


def test_rescale_uses_all_quotients():
    # a stashed reduction must rescale every h_i, otherwise C1 breaks
    rng = random.Random(5)
    seen = 0
    for _ in range(200):
        f, S, o = random_instance(DOMAINS["Qp2"], rng)
        res = normal_form(f, S, o)
        if res.rescales and len(S) > 1:
            seen += 1
            assert check_division_contract(f, S, res, o)
    assert seen > 0


def test_fraction_coefficients_stay_exact():
    amb, f, S = example_division()
    res = normal_form(f, S, MAX)
    assert all(isinstance(c, Fraction) for c in res.remainder.terms.values())
