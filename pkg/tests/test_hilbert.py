import pytest
from hypothesis import given
from hypothesis import strategies as st

from valgb.freemod import Ambient, ModMonomial, WeightedTermOrder
from valgb.groebner import GroebnerBasis, buchberger
from valgb.hilbert import (
    HilbertData,
    brute_force_count,
    format_polynomial,
    free_count,
    hilbert_function,
    hilbert_polynomial,
    standard_monomial_count,
)
from valgb.samples import remark_instance
from valgb.valfield import PAdicField


def M(exps, pos=1):
    return ModMonomial(tuple(exps), pos)


def test_count_examples():
    assert [standard_monomial_count([M((2,))], k, (1, 1)) for k in range(3)] == [1, 1, 0]
    for k in range(6):
        assert standard_monomial_count([M((1, 0))], k, (2, 2)) == k + 2
    rem = [M((1, 1, 0), 1), M((0, 1, 1), 2), M((1, 0, 1), 3)]
    for k in range(1, 7):
        assert standard_monomial_count(rem, k, (3, 3)) == 6 * k + 3
        assert brute_force_count(rem, k, (3, 3)) == 6 * k + 3


@st.composite
def monomial_sets(draw):
    n = draw(st.integers(1, 3))
    d = draw(st.integers(1, 2))
    mons = draw(st.lists(
        st.builds(M, st.lists(st.integers(0, 3), min_size=n, max_size=n), st.integers(1, d)),
        max_size=5))
    return n, d, mons


@given(monomial_sets(), st.integers(0, 7))
def test_inclusion_exclusion_matches_enumeration(data, deg):
    n, d, mons = data
    assert standard_monomial_count(mons, deg, (n, d)) == brute_force_count(mons, deg, (n, d))


def test_sieve_path(monkeypatch):
    import valgb.hilbert as hb

    monkeypatch.setattr(hb, "SUBSET_CAP", 1)
    mons = [M((1, 1, 0)), M((0, 2, 1)), M((3, 0, 0))]
    for k in range(6):
        assert hb.standard_monomial_count(mons, k, (3, 1)) == brute_force_count(mons, k, (3, 1))


def test_free_module():
    amb = Ambient(PAdicField(2), ("x", "y", "z"), 2)
    o = WeightedTermOrder.make((0, 0, 0))
    H = hilbert_function(GroebnerBasis([], o, amb), 5)
    assert all(H.values[k] == free_count(3, 2, k) for k in range(6))


def test_remark_hilbert():
    amb, B, o = remark_instance(1)
    H = hilbert_function(buchberger(B, o), 6)
    assert all(H.values[k] == 6 * k + 3 for k in range(1, 7))
    poly, d0 = hilbert_polynomial(H)
    assert poly == [3, 6] and d0 <= 1
    assert "empirical stabilization" in H.notes
    assert format_polynomial(poly) == "6*d + 3"


def test_unverified_basis_rejected():
    amb = Ambient(PAdicField(3), ("x", "y"), 1)
    o = WeightedTermOrder.make((0, 0))
    B = [amb.parse("x^2 + y^2"), amb.parse("x*y")]
    G = buchberger(B, o)
    assert len(G) > 2
    with pytest.raises(ValueError):
        hilbert_function(GroebnerBasis(B, o, amb), 4)


def test_polynomial_examples():
    H = HilbertData({k: v for k, v in enumerate([1, 1, 0, 0, 0, 0])}, 1, 1)
    assert hilbert_polynomial(H) == ([0], 2)
    H = HilbertData({k: k + 1 for k in range(6)}, 2, 1)
    assert hilbert_polynomial(H) == ([1, 1], 0)
    H = HilbertData({k: v for k, v in enumerate([1, 1, 0])}, 1, 1)
    with pytest.raises(ValueError, match="increase max degree"):
        hilbert_polynomial(H)


def test_polynomial_reproduces_window():
    amb = Ambient(PAdicField(2), ("x", "y", "z"), 2)
    o = WeightedTermOrder.make((1, 0, 0), "degrevlex")
    B = [amb.parse("x*y*e1 + 2*z^2*e1"), amb.parse("x^2*e2 + y*z*e2 + 4*z^2*e1")]
    H = hilbert_function(buchberger(B, o), 10)
    poly, d0 = hilbert_polynomial(H)
    assert all(H.evaluate(k) == H.values[k] for k in range(d0, 11))
