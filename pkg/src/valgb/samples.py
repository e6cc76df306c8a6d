"""Random instances and the fixed worked examples used by tests and the CLI."""

from __future__ import annotations

import random
from fractions import Fraction

from .freemod import Ambient, ModElement, ModMonomial, WeightedTermOrder, monomials_of_degree
from .valfield import PAdicField, RatFunc, TAdicField, TrivialField


def _unit_int(rng: random.Random, p: int | None, bound: int = 9) -> int:
    while True:
        a = rng.randint(1, bound) * rng.choice((1, -1))
        if p is None or a % p:
            return a


def random_coeff(domain, rng: random.Random, vmin: int = -3, vmax: int = 3):
    """Random nonzero coefficient whose valuation lies in ``[vmin, vmax]``."""
    kind = domain.kind
    if kind == "P_ADIC":
        p = domain.p
        k = rng.randint(vmin, vmax)
        u = Fraction(_unit_int(rng, p), abs(_unit_int(rng, p)))
        return u * Fraction(p) ** k
    if kind == "TRIVIAL":
        return Fraction(_unit_int(rng, None), abs(_unit_int(rng, None)))
    if kind == "T_ADIC":
        k = rng.randint(vmin, vmax)
        num = [_unit_int(rng, None, 5)] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 1))]
        den = [abs(_unit_int(rng, None, 5))] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 1))]
        if k >= 0:
            return RatFunc(tuple([0] * k + num), tuple(den))
        return RatFunc(tuple(num), tuple([0] * (-k) + den))
    if kind == "ZMOD":
        return domain.convert(rng.randrange(1, domain.modulus))
    raise ValueError(f"no sampler for {domain}")


def random_homogeneous(ambient: Ambient, deg: int, rng: random.Random, max_terms: int = 4,
                       vmin: int = -3, vmax: int = 3) -> ModElement:
    """Nonzero homogeneous element of degree ``deg`` with up to ``max_terms`` terms."""
    monos = [ModMonomial(e, k) for e in monomials_of_degree(ambient.nvars, deg)
             for k in range(1, ambient.rank + 1)]
    while True:
        picks = rng.sample(monos, min(len(monos), rng.randint(1, max_terms)))
        terms = {m: random_coeff(ambient.domain, rng, vmin, vmax) for m in picks}
        f = ModElement(ambient, terms)
        if f:
            return f


def random_instance(domain, rng: random.Random, max_vars: int = 3, max_rank: int = 3,
                    max_deg: int = 4, max_divisors: int = 4, max_terms: int = 4):
    """Random ``(f, S, order)`` with homogeneous ``f`` and divisors of degree <= deg f."""
    n = rng.randint(1, max_vars)
    d = rng.randint(1, max_rank)
    names = ("x", "y", "z", "u", "v")[:n]
    amb = Ambient(domain, names, d)
    deg = rng.randint(1, max_deg)
    f = random_homogeneous(amb, deg, rng, max_terms)
    S = [random_homogeneous(amb, rng.randint(0, deg), rng, max_terms)
         for _ in range(rng.randint(1, max_divisors))]
    w = tuple(rng.randint(-2, 2) for _ in range(n))
    o = WeightedTermOrder.make(w, rng.choice(("lex", "deglex", "degrevlex")), "min")
    return f, S, o


def remark_instance(eps: int, domain=None):
    """Three generators of degree ``2*eps`` in ``K[x1,x2,x3]^3``.

    Each has coefficient 1 on its distinguished monomial and coefficient 2 on
    one further term, so all other coefficients have positive 2-adic value.
    """
    domain = domain or PAdicField(2)
    amb = Ambient(domain, ("x1", "x2", "x3"), 3)
    e = eps
    gens = [
        amb.parse(f"x1^{e}*x2^{e}*e1 + 2*x3^{2 * e}*e1"),
        amb.parse(f"x2^{e}*x3^{e}*e2 + 2*x1^{2 * e}*e2"),
        amb.parse(f"x1^{e}*x3^{e}*e3 + 2*x2^{2 * e}*e3"),
    ]
    return amb, gens, WeightedTermOrder.make((0, 0, 0), "lex", "min")


def example_division():
    """The two-generator division over ``Q`` with the 2-adic valuation, ``w = (1, 1)``."""
    amb = Ambient(PAdicField(2), ("x", "y"), 2)
    f = amb.parse("[5*x^3, 7*y^3]")
    S = [amb.parse("[2*x^2, 3*y^2]"), amb.parse("[2*x, 5*y]")]
    return amb, f, S


def example_zmod_division():
    from .zmodgb import ZmodRing

    amb = Ambient(ZmodRing(2, 3), ("x", "y"), 2)
    f = amb.parse("[4*x^3, 6*y^3]")
    S = [amb.parse("[4*x*y, 2*y^2]"), amb.parse("[2*x, 2*y]")]
    return amb, f, S


DOMAINS = {
    "Qp2": PAdicField(2),
    "Qp3": PAdicField(3),
    "Qp5": PAdicField(5),
    "Qt": TAdicField(),
    "trivial": TrivialField(),
}


def random_generators(domain, rng: random.Random, max_vars: int = 3, max_rank: int = 2,
                      max_gens: int = 3, max_deg: int = 2, max_terms: int = 3):
    """Random ``(ambient, B, order)`` input for completion runs (min convention)."""
    n = rng.randint(1, max_vars)
    d = rng.randint(1, max_rank)
    amb = Ambient(domain, ("x", "y", "z", "u", "v")[:n], d)
    B = [random_homogeneous(amb, rng.randint(1, max_deg), rng, max_terms)
         for _ in range(rng.randint(1, max_gens))]
    w = tuple(rng.randint(-2, 2) for _ in range(n))
    o = WeightedTermOrder.make(w, rng.choice(("lex", "deglex", "degrevlex")), "min")
    return amb, B, o
