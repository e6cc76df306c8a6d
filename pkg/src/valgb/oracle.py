"""Independent checks: Macaulay-slice ranks and random membership probes.

The rank of the degree-``d`` slice of the submodule is computed by plain
Gaussian elimination over the coefficient field, ignoring the valuation.  By
the standard-monomial basis theorem this rank must equal the number of
degree-``d`` monomials lying in the initial module of a correct Groebner basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .division import normal_form
from .freemod import ModElement, ModMonomial, monomial_divides, monomials_of_degree
from .groebner import GroebnerBasis, initial_module
from .hilbert import free_count, standard_monomial_count
from .samples import random_coeff
from .valfield import coeff_size


def macaulay_rows(B, deg: int) -> list:
    """All products ``x^gamma * g`` of degree ``deg`` as term dictionaries."""
    rows = []
    for g in B:
        if not g:
            continue
        gd = g.degree()
        if gd > deg:
            continue
        for gamma in monomials_of_degree(g.ambient.nvars, deg - gd):
            rows.append(g.mul_term(g.ambient.domain.one(), gamma).terms)
    return rows


def _rank(rows, domain) -> int:
    """Rank of sparse rows (dicts keyed by monomial) over a field."""
    pivots: dict = {}  # monomial -> normalized row with coefficient 1 there
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            # eliminate the pivot columns present in the row, cheapest entry first
            hits = [m for m in row if m in pivots]
            if not hits:
                break
            for m in hits:
                c = row.get(m)
                if not c:
                    continue
                for x, v in pivots[m].items():
                    s = row.get(x, domain.zero()) - c * v
                    if s:
                        row[x] = s
                    else:
                        row.pop(x, None)
        if not row:
            continue
        m = min(row, key=lambda k: coeff_size(row[k]))
        inv = domain.inverse(row[m])
        new = {x: v * inv for x, v in row.items()}
        # keep the pivot set reduced so each pivot monomial appears once
        for other in pivots.values():
            c = other.get(m)
            if c:
                for x, v in new.items():
                    s = other.get(x, domain.zero()) - c * v
                    if s:
                        other[x] = s
                    else:
                        other.pop(x, None)
        pivots[m] = new
        rank += 1
    return rank


def macaulay_rank(B, deg: int, ambient=None) -> int:
    """Exact dimension of the degree-``deg`` part of the submodule spanned by ``B``."""
    B = list(B)
    if not B:
        return 0
    domain = (ambient or B[0].ambient).domain
    if not domain.is_field:
        raise ValueError("macaulay_rank needs a coefficient field")
    return _rank(macaulay_rows(B, deg), domain)


@dataclass
class InitialsReport:
    ok: bool
    rows: list = field(default_factory=list)  # (degree, covered monomials, rank)

    def __bool__(self):
        return self.ok

    def failures(self):
        return [r for r in self.rows if r[1] != r[2]]


def check_initials_complete(G: GroebnerBasis, B, max_degree: int) -> InitialsReport:
    """Compare, degree by degree, monomials under the initials with the slice rank."""
    amb = G.ambient
    M = initial_module(G)
    rows = []
    for k in range(max_degree + 1):
        covered = free_count(amb.nvars, amb.rank, k) - standard_monomial_count(M, k, amb)
        rows.append((k, covered, macaulay_rank(B, k, amb)))
    return InitialsReport(all(c == r for _, c, r in rows), rows)


@dataclass
class ProbeReport:
    ok: bool
    trials: int
    counterexample: ModElement | None = None
    remainder: ModElement | None = None

    def __bool__(self):
        return self.ok


def random_combination(B, rng: random.Random, max_extra: int = 2, max_terms: int = 2) -> ModElement:
    """Random homogeneous ``sum h_i g_i`` with ``h_i`` short polynomials of matched degree."""
    B = [g for g in B if g]
    amb = B[0].ambient
    dom = amb.domain
    top = max(g.degree() for g in B) + rng.randint(0, max_extra)
    f = amb.zero()
    for g in B:
        if rng.random() < 0.3:
            continue
        shift = top - g.degree()
        monos = list(monomials_of_degree(amb.nvars, shift))
        for gamma in rng.sample(monos, min(len(monos), rng.randint(1, max_terms))):
            f = f + g.mul_term(random_coeff(dom, rng, -2, 2), gamma)
    return f


def membership_probe(G, B, trials: int = 100, seed: int = 0) -> ProbeReport:
    """Reduce random elements of the span of ``B`` by ``G``; all remainders must vanish."""
    gens = list(G.generators if isinstance(G, GroebnerBasis) else G)
    order = G.order if isinstance(G, GroebnerBasis) else None
    if order is None:
        raise TypeError("membership_probe expects a GroebnerBasis")
    B = [g for g in B if g]
    if not B:
        return ProbeReport(True, 0)
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_combination(B, rng)
        if not f:
            continue
        r = normal_form(f, gens, order).remainder
        if r:
            return ProbeReport(False, trials, f, r)
    return ProbeReport(True, trials)


def monomials_under(M, deg: int, ambient) -> list:
    """Degree-``deg`` module monomials divisible by some element of ``M``."""
    out = []
    for pos in range(1, ambient.rank + 1):
        for e in monomials_of_degree(ambient.nvars, deg):
            m = ModMonomial(e, pos)
            if any(monomial_divides(g, m) for g in M):
                out.append(m)
    return out
