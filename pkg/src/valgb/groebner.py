"""S-forms, Buchberger completion and initial modules."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .division import DivisionError, normal_form
from .freemod import (
    Ambient,
    AmbientMismatch,
    ModElement,
    ModMonomial,
    Term,
    WeightedTermOrder,
    initial_term,
    monomial_divides,
    term_divides,
)


def lcm_mod(a: Term, b: Term) -> ModMonomial | None:
    """Componentwise-max monomial at the shared position; None when positions differ."""
    if a.mono.pos != b.mono.pos:
        return None
    return ModMonomial(tuple(max(x, y) for x, y in zip(a.mono.exps, b.mono.exps)), a.mono.pos)


def _multiplier(lcm_coeff, lcm: ModMonomial, t: Term, domain):
    c = domain.quotient(lcm_coeff, t.coeff)
    return c, tuple(x - y for x, y in zip(lcm.exps, t.mono.exps))


def s_form(f: ModElement, g: ModElement, o: WeightedTermOrder) -> ModElement:
    """``(L / in(f)) f - (L / in(g)) g`` with ``L`` the LCM of the initial terms.

    Over a field ``L`` carries coefficient 1; over ``Z/p^l`` it carries the
    coefficient LCM.  Zero when the initial terms sit in different positions.
    """
    if not f or not g:
        raise DivisionError("S-form of a zero element")
    if f.ambient != g.ambient:
        raise AmbientMismatch("S-form of elements from different ambients")
    dom = f.ambient.domain
    a, b = initial_term(f, o), initial_term(g, o)
    lcm = lcm_mod(a, b)
    if lcm is None:
        return f.ambient.zero()
    lc = dom.coeff_lcm(a.coeff, b.coeff)
    ca, ea = _multiplier(lc, lcm, a, dom)
    cb, eb = _multiplier(lc, lcm, b, dom)
    return f.mul_term(ca, ea) - g.mul_term(cb, eb)


@dataclass
class GroebnerBasis:
    generators: list
    order: WeightedTermOrder
    ambient: Ambient
    initial_terms: list = field(default_factory=list)
    trace: list = field(default_factory=list)  # (i, j, index of added element)
    pairs_processed: int = 0

    def __post_init__(self):
        self.initial_terms = [initial_term(g, self.order) for g in self.generators]

    @property
    def monomial_initials(self) -> list:
        return [t.mono for t in self.initial_terms]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _validate(B, o: WeightedTermOrder, ambient=None):
    B = list(B)
    if ambient is None:
        if not B:
            raise ValueError("an ambient is required for an empty generator list")
        ambient = B[0].ambient
    if len(o.weights) != ambient.nvars:
        raise AmbientMismatch("weight vector length does not match the variable count")
    for i, g in enumerate(B, start=1):
        if g.ambient != ambient:
            raise AmbientMismatch(f"generator {i} lives in a different ambient")
        if not g:
            raise DivisionError(f"generator {i} is zero")
        if not g.is_homogeneous():
            raise DivisionError(f"generator {i} is not homogeneous")
    return B, ambient


def _pair_needed(G, i, j, o) -> bool:
    if i == j or G[i] == G[j]:
        return False
    return lcm_mod(initial_term(G[i], o), initial_term(G[j], o)) is not None


def annihilator_multiple(g: ModElement, o: WeightedTermOrder) -> ModElement | None:
    """``p^(l - v) * g`` where ``v`` is the valuation of the initial coefficient.

    This kills the initial term of ``g`` over ``Z/p^l``; None over a field or
    when the initial coefficient is a unit.
    """
    dom = g.ambient.domain
    if dom.is_field:
        return None
    v = dom.val(initial_term(g, o).coeff)
    if v == 0:
        return None
    return g.scale(dom.convert(dom.p ** (dom.l - v)))


def buchberger(B, o: WeightedTermOrder, ambient: Ambient | None = None,
               annihilators: bool = False) -> GroebnerBasis:
    """Complete ``B`` by adding nonzero S-form remainders until every pair reduces to 0.

    Pairs are processed first-in first-out over index pairs ``i < j``.  Over
    ``Z/p^l`` the S-form criterion alone can miss elements such as
    ``p^k * g`` whose initial term moves; ``annihilators=True`` also reduces
    :func:`annihilator_multiple` of every basis element (off by default).
    """
    G, ambient = _validate(B, o, ambient)
    queue = deque((i, j) for j in range(len(G)) for i in range(j))
    if annihilators:
        queue.extend((None, j) for j in range(len(G)))
    trace = []
    processed = 0
    while queue:
        i, j = queue.popleft()
        if i is None:
            cand = annihilator_multiple(G[j], o)
            if not cand:
                continue
        elif not _pair_needed(G, i, j, o):
            continue
        else:
            cand = s_form(G[i], G[j], o)
        processed += 1
        rem = normal_form(cand, G, o).remainder
        if rem:
            G.append(rem)
            k = len(G) - 1
            trace.append((i, j, k))
            queue.extend((m, k) for m in range(k))
            if annihilators:
                queue.append((None, k))
    return GroebnerBasis(G, o, ambient, trace=trace, pairs_processed=processed)


def unreduced_pairs(G, o: WeightedTermOrder) -> list:
    """Index pairs whose S-form leaves a nonzero remainder against ``G``."""
    gens = list(G.generators if isinstance(G, GroebnerBasis) else G)
    bad = []
    for j in range(len(gens)):
        for i in range(j):
            if not _pair_needed(gens, i, j, o):
                continue
            if normal_form(s_form(gens[i], gens[j], o), gens, o).remainder:
                bad.append((i, j))
    return bad


def is_groebner(G, o: WeightedTermOrder) -> bool:
    gens = list(G.generators if isinstance(G, GroebnerBasis) else G)
    if gens:
        _validate(gens, o)
    for j in range(len(gens)):
        for i in range(j):
            if not _pair_needed(gens, i, j, o):
                continue
            if normal_form(s_form(gens[i], gens[j], o), gens, o).remainder:
                return False
    return True


def minimal_monomials(monos) -> list:
    """Drop monomials divisible by another one (first of equal ones kept)."""
    monos = list(dict.fromkeys(monos))
    keep = []
    for i, m in enumerate(monos):
        if not any(j != i and monomial_divides(other, m) for j, other in enumerate(monos)):
            keep.append(m)
    return keep


def initial_module(G: GroebnerBasis) -> list:
    """Minimal generators of the monomial module spanned by the initial terms."""
    return minimal_monomials(G.monomial_initials)


def minimalize(G: GroebnerBasis) -> GroebnerBasis:
    """Remove generators whose initial term is divisible by another's."""
    dom = G.ambient.domain
    inits = G.initial_terms
    keep = []
    for i, t in enumerate(inits):
        redundant = False
        for j, s in enumerate(inits):
            if j == i or not term_divides(s, t, dom):
                continue
            # mutual divisibility: keep the earliest one
            if term_divides(t, s, dom) and j > i:
                continue
            redundant = True
            break
        if not redundant:
            keep.append(G.generators[i])
    return GroebnerBasis(keep, G.order, G.ambient)
