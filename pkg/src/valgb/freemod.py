"""Sparse elements of the free module ``K[x_1..x_n]^d`` and weighted term orders.

An element is a dictionary mapping module monomials ``x^u e_k`` to nonzero
coefficients.  Positions are 1-based to match the usual ``e_1, ..., e_d``
notation.  Polynomials (quotients of division, multipliers) are rank-1
elements.

A :class:`WeightedTermOrder` ranks terms ``c x^u e_k`` by the weight
``val(c) + w.u`` first (ascending for ``min``, descending for ``max``) and
breaks ties so that the monomially *larger* term comes first.  The initial
term of an element is its first term in this ranking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .valfield import INFINITY, DomainError, ValuedField


class ModMonomial(NamedTuple):
    exps: tuple
    pos: int

    @property
    def degree(self) -> int:
        return sum(self.exps)


class Term(NamedTuple):
    coeff: object
    mono: ModMonomial


class AmbientMismatch(DomainError):
    pass


@dataclass(frozen=True)
class Ambient:
    """Coefficient domain, variable names and module rank."""

    domain: ValuedField
    names: tuple
    rank: int = 1

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.rank < 1:
            raise ValueError("module rank must be positive")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def poly_ring(self) -> "Ambient":
        """The rank-1 ambient used for polynomial multipliers."""
        if self.rank == 1:
            return self
        return Ambient(self.domain, self.names, 1)

    def zero(self) -> "ModElement":
        return ModElement(self, {})

    def one(self) -> "ModElement":
        """The constant polynomial 1 (only meaningful at rank 1)."""
        return ModElement(self.poly_ring(), {ModMonomial((0,) * self.nvars, 1): self.domain.one()})

    def basis(self, k: int) -> "ModElement":
        return self.monomial((0,) * self.nvars, k)

    def monomial(self, exps, pos: int = 1, coeff=1) -> "ModElement":
        return ModElement(self, {ModMonomial(tuple(exps), pos): self.domain.convert(coeff)})

    def from_terms(self, items: Iterable) -> "ModElement":
        """Build an element from ``(coeff, exps, pos)`` triples, summing repeats."""
        out: dict = {}
        for c, exps, pos in items:
            c = self.domain.convert(c)
            key = ModMonomial(tuple(exps), pos)
            out[key] = out[key] + c if key in out else c
        return ModElement(self, {k: v for k, v in out.items() if v})

    def parse(self, text: str) -> "ModElement":
        from .textio import parse_element

        return parse_element(text, self)


class ModElement:
    """An immutable sparse element of ``K[x]^d``."""

    __slots__ = ("ambient", "terms", "_hash")

    def __init__(self, ambient: Ambient, terms: dict, _trusted: bool = False):
        self.ambient = ambient
        if not _trusted:
            n, d = ambient.nvars, ambient.rank
            clean = {}
            for m, c in terms.items():
                if not isinstance(m, ModMonomial):
                    m = ModMonomial(tuple(m[0]), m[1])
                if len(m.exps) != n or not 1 <= m.pos <= d or min(m.exps, default=0) < 0:
                    raise ValueError(f"monomial {m} does not fit ambient n={n}, d={d}")
                if c:
                    clean[m] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # -- basic queries -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def term_list(self) -> list:
        return [Term(c, m) for m, c in self.terms.items()]

    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("degree of a zero or non-homogeneous element")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __eq__(self, other):
        if not isinstance(other, ModElement):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ----------------------------------------------------------
    def _same(self, other: "ModElement"):
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __add__(self, other: "ModElement") -> "ModElement":
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return ModElement(self.ambient, out, _trusted=True)

    def __neg__(self) -> "ModElement":
        return ModElement(self.ambient, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: "ModElement") -> "ModElement":
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] - c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = -c
        return ModElement(self.ambient, out, _trusted=True)

    def scale(self, c) -> "ModElement":
        out = {}
        for m, a in self.terms.items():
            b = a * c
            if b:
                out[m] = b
        return ModElement(self.ambient, out, _trusted=True)

    def mul_term(self, c, exps) -> "ModElement":
        """Multiply by the scalar monomial ``c * x^exps``."""
        out = {}
        for m, a in self.terms.items():
            b = a * c
            if b:
                out[ModMonomial(tuple(x + y for x, y in zip(m.exps, exps)), m.pos)] = b
        return ModElement(self.ambient, out, _trusted=True)

    def mul_poly(self, h: "ModElement") -> "ModElement":
        """Multiply by a polynomial given as a rank-1 element."""
        if h.ambient.rank != 1 or h.ambient.names != self.ambient.names:
            raise AmbientMismatch("multiplier must be a polynomial in the same variables")
        out: dict = {}
        for hm, hc in h.terms.items():
            for m, c in self.terms.items():
                key = ModMonomial(tuple(x + y for x, y in zip(m.exps, hm.exps)), m.pos)
                b = hc * c
                if key in out:
                    b = out[key] + b
                if b:
                    out[key] = b
                else:
                    out.pop(key, None)
        return ModElement(self.ambient, out, _trusted=True)

    def __str__(self):
        from .textio import format_element

        return format_element(self)

    def __repr__(self):
        return f"ModElement({self})"


# ---------------------------------------------------------------------------
# Orders

MONOMIAL_ORDERS = ("lex", "deglex", "degrevlex")


def _desc_lex(e):
    return tuple(-x for x in e)


def _desc_deglex(e):
    return (-sum(e),) + tuple(-x for x in e)


def _desc_degrevlex(e):
    return (-sum(e),) + tuple(reversed(e))


_DESC_KEYS: dict[str, Callable] = {
    "lex": _desc_lex,
    "deglex": _desc_deglex,
    "degrevlex": _desc_degrevlex,
}


@dataclass(frozen=True)
class MonomialOrder:
    """Base order on monomials with ``x_1 > x_2 > ... > x_n``, extended to the
    module by comparing monomials first and positions second (``e_1 < e_2``)."""

    name: str = "lex"

    def __post_init__(self):
        if self.name not in _DESC_KEYS:
            raise ValueError(f"unknown monomial order {self.name!r}")

    def desc_key(self, m: ModMonomial):
        """Sort key listing module monomials from largest to smallest."""
        return _DESC_KEYS[self.name](m.exps), -m.pos

    def compare(self, a: ModMonomial, b: ModMonomial) -> int:
        ka, kb = self.desc_key(a), self.desc_key(b)
        return (ka < kb) - (ka > kb)


LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class WeightedTermOrder:
    """Weight vector, monomial order and min/max convention."""

    weights: tuple
    order: MonomialOrder = field(default_factory=MonomialOrder)
    convention: str = "min"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if isinstance(self.order, str):
            object.__setattr__(self, "order", MonomialOrder(self.order))
        if self.convention not in ("min", "max"):
            raise ValueError("convention must be 'min' or 'max'")

    @classmethod
    def make(cls, weights, order="lex", convention="min") -> "WeightedTermOrder":
        return cls(tuple(weights), MonomialOrder(order), convention)

    def weight(self, domain: ValuedField, coeff, mono: ModMonomial):
        v = domain.val(coeff)
        if v == INFINITY:
            raise DomainError("weight of a zero term")
        return v + sum(w * u for w, u in zip(self.weights, mono.exps))

    def term_key(self, domain: ValuedField, coeff, mono: ModMonomial):
        """Ascending key: the initial term of an element has the least key."""
        wt = self.weight(domain, coeff, mono)
        if self.convention == "max":
            wt = -wt
        return wt, self.order.desc_key(mono)

    def _check(self, ambient: Ambient):
        if len(self.weights) != ambient.nvars:
            raise AmbientMismatch(
                f"weight vector has {len(self.weights)} entries for {ambient.nvars} variables"
            )


def compare_terms(t1: Term, t2: Term, o: WeightedTermOrder, domain: ValuedField) -> int:
    """Return ``LT``, ``EQ`` or ``GT``.  ``LT`` means ``t1`` is preferred as initial."""
    if len(t1.mono.exps) != len(t2.mono.exps):
        raise AmbientMismatch("terms from different ambients")
    k1 = o.term_key(domain, t1.coeff, t1.mono)
    k2 = o.term_key(domain, t2.coeff, t2.mono)
    return (k1 > k2) - (k1 < k2)


def sorted_terms(f: ModElement, o: WeightedTermOrder) -> list:
    dom = f.ambient.domain
    return sorted(f.term_list(), key=lambda t: o.term_key(dom, t.coeff, t.mono))


def initial_term(f: ModElement, o: WeightedTermOrder) -> Term:
    if not f:
        raise ValueError("initial of zero undefined")
    o._check(f.ambient)
    dom = f.ambient.domain
    m, c = min(f.terms.items(), key=lambda mc: o.term_key(dom, mc[1], mc[0]))
    return Term(c, m)


def extremal_weight(f: ModElement, o: WeightedTermOrder):
    dom = f.ambient.domain
    ws = [o.weight(dom, c, m) for m, c in f.terms.items()]
    return min(ws) if o.convention == "min" else max(ws)


def initial_form_w(f: ModElement, o: WeightedTermOrder) -> dict:
    """Terms of ``f`` of extremal weight, coefficients mapped to the residue field.

    Returned as a dict ``ModMonomial -> residue``.
    """
    if not f:
        raise ValueError("initial of zero undefined")
    o._check(f.ambient)
    dom = f.ambient.domain
    W = extremal_weight(f, o)
    return {
        m: dom.unit_residue(c)
        for m, c in f.terms.items()
        if o.weight(dom, c, m) == W
    }


def ecart(f: ModElement, g: ModElement) -> int:
    """Number of monomials in ``supp(g)`` that are not in ``supp(f)``."""
    return sum(1 for m in g.terms if m not in f.terms)


def monomial_divides(a: ModMonomial, b: ModMonomial) -> bool:
    return a.pos == b.pos and all(x <= y for x, y in zip(a.exps, b.exps))


def term_divides(a: Term, b: Term, domain: ValuedField | None = None) -> bool:
    """Whether term ``a`` divides term ``b``.

    Over a field any nonzero coefficient divides; over a ring the coefficient
    divisibility of ``domain`` is also required.
    """
    if not monomial_divides(a.mono, b.mono):
        return False
    if domain is None or domain.is_field:
        return True
    return domain.divides(a.coeff, b.coeff)


def is_homogeneous(f: ModElement) -> bool:
    return f.is_homogeneous()


def monomials_of_degree(n: int, deg: int):
    """All exponent vectors of length ``n`` summing to ``deg`` (lex-descending)."""
    if n == 0:
        if deg == 0:
            yield ()
        return
    if n == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in monomials_of_degree(n - 1, deg - first):
            yield (first,) + rest
