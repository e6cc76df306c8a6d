"""Hilbert functions of ``K[x]^d / I`` read off from the initial module.

Standard monomials (those outside the initial module) form a basis of the
quotient in each degree, so the Hilbert function is a count of monomials.
Counting is done per position by inclusion-exclusion over generator subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .freemod import Ambient, ModMonomial, monomial_divides, monomials_of_degree
from .groebner import GroebnerBasis, initial_module, is_groebner

SUBSET_CAP = 2**20


def free_count(n: int, d: int, deg: int) -> int:
    """Number of degree-``deg`` monomials in ``K[x_1..x_n]^d``."""
    if deg < 0:
        return 0
    return d * comb(deg + n - 1, n - 1) if n else (d if deg == 0 else 0)


def _shape(ambient):
    if isinstance(ambient, Ambient):
        return ambient.nvars, ambient.rank
    n, d = ambient
    return n, d


def _covered_ie(gens, n: int, deg: int) -> int:
    """Monomials of degree ``deg`` divisible by at least one of ``gens`` (one position)."""
    total = 0

    def walk(start, lcm, size):
        nonlocal total
        for i in range(start, len(gens)):
            new = tuple(max(a, b) for a, b in zip(lcm, gens[i]))
            s = sum(new)
            if s > deg:
                continue  # larger subsets only raise the degree
            sign = 1 if size % 2 == 0 else -1
            total += sign * comb(deg - s + n - 1, n - 1)
            walk(i + 1, new, size + 1)

    walk(0, (0,) * n, 0)
    return total


def _covered_sieve(gens, n: int, deg: int) -> int:
    return sum(1 for e in monomials_of_degree(n, deg)
               if any(all(a >= b for a, b in zip(e, g)) for g in gens))


def standard_monomial_count(M, deg: int, ambient) -> int:
    """Degree-``deg`` module monomials divisible by no element of ``M``.

    ``ambient`` is an :class:`Ambient` or an ``(n, d)`` pair.
    """
    n, d = _shape(ambient)
    if deg < 0:
        return 0
    by_pos: dict = {}
    for m in M:
        by_pos.setdefault(m.pos, []).append(tuple(m.exps))
    covered = 0
    for pos, gens in by_pos.items():
        if not 1 <= pos <= d:
            raise ValueError(f"monomial at position {pos} outside rank {d}")
        gens = [g for i, g in enumerate(gens)
                if not any(j != i and all(a >= b for a, b in zip(g, h)) and (g != h or j < i)
                           for j, h in enumerate(gens))]
        if n == 0:
            covered += 1 if deg == 0 and gens else 0
        elif 2 ** len(gens) <= SUBSET_CAP:
            covered += _covered_ie(gens, n, deg)
        else:
            covered += _covered_sieve(gens, n, deg)
    return free_count(n, d, deg) - covered


def brute_force_count(M, deg: int, ambient) -> int:
    """Same count by enumerating every monomial; used as a cross-check."""
    n, d = _shape(ambient)
    count = 0
    for pos in range(1, d + 1):
        for e in monomials_of_degree(n, deg):
            m = ModMonomial(e, pos)
            if not any(monomial_divides(g, m) for g in M):
                count += 1
    return count


@dataclass
class HilbertData:
    values: dict
    nvars: int
    rank: int
    polynomial: list | None = None  # power-basis coefficients, constant first
    threshold: int | None = None
    notes: list = field(default_factory=list)

    def evaluate(self, deg) -> Fraction:
        if self.polynomial is None:
            raise ValueError("no Hilbert polynomial fitted")
        return sum((c * Fraction(deg) ** k for k, c in enumerate(self.polynomial)), Fraction(0))


def hilbert_function(G: GroebnerBasis, max_degree: int, check: bool = True) -> HilbertData:
    """Hilbert function values for degrees ``0..max_degree``.

    ``G`` must be a Groebner basis; with ``check`` this is verified first.
    """
    if not isinstance(G, GroebnerBasis):
        raise TypeError("hilbert_function expects a GroebnerBasis")
    if not G.ambient.domain.is_field:
        raise ValueError("Hilbert functions are only defined over a field")
    if check and G.generators and not is_groebner(G, G.order):
        raise ValueError("generators are not a verified Groebner basis")
    M = initial_module(G)
    values = {k: standard_monomial_count(M, k, G.ambient) for k in range(max_degree + 1)}
    return HilbertData(values, G.ambient.nvars, G.ambient.rank)


def _differences(seq, order):
    for _ in range(order):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return seq


def _binomial_poly(k: int, shift: int) -> list:
    """Power-basis coefficients of ``C(x - shift, k)``."""
    poly = [Fraction(1)]
    for j in range(k):
        root = shift + j
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= root * c
        poly = nxt
    den = 1
    for j in range(1, k + 1):
        den *= j
    return [c / den for c in poly]


def hilbert_polynomial(H: HilbertData, n: int | None = None):
    """Fit the Hilbert polynomial by Newton forward differences.

    Finds the least ``d0`` such that the ``n``-th differences of the values on
    ``[d0, max_degree]`` all vanish, with at least ``n + 2`` points in that
    window.  Stabilization is detected empirically, not proven.  Returns
    ``(coefficients, d0)`` with coefficients in the power basis, constant
    term first, trailing zeros removed.
    """
    n = H.nvars if n is None else n
    top = max(H.values)
    seq = [H.values[k] for k in range(top + 1)]
    for d0 in range(top + 1):
        if top - d0 < n + 1:
            break
        window = seq[d0:]
        if any(_differences(window, n)):
            continue
        poly = [Fraction(0)] * max(n, 1)
        for k in range(n):
            delta = _differences(window, k)[0]
            for i, c in enumerate(_binomial_poly(k, d0)):
                poly[i] += delta * c
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
        if n == 0:
            poly = [Fraction(0)]
        H.polynomial, H.threshold = poly, d0
        if "empirical stabilization" not in H.notes:
            H.notes.append("empirical stabilization")
        return poly, d0
    raise ValueError("no stabilization window found; increase max degree")


def format_polynomial(coeffs, var: str = "d") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = f"-{body}" if sign == "-" else body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
