"""Coefficients in ``Z/p^l`` with the ``p``-power map as a valuation substitute.

The ring plugs into the same division and completion engines as the valued
fields.  What changes is term divisibility (the coefficient must divide too),
exact term quotients (``p^(v_b - v_a) * u_b * u_a^-1``) and the coefficient
LCM ``p^max(v_a, v_b)`` used in S-forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import division, freemod, groebner
from .valfield import INFINITY, DomainError, RatFunc, ValuedField, is_prime


class ZmodScalar:
    """Residue class modulo ``p^l`` with canonical representative in ``[0, p^l)``."""

    __slots__ = ("value", "ring")

    def __init__(self, value: int, ring: "ZmodRing"):
        self.ring = ring
        self.value = value % ring.modulus

    def _coerce(self, other):
        if isinstance(other, ZmodScalar):
            if other.ring != self.ring:
                raise DomainError(f"mixed moduli {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ZmodScalar(self.value + o, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ZmodScalar(self.value - o, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ZmodScalar(o - self.value, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ZmodScalar(self.value * o, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return ZmodScalar(-self.value, self.ring)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self.ring.inverse(ZmodScalar(o, self.ring))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ZmodScalar):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ring.modulus
        return False

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"ZmodScalar({self.value} mod {self.ring.modulus})"


@dataclass(frozen=True)
class ZmodRing(ValuedField):
    """``Z/p^l``; ``val`` is the exponent of ``p`` in the representative."""

    p: int
    l: int
    kind = "ZMOD"
    is_field = False

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p={self.p} is not prime")
        if self.l < 1:
            raise DomainError("l must be a positive integer")

    @property
    def modulus(self) -> int:
        return self.p ** self.l

    def convert(self, x):
        if isinstance(x, ZmodScalar):
            if x.ring != self:
                raise DomainError(f"mixed moduli {self} and {x.ring}")
            return x
        if isinstance(x, int):
            return ZmodScalar(x, self)
        if isinstance(x, RatFunc):
            raise DomainError("cannot convert a rational function to Z/p^l")
        x = Fraction(x)
        return ZmodScalar(x.numerator, self) * self.inverse(ZmodScalar(x.denominator, self))

    def elements(self):
        return [ZmodScalar(k, self) for k in range(self.modulus)]

    def _split(self, a):
        """``(v, u)`` with ``a = p^v * u`` and ``u`` a unit representative."""
        n = self.convert(a).value
        if n == 0:
            return INFINITY, 0
        v = 0
        while n % self.p == 0:
            n //= self.p
            v += 1
        return v, n

    def val(self, a):
        return self._split(a)[0]

    def unit_residue(self, a) -> int:
        v, u = self._split(a)
        if v == INFINITY:
            raise DomainError("residue of zero undefined")
        return u % self.p

    def residue_mul(self, a, b):
        return a * b % self.p

    def divides(self, a, b) -> bool:
        return self.val(a) <= self.val(b)

    def quotient(self, b, a):
        va, ua = self._split(a)
        vb, ub = self._split(b)
        if va == INFINITY:
            raise ZeroDivisionError("division by zero in Z/p^l")
        if vb == INFINITY:
            return self.zero()
        if va > vb:
            raise DomainError(f"{a} does not divide {b} in Z/{self.modulus}")
        c = self.p ** (vb - va) * ub * pow(ua, -1, self.modulus)
        return ZmodScalar(c, self)

    def coeff_lcm(self, a, b):
        return ZmodScalar(self.p ** max(self.val(a), self.val(b)), self)

    def inverse(self, a):
        a = self.convert(a)
        if a.value % self.p == 0:
            raise DomainError(f"{a.value} is not a unit in Z/{self.modulus}")
        return ZmodScalar(pow(a.value, -1, self.modulus), self)

    def __str__(self):
        return f"Zmod p={self.p} l={self.l}"


def v_zmod(a: ZmodScalar):
    """Exponent of ``p`` in ``a``; ``INFINITY`` for zero."""
    return a.ring.val(a)


def zmod_term_compare(t1, t2, w, ord="lex", convention="min"):
    o = w if isinstance(w, freemod.WeightedTermOrder) else freemod.WeightedTermOrder.make(w, ord, convention)
    return freemod.compare_terms(t1, t2, o, t1.coeff.ring)


def zmod_divides(a, b) -> bool:
    return freemod.term_divides(a, b, a.coeff.ring)


def zmod_lcm(a, b):
    """Coefficient-bearing LCM term of two nonzero terms, or None (zero)."""
    mono = groebner.lcm_mod(a, b)
    if mono is None:
        return None
    ring = a.coeff.ring
    return freemod.Term(ring.coeff_lcm(a.coeff, b.coeff), mono)


def _order(w, ord, convention):
    if isinstance(w, freemod.WeightedTermOrder):
        return w
    return freemod.WeightedTermOrder.make(w, ord, convention)


def zmod_normal_form(f, S, w, ord="lex", convention="min", **kw):
    return division.normal_form(f, S, _order(w, ord, convention), **kw)


def zmod_s_form(f, g, w, ord="lex", convention="min"):
    return groebner.s_form(f, g, _order(w, ord, convention))


def zmod_buchberger(B, w, ord="lex", convention="min", ambient=None, annihilators=False):
    return groebner.buchberger(B, _order(w, ord, convention), ambient=ambient,
                               annihilators=annihilators)


def zmod_is_groebner(G, w, ord="lex", convention="min"):
    return groebner.is_groebner(G, _order(w, ord, convention))
