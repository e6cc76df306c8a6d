"""Exact coefficient fields carrying a discrete valuation.

Three fields are provided:

* :class:`PAdicField` -- the rationals with the ``p``-adic valuation,
* :class:`TAdicField` -- rational functions ``Q(t)`` with the ``t``-adic
  valuation (order of vanishing at ``t = 0``),
* :class:`TrivialField` -- the rationals with the trivial valuation.

Field elements are plain Python numbers where possible: ``Fraction`` for the
rational fields and :class:`RatFunc` for ``Q(t)``.  The field object knows how
to take valuations and residues; the elements only know arithmetic.  Valuations
are returned as ``Fraction`` (finite) or :data:`INFINITY`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INFINITY = math.inf

ValRat = Union[Fraction, float]


class DomainError(ValueError):
    """Raised on mixed-domain arithmetic or an operation undefined in a domain."""


def as_valrat(x) -> ValRat:
    """Coerce to an exact valuation value (``Fraction`` or ``INFINITY``)."""
    if x == INFINITY:
        return INFINITY
    if isinstance(x, float):
        raise TypeError("valuation values must be exact, got a float")
    return Fraction(x)


def _multiplicity(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# Dense univariate integer polynomials (coefficient tuples, low degree first).


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _content(a) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _primitive(a):
    if not a:
        return a
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` over the integers."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r = list(_trim(r))
    return tuple(r)


def _pgcd(a, b):
    """Primitive gcd over Z[t] (positive leading coefficient)."""
    a, b = _primitive(a), _primitive(b)
    while b:
        a, b = b, _primitive(_prem(a, b))
    return a


def _pdiv_exact(a, b):
    """Quotient of ``a`` by ``b`` when ``b`` divides ``a`` in Z[t]."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(len(a) - db, 0)
    while a and len(a) - 1 >= db:
        c, rem = divmod(a[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a = list(_trim(a))
    if a:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def _ord(a) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("order of the zero polynomial")


def _format_upoly(a, var="t") -> str:
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        out += sign + mono
    return out


class RatFunc:
    """Element of ``Q(t)`` stored as a reduced quotient of integer polynomials.

    Canonical form: ``gcd(num, den) = 1`` over ``Q[t]``, the joint integer
    content of ``num`` and ``den`` is 1, and ``den`` has a positive leading
    coefficient.  Zero is ``0/1``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,)):
        if isinstance(num, int):
            num = (num,)
        if isinstance(den, int):
            den = (den,)
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = (), (1,)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
            c = math.gcd(_content(num), _content(den))
            if den[-1] < 0:
                c = -c
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((0, 1))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc((other,))
        if isinstance(other, Fraction):
            return RatFunc((other.numerator,), (other.denominator,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(_padd(self.num, other.num), self.den)
        return RatFunc(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den, r._hash = _pneg(self.num), self.den, None
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc((1,)) / (self ** (-k))
        out = RatFunc((1,))
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.den == (1,) and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def __str__(self):
        if self.den == (1,):
            return _format_upoly(self.num)
        return f"({_format_upoly(self.num)})/({_format_upoly(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# Fields


class ValuedField:
    """Common interface of a coefficient domain with a valuation.

    Subclasses implement ``val``, ``unit_residue`` and the element helpers
    below.  ``is_field`` is False only for the ``Z/p^l`` ring.
    """

    kind = "ABSTRACT"
    is_field = True
    symbol: str | None = None

    def val(self, a) -> ValRat:
        raise NotImplementedError

    def unit_residue(self, a):
        raise NotImplementedError

    def residue_mul(self, a, b):
        return a * b

    def convert(self, x):
        raise NotImplementedError

    def zero(self):
        return self.convert(0)

    def one(self):
        return self.convert(1)

    def generator(self):
        """The coefficient symbol (``t``) for function fields, else None."""
        return None

    # divisibility helpers used by division and S-forms ---------------------
    def divides(self, a, b) -> bool:
        """Whether nonzero ``a`` divides ``b`` in the coefficient domain."""
        return True

    def quotient(self, b, a):
        """Some ``c`` with ``c * a == b``; exact."""
        return b / a

    def coeff_lcm(self, a, b):
        """Normalized least common multiple of two nonzero coefficients."""
        return self.one()

    def inverse(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self.one() / a

    def parse(self, text: str):
        from .textio import parse_scalar

        return parse_scalar(text, self)

    def format(self, a) -> str:
        return str(a)


def coeff_size(c) -> int:
    """Rough storage size of a coefficient in bits (0 for modular scalars)."""
    if isinstance(c, Fraction):
        return c.numerator.bit_length() + c.denominator.bit_length()
    if isinstance(c, RatFunc):
        return sum(abs(x).bit_length() + 1 for x in c.num + c.den)
    if isinstance(c, int):
        return c.bit_length()
    return 0


def _frac_val(a: Fraction, p: int) -> ValRat:
    if a == 0:
        return INFINITY
    return Fraction(_multiplicity(a.numerator, p) - _multiplicity(a.denominator, p))


@dataclass(frozen=True)
class PAdicField(ValuedField):
    """``Q`` with the ``p``-adic valuation; residue field ``F_p``."""

    p: int
    kind = "P_ADIC"

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p={self.p} is not prime")

    def convert(self, x):
        if isinstance(x, RatFunc):
            raise DomainError("cannot convert a rational function to Q")
        return Fraction(x)

    def val(self, a) -> ValRat:
        return _frac_val(Fraction(a), self.p)

    def unit_residue(self, a) -> int:
        a = Fraction(a)
        if a == 0:
            raise DomainError("residue of zero undefined")
        p = self.p
        num, den = a.numerator, a.denominator
        num //= p ** _multiplicity(num, p)
        den //= p ** _multiplicity(den, p)
        return num * pow(den, -1, p) % p

    def residue_mul(self, a, b):
        return a * b % self.p

    def __str__(self):
        return f"Qp p={self.p}"


@dataclass(frozen=True)
class TrivialField(ValuedField):
    """``Q`` with the trivial valuation (every nonzero element has value 0)."""

    kind = "TRIVIAL"

    def convert(self, x):
        if isinstance(x, RatFunc):
            raise DomainError("cannot convert a rational function to Q")
        return Fraction(x)

    def val(self, a) -> ValRat:
        return INFINITY if a == 0 else Fraction(0)

    def unit_residue(self, a):
        if a == 0:
            raise DomainError("residue of zero undefined")
        return Fraction(a)

    def __str__(self):
        return "trivial"


@dataclass(frozen=True)
class TAdicField(ValuedField):
    """``Q(t)`` with ``val = ord_t(num) - ord_t(den)``; residue field ``Q``."""

    kind = "T_ADIC"
    symbol = "t"

    def convert(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return RatFunc((x,))
        x = Fraction(x)
        return RatFunc((x.numerator,), (x.denominator,))

    def generator(self):
        return RatFunc.t()

    def val(self, a) -> ValRat:
        a = self.convert(a)
        if not a:
            return INFINITY
        return Fraction(_ord(a.num) - _ord(a.den))

    def unit_residue(self, a) -> Fraction:
        a = self.convert(a)
        if not a:
            raise DomainError("residue of zero undefined")
        return Fraction(a.num[_ord(a.num)], a.den[_ord(a.den)])

    def __str__(self):
        return "Qt"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Tagged scalars


@dataclass(frozen=True)
class ValuedScalar:
    """A coefficient together with its domain.

    Convenience wrapper for interactive use; the engines work on bare elements
    plus a domain object.
    """

    domain: ValuedField
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.domain.convert(self.value))

    def _check(self, other):
        if not isinstance(other, ValuedScalar):
            other = ValuedScalar(self.domain, other)
        if other.domain != self.domain:
            raise DomainError(f"domain mismatch: {self.domain} vs {other.domain}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return ValuedScalar(self.domain, self.value + other.value)

    def __sub__(self, other):
        other = self._check(other)
        return ValuedScalar(self.domain, self.value - other.value)

    def __mul__(self, other):
        other = self._check(other)
        return ValuedScalar(self.domain, self.value * other.value)

    def __truediv__(self, other):
        other = self._check(other)
        if not other.value:
            raise ZeroDivisionError("division by zero")
        return ValuedScalar(self.domain, self.domain.quotient(self.value, other.value))

    def __neg__(self):
        return ValuedScalar(self.domain, -self.value)

    def __bool__(self):
        return bool(self.value)

    def val(self) -> ValRat:
        return self.domain.val(self.value)

    def unit_residue(self):
        return self.domain.unit_residue(self.value)

    def __str__(self):
        return self.domain.format(self.value)


def val(a: ValuedScalar) -> ValRat:
    return a.val()


def unit_residue(a: ValuedScalar):
    if not a.value:
        raise DomainError("residue of zero undefined")
    return a.unit_residue()


def arith(a: ValuedScalar, b: ValuedScalar, op: str) -> ValuedScalar:
    """Apply ``op`` in ``{'+', '-', '*', '/'}`` to two scalars of one domain."""
    ops = {"+": "__add__", "-": "__sub__", "*": "__mul__", "/": "__truediv__",
           "×": "__mul__", "÷": "__truediv__", "−": "__sub__"}
    if op not in ops:
        raise ValueError(f"unknown operator {op!r}")
    if a.domain != b.domain:
        raise DomainError(f"domain mismatch: {a.domain} vs {b.domain}")
    return getattr(a, ops[op])(b)


_FIELD_RE = re.compile(r"^\s*(\w+)((?:\s+\w+\s*=\s*\d+)*)\s*$")


def parse_field_spec(text: str) -> ValuedField:
    """Parse ``Qp p=3``, ``Qt``, ``trivial`` or ``Zmod p=2 l=3``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise DomainError(f"bad field spec {text!r}")
    name = m.group(1)
    params = dict(
        (k.strip(), int(v)) for k, v in re.findall(r"(\w+)\s*=\s*(\d+)", m.group(2))
    )
    try:
        if name == "Qp":
            return PAdicField(params["p"])
        if name == "Qt":
            return TAdicField()
        if name.lower() == "trivial":
            return TrivialField()
        if name == "Zmod":
            from .zmodgb import ZmodRing

            return ZmodRing(params["p"], params["l"])
    except KeyError as exc:
        raise DomainError(f"field spec {text!r} is missing parameter {exc}") from None
    raise DomainError(f"unknown field {name!r}")
