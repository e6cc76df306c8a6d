"""Text syntax for scalars and module elements.

Elements are written either as a bracketed vector of polynomial components,
``[5*x^3, 7*y^3]``, or as a sum of terms with explicit basis vectors,
``5*x^3*e1 + 7*y^3*e2``.  For rank 1 the basis vector may be omitted.  Over
``Q(t)`` the coefficient symbol ``t`` may appear anywhere a number can,
e.g. ``(3+6*t^2)/(t^3)*x``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .valfield import RatFunc


class ParseError(ValueError):
    def __init__(self, msg, col=None, line=None):
        self.msg, self.col, self.line = msg, col, line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if col is not None:
            where.append(f"column {col}")
        super().__init__(f"{', '.join(where)}: {msg}" if where else msg)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],]))"
)
_BASIS = re.compile(r"^e(\d+)$")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    """Recursive descent over ``+ - * / ^``; values are dicts
    ``(exps, pos) -> coeff`` with ``pos = 0`` for basis-free parts."""

    def __init__(self, text, domain, names, rank):
        self.toks = _tokenize(text)
        self.i = 0
        self.dom = domain
        self.names = {v: k for k, v in enumerate(names)}
        self.n = len(names)
        self.rank = rank
        self.zero_exps = (0,) * self.n

    # helpers -------------------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[1] != op:
            raise ParseError(f"expected {op!r}, got {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def const(self, c):
        c = self.dom.convert(c)
        return {(self.zero_exps, 0): c} if c else {}

    @staticmethod
    def add(a, b, sign=1):
        out = dict(a)
        for k, c in b.items():
            if sign < 0:
                c = -c
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def mul(self, a, b, col):
        out: dict = {}
        for (ea, pa), ca in a.items():
            for (eb, pb), cb in b.items():
                if pa and pb:
                    raise ParseError("product of two basis vectors", col)
                key = (tuple(x + y for x, y in zip(ea, eb)), pa or pb)
                c = ca * cb
                if key in out:
                    c = out[key] + c
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return out

    # grammar ---------------------------------------------------------------
    def parse(self):
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return val

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        val = self.term()
        if sign < 0:
            val = {k: -c for k, c in val.items()}
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            val = self.add(val, self.term(), 1 if op == "+" else -1)
        return val

    def term(self):
        val = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, col = self.take()
            rhs = self.factor()
            if op == "*":
                val = self.mul(val, rhs, col)
            else:
                val = self.divide(val, rhs, col)
        return val

    def divide(self, a, b, col):
        if not b:
            raise ParseError("division by zero", col)
        if list(b) != [(self.zero_exps, 0)]:
            raise ParseError("can only divide by a nonzero scalar", col)
        try:
            inv = self.dom.inverse(b[(self.zero_exps, 0)])
        except (ZeroDivisionError, ArithmeticError, ValueError) as exc:
            raise ParseError(str(exc), col) from None
        return self.mul(a, {(self.zero_exps, 0): inv}, col)

    def factor(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return {k: -c for k, c in self.factor().items()}
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            col = self.take()[2]
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num" or "." in tok[1]:
                raise ParseError("exponent must be an integer", tok[2])
            k = int(tok[1])
            if neg:
                base = self.divide(self.const(1), base, col)
            out = self.const(1)
            for _ in range(k):
                out = self.mul(out, base, col)
            return out
        return base

    def atom(self):
        kind, text, col = self.take()
        if kind == "num":
            return self.const(Fraction(text) if "." in text else int(text))
        if kind == "id":
            if text in self.names:
                exps = [0] * self.n
                exps[self.names[text]] = 1
                return {(tuple(exps), 0): self.dom.one()}
            if self.dom.symbol is not None and text == self.dom.symbol:
                return {(self.zero_exps, 0): self.dom.generator()}
            m = _BASIS.match(text)
            if m:
                k = int(m.group(1))
                if not 1 <= k <= self.rank:
                    raise ParseError(f"basis vector {text} outside rank {self.rank}", col)
                return {(self.zero_exps, k): self.dom.one()}
            raise ParseError(f"unknown symbol {text!r}", col)
        if text == "(":
            val = self.expr()
            self.expect(")")
            return val
        if text == "[":
            comps = [self.expr()]
            while self.peek()[1] == ",":
                self.take()
                comps.append(self.expr())
            self.expect("]")
            if len(comps) != self.rank:
                raise ParseError(f"vector has {len(comps)} components, rank is {self.rank}", col)
            out: dict = {}
            for k, comp in enumerate(comps, start=1):
                for (e, p), c in comp.items():
                    if p:
                        raise ParseError("basis vector inside a vector component", col)
                    out = self.add(out, {(e, k): c})
            return out
        raise ParseError(f"unexpected {text or 'end of input'!r}", col)


def parse_scalar(text: str, domain):
    p = _Parser(text, domain, (), 1)
    val = p.parse()
    if not val:
        return domain.zero()
    if list(val) != [((), 0)]:
        raise ParseError(f"{text!r} is not a scalar")
    return val[((), 0)]


def parse_element(text: str, ambient, line=None):
    from .freemod import ModElement, ModMonomial

    try:
        val = _Parser(text, ambient.domain, ambient.names, ambient.rank).parse()
    except ParseError as exc:
        if line is not None:
            raise ParseError(exc.msg, exc.col, line) from None
        raise
    terms = {}
    for (e, p), c in val.items():
        if p == 0:
            if ambient.rank != 1:
                raise ParseError("term without basis vector in a module of rank > 1", None, line)
            p = 1
        key = ModMonomial(e, p)
        c = terms[key] + c if key in terms else c
        if c:
            terms[key] = c
        else:
            terms.pop(key, None)
    return ModElement(ambient, terms)


# ---------------------------------------------------------------------------
# Printing


def format_scalar(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def _coeff_parts(c):
    """Split a coefficient into ``(negative, text)`` for term printing."""
    if isinstance(c, RatFunc) and c.is_constant():
        c = Fraction(c.num[0] if c.num else 0, c.den[0])
    if isinstance(c, RatFunc):
        s = str(c)
        return False, s if c.den != (1,) else f"({s})"
    if isinstance(c, Fraction):
        return c < 0, str(abs(c))
    return False, str(c)


def format_monomial(exps, names) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_term(c, mono, ambient) -> tuple:
    neg, ctext = _coeff_parts(c)
    mtext = format_monomial(mono.exps, ambient.names)
    if ambient.rank > 1:
        mtext = f"{mtext}*e{mono.pos}" if mtext else f"e{mono.pos}"
    if not mtext:
        return neg, ctext
    if ctext == "1":
        return neg, mtext
    return neg, f"{ctext}*{mtext}"


def format_element(f, order=None) -> str:
    """Print ``f`` with terms ascending in ``order`` (initial term first)."""
    from .freemod import WeightedTermOrder, sorted_terms

    if not f:
        return "0"
    if order is None:
        order = WeightedTermOrder((0,) * f.ambient.nvars)
    out = ""
    for i, t in enumerate(sorted_terms(f, order)):
        neg, text = format_term(t.coeff, t.mono, f.ambient)
        if i == 0:
            out = f"-{text}" if neg else text
        else:
            out += f" - {text}" if neg else f" + {text}"
    return out


def format_residue_form(form: dict, ambient, order=None) -> str:
    """Print an initial form (residue coefficients) in module-monomial order."""
    from .freemod import MonomialOrder

    if not form:
        return "0"
    mo = order.order if order is not None else MonomialOrder()
    out = ""
    for i, m in enumerate(sorted(form, key=mo.desc_key)):
        c = form[m]
        if isinstance(c, int):
            c = Fraction(c)
        neg, text = format_term(c, m, ambient)
        if i == 0:
            out = f"-{text}" if neg else text
        else:
            out += f" - {text}" if neg else f" + {text}"
    return out
