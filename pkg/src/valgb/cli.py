"""Command-line front end.

Problem files are line oriented, one ``key: value`` per line::

    # Example: two generators in Q^2[x, y] with the 2-adic valuation
    field: Qp p=2
    vars: x, y
    rank: 2
    weight: 1, 1
    order: lex
    convention: max
    gen: [2*x^2, 3*y^2]
    gen: [2*x, 5*y]
    target: [5*x^3, 7*y^3]

``field`` is one of ``Qp p=<prime>``, ``Qt``, ``trivial`` or
``Zmod p=<prime> l=<int>``.  ``weight`` defaults to all zeros, ``order`` to
``lex``, ``convention`` to ``min`` and ``rank`` to 1.  ``gen`` may repeat;
blank lines and ``#`` comments are ignored.

Exit status is 0 on success, 1 on bad input and 2 when ``verify`` finds a
problem.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .division import STRATEGIES, DivisionError, normal_form
from .freemod import MONOMIAL_ORDERS, Ambient, ModElement, WeightedTermOrder, initial_form_w, initial_term
from .groebner import buchberger, initial_module, minimalize, s_form, unreduced_pairs
from .hilbert import format_polynomial, hilbert_function, hilbert_polynomial
from .oracle import check_initials_complete, membership_probe
from .textio import ParseError, format_element, format_residue_form, format_term, parse_element, parse_scalar
from .valfield import INFINITY, DomainError, parse_field_spec

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
KEYS = ("field", "vars", "rank", "weight", "order", "convention", "gen", "target")


class ProblemError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg, self.line, self.col = msg, line, col
        where = []
        if line is not None:
            where.append(f"line {line}")
        if col is not None:
            where.append(f"column {col}")
        super().__init__(f"{', '.join(where)}: {msg}" if where else msg)


@dataclass
class Problem:
    ambient: Ambient
    order: WeightedTermOrder
    generators: list = field(default_factory=list)
    target: ModElement | None = None
    field_text: str = ""

    def header(self) -> str:
        w = ", ".join(str(x) for x in self.order.weights)
        return (f"# field: {self.field_text} | vars: {', '.join(self.ambient.names)} | "
                f"rank: {self.ambient.rank} | weight: ({w}) | order: {self.order.order.name} | "
                f"convention: {self.order.convention}")


def _element(text, ambient, lineno, offset):
    try:
        return parse_element(text, ambient)
    except ParseError as exc:
        col = offset + exc.col - 1 if exc.col is not None else None
        raise ProblemError(exc.msg, lineno, col) from None
    except (DomainError, ZeroDivisionError) as exc:
        raise ProblemError(str(exc), lineno, offset) from None


def parse_problem(text: str, homogeneous: bool = True) -> Problem:
    """Parse a problem file; errors carry line and column numbers.

    With ``homogeneous`` every generator must be homogeneous.
    """
    entries: dict = {}
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ProblemError("expected 'key: value'", lineno, col)
        key, value = line.split(":", 1)
        k = key.strip().lower()
        if k not in KEYS:
            raise ProblemError(f"unknown key {key.strip()!r}", lineno, len(key) - len(key.lstrip()) + 1)
        offset = len(key) + 2 + len(value) - len(value.lstrip())
        item = (value.strip(), lineno, offset)
        if k == "gen":
            gens.append(item)
        elif k in entries:
            raise ProblemError(f"duplicate key {k!r}", lineno, 1)
        else:
            entries[k] = item

    if "field" not in entries:
        raise ProblemError("missing 'field' line")
    ftext, fline, fcol = entries["field"]
    try:
        domain = parse_field_spec(ftext)
    except DomainError as exc:
        raise ProblemError(str(exc), fline, fcol) from None

    names = ()
    if "vars" in entries:
        vtext, vline, vcol = entries["vars"]
        names = tuple(v.strip() for v in vtext.replace(",", " ").split())
        for v in names:
            if not v.isidentifier() or v == "t" and domain.symbol == "t" or v.startswith("e") and v[1:].isdigit():
                raise ProblemError(f"bad variable name {v!r}", vline, vcol + vtext.find(v))
        if len(set(names)) != len(names):
            raise ProblemError("repeated variable name", vline, vcol)

    rank = 1
    if "rank" in entries:
        rtext, rline, rcol = entries["rank"]
        if not rtext.isdigit() or int(rtext) < 1:
            raise ProblemError("rank must be a positive integer", rline, rcol)
        rank = int(rtext)

    weights = (0,) * len(names)
    if "weight" in entries:
        wtext, wline, wcol = entries["weight"]
        parts = [p for p in wtext.replace(",", " ").split()]
        try:
            weights = tuple(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError):
            raise ProblemError(f"bad weight vector {wtext!r}", wline, wcol) from None
        if len(weights) != len(names):
            raise ProblemError(f"weight has {len(weights)} entries for {len(names)} variables", wline, wcol)

    order_name = entries.get("order", ("lex", None, None))
    if order_name[0] not in MONOMIAL_ORDERS:
        raise ProblemError(f"unknown order {order_name[0]!r}", order_name[1], order_name[2])
    conv = entries.get("convention", ("min", None, None))
    if conv[0] not in ("min", "max"):
        raise ProblemError(f"convention must be min or max, got {conv[0]!r}", conv[1], conv[2])

    amb = Ambient(domain, names, rank)
    order = WeightedTermOrder.make(weights, order_name[0], conv[0])
    prob = Problem(amb, order, field_text=str(domain))
    for k, (gtext, gline, gcol) in enumerate(gens, start=1):
        g = _element(gtext, amb, gline, gcol)
        if not g:
            raise ProblemError(f"generator {k} is zero", gline, gcol)
        if homogeneous and not g.is_homogeneous():
            raise ProblemError(f"generator {k} is not homogeneous", gline, gcol)
        prob.generators.append(g)
    if "target" in entries:
        ttext, tline, tcol = entries["target"]
        prob.target = _element(ttext, amb, tline, tcol)
    return prob


def load_problem(path: str, homogeneous: bool = True) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text, homogeneous)


# ---------------------------------------------------------------------------
# commands


def _fmt(f, order):
    return format_element(f, order)


def _mono(m, ambient):
    return format_term(ambient.domain.one(), m, ambient)[1]


def cmd_val(args, out):
    if args.field:
        domain = parse_field_spec(args.field)
    elif args.file:
        domain = load_problem(args.file, homogeneous=False).ambient.domain
    else:
        raise ProblemError("val needs --field or a problem file")
    try:
        a = parse_scalar(args.scalar, domain)
    except ParseError as exc:
        raise ProblemError(exc.msg, None, exc.col) from None
    v = domain.val(a)
    print("inf" if v == INFINITY else str(v), file=out)
    return EXIT_OK


def cmd_initial(args, out):
    prob = load_problem(args.file, homogeneous=False)
    o, amb = prob.order, prob.ambient
    print(prob.header(), file=out)
    for k, g in enumerate(prob.generators, start=1):
        t = initial_term(g, o)
        print(f"g{k}: {_fmt(g, o)}", file=out)
        print(f"  in_w: {format_residue_form(initial_form_w(g, o), amb, o)}", file=out)
        print(f"  in_wprec: {_fmt(ModElement(amb, {t.mono: t.coeff}), o)}", file=out)
    return EXIT_OK


def _target(args, prob):
    if args.target is not None:
        return _element(args.target, prob.ambient, None, 1)
    if prob.target is None:
        raise ProblemError("no target: pass --target or add a 'target:' line")
    return prob.target


def cmd_nf(args, out):
    prob = load_problem(args.file)
    f = _target(args, prob)
    if not f.is_homogeneous():
        raise ProblemError("target is not homogeneous")
    o = prob.order
    res = normal_form(f, prob.generators, o, strategy=args.strategy)
    print(prob.header(), file=out)
    print(f"f: {_fmt(f, o)}", file=out)
    print(f"r: {_fmt(res.remainder, o)}", file=out)
    for k, h in enumerate(res.quotients, start=1):
        print(f"h{k}: {_fmt(h, o)}", file=out)
    return EXIT_OK


def cmd_sform(args, out):
    prob = load_problem(args.file)
    G = prob.generators
    for idx in (args.i, args.j):
        if not 1 <= idx <= len(G):
            raise ProblemError(f"generator index {idx} out of range 1..{len(G)}")
    print(prob.header(), file=out)
    print(f"S({args.i},{args.j}): {_fmt(s_form(G[args.i - 1], G[args.j - 1], prob.order), prob.order)}", file=out)
    return EXIT_OK


def cmd_gb(args, out):
    prob = load_problem(args.file)
    G = buchberger(prob.generators, prob.order, prob.ambient, annihilators=args.annihilators)
    if args.minimal:
        G = minimalize(G)
    print(prob.header(), file=out)
    print(f"# {len(G)} element(s)", file=out)
    for k, g in enumerate(G, start=1):
        print(f"g{k}: {_fmt(g, prob.order)}", file=out)
    mons = ", ".join(_mono(m, prob.ambient) for m in initial_module(G))
    print(f"initial module: <{mons}>", file=out)
    return EXIT_OK


def cmd_hilbert(args, out):
    prob = load_problem(args.file)
    if not prob.ambient.domain.is_field:
        raise ProblemError("Hilbert functions need a coefficient field")
    G = buchberger(prob.generators, prob.order, prob.ambient)
    H = hilbert_function(G, args.max_degree)
    print(prob.header(), file=out)
    for k, v in H.values.items():
        print(f"HF({k}) = {v}", file=out)
    try:
        poly, d0 = hilbert_polynomial(H)
        print(f"HP(d) = {format_polynomial(poly)} for d >= {d0} (empirical stabilization)", file=out)
    except ValueError:
        print("HP(d) = unknown (increase max degree)", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    prob = load_problem(args.file)
    o = prob.order
    G = buchberger(prob.generators, o, prob.ambient, annihilators=args.annihilators)
    print(prob.header(), file=out)
    ok = True
    bad = unreduced_pairs(G, o)
    print(f"basis size: {len(G)}", file=out)
    print(f"pairwise S-form remainders zero: {'yes' if not bad else 'no ' + str(bad)}", file=out)
    ok &= not bad
    probe = membership_probe(G, prob.generators, args.trials, args.seed)
    print(f"membership probe ({args.trials} trials, seed {args.seed}): {'pass' if probe else 'FAIL'}", file=out)
    if not probe:
        print(f"  counterexample: {_fmt(probe.counterexample, o)}", file=out)
        print(f"  remainder: {_fmt(probe.remainder, o)}", file=out)
    ok &= bool(probe)
    if prob.ambient.domain.is_field:
        rep = check_initials_complete(G, prob.generators, args.max_degree)
        for deg, covered, rank in rep.rows:
            mark = "ok" if covered == rank else "MISMATCH"
            print(f"degree {deg}: under initials {covered}, slice rank {rank} {mark}", file=out)
        ok &= rep.ok
    else:
        print("slice rank check skipped (coefficients are not a field)", file=out)
    print("verified" if ok else "verification FAILED", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="valgb", description="Groebner bases over valued fields and Z/p^l.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("val", help="valuation of a scalar")
    p.add_argument("scalar")
    p.add_argument("file", nargs="?", help="problem file supplying the field")
    p.add_argument("--field", help="field spec, e.g. 'Qp p=3'")
    p.set_defaults(func=cmd_val)

    p = sub.add_parser("initial", help="initial forms and initial terms of the generators")
    p.add_argument("file")
    p.set_defaults(func=cmd_initial)

    p = sub.add_parser("nf", help="normal form of the target")
    p.add_argument("file")
    p.add_argument("--target", help="element to reduce (overrides the file)")
    p.add_argument("--strategy", choices=STRATEGIES, default="classic")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("sform", help="S-form of generators i and j (1-based)")
    p.add_argument("file")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_sform)

    p = sub.add_parser("gb", help="Groebner basis by pair completion")
    p.add_argument("file")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--annihilators", action="store_true",
                   help="over Z/p^l, also reduce p-power multiples that kill initial terms")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("hilbert", help="Hilbert function and polynomial")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", help="check a computed basis against independent oracles")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--annihilators", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ProblemError, ParseError, DomainError, DivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
