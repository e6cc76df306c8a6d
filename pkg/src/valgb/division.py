"""Normal forms of homogeneous module elements with valuation-aware initial terms.

The reduction is Mora-like: besides the input generators, the divisor set
``D`` collects earlier intermediate elements ``q``.  Reducing by such a
stashed ``q_m`` subtracts ``c`` times the whole identity
``f = q_m + sum h_i,m g_i + r_m`` recorded when it was stashed, then divides
everything by the unit ``1 - c``.  Termination relies on homogeneity, so
non-homogeneous input is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .valfield import coeff_size
from .freemod import (
    LT,
    AmbientMismatch,
    ModElement,
    Term,
    WeightedTermOrder,
    compare_terms,
    ecart,
    initial_term,
    monomial_divides,
    term_divides,
)

MAX_ITERATIONS = 10**6
DEFAULT_BUDGET = 40
SIZE_FACTOR = 4  # exact finish once q's coefficients outgrow the input this much


class DivisionError(ValueError):
    """Bad input to the normal form algorithm."""


class RescaleError(RuntimeError):
    """The unit ``1 - c`` needed when reducing by a stashed element is missing."""


@dataclass
class DivisorEntry:
    element: ModElement
    initial: Term
    generator: int | None = None
    snapshot: tuple | None = None  # (quotients, remainder) at stash time


@dataclass
class DivisionResult:
    remainder: ModElement
    quotients: list
    iterations: int = 0
    rescales: int = 0
    stashed: int = 0
    rescale_vals: list = field(default_factory=list)
    finished_exactly: bool = False


def _validate(f: ModElement, S, o: WeightedTermOrder):
    if len(o.weights) != f.ambient.nvars:
        raise AmbientMismatch("weight vector length does not match the variable count")
    if not f.is_homogeneous():
        raise DivisionError("dividend is not homogeneous")
    for i, g in enumerate(S, start=1):
        if g.ambient != f.ambient:
            raise AmbientMismatch(f"divisor {i} lives in a different ambient")
        if not g:
            raise DivisionError(f"divisor {i} is zero")
        if not g.is_homogeneous():
            raise DivisionError(f"divisor {i} is not homogeneous")


STRATEGIES = ("stash-all", "classic", "linear")


def normal_form(f: ModElement, S, o: WeightedTermOrder, max_iterations: int = MAX_ITERATIONS,
                strategy: str = "classic", budget: int | None = DEFAULT_BUDGET) -> DivisionResult:
    """Divide ``f`` by the list ``S``.

    Returns remainder ``r`` and polynomial quotients ``h_i`` with
    ``f = sum h_i g_i + r``, no term of ``r`` divisible by any initial term of
    ``S``, and all of ``r``, ``h_i g_i`` no smaller than ``in(f)``.

    Among admissible divisors one of least ecart is used.  With
    ``strategy="classic"`` the current ``q`` is stashed only when that ecart is
    positive and ties go to the earliest inserted divisor.  On its own this can
    cycle forever.  ``"stash-all"`` stashes every ``q`` and, among least-ecart
    divisors, prefers one whose shifted support lies inside ``supp(q)``; a
    repeated (support, initial monomial) pair then always shrinks the support,
    which bounds the run, though the bound can be astronomically large.

    Over a field the loop is therefore given ``budget`` iterations (fewer if
    the coefficients of ``q`` swell past ``SIZE_FACTOR`` times those of the
    input), after which the leftover ``q`` is divided exactly by linear algebra in its
    degree (see :func:`exact_division`).  ``budget=None`` disables this and
    relies on ``max_iterations`` alone; ``strategy="linear"`` skips the loop.
    Over ``Z/p^l`` weights are bounded and the loop always ends quickly, so
    the budget is ignored.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    stash_all = strategy != "classic"
    S = list(S)
    _validate(f, S, o)
    amb = f.ambient
    dom = amb.domain
    pring = amb.poly_ring()
    zero_exps = (0,) * amb.nvars

    D = [DivisorEntry(g, initial_term(g, o), generator=k) for k, g in enumerate(S)]
    h = [pring.zero() for _ in S]
    q = f
    r = amb.zero()
    res = DivisionResult(r, h)
    if strategy == "linear":
        budget = 0
    if not dom.is_field:
        budget = None
    size_cap = None
    if budget is not None:
        size_cap = SIZE_FACTOR * max(_size(g) for g in [f, *S]) + 64

    while q:
        if budget is not None and (res.iterations >= budget or _size(q) > size_cap):
            extra_h, extra_r = exact_division(q, S, o, inits=[e.initial for e in D[:len(S)]])
            h = [hi + ei for hi, ei in zip(h, extra_h)]
            r = r + extra_r
            res.finished_exactly = True
            break
        res.iterations += 1
        if res.iterations > max_iterations:
            raise RuntimeError("normal form iteration guard exceeded")
        iq = initial_term(q, o)
        best, best_key = None, None
        for entry in D:
            if not term_divides(entry.initial, iq, dom):
                continue
            e = ecart(entry.element, q)
            if stash_all:
                key = (e, not _inside(entry, iq, q))
            else:
                key = (e,)
            if best is None or key < best_key:
                best, best_key = entry, key
                if key == (0, False) or key == (0,):
                    break
        best_ecart = best_key[0] if best is not None else None

        if best is None:
            D.append(DivisorEntry(q, iq, snapshot=(list(h), r)))
            res.stashed += 1
            lead = ModElement(amb, {iq.mono: iq.coeff}, _trusted=True)
            r = r + lead
            q = q - lead
            continue

        if best_ecart > 0 or stash_all:
            D.append(DivisorEntry(q, iq, snapshot=(list(h), r)))
            res.stashed += 1

        c = dom.quotient(iq.coeff, best.initial.coeff)
        gamma = tuple(a - b for a, b in zip(iq.mono.exps, best.initial.mono.exps))
        l = q - best.element.mul_term(c, gamma)

        if best.generator is not None:
            k = best.generator
            q = l
            h[k] = h[k] + pring.monomial(gamma, 1, c)
            continue

        # reduction by a stashed q_m; homogeneity forces gamma = 0
        if gamma != zero_exps:
            raise RuntimeError("stashed divisor of a different degree")
        vc = dom.val(c)
        res.rescale_vals.append(vc)
        if o.convention == "min" and not vc > 0:
            raise RescaleError(f"rescaling step with val(c) = {vc} <= 0")
        one_minus_c = dom.one() - c
        if not one_minus_c:
            raise RescaleError("rescaling step with c = 1")
        unit = dom.inverse(one_minus_c)
        h_m, r_m = best.snapshot
        q = l.scale(unit)
        h = [(hi - hm.scale(c)).scale(unit) for hi, hm in zip(h, h_m)]
        r = (r - r_m.scale(c)).scale(unit)
        res.rescales += 1

    res.remainder = r
    res.quotients = h
    return res


def exact_division(q: ModElement, S, o: WeightedTermOrder, inits=None):
    """Exact ``q = sum h_i g_i + r`` over a field by solving one linear system.

    Every divisible monomial ``m`` of degree ``deg q`` is paired with the first
    ``g_k`` whose initial monomial divides it, giving the row
    ``x^(m - in g_k) g_k``.  Starting from ``supp(q)`` the set of such monomials
    is closed under the supports of their rows and the square system is solved
    so that ``r`` has no divisible monomial left.  Scaled so that each row's
    initial coefficient is one, the matrix has entries of non-negative excess
    weight and a unitriangular residue matrix, so the solution meets the same
    initial-term bounds as the iterative reduction (min convention).
    """
    amb = q.ambient
    dom = amb.domain
    pring = amb.poly_ring()
    S = list(S)
    if inits is None:
        inits = [initial_term(g, o) for g in S]

    rows = {}  # pivot monomial -> (k, gamma, row element)
    todo = list(q.terms)
    while todo:
        m = todo.pop()
        if m in rows:
            continue
        for k, t in enumerate(inits):
            if monomial_divides(t.mono, m):
                gamma = tuple(a - b for a, b in zip(m.exps, t.mono.exps))
                row = S[k].mul_term(dom.one(), gamma)
                rows[m] = (k, gamma, row)
                todo.extend(x for x in row.terms if x not in rows)
                break

    h = [pring.zero() for _ in S]
    if not rows:
        return h, q
    piv = list(rows)
    index = {m: i for i, m in enumerate(piv)}
    n = len(piv)
    zero = dom.zero()
    # column j of the system holds row piv[j]; solve sum_j a_j row_j = q on piv
    mat = [[zero] * n + [q.terms.get(m, zero)] for m in piv]
    for j, m in enumerate(piv):
        for x, c in rows[m][2].terms.items():
            if x in index:
                mat[index[x]][j] = c
    a = _solve(mat, n, dom)

    rem = q
    for j, m in enumerate(piv):
        if not a[j]:
            continue
        k, gamma, row = rows[m]
        h[k] = h[k] + pring.monomial(gamma, 1, a[j])
        rem = rem - row.scale(a[j])
    if any(x in index for x in rem.terms):
        raise DivisionError("exact division left a divisible term")
    return h, rem


def _solve(mat, n, dom):
    """Gauss-Jordan on an augmented ``n x (n+1)`` matrix; returns the solution."""
    for col in range(n):
        p = next((i for i in range(col, n) if mat[i][col]), None)
        if p is None:
            raise DivisionError("singular system in exact division")
        mat[col], mat[p] = mat[p], mat[col]
        inv = dom.inverse(mat[col][col])
        prow = [c * inv if c else c for c in mat[col]]
        mat[col] = prow
        for i in range(n):
            if i != col and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [x - factor * y if y else x for x, y in zip(mat[i], prow)]
    return [mat[i][n] for i in range(n)]


def _size(f: ModElement) -> int:
    return max((coeff_size(c) for c in f.terms.values()), default=0)


def _inside(entry: DivisorEntry, iq: Term, q: ModElement) -> bool:
    """Whether the shifted divisor ``x^gamma * g`` has support inside ``supp(q)``."""
    gamma = tuple(a - b for a, b in zip(iq.mono.exps, entry.initial.mono.exps))
    for m in entry.element.terms:
        shifted = (tuple(x + y for x, y in zip(m.exps, gamma)), m.pos)
        if shifted not in q.terms:
            return False
    return True


@dataclass
class ContractReport:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def check_division_contract(f: ModElement, S, result: DivisionResult, o: WeightedTermOrder) -> ContractReport:
    """Re-verify a division result from scratch.

    C1: ``f == sum h_i g_i + r`` by direct polynomial multiplication.
    C3: no term of ``r`` is divisible by an initial term of ``S``.
    C2/C4: ``in(h_i g_i) >= in(f)`` and ``in(r) >= in(f)`` when nonzero.
    """
    S = list(S)
    dom = f.ambient.domain
    bad = []
    r, hs = result.remainder, result.quotients
    if len(hs) != len(S):
        return ContractReport(False, [f"C1: {len(hs)} quotients for {len(S)} divisors"])

    total = r
    products = []
    for hi, gi in zip(hs, S):
        p = gi.mul_poly(hi)
        products.append(p)
        total = total + p
    if total != f:
        bad.append(f"C1: f - (sum h_i g_i + r) = {f - total}")

    inits = [initial_term(g, o) for g in S]
    for m, c in r.terms.items():
        t = Term(c, m)
        for i, ig in enumerate(inits, start=1):
            if term_divides(ig, t, dom):
                bad.append(f"C3: remainder term {m} divisible by in(g_{i})")

    if f:
        inf = initial_term(f, o)
        for i, p in enumerate(products, start=1):
            if p and compare_terms(initial_term(p, o), inf, o, dom) == LT:
                bad.append(f"C2: in(h_{i} g_{i}) < in(f)")
        if r and compare_terms(initial_term(r, o), inf, o, dom) == LT:
            bad.append("C4: in(r) < in(f)")
    return ContractReport(not bad, bad)
