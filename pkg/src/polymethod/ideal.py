"""Ideals, Groebner bases and affine Hilbert functions.

The Groebner engine is a textbook Buchberger loop with the Gebauer-Moeller
pair update and degree-first pair selection.  Hilbert functions are read off
the leading-term ideal of a graded basis: the Hilbert series numerator of a
monomial ideal is computed by pivot splitting, and the affine Hilbert
function is its convolution with binomial coefficients.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import (
    BudgetExceeded,
    DegreeBudgetExceeded,
    NotStabilized,
    PreconditionViolated,
)
from .poly import (
    GREVLEX,
    Exponent,
    MonomialOrder,
    Polynomial,
    divides,
    exponents_of_degree,
    mono_lcm,
)


@dataclass
class Limits:
    """Desk-scale guard rails shared by every Groebner computation."""

    max_degree: int = 40
    max_basis: int = 500
    deadline: float | None = None  # time.monotonic() cut-off

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


LIMITS = Limits()


# ---------------------------------------------------------------------------
# reduction on raw term dictionaries


def _reduce(terms: dict, basis: Sequence[tuple[Exponent, dict]], key, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by monic ``basis`` (pairs ``(lm, terms)``)."""
    p = dict(terms)
    rem: dict = {}
    heap = [tuple(-k for k in key(e)) + (e,) for e in p]
    heapq.heapify(heap)
    queued = set(p)
    while heap:
        e = heapq.heappop(heap)[-1]
        queued.discard(e)
        c = p.pop(e, None)
        if c is None:
            continue
        for lm, g in basis:
            if divides(lm, e):
                q = tuple(a - b for a, b in zip(e, lm))
                for ge, gc in g.items():
                    if ge == lm:
                        continue
                    te = tuple(a + b for a, b in zip(ge, q))
                    nv = p.get(te, 0) - c * gc
                    if nv:
                        p[te] = nv
                        if te not in queued:
                            heapq.heappush(heap, tuple(-k for k in key(te)) + (te,))
                            queued.add(te)
                    else:
                        p.pop(te, None)
                break
        else:
            if not full:
                rem[e] = c
                rem.update(p)
                return rem
            rem[e] = c
    return rem


def _lead(terms: dict, key) -> Exponent:
    return max(terms, key=key)


def _monic(terms: dict, lm: Exponent) -> dict:
    inv = 1 / terms[lm]
    return {e: c * inv for e, c in terms.items()}


def _spoly(f: tuple[Exponent, dict], g: tuple[Exponent, dict]) -> dict:
    (lf, tf), (lg, tg) = f, g
    l = mono_lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(l, lf))
    qg = tuple(a - b for a, b in zip(l, lg))
    out: dict = {}
    for e, c in tf.items():
        te = tuple(a + b for a, b in zip(e, qf))
        out[te] = out.get(te, 0) + c
    for e, c in tg.items():
        te = tuple(a + b for a, b in zip(e, qg))
        out[te] = out.get(te, 0) - c
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# Groebner bases


@dataclass
class GroebnerBasis:
    basis: list[Polynomial]
    order: MonomialOrder
    n: int
    reduced: bool = True

    def __post_init__(self):
        key = self.order.key
        self._pairs = [(p.leading_monomial(self.order), dict(p.terms)) for p in self.basis]
        del key

    @property
    def leading_monomials(self) -> list[Exponent]:
        return [lm for lm, _ in self._pairs]

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials)

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.n != self.n:
            from .errors import DimensionMismatch

            raise DimensionMismatch(f"polynomial in {p.n} variables, basis in {self.n}")
        return Polynomial._raw(self.n, _reduce(p.terms, self._pairs, self.order.key))

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder = GREVLEX, n: int | None = None,
               limits: Limits | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    limits = limits or LIMITS
    gens = [g for g in gens if not g.is_zero()]
    if n is None:
        if not gens:
            raise ValueError("ambient dimension needed for an empty generator list")
        n = gens[0].n
    key = order.key
    polys: list[tuple[Exponent, dict]] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def lcm_of(i, j):
        return mono_lcm(polys[i][0], polys[j][0])

    def coprime(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    def check(terms):
        deg = max(sum(e) for e in terms)
        if deg > limits.max_degree:
            raise DegreeBudgetExceeded(f"intermediate degree {deg} exceeds {limits.max_degree}")
        if len(polys) > limits.max_basis:
            raise DegreeBudgetExceeded(f"basis size exceeds {limits.max_basis}")
        limits.check_time()

    def update(h: int):
        nonlocal active, pairs
        lh = polys[h][0]
        cands = [(h, g) for g in active]
        kept = []
        for idx, (_, g1) in enumerate(cands):
            l1 = lcm_of(h, g1)
            if coprime(lh, polys[g1][0]):
                kept.append((h, g1))
                continue
            later = cands[idx + 1:]
            if any(divides(lcm_of(h, g2), l1) for _, g2 in later):
                continue
            if any(divides(lcm_of(h, g2), l1) for _, g2 in kept):
                continue
            kept.append((h, g1))
        new = [(a, b) for a, b in kept if not coprime(polys[a][0], polys[b][0])]
        old = []
        for g1, g2 in pairs:
            l12 = lcm_of(g1, g2)
            if divides(lh, l12) and lcm_of(g1, h) != l12 and lcm_of(h, g2) != l12:
                continue
            old.append((g1, g2))
        pairs = old + new
        active = [g for g in active if not divides(lh, polys[g][0])] + [h]

    def insert(terms):
        lm = _lead(terms, key)
        polys.append((lm, _monic(terms, lm)))
        update(len(polys) - 1)
        return lm

    # seed with inter-reduced generators, lowest leading monomial first
    seeds = []
    for g in gens:
        if g.n != n:
            from .errors import DimensionMismatch

            raise DimensionMismatch("generators live in different rings")
        seeds.append(dict(g.terms))
    seeds.sort(key=lambda t: key(_lead(t, key)))
    for t in seeds:
        r = _reduce(t, [polys[i] for i in active], key)
        if not r:
            continue
        check(r)
        lm = insert(r)
        if not any(lm):
            return GroebnerBasis([Polynomial.constant(n, 1)], order, n)

    while pairs:
        limits.check_time()
        best = min(range(len(pairs)), key=lambda k: (sum(lcm_of(*pairs[k])), key(lcm_of(*pairs[k]))))
        i, j = pairs.pop(best)
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r = _reduce(s, [polys[k] for k in active], key)
        if not r:
            continue
        check(r)
        lm = insert(r)
        if not any(lm):
            return GroebnerBasis([Polynomial.constant(n, 1)], order, n)

    # minimal basis, then tail reduction
    minimal = [polys[i] for i in active]
    minimal = [
        f for idx, f in enumerate(minimal)
        if not any(divides(g[0], f[0]) and (g[0] != f[0] or jdx < idx) for jdx, g in enumerate(minimal) if jdx != idx)
    ]
    minimal.sort(key=lambda f: key(f[0]))
    reduced = []
    for idx, (lm, t) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = {e: c for e, c in t.items() if e != lm}
        r = _reduce(tail, others, key)
        r[lm] = Fraction(1)
        reduced.append(Polynomial._raw(n, r))
    return GroebnerBasis(reduced, order, n)


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals


def _minimalize(gens: Iterable[Exponent]) -> list[Exponent]:
    gens = sorted(set(gens), key=sum)
    out: list[Exponent] = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def hilbert_numerator(gens: Iterable[Exponent]) -> list[int]:
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/(1-t)^n`` of a monomial ideal."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(not any(g) for g in gens):
        return [0]
    # pairwise coprime generators: the ideal is a complete intersection
    support = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    seen: set[int] = set()
    disjoint = True
    for s in support:
        if seen & s:
            disjoint = False
            break
        seen |= s
    if disjoint:
        out = [1]
        for g in gens:
            factor = [0] * (sum(g) + 1)
            factor[0] = 1
            factor[-1] -= 1
            out = _poly_mul(out, factor)
        return out
    # pivot on the variable shared by most non-pure-power generators
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        if sum(1 for x in g if x) > 1:
            for i, x in enumerate(g):
                if x:
                    counts[i] += 1
    i = max(range(n), key=lambda v: counts[v])
    pivot = tuple(1 if v == i else 0 for v in range(n))
    with_pivot = hilbert_numerator(gens + [pivot])
    quotient = [tuple(x - 1 if (v == i and x > 0) else x for v, x in enumerate(g)) for g in gens]
    colon = hilbert_numerator(quotient)
    return _poly_add(with_pivot, [0] + colon)


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def affine_hilbert_from_numerator(num: Sequence[int], n: int, m: int) -> int:
    return sum(c * comb(m - j + n, n) for j, c in enumerate(num) if c and j <= m)


# ---------------------------------------------------------------------------
# ideals


@dataclass
class HilbertData:
    values: dict[int, int]
    inferred_dim: int
    inferred_degree: int
    c0_observed: Fraction
    regularity: int = 0
    delta_proxy: int = 0


class Ideal:
    """Finitely generated ideal of Q[x0..x{n-1}] with cached Groebner bases."""

    def __init__(self, generators: Iterable[Polynomial] = (), n: int | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if n is None:
            if not gens:
                raise ValueError("ambient dimension needed for an ideal without generators")
            n = gens[0].n
        for g in gens:
            if g.n != n:
                from .errors import DimensionMismatch

                raise DimensionMismatch(f"generator {g} is not in {n} variables")
        self.generators = gens
        self.n = n
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}
        self._numerator: list[int] | None = None
        self._dimdeg: tuple[int, int, HilbertData] | None = None

    @classmethod
    def from_strings(cls, gens: Sequence[str], n: int | None = None) -> "Ideal":
        from .poly import parse

        if n is None:
            n = max((parse(g).n for g in gens), default=1)
        return cls([parse(g, n) for g in gens], n)

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.generators, order, self.n)
            self._gb[order] = gb
        return gb

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.groebner().normal_form(p)

    def contains(self, p: Polynomial) -> bool:
        return self.groebner().contains(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_as(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = [other]
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(list(self.generators) + list(other), self.n)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    __repr__ = __str__

    def reduced_generators(self) -> list[Polynomial]:
        return list(self.groebner().basis)

    # Hilbert function -----------------------------------------------------
    def hilbert_numerator(self) -> list[int]:
        if self._numerator is None:
            gb = self.groebner(GREVLEX)
            self._numerator = _trim(hilbert_numerator(gb.leading_monomials))
        return self._numerator

    def hilbert(self, m: int) -> int:
        return affine_hilbert(self, m)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(p)


def membership(p: Polynomial, I: Ideal) -> bool:
    return I.contains(p)


def affine_hilbert(I: Ideal, m: int) -> int:
    """``dim Q[x]_{<=m} / I_{<=m}``, via standard monomials of a grevlex basis."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return affine_hilbert_from_numerator(I.hilbert_numerator(), I.n, m)


def standard_monomials(I: Ideal, m: int) -> list[Exponent]:
    """Monomials of degree <= m outside the grevlex leading-term ideal, ascending."""
    lms = I.groebner(GREVLEX).leading_monomials
    out = [e for k in range(m + 1) for e in exponents_of_degree(I.n, k) if not any(divides(l, e) for l in lms)]
    out.sort(key=GREVLEX.key)
    return out


def ideal_basis_up_to(I: Ideal, m: int) -> list[Polynomial]:
    """A vector-space basis of ``I_{<=m}``: ``mu - NF(mu)`` for leading monomials ``mu``."""
    gb = I.groebner(GREVLEX)
    lms = gb.leading_monomials
    out = []
    for k in range(m + 1):
        for e in exponents_of_degree(I.n, k):
            if any(divides(l, e) for l in lms):
                mono = Polynomial._raw(I.n, {e: Fraction(1)})
                out.append(mono - gb.normal_form(mono))
    return out


def dimension_and_degree(I: Ideal, max_m: int = 200) -> tuple[int, int, HilbertData]:
    """Dimension and degree of ``Z(I)`` by finite differences of the Hilbert function.

    Values are sampled from the point where the Hilbert function is known to be
    polynomial; the dimension is the least ``k`` for which every ``k``-th
    difference in a window of ``n + 3`` values is the same constant.
    """
    if I._dimdeg is not None:
        return I._dimdeg
    if I.is_unit():
        raise PreconditionViolated("the unit ideal has an empty zero set")
    n = I.n
    num = I.hilbert_numerator()
    m0 = max(0, len(num) - 1 - n)
    window = n + 3
    if m0 + window > max_m:
        raise NotStabilized(f"Hilbert function not polynomial before m={max_m}")
    vals = [affine_hilbert_from_numerator(num, n, m) for m in range(m0, m0 + window + 1)]
    d = None
    seq = vals
    for k in range(n + 1):
        if len(seq) >= 3 and all(x == seq[0] for x in seq):
            d = k
            break
        seq = [b - a for a, b in zip(seq, seq[1:])]
    if d is None:
        raise NotStabilized("no constant difference sequence found")
    deg = seq[0]
    values = {m0 + j: v for j, v in enumerate(vals)}

    delta = max((g.degree for g in I.groebner().basis), default=0)
    lo = max(1, 2 * (n - d) * delta)
    ratios = []
    for m in range(lo, lo + 8):
        h = affine_hilbert_from_numerator(num, n, m)
        values[m] = h
        ratios.append(Fraction(h, m ** d * deg))
    data = HilbertData(values=dict(sorted(values.items())), inferred_dim=d, inferred_degree=deg,
                       c0_observed=min(ratios), regularity=m0, delta_proxy=delta)
    I._dimdeg = (d, deg, data)
    return I._dimdeg


# ---------------------------------------------------------------------------
# elimination, saturation, intersection


def eliminate_first(gens: Sequence[Polynomial], k: int, n_total: int) -> list[Polynomial]:
    """Generators of ``(gens) ∩ Q[x_k..]`` using a block order on ``x_0..x_{k-1}``.

    Returned polynomials live in ``n_total - k`` variables.
    """
    order = MonomialOrder("elim", block=k)
    gb = buchberger(gens, order, n_total)
    keep = list(range(k, n_total))
    return [g.restrict(keep) for g in gb.basis if not (g.variables() & set(range(k)))]


def _prepend(p: Polynomial, k: int) -> Polynomial:
    pad = (0,) * k
    return Polynomial._raw(p.n + k, {pad + e: c for e, c in p.terms.items()})


def saturate_by(J: Ideal, f: Polynomial) -> Ideal:
    """``J : f^inf`` via the auxiliary relation ``1 - t*f``."""
    if f.is_zero():
        return Ideal([Polynomial.constant(J.n, 1)], J.n)
    if f.is_constant():
        return J
    if J.is_unit():
        return J
    n = J.n
    t = Polynomial.variable(n + 1, 0)
    gens = [_prepend(g, 1) for g in J.generators] + [Polynomial.constant(n + 1, 1) - t * _prepend(f, 1)]
    return Ideal(eliminate_first(gens, 1, n + 1), n)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` via ``t*I + (1 - t)*J`` and elimination of ``t``."""
    n = I.n
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if I.is_zero() or J.is_zero():
        return Ideal([], n)
    t = Polynomial.variable(n + 1, 0)
    one = Polynomial.constant(n + 1, 1)
    gens = [t * _prepend(g, 1) for g in I.generators] + [(one - t) * _prepend(g, 1) for g in J.generators]
    return Ideal(eliminate_first(gens, 1, n + 1), n)


def saturate(J: Ideal, K: Ideal) -> Ideal:
    """``J : K^inf``, the intersection of ``J : k^inf`` over generators ``k`` of ``K``."""
    if J.n != K.n:
        from .errors import DimensionMismatch

        raise DimensionMismatch("ideals live in different rings")
    if K.is_zero():
        return Ideal([Polynomial.constant(J.n, 1)], J.n)
    if K.is_unit():
        return J
    out = None
    for k in K.groebner().basis:
        s = saturate_by(J, k)
        out = s if out is None else intersect(out, s)
    return out


def is_component(V: Ideal, J: Ideal) -> bool:
    """Whether ``Z(V)`` (``V`` prime) is an irreducible component of ``Z(J)``."""
    if not V.contains_ideal(J):
        raise PreconditionViolated("J is not contained in I(V)")
    return not V.contains_ideal(saturate(J, V))


# ---------------------------------------------------------------------------
# heuristic splitting into minimal primes


def factor_over_q(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Non-constant irreducible factors over Q with multiplicities (sympy)."""
    import sympy

    if p.is_constant():
        return []
    syms = sympy.symbols(f"x0:{p.n}")
    sp = sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}, *syms, domain="QQ"
    )
    _, facs = sp.factor_list()
    out = []
    for f, k in facs:
        terms = {}
        for e, v in f.as_dict().items():
            v = sympy.Rational(v)
            terms[tuple(e)] = Fraction(int(v.p), int(v.q))
        out.append((Polynomial(p.n, terms).primitive(), int(k)))
    out.sort(key=lambda fk: str(fk[0]))
    return out


def _linear_elimination(gens: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Substitute away variables that occur as an isolated linear term.

    Returns generators (same ring) of an ideal that, together with the
    eliminated linear relations, equals the input ideal.  ``None`` signals
    the unit ideal.
    """
    gens = [g for g in gens if not g.is_zero()]
    n = gens[0].n if gens else 0
    progress = True
    while progress:
        progress = False
        for g in gens:
            if g.is_constant():
                return None
            for i in sorted(g.variables()):
                unit = tuple(1 if v == i else 0 for v in range(n))
                if unit in g.terms and all(e[i] == 0 or e == unit for e in g.terms):
                    c = g.terms[unit]
                    image = (g - Polynomial._raw(n, {unit: c})).scale(-1 / c)
                    gens = [h.substitute(i, image) for h in gens if h is not g]
                    gens = [h for h in gens if not h.is_zero()]
                    progress = True
                    break
            if progress:
                break
    if any(g.is_constant() for g in gens):
        return None
    return gens


def _recognize_prime(I: Ideal) -> bool:
    rest = _linear_elimination(I.generators)
    if rest is None:
        return False
    if not rest:
        return True
    R = Ideal(rest, I.n)
    basis = R.groebner().basis
    if len(basis) != 1:
        return False
    facs = factor_over_q(basis[0])
    return len(facs) == 1 and facs[0][1] == 1


def _factor_branches(I: Ideal) -> list[Ideal] | None:
    """Split ``I`` along a factorable member, or return ``None``."""
    from itertools import permutations

    rest = _linear_elimination(I.generators)
    if rest is None:
        return []
    R = Ideal(rest, I.n) if rest else None

    def candidates():
        yield from rest
        yield from I.groebner().basis
        if R is not None:
            yield from R.groebner().basis
            vars_present = sorted(set().union(*(g.variables() for g in rest)))
            others = [v for v in range(I.n) if v not in vars_present]
            if len(vars_present) <= 3:
                perms = list(permutations(vars_present))
            else:
                perms = [tuple(vars_present[k:] + vars_present[:k]) for k in range(len(vars_present))]
            for perm in perms:
                order = MonomialOrder("lex", perm=tuple(perm) + tuple(others))
                try:
                    gb = R.groebner(order)
                except DegreeBudgetExceeded:
                    continue
                yield from gb.basis

    seen: set[Polynomial] = set()
    for h in candidates():
        if h in seen or h.is_constant():
            continue
        seen.add(h)
        facs = factor_over_q(h)
        if len(facs) >= 2:
            if all(not I.contains(f) for f, _ in facs):
                return [I + f for f, _ in facs]
        elif len(facs) == 1 and facs[0][1] > 1:
            f = facs[0][0]
            if not I.contains(f):
                return [I + f]
    return None


def split_components(J: Ideal, hints: Sequence[Ideal] = (), max_steps: int = 200) -> list[Ideal]:
    """Minimal primes (over Q) of ``J`` by factor splitting; heuristic.

    ``hints`` are prime ideals known to the caller; when one of them defines
    a component it is split off by saturation.  Raises
    :class:`DecompositionIncomplete` when a branch is neither recognised as
    prime nor splittable.  The answer is then unknown, not "irreducible".
    """
    from .errors import DecompositionIncomplete

    if J.is_unit():
        raise PreconditionViolated("cannot decompose the unit ideal")
    pending = [J]
    primes: list[Ideal] = []
    steps = 0
    while pending:
        steps += 1
        if steps > max_steps:
            raise DecompositionIncomplete(f"splitting did not finish in {max_steps} steps")
        I = pending.pop()
        if I.is_unit():
            continue
        if _recognize_prime(I):
            primes.append(I)
            continue
        hinted = False
        for P in hints:
            if P.contains_ideal(I) and not I.contains_ideal(P) and is_component(P, I):
                primes.append(P)
                pending.append(saturate(I, P))
                hinted = True
                break
        if hinted:
            continue
        branches = _factor_branches(I)
        if branches is None:
            raise DecompositionIncomplete(f"no factorable member and not recognised as prime: {I}")
        pending.extend(branches)

    unique: list[Ideal] = []
    for P in primes:
        P = Ideal(P.groebner().basis, P.n)
        if not any(Q.same_as(P) for Q in unique):
            unique.append(P)
    minimal = [P for P in unique if not any(Q is not P and P.contains_ideal(Q) for Q in unique)]
    minimal.sort(key=lambda P: (-dimension_and_degree(P)[0], str(P)))
    return minimal


def ideal_of_points(points: Sequence[Sequence], n: int) -> Ideal:
    """Vanishing ideal of a finite set of rational points."""
    out = None
    for pt in points:
        gens = [Polynomial.variable(n, i) - Fraction(c) for i, c in enumerate(pt)]
        P = Ideal(gens, n)
        out = P if out is None else intersect(out, P)
    if out is None:
        return Ideal([Polynomial.constant(n, 1)], n)
    return Ideal(out.groebner().basis, n)
