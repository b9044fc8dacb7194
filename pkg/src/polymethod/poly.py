"""Exact sparse multivariate polynomials over the rationals.

A polynomial in ``n`` variables ``x0 .. x{n-1}`` is a mapping from exponent
tuples to nonzero :class:`fractions.Fraction` coefficients.  The zero
polynomial has no terms and no degree (``degree`` is ``None``).

Text form::

    3/2*x0^2*x1 - x2 + 1

Rendering is canonical (terms in descending graded reverse lexicographic
order) so that ``parse(str(p)) == p``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb, lcm
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ParseError, PreconditionViolated, RetriesExhausted

Exponent = tuple[int, ...]
RationalPoint = tuple[Fraction, ...]


def as_point(coords: Iterable) -> RationalPoint:
    """Coerce ints, strings like ``"3/4"`` or Fractions into a rational point."""
    return tuple(Fraction(c) for c in coords)


def _grevlex_key(e: Sequence[int]) -> tuple[int, ...]:
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order on exponent tuples.

    ``perm`` lists variable indices from most to least significant; the
    default is ``x0 > x1 > ...``.  Keys are flat integer tuples, so negating
    a key reverses the order (used by the reduction heap).  ``kind="elim"`` is a block order that
    eliminates the first ``block`` variables of ``perm`` and breaks ties by
    grevlex on the rest.
    """

    kind: str = "grevlex"
    perm: tuple[int, ...] | None = None
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    @property
    def graded(self) -> bool:
        return self.kind == "grevlex"

    @cached_property
    def key(self) -> Callable[[Exponent], tuple]:
        perm, kind, block = self.perm, self.kind, self.block
        if kind == "grevlex":
            if perm is None:
                return _grevlex_key
            return lambda e: _grevlex_key([e[p] for p in perm])
        if kind == "lex":
            if perm is None:
                return tuple
            return lambda e: tuple(e[p] for p in perm)

        def elim_key(e):
            ee = e if perm is None else [e[p] for p in perm]
            return _grevlex_key(ee[:block]) + _grevlex_key(ee[block:])

        return elim_key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None):
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise DimensionMismatch(f"exponent {e} has length {len(e)}, expected {n}")
                c = c if type(c) is Fraction else Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.n = n
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # terms must already be canonical (no zeros, Fraction values)
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        if not 0 <= i < n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "Polynomial":
        return cls(len(e), {tuple(e): c})

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Polynomial":
        return parse(text, n)

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exponent:
        return self.leading_term(order)[0]

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise DimensionMismatch(f"ambient dimensions differ: {self.n} vs {other.n}")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial._raw(self.n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def mul_term(self, e: Exponent, c: Fraction) -> "Polynomial":
        """Multiply by the single term ``c * x^e``."""
        return Polynomial._raw(
            self.n, {tuple(x + y for x, y in zip(ea, e)): ca * c for ea, ca in self.terms.items()}
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # evaluation and substitution -----------------------------------------
    def evaluate(self, pt: Sequence) -> Fraction:
        if len(pt) != self.n:
            raise DimensionMismatch(f"point has {len(pt)} coordinates, polynomial has {self.n} variables")
        pt = [c if type(c) is Fraction else Fraction(c) for c in pt]
        powers: list[dict[int, Fraction]] = [{0: Fraction(1)} for _ in range(self.n)]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = pt[i] ** k
                        powers[i][k] = pw
                    v *= pw
            total += v
        return total

    def __call__(self, *pt):
        if len(pt) == 1 and isinstance(pt[0], (tuple, list)):
            pt = pt[0]
        return self.evaluate(pt)

    def substitute(self, i: int, q: "Polynomial") -> "Polynomial":
        """Replace variable ``x_i`` by the polynomial ``q``."""
        self._check(q)
        out = Polynomial.zero(self.n)
        powers = {0: Polynomial.constant(self.n, 1)}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = q ** k
            rest = list(e)
            rest[i] = 0
            out = out + powers[k].mul_term(tuple(rest), c)
        return out

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``x_i -> images[i]`` simultaneously (images may live in another ring)."""
        if len(images) != self.n:
            raise DimensionMismatch("need one image per variable")
        m = images[0].n
        out = Polynomial.zero(m)
        cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            out = out + term
        return out

    def extend(self, k: int) -> "Polynomial":
        """Same polynomial in ``n + k`` variables (new variables appended)."""
        pad = (0,) * k
        return Polynomial._raw(self.n + k, {e + pad: c for e, c in self.terms.items()})

    def restrict(self, keep: Sequence[int]) -> "Polynomial":
        """Drop variables not in ``keep``; they must not occur."""
        drop = set(range(self.n)) - set(keep)
        if drop & self.variables():
            raise ValueError("cannot drop a variable that occurs")
        return Polynomial._raw(len(keep), {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term(order)[1])

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        from math import gcd

        g = 0
        for v in nums:
            g = gcd(g, v)
        s = Fraction(den, g)
        if self.leading_term(order)[1] < 0:
            s = -s
        return self.scale(s)

    # text form ------------------------------------------------------------
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {render(self)!r})"


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\*\*|\^|\*|\+|-))")


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts: list[str] = []
    for e in sorted(p.terms, key=_grevlex_key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
        )
        a = abs(c)
        if not mono:
            body = _render_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_render_coeff(a)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def parse(text: str, n: int | None = None) -> Polynomial:
    """Parse the term grammar ``c*x0^a*x1^b + ...``.

    ``n`` defaults to one more than the largest variable index present.
    """
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial string")
    tokens: list[tuple[str, str]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at offset {pos} in {text!r}")
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif var is not None:
            tokens.append(("var", var))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    terms: list[tuple[Fraction, dict[int, int]]] = []
    i = 0
    sign = 1
    expect_term = True
    coeff = Fraction(1)
    powers: dict[int, int] = {}
    seen_factor = False

    def flush():
        nonlocal coeff, powers, seen_factor
        if not seen_factor:
            raise ParseError(f"dangling operator in {text!r}")
        terms.append((sign * coeff, powers))
        coeff, powers, seen_factor = Fraction(1), {}, False

    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if seen_factor:
                flush()
                sign = 1 if val == "+" else -1
            elif expect_term and not terms and i == 0:
                sign = 1 if val == "+" else -1
            else:
                raise ParseError(f"unexpected {val!r} in {text!r}")
            expect_term = True
            i += 1
            continue
        if kind == "op" and val == "*":
            if not seen_factor:
                raise ParseError(f"unexpected '*' in {text!r}")
            expect_term = True
            i += 1
            continue
        if kind == "op":
            raise ParseError(f"unexpected {val!r} in {text!r}")
        if not expect_term:
            raise ParseError(f"missing operator before {val!r} in {text!r}")
        if kind == "num":
            try:
                coeff *= Fraction(val)
            except ZeroDivisionError as exc:
                raise ParseError(f"zero denominator in {val!r}") from exc
            i += 1
        else:
            idx = int(val)
            k = 1
            if i + 1 < len(tokens) and tokens[i + 1] == ("op", "^"):
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "num" or "/" in tokens[i + 2][1]:
                    raise ParseError(f"bad exponent in {text!r}")
                k = int(tokens[i + 2][1])
                i += 3
            else:
                i += 1
            powers[idx] = powers.get(idx, 0) + k
        seen_factor = True
        expect_term = False
    flush()

    top = max((v for _, pw in terms for v in pw), default=-1)
    if n is None:
        n = max(top + 1, 1)
    elif top >= n:
        raise ParseError(f"variable x{top} out of range for n={n}")
    out: dict[Exponent, Fraction] = {}
    for c, pw in terms:
        e = [0] * n
        for v, k in pw.items():
            e[v] += k
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return Polynomial(n, out)


# ---------------------------------------------------------------------------
# monomial enumeration


def exponents_of_degree(n: int, k: int) -> list[Exponent]:
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def monomials_up_to(n: int, m: int, order: MonomialOrder = GREVLEX) -> list[Exponent]:
    """All exponents of total degree at most ``m``, ascending in ``order``."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    out = [e for k in range(m + 1) for e in exponents_of_degree(n, k)]
    out.sort(key=order.key)
    assert len(out) == comb(n + m, n)
    return out


# ---------------------------------------------------------------------------
# generic linear combinations


def generic_combination(
    polys: Sequence[Polynomial],
    must_vanish_on: Sequence[Sequence] = (),
    must_not_vanish_on: Sequence = (),
    rng_seed: int = 0,
    attempts: int = 24,
) -> Polynomial:
    """Return ``sum c_j * polys[j]`` with small integer ``c_j`` avoiding every ideal.

    ``must_not_vanish_on`` holds ideal-like objects exposing ``contains``.
    The all-ones combination is tried first; after that coefficients are drawn
    from ``[-w, w]`` with ``w`` starting at 3 and doubling per retry.
    """
    if not polys:
        raise PreconditionViolated("no polynomials to combine")
    for pt in must_vanish_on:
        for p in polys:
            if p.evaluate(pt) != 0:
                raise PreconditionViolated(f"{p} does not vanish at {pt}")
    for ideal in must_not_vanish_on:
        if all(ideal.contains(p) for p in polys):
            raise PreconditionViolated("every input polynomial lies in an excluded ideal")

    rng = random.Random(rng_seed)
    width = 3
    for attempt in range(attempts):
        if attempt == 0:
            coeffs = [1] * len(polys)
        else:
            coeffs = [rng.randint(-width, width) for _ in polys]
            width *= 2
            if not any(coeffs):
                continue
        f = Polynomial.zero(polys[0].n)
        for c, p in zip(coeffs, polys):
            if c:
                f = f + p.scale(c)
        if f.is_zero():
            continue
        if not any(ideal.contains(f) for ideal in must_not_vanish_on):
            return f
    raise RetriesExhausted(f"no valid combination after {attempts} attempts")
