"""Least-degree polynomials that vanish on prescribed sets but not on a variety.

Every answer is certified exactly: point targets by evaluation, variety
targets by ideal membership.  Sampling is only ever used to propose a
candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegreeBudgetExceeded, MissingPointOracle
from .ideal import LIMITS, Ideal, affine_hilbert, ideal_basis_up_to, intersect, standard_monomials
from .linalg import clear_denominators, nullspace
from .poly import Exponent, Polynomial, RationalPoint, monomials_up_to
from .rounding import pow_up


@dataclass
class QuotientBasis:
    m: int
    monomials: list[Exponent]
    representatives: list[Polynomial]

    @property
    def t(self) -> int:
        return len(self.representatives)

    def lift(self, pt: Sequence) -> list[Fraction]:
        """The map ``x -> (q_1(x), ..., q_t(x))``."""
        return [q.evaluate(pt) for q in self.representatives]


def _ideal_of(V) -> Ideal:
    return V if isinstance(V, Ideal) else V.ideal


def quotient_basis(V, m: int) -> QuotientBasis:
    """Standard monomials of degree at most ``m`` modulo ``I(V)``."""
    I = _ideal_of(V)
    if m < 0:
        raise ValueError("m must be non-negative")
    if I.is_unit():
        return QuotientBasis(m, [], [])
    mons = standard_monomials(I, m)
    reps = [Polynomial._raw(I.n, {e: Fraction(1)}) for e in mons]
    return QuotientBasis(m, mons, reps)


@dataclass
class SiegelResult:
    polynomial: Polynomial
    degree: int
    target: str
    vanishing: list[bool]
    non_member: bool
    minimal: bool
    notes: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.non_member and all(self.vanishing)


def _combine(vec: Sequence[Fraction], reps: Sequence[Polynomial], n: int) -> Polynomial:
    out = Polynomial.zero(n)
    for c, q in zip(clear_denominators(vec), reps):
        if c:
            out = out + q.scale(c)
    return out


def _points_on(I: Ideal, S: Sequence[RationalPoint]) -> bool:
    return all(g.evaluate(s) == 0 for s in S for g in I.generators)


def points_candidate(V, S: Sequence[RationalPoint], m: int) -> Polynomial | None:
    """A polynomial of degree <= m vanishing on ``S`` and outside ``I(V)``, or ``None``."""
    I = _ideal_of(V)
    n = I.n
    if _points_on(I, S):
        qb = quotient_basis(I, m)
        if not qb.t:
            return None
        rows = [qb.lift(s) for s in S]
        ns = nullspace(rows, qb.t)
        return _combine(ns[0], qb.representatives, n) if ns else None
    # some points are off V: search the whole space, filter members of I(V)
    mons = monomials_up_to(n, m)
    reps = [Polynomial._raw(n, {e: Fraction(1)}) for e in mons]
    rows = [[r.evaluate(s) for r in reps] for s in S]
    for vec in nullspace(rows, len(reps)):
        P = _combine(vec, reps, n)
        if not I.contains(P):
            return P
    return None


def feasible_at(V, S: Sequence[RationalPoint], m: int) -> bool:
    return points_candidate(V, S, m) is not None


def vanish_on_points(V, S: Sequence[RationalPoint], max_m: int | None = None) -> SiegelResult:
    """Least-degree ``P`` with ``P(s) = 0`` for all ``s`` in ``S`` and ``P`` not in ``I(V)``."""
    I = _ideal_of(V)
    S = [tuple(Fraction(c) for c in s) for s in S]
    top = LIMITS.max_degree if max_m is None else max_m
    for m in range(top + 1):
        P = points_candidate(I, S, m)
        if P is None:
            continue
        vanishing = [P.evaluate(s) == 0 for s in S]
        non_member = not I.contains(P)
        return SiegelResult(P, m, f"{len(S)} points", vanishing, non_member, minimal=True,
                            notes={"t": affine_hilbert(I, m), "points": len(S)})
    raise DegreeBudgetExceeded(f"no vanishing polynomial up to degree {top}")


def _degree_target(V, T) -> Fraction | None:
    d = V.dim
    l = max(t.dim for t in T)
    if d - l <= 0:
        return None
    deg_t = sum(t.degree for t in T)
    return pow_up(Fraction(deg_t, V.degree), Fraction(1, d - l))


def regime_indices(V, T, profile, tau=Fraction(1)) -> list[int]:
    """Admissible ``s`` with ``deg(T)`` in ``[tau d_s^(n-s-l) D_s, tau d_(s+1)^(n-s-l) D_s]``."""
    n = V.n
    l = max(t.dim for t in T)
    deg_t = sum(t.degree for t in T)
    tau = Fraction(tau)
    out = []
    for s in sorted(profile.admissible):
        e = n - (s + l)
        if e <= 0:
            continue
        lo = tau * Fraction(profile.delta(s)) ** e * profile.big_deltas[s]
        up = profile.delta(s + 1)
        hi = None if up == float("inf") else tau * Fraction(up) ** e * profile.big_deltas[s]
        if lo <= deg_t and (hi is None or deg_t <= hi):
            out.append(s)
    return out


def vanish_on_varieties(V, T: Sequence, max_m: int | None = None, refinements: int = 4,
                        profile=None) -> SiegelResult:
    """Least-degree ``P`` vanishing on every variety in ``T`` but not on ``V``.

    For each degree, points sampled from each target propose a candidate;
    membership in every ``I(t)`` certifies it.  When the sampled system
    only admits members of ``I(V)``, the degree is infeasible, since the
    sampled system contains every true solution.
    """
    I = V.ideal
    n = I.n
    for t in T:
        if not t.has_point_oracle():
            raise MissingPointOracle(f"target {t} has no parameterization or point list")
    top = LIMITS.max_degree if max_m is None else max_m
    mons_cache: dict[int, list[Polynomial]] = {}
    for m in range(top + 1):
        mons = mons_cache.setdefault(m, [Polynomial._raw(n, {e: Fraction(1)}) for e in monomials_up_to(n, m)])
        extra = 2
        for attempt in range(refinements):
            samples = []
            for t in T:
                need = max(t.degree * m + 1, affine_hilbert(t.ideal, m)) + extra
                samples.extend(t.sample_points(need))
            rows = [[q.evaluate(s) for q in mons] for s in samples]
            candidates = [_combine(v, mons, n) for v in nullspace(rows, len(mons))]
            candidates = [P for P in candidates if not I.contains(P)]
            if not candidates:
                break  # infeasible at this degree
            for P in candidates:
                if all(t.ideal.contains(P) for t in T):
                    target = _degree_target(V, T)
                    notes = {"samples": len(samples), "refinements": attempt,
                             "degree_target": target,
                             "ratio_to_target": None if not target else Fraction(m) / target}
                    if profile is not None:
                        notes["regime"] = regime_indices(V, T, profile)
                    return SiegelResult(P, m, f"{len(T)} varieties", [True] * len(T), True, True, notes)
            extra = 2 * extra + len(mons)
    raise DegreeBudgetExceeded(f"no certified polynomial up to degree {top}")


def vanish_on_ideals(V, ideals: Sequence[Ideal], max_m: int | None = None) -> SiegelResult:
    """Exact variant for targets given only by their ideals.

    A basis of ``(I_1 ∩ ... ∩ I_r)_{<=m}`` is scanned for a non-member of ``I(V)``.
    """
    I = _ideal_of(V)
    J = ideals[0]
    for K in ideals[1:]:
        J = intersect(J, K)
    top = LIMITS.max_degree if max_m is None else max_m
    for m in range(top + 1):
        for P in ideal_basis_up_to(J, m):
            if not I.contains(P):
                P = P.primitive()
                vanishing = [K.contains(P) for K in ideals]
                return SiegelResult(P, P.degree, f"{len(ideals)} ideals", vanishing, True, True)
    raise DegreeBudgetExceeded(f"no polynomial up to degree {top}")
