"""Varieties, partial-degree profiles, admissible tuples, envelopes and full covers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import comb, gcd, prod
from typing import Iterator, Sequence

from .errors import (
    DecompositionIncomplete,
    DegreeBudgetExceeded,
    FixtureFailure,
    PreconditionViolated,
    RecursionBudgetExceeded,
    RetriesExhausted,
)
from .ideal import (
    LIMITS,
    Ideal,
    affine_hilbert,
    dimension_and_degree,
    ideal_basis_up_to,
    intersect,
    is_component,
    split_components,
)
from .poly import Polynomial, RationalPoint, generic_combination


# ---------------------------------------------------------------------------
# rational parameter grids


def rational_sequence() -> Iterator[Fraction]:
    """0, 1, -1, 2, -2, 1/2, -1/2, 3, ... ordered by height, each rational once."""
    yield Fraction(0)
    for h in count(1):
        for q in range(1, h + 1):
            for p in range(1, h + 1):
                if max(p, q) == h and gcd(p, q) == 1:
                    yield Fraction(p, q)
                    yield Fraction(-p, q)


def parameter_grid(k: int) -> Iterator[tuple[Fraction, ...]]:
    """Deterministic enumeration of ``Q^k`` along anti-diagonals of index space."""
    values: list[Fraction] = []
    gen = rational_sequence()

    def val(i):
        while len(values) <= i:
            values.append(next(gen))
        return values[i]

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for s in count(0):
        for idx in compositions(s, k):
            yield tuple(val(i) for i in idx)


# ---------------------------------------------------------------------------
# varieties


class Variety:
    """An ideal asserted prime, with optional rational point oracle.

    ``parameterization`` gives coordinate numerators as polynomials in the
    parameter ring; ``denominator`` (same ring) is a common denominator.
    ``points`` describes a finite set directly.
    """

    def __init__(self, ideal: Ideal, parameterization: Sequence[Polynomial] | None = None,
                 denominator: Polynomial | None = None, points: Sequence[RationalPoint] | None = None,
                 name: str = ""):
        self.ideal = ideal
        self.n = ideal.n
        self.parameterization = list(parameterization) if parameterization is not None else None
        self.denominator = denominator
        self.points = [tuple(Fraction(c) for c in p) for p in points] if points is not None else None
        self.name = name
        self._profile = None
        if self.parameterization is not None and len(self.parameterization) != self.n:
            raise PreconditionViolated("parameterization needs one coordinate per variable")

    @property
    def dim(self) -> int:
        return dimension_and_degree(self.ideal)[0]

    @property
    def degree(self) -> int:
        return dimension_and_degree(self.ideal)[1]

    @property
    def codim(self) -> int:
        return self.n - self.dim

    def hilbert(self, m: int) -> int:
        return affine_hilbert(self.ideal, m)

    def has_point_oracle(self) -> bool:
        return self.parameterization is not None or self.points is not None

    def check_parameterization(self) -> bool:
        """Every generator vanishes identically on the parameterization."""
        if self.parameterization is None:
            return True
        k = self.parameterization[0].n
        den = self.denominator or Polynomial.constant(k, 1)
        for g in self.ideal.generators:
            deg = g.degree
            total = Polynomial.zero(k)
            for e, c in g.terms.items():
                term = Polynomial.constant(k, c)
                for i, a in enumerate(e):
                    if a:
                        term = term * self.parameterization[i] ** a
                term = term * den ** (deg - sum(e))
                total = total + term
            if not total.is_zero():
                return False
        return True

    def sample_points(self, count_: int, skip: int = 0) -> list[RationalPoint]:
        """``count_`` distinct rational points from the oracle (after ``skip``)."""
        if self.points is not None:
            return list(self.points[skip:skip + count_])
        if self.parameterization is None:
            from .errors import MissingPointOracle

            raise MissingPointOracle(f"variety {self.name or self.ideal} has no point oracle")
        k = self.parameterization[0].n
        out: list[RationalPoint] = []
        seen = set()
        skipped = 0
        for t in parameter_grid(k):
            if self.denominator is not None:
                dv = self.denominator.evaluate(t)
                if dv == 0:
                    continue
            else:
                dv = Fraction(1)
            pt = tuple(p.evaluate(t) / dv for p in self.parameterization)
            if pt in seen:
                continue
            seen.add(pt)
            if skipped < skip:
                skipped += 1
                continue
            out.append(pt)
            if len(out) == count_:
                break
        return out

    def __str__(self):
        return self.name or str(self.ideal)


# ---------------------------------------------------------------------------
# partial degrees


@dataclass
class DeltaProfile:
    deltas: list[int]
    big_deltas: list[Fraction]
    admissible_flags: list[bool]
    tuple: list[Polynomial]
    certified: bool
    stage_components: list[list[Ideal]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def admissible(self) -> set[int]:
        return {i for i, ok in enumerate(self.admissible_flags) if ok}

    def delta(self, i: int) -> float | int:
        """``delta_i`` with the sentinels ``delta_0 = 0`` and ``delta_{c+1} = inf``."""
        if i == 0:
            return 0
        if i > len(self.deltas):
            return float("inf")
        return self.deltas[i - 1]


def delta_1(V: Variety) -> int:
    """Least ``m`` with a nonzero member of ``I(V)`` of degree at most ``m``."""
    if V.ideal.is_unit():
        raise PreconditionViolated("empty variety")
    n = V.n
    for m in range(0, LIMITS.max_degree + 1):
        if affine_hilbert(V.ideal, m) < comb(n + m, n):
            return m
    raise DegreeBudgetExceeded(f"no member of I(V) up to degree {LIMITS.max_degree}")


def big_deltas(deltas: Sequence[int], deg_v: int) -> list[Fraction]:
    """``Delta_i = max(deg(V) / (delta_{i+1} ... delta_c), 1)`` for ``i = 0..c``."""
    c = len(deltas)
    out = []
    for i in range(c + 1):
        tail = prod(deltas[i:])
        out.append(max(Fraction(deg_v, tail), Fraction(1)))
    return out


def admissible_indices(deltas: Sequence[int]) -> set[int]:
    """Indices ``i`` in ``0..c`` with ``delta_{i+1} > 2 i delta_i``."""
    c = len(deltas)
    d = [0] + list(deltas)
    out = {0, c}
    for i in range(1, c):
        if d[i + 1] > 2 * i * d[i]:
            out.add(i)
    return out


def _containing(V: Variety, comps: Sequence[Ideal]) -> list[Ideal]:
    return [W for W in comps if V.ideal.contains_ideal(W)]


def delta_profile(V: Variety, seed: int = 0, retries: int = 4, max_degree: int | None = None) -> DeltaProfile:
    """Greedy construction of a minimal-degree tuple ``P_1..P_c`` inside ``I(V)``.

    At stage ``i`` the targets are the components of ``Z(P_1..P_{i-1})`` that
    contain ``V``.  ``P_i`` is a generic combination of a basis of
    ``I(V)_{<=m}`` for the least ``m`` at which such a combination avoids
    every target.  Components of the last stage are not needed, only the
    check that ``V`` is one of them.
    """
    n, d = V.n, V.dim
    c = n - d
    top = LIMITS.max_degree if max_degree is None else max_degree
    whole = Ideal([], n)
    targets = [whole]
    deltas: list[int] = []
    polys: list[Polynomial] = []
    stages: list[list[Ideal]] = []
    certified = True
    notes: list[str] = []
    m = 1
    for i in range(1, c + 1):
        while True:
            if m > top:
                raise DegreeBudgetExceeded(f"stage {i}: no suitable member of I(V) up to degree {top}")
            basis = ideal_basis_up_to(V.ideal, m)
            if basis and all(any(not W.contains(b) for b in basis) for W in targets):
                break
            m += 1
        chosen = None
        next_targets = None
        for attempt in range(retries):
            P = generic_combination(basis, (), targets, rng_seed=seed + 7919 * attempt + i)
            if i == c:
                chosen, next_targets = P, [V.ideal]
                break
            try:
                comps = []
                for W in targets:
                    comps.extend(split_components(W + P, hints=[V.ideal]))
            except DecompositionIncomplete:
                notes.append(f"stage {i}: decomposition failed for seed attempt {attempt}")
                continue
            chosen = P
            wanted = n - i
            next_targets = [W for W in _containing(V, comps) if dimension_and_degree(W)[0] == wanted]
            break
        if chosen is None:
            certified = False
            chosen = generic_combination(basis, (), targets, rng_seed=seed + i)
            notes.append(f"stage {i}: uncertified, later degrees are upper bounds")
            # without components, keep cutting against the variety alone
            next_targets = [Ideal(polys + [chosen], n)] if i < c else [V.ideal]
        polys.append(chosen)
        deltas.append(m)
        stages.append(next_targets)
        targets = next_targets
    if c and certified and not is_component(V.ideal, Ideal(polys, n)):
        certified = False
        notes.append("V is not a component of the final zero set")
    deg_v = V.degree
    flags = [i in admissible_indices(deltas) for i in range(c + 1)]
    prof = DeltaProfile(deltas, big_deltas(deltas, deg_v), flags, polys, certified, stages, notes)
    return prof


def profile_of(V: Variety, seed: int = 0) -> DeltaProfile:
    if V._profile is None:
        V._profile = delta_profile(V, seed=seed)
    return V._profile


# ---------------------------------------------------------------------------
# i_V(M)


@dataclass
class IndexChoice:
    index: int
    fallback: bool
    interval: tuple[Fraction, Fraction | None] | None


def _interval(profile: DeltaProfile, n: int, i: int, c0: Fraction, c1: Fraction):
    lo = c1 * Fraction(profile.delta(i)) ** (n - i) * profile.big_deltas[i]
    hi_delta = profile.delta(i + 1)
    hi = None if hi_delta == float("inf") else c0 / 2 * Fraction(hi_delta) ** (n - i) * profile.big_deltas[i]
    return lo, hi


def i_V_of_M(profile: DeltaProfile, n: int, M: int, c0=Fraction(1), c1=Fraction(1, 4)) -> IndexChoice:
    """Smallest admissible ``i`` whose interval contains ``M^(n-i) Delta_i``."""
    if M < 1:
        raise PreconditionViolated("M must be at least 1")
    c0, c1 = Fraction(c0), Fraction(c1)
    for i in sorted(profile.admissible):
        lo, hi = _interval(profile, n, i, c0, c1)
        val = Fraction(M) ** (n - i) * profile.big_deltas[i]
        if lo <= val and (hi is None or val <= hi):
            return IndexChoice(i, False, (lo, hi))
    fallback = max(i for i in profile.admissible if profile.delta(i) <= M)
    return IndexChoice(fallback, True, None)


# ---------------------------------------------------------------------------
# admissible tuples


@dataclass
class AdmissibleTuple:
    polys: list[Polynomial]
    K_bounds: list[Fraction]

    @classmethod
    def from_profile(cls, profile: DeltaProfile, K=1) -> "AdmissibleTuple":
        return cls(list(profile.tuple), [Fraction(K)] * len(profile.tuple))


@dataclass
class StageCertificate:
    stage: int
    membership: bool
    degree_ok: bool
    dimension_ok: bool | None
    minimal_ok: bool | None
    witness: int | None = None

    @property
    def status(self) -> str:
        flags = [self.membership, self.degree_ok, self.dimension_ok, self.minimal_ok]
        if any(f is False for f in flags):
            return "failed"
        if any(f is None for f in flags):
            return "unknown"
        return "certified"


@dataclass
class TupleCertificate:
    stages: list[StageCertificate]

    @property
    def certified(self) -> bool:
        return all(s.status == "certified" for s in self.stages)

    @property
    def complete(self) -> bool:
        return all(s.status != "unknown" for s in self.stages)


def verify_admissible_tuple(V: Variety, Q: AdmissibleTuple, profile: DeltaProfile | None = None) -> TupleCertificate:
    """Check membership, degree, dimension and minimal-variety clauses stage by stage.

    Stages whose decomposition fails are reported with status ``unknown``.
    """
    profile = profile or profile_of(V)
    n = V.n
    out = []
    for i in range(1, len(Q.polys) + 1):
        q = Q.polys[i - 1]
        member = V.ideal.contains(q)
        degree_ok = q.degree is not None and q.degree <= Q.K_bounds[i - 1] * profile.delta(i)
        dim_ok = minimal_ok = None
        witness = None
        try:
            comps = split_components(Ideal(Q.polys[:i], n), hints=[V.ideal]) if member else []
            containing = _containing(V, comps)
            if member:
                dims = [dimension_and_degree(W)[0] for W in containing]
                dim_ok = bool(dims) and max(dims) == n - i
                nxt = profile.delta(i + 1)
                minimal_ok = False
                for idx, W in enumerate(containing):
                    if dimension_and_degree(W)[0] != n - i:
                        continue
                    if nxt == float("inf"):
                        ok = W.same_as(V.ideal)
                    else:
                        ok = all(affine_hilbert(W, m) == affine_hilbert(V.ideal, m) for m in range(int(nxt)))
                    if ok:
                        minimal_ok, witness = True, idx
                        break
            else:
                dim_ok = minimal_ok = False
        except DecompositionIncomplete:
            pass
        out.append(StageCertificate(i, member, degree_ok, dim_ok, minimal_ok, witness))
    return TupleCertificate(out)


@dataclass
class BezoutReport:
    ratio: Fraction
    stage_ratios: list[list[Fraction]]
    upper_bound_holds: bool


def converse_bezout_report(V: Variety, profile: DeltaProfile | None = None) -> BezoutReport:
    """``deg(V) / prod(delta_i)`` plus per-stage component degree ratios."""
    profile = profile or profile_of(V)
    if not profile.certified:
        raise DecompositionIncomplete("converse Bezout report needs a certified profile")
    deltas = profile.deltas
    ratio = Fraction(V.degree, prod(deltas)) if deltas else Fraction(1)
    stage = []
    for i, comps in enumerate(profile.stage_components, start=1):
        den = prod(deltas[:i])
        stage.append([Fraction(dimension_and_degree(W)[1], den) for W in comps])
    holds = ratio <= 1
    if not holds:
        raise FixtureFailure(f"degree {V.degree} exceeds the product of partial degrees {deltas}")
    return BezoutReport(ratio, stage, holds)


# ---------------------------------------------------------------------------
# envelopes


@dataclass
class Component:
    ideal: Ideal
    dim: int
    degree: int

    def __str__(self):
        return str(self.ideal)


@dataclass
class EnvelopeStage:
    j: int
    exact: list[Component]  # dimension exactly n - j
    excess: list[Component]  # dimension greater than n - j
    degree_sum: int
    bezout_bound: int


@dataclass
class EnvelopeReport:
    stages: list[EnvelopeStage]
    location_ok: bool

    def envelope_components(self) -> list[Component]:
        out: list[Component] = []
        for st in self.stages:
            for W in st.excess:
                if not any(U.ideal.same_as(W.ideal) for U in out):
                    out.append(W)
        return out


def envelope(V: Variety, Q: AdmissibleTuple) -> EnvelopeReport:
    """Classify the components of each ``Z(Q_1..Q_j)`` by dimension."""
    n = V.n
    stages = []
    for j in range(1, len(Q.polys) + 1):
        comps = split_components(Ideal(Q.polys[:j], n), hints=[V.ideal])
        exact, excess = [], []
        for W in comps:
            dim, deg, _ = dimension_and_degree(W)
            (exact if dim == n - j else excess).append(Component(W, dim, deg))
        total = sum(c.degree for c in exact + excess)
        bound = prod(q.degree for q in Q.polys[:j])
        stages.append(EnvelopeStage(j, exact, excess, total, bound))
    location_ok = True
    for st in stages:
        for W in st.excess:
            i = n - W.dim
            if i < 1:
                continue
            earlier = stages[i - 1]
            if not any(U.ideal.same_as(W.ideal) for U in earlier.exact):
                location_ok = False
    return EnvelopeReport(stages, location_ok)


@dataclass
class Killer:
    k: int
    polynomial: Polynomial
    degree: int
    below_delta: bool


def envelope_killers(V: Variety, Q: AdmissibleTuple, report: EnvelopeReport,
                     profile: DeltaProfile | None = None) -> list[Killer]:
    """One minimal-degree polynomial per envelope dimension ``n-k``, vanishing there but not on ``V``."""
    from .siegel import vanish_on_ideals

    profile = profile or profile_of(V)
    n = V.n
    by_k: dict[int, list[Component]] = {}
    for W in report.envelope_components():
        by_k.setdefault(n - W.dim, []).append(W)
    out = []
    for k in sorted(by_k):
        res = vanish_on_ideals(V, [W.ideal for W in by_k[k]])
        deg = res.degree
        out.append(Killer(k, res.polynomial, deg, deg < profile.delta(k)))
    return out


# ---------------------------------------------------------------------------
# full covers


@dataclass
class FullCover:
    variety: Ideal
    tuple: list[Polynomial]
    components: list[Component]  # exact-dimension components of the last stage
    children: list["FullCover"]
    eps_ok: bool = True

    def flattened(self) -> list[Component]:
        out: list[Component] = []
        for c in self.components + [x for ch in self.children for x in ch.flattened()]:
            if not any(u.ideal.same_as(c.ideal) for u in out):
                out.append(c)
        return out

    def degree_sum(self) -> int:
        return sum(c.degree for c in self.flattened())


def default_eps(i: int) -> Fraction:
    return Fraction(1, 4 ** i)


def full_cover(V: Variety, eps=default_eps, seed: int = 0, tries: int = 3, depth: int = 0,
               max_depth: int = 3) -> FullCover:
    """Recursive cover: last-stage components plus covers of envelope components."""
    if depth > max_depth:
        raise RecursionBudgetExceeded(f"full cover recursion deeper than {max_depth}")
    n, d = V.n, V.dim
    deg = V.degree
    if n - d <= 1:
        return FullCover(V.ideal, [], [Component(V.ideal, d, deg)], [])
    best = None
    for attempt in range(tries):
        try:
            prof = delta_profile(V, seed=seed + 101 * attempt)
        except RetriesExhausted:
            continue
        Q = AdmissibleTuple.from_profile(prof)
        rep = envelope(V, Q)
        bad = 0
        for W in rep.envelope_components():
            i = n - W.dim
            if W.degree >= eps(i) * prod(prof.deltas[:i]):
                bad += 1
        if best is None or bad < best[0]:
            best = (bad, prof, Q, rep)
        if bad == 0:
            break
    if best is None:
        raise DecompositionIncomplete("no admissible tuple could be built")
    bad, prof, Q, rep = best
    children = []
    for W in rep.envelope_components():
        children.append(full_cover(Variety(W.ideal), eps, seed, tries, depth + 1, max_depth))
    last = rep.stages[-1]
    return FullCover(V.ideal, list(Q.polys), list(last.exact), children, eps_ok=(bad == 0))


def cover_contains_component(V: Variety, cover: FullCover) -> bool:
    flat = cover.flattened()
    J = flat[0].ideal
    for c in flat[1:]:
        J = intersect(J, c.ideal)
    return is_component(V.ideal, J)
