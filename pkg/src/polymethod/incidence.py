"""Incidence structures, freeness, incidence bounds and the sharp construction.

Incidence matrices are stored as Python integers used as bitsets: one row
mask per point (bits index hypersurfaces) and one column mask per
hypersurface (bits index points).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .errors import (
    BudgetExceeded,
    DomainError,
    FixtureFailure,
    GenericityExhausted,
    OracleMissing,
    PreconditionViolated,
)
from .linalg import clear_denominators, nullspace
from .poly import Polynomial, RationalPoint
from .rounding import pow_down, pow_up


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> list[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


@dataclass
class IncidenceStructure:
    points: list[RationalPoint]
    hypersurfaces: list[Polynomial]
    rows: list[int] = field(default_factory=list)
    cols: list[int] = field(default_factory=list)

    @classmethod
    def build(cls, points: Sequence[Sequence], hypersurfaces: Sequence[Polynomial]) -> "IncidenceStructure":
        pts = [tuple(Fraction(c) for c in p) for p in points]
        rows = [0] * len(pts)
        cols = [0] * len(hypersurfaces)
        for j, t in enumerate(hypersurfaces):
            for i, s in enumerate(pts):
                if t.evaluate(s) == 0:
                    rows[i] |= 1 << j
                    cols[j] |= 1 << i
        return cls(pts, list(hypersurfaces), rows, cols)

    @classmethod
    def from_masks(cls, n_points: int, cols: Sequence[int]) -> "IncidenceStructure":
        """Abstract structure from column masks (no geometry attached)."""
        if any(c < 0 or c >> n_points for c in cols):
            raise PreconditionViolated(f"column mask refers to a point index >= {n_points}")
        rows = [0] * n_points
        for j, c in enumerate(cols):
            for i in _bits(c):
                rows[i] |= 1 << j
        return cls([], [], rows, list(cols))

    @property
    def n_points(self) -> int:
        return len(self.rows)

    @property
    def n_surfaces(self) -> int:
        return len(self.cols)

    @property
    def deg_T(self) -> int:
        return sum(t.degree or 0 for t in self.hypersurfaces)

    def incident(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> set[tuple[int, int]]:
        return {(i, j) for j, c in enumerate(self.cols) for i in _bits(c)}


def count_incidences(struct: IncidenceStructure) -> int:
    """Incidence count, computed from both margins (which must agree)."""
    by_points = sum(_popcount(r) for r in struct.rows)
    by_surfaces = sum(_popcount(c) for c in struct.cols)
    if by_points != by_surfaces:
        raise FixtureFailure(f"marginal sums disagree: {by_points} vs {by_surfaces}")
    return by_points


@dataclass
class FreenessResult:
    free: bool
    points: list[int] = field(default_factory=list)
    surfaces: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.free


def check_kb_free(struct: IncidenceStructure, k: int, b: int, max_b: int = 3) -> FreenessResult:
    """True iff no ``k`` points lie on ``b`` distinct members (with a witness otherwise)."""
    if k < 1 or b < 1:
        raise DomainError("k and b must be positive")
    if b > max_b:
        raise BudgetExceeded(f"b = {b} exceeds the enumeration budget {max_b}")
    full = (1 << struct.n_points) - 1
    for subset in combinations(range(struct.n_surfaces), b):
        common = full
        for j in subset:
            common &= struct.cols[j]
            if _popcount(common) < k:
                break
        if _popcount(common) >= k:
            return FreenessResult(False, _bits(common)[:k], list(subset))
    return FreenessResult(True)


# ---------------------------------------------------------------------------
# bound formulas


def exponents(k: int, d: int) -> tuple[Fraction, Fraction]:
    """``(alpha_k(d), beta_k(d))``, with ``(0, 1)`` at ``k = d = 1``."""
    if k < 1 or d < 1:
        raise DomainError("k and d must be positive")
    if k == 1 and d == 1:
        return Fraction(0), Fraction(1)
    return Fraction(k * (d - 1), d * k - 1), Fraction(d * (k - 1), d * k - 1)


def tau(d: int, b: int, k: int) -> Fraction:
    """Upper rational value of ``b^(1-beta) k^(1-alpha)``."""
    a, be = exponents(k, d)
    return pow_up(b, 1 - be) * pow_up(k, 1 - a)


def kst_bound(n_points: int, n_surfaces: int, k: int, b: int) -> Fraction:
    """``b^(1/k) |S| |T|^(1-1/k) + (k-1)|T|``, rounded upward."""
    if k < 1 or b < 1:
        raise DomainError("k and b must be positive")
    if n_points == 0 or n_surfaces == 0:
        return Fraction((k - 1) * n_surfaces)
    root = pow_up(b * n_surfaces ** (k - 1), Fraction(1, k))
    return root * n_points + (k - 1) * n_surfaces


@dataclass
class BoundReport:
    alpha: Fraction
    beta: Fraction
    tau: Fraction
    main: Fraction
    secondary: Fraction
    linear: Fraction
    kst: Fraction | None = None
    incidences: int | None = None
    measured_c1: Fraction | None = None

    @property
    def total(self) -> Fraction:
        return self.main + self.secondary + self.linear

    @property
    def dominant(self) -> str:
        terms = {"main": self.main, "secondary": self.secondary, "linear": self.linear}
        return max(terms, key=lambda name: (terms[name], name))


def _pow_up0(x, p) -> Fraction:
    return Fraction(1) if p == 0 else pow_up(x, p)


def main_term_unit(n_points: int, deg_T: int, deg_V: int, d: int, k: int) -> Fraction:
    """``|S|^alpha deg(T)^beta deg(V)^(1-alpha)``, rounded upward."""
    a, be = exponents(k, d)
    return _pow_up0(n_points, a) * _pow_up0(deg_T, be) * _pow_up0(deg_V, 1 - a)


def theorem6_bound(n_points: int, deg_T: int, deg_V: int, d: int, k: int, b: int, c1=Fraction(1),
                   incidences: int | None = None, n_surfaces: int | None = None) -> BoundReport:
    """The three-term incidence bound for ``(k, b)``-free configurations on a ``d``-dimensional variety."""
    a, be = exponents(k, d)
    unit = main_term_unit(n_points, deg_T, deg_V, d, k)
    rep = BoundReport(a, be, tau(d, b, k), Fraction(c1) * unit, Fraction(k * deg_T * deg_V),
                      Fraction((b - 1) * n_points))
    if n_surfaces is not None:
        rep.kst = kst_bound(n_points, n_surfaces, k, b)
    if incidences is not None:
        rep.incidences = incidences
        surplus = incidences - rep.secondary - rep.linear
        rep.measured_c1 = max(Fraction(0), surplus) / unit if unit else Fraction(0)
    return rep


def check_exponent_identities(k: int, d: int) -> bool:
    a, be = exponents(k, d)
    ok = (1 - a) == be / d
    if k >= 2:
        ok = ok and be / (1 - a) == d and (1 - be) / (1 - a) == Fraction(d - 1, k - 1)
    return ok


def rich_points_bound(r: int, deg_T: int, deg_V: int, d: int, k: int, b: int, c2=Fraction(1)) -> Fraction:
    """Upper bound for a maximal ``(k, b)``-free set of ``r``-rich points."""
    if k == 1:
        raise DomainError("the rich-point bound needs k >= 2")
    if r < b:
        raise PreconditionViolated("need r >= b")
    a, be = exponents(k, d)
    if not check_exponent_identities(k, d):
        raise FixtureFailure(f"exponent identities fail for k={k}, d={d}")
    span = r - b + 1
    first = Fraction(2 * deg_T, span)
    second = Fraction(c2) * pow_up(b, Fraction(d - 1, k - 1)) * deg_T ** d / pow_down(span, 1 / (1 - a))
    return k * deg_V * (first + second)


def choose_partition_degree(n_points: int, deg_T: int, deltas: Sequence[int], k: int, b: int, s: int,
                            n: int) -> Fraction:
    """``M_s = (b |S|^k / (k^k deg(T) (delta_1 ... delta_s)^k))^(1 / (k(n-s) - 1))``, rounded upward."""
    if not 0 <= s <= len(deltas):
        raise PreconditionViolated("s out of range for the profile")
    e = k * (n - s) - 1
    if e <= 0:
        raise DomainError("exponent 1/(k(n-s)-1) undefined")
    base = Fraction(b * n_points ** k, k ** k * deg_T * prod(deltas[:s]) ** k)
    return pow_up(base, Fraction(1, e))


# ---------------------------------------------------------------------------
# partition-driven report


@dataclass
class BucketReport:
    buckets: dict[str, int]
    zero_set: int
    total: int
    points_per_bucket: dict[str, int]


def partitioned_incidence_report(V, struct: IncidenceStructure, M: int, seed: int = 0, profile=None) -> BucketReport:
    from .partition import partition

    chain, _ = partition(V, struct.points, M, profile=profile, seed=seed)
    buckets: dict[str, int] = {}
    counts: dict[str, int] = {}
    zero = 0
    for i, s in enumerate(struct.points):
        vals = [h.evaluate(s) for h in chain.rounds]
        inc = _popcount(struct.rows[i])
        if any(v == 0 for v in vals):
            zero += inc
            continue
        key = "".join("+" if v > 0 else "-" for v in vals)
        buckets[key] = buckets.get(key, 0) + inc
        counts[key] = counts.get(key, 0) + 1
    total = count_incidences(struct)
    if sum(buckets.values()) + zero != total:
        raise FixtureFailure("bucket sums do not add up to the incidence count")
    return BucketReport(dict(sorted(buckets.items())), zero, total, dict(sorted(counts.items())))


# ---------------------------------------------------------------------------
# abstract bipartite graphs


@dataclass
class AbstractGraph:
    n_points: int
    members: list[list[int]]

    @classmethod
    def parse(cls, text: str) -> "AbstractGraph":
        """One line per member, space-separated point indices; ``# points: N`` optional."""
        from .errors import ParseError

        members = []
        n = None
        for line in text.splitlines():
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                body = s[1:].strip()
                if body.startswith("points:"):
                    n = int(body.split(":", 1)[1])
                continue
            try:
                members.append(sorted({int(tok) for tok in s.split()}))
            except ValueError as exc:
                raise ParseError(f"bad adjacency line {line!r}") from exc
        top = max((i for m in members for i in m), default=-1) + 1
        if n is None:
            n = top
        elif top > n:
            raise ParseError(f"index {top - 1} out of range for {n} points")
        if any(i < 0 for m in members for i in m):
            raise ParseError("negative point index")
        return cls(n, members)

    def render(self) -> str:
        lines = [f"# points: {self.n_points}"]
        lines += [" ".join(str(i) for i in m) for m in self.members]
        return "\n".join(lines) + "\n"

    def structure(self) -> IncidenceStructure:
        return IncidenceStructure.from_masks(self.n_points, [sum(1 << i for i in m) for m in self.members])

    @property
    def incidences(self) -> int:
        return sum(len(m) for m in self.members)


def regularize(graph: AbstractGraph, block_size: int | None = None) -> tuple[AbstractGraph, int]:
    """Drop members below half the average size and cut the rest into disjoint blocks.

    The default block size is a quarter of the average member size.
    """
    if not graph.members:
        raise PreconditionViolated("no members to regularize")
    sigma = Fraction(graph.incidences, len(graph.members))
    K = int(sigma / 4) if block_size is None else block_size
    if K < 1:
        raise PreconditionViolated(f"block size {K} is too small (average member size {sigma})")
    blocks: list[list[int]] = []
    seen = set()
    for m in graph.members:
        if len(m) < sigma / 2:
            continue
        for start in range(0, len(m) - K + 1, K):
            blk = tuple(m[start:start + K])
            if blk not in seen:
                seen.add(blk)
                blocks.append(list(blk))
    return AbstractGraph(graph.n_points, blocks), K


@dataclass
class SharpResult:
    structure: IncidenceStructure
    graph: AbstractGraph
    degree: int
    block_size: int
    graph_equal: bool
    free: bool
    ratio: Fraction
    resamples: int
    size_condition: bool
    notes: dict = field(default_factory=dict)


def sharp_construction(graph: AbstractGraph, V, k: int, b: int, seed: int = 0, block_size: int | None = None,
                       resample_budget: int = 200, size_constant=Fraction(1)) -> SharpResult:
    """Realise a ``(k, b)``-free abstract graph by points on ``V`` and hypersurfaces.

    Each block of ``K'`` points receives the unique (up to scale) combination
    of the quotient basis in degree ``D`` vanishing on it, where ``D`` is the
    largest degree with ``H(D) <= K + 1`` and ``K' = H(D) - 1``.  Points
    whose placement creates an extra incidence are moved to fresh parameter
    values.
    """
    from .siegel import quotient_basis

    if V.parameterization is None:
        raise OracleMissing("the sharp construction needs a rational parameterization")
    if not check_kb_free(graph.structure(), k, b):
        raise PreconditionViolated(f"abstract graph is not ({k},{b})-free")
    reg, K = regularize(graph, block_size)
    D = 0
    while V.hilbert(D + 1) <= K + 1:
        D += 1
    Kp = V.hilbert(D) - 1
    if Kp < 1:
        raise PreconditionViolated(f"block size {K} leaves no room: H(0) = 1")
    blocks = [m[:Kp] for m in reg.members if len(m) >= Kp]
    unique = []
    for blk in blocks:
        if blk not in unique:
            unique.append(blk)
    reg = AbstractGraph(graph.n_points, unique)
    qb = quotient_basis(V, D)

    # seeded stream of rational parameters; spread out so that accidental
    # incidences are rare
    rng = random.Random(seed)
    k_params = V.parameterization[0].n
    den = V.denominator
    used = set()

    def next_point():
        while True:
            t = tuple(Fraction(rng.randint(-999, 999), rng.randint(1, 9)) for _ in range(k_params))
            dv = den.evaluate(t) if den is not None else Fraction(1)
            if dv == 0:
                continue
            pt = tuple(p.evaluate(t) / dv for p in V.parameterization)
            if pt in used:
                continue
            used.add(pt)
            return pt

    points = [next_point() for _ in range(graph.n_points)]
    resamples = 0

    def solve(blk):
        rows = [qb.lift(points[i]) for i in blk]
        ns = nullspace(rows, qb.t)
        if len(ns) != 1:
            return None
        vec = clear_denominators(ns[0])
        P = Polynomial.zero(V.n)
        for c, q in zip(vec, qb.representatives):
            if c:
                P = P + q.scale(c)
        return P

    polys: list[Polynomial | None] = [None] * len(reg.members)
    while True:
        bad_point = None
        for j, blk in enumerate(reg.members):
            if polys[j] is None:
                polys[j] = solve(blk)
                if polys[j] is None:
                    bad_point = blk[-1]
                    break
        if bad_point is None:
            member_sets = [set(m) for m in reg.members]
            for j, P in enumerate(polys):
                for i, s in enumerate(points):
                    if i not in member_sets[j] and P.evaluate(s) == 0:
                        bad_point = i
                        break
                if bad_point is not None:
                    break
        if bad_point is None:
            break
        resamples += 1
        if resamples > resample_budget:
            raise GenericityExhausted(f"still degenerate after {resample_budget} resamples")
        points[bad_point] = next_point()
        for j, blk in enumerate(reg.members):
            if bad_point in blk:
                polys[j] = None

    struct = IncidenceStructure.build(points, polys)
    expected = {(i, j) for j, m in enumerate(reg.members) for i in m}
    graph_equal = struct.edges() == expected
    free = bool(check_kb_free(struct, k, b))
    inc = count_incidences(struct)
    d = V.dim
    unit = main_term_unit(len(points), struct.deg_T, V.degree, d, k)
    ratio = Fraction(inc) / unit if unit else Fraction(0)
    from .variety import profile_of

    delta = profile_of(V).delta(V.codim) if V.codim else 1
    size_ok = V.degree * Fraction(delta) ** d <= Fraction(size_constant) * Fraction(graph.incidences, max(1, len(graph.members)))
    return SharpResult(struct, reg, D, Kp, graph_equal, free, ratio, resamples, size_ok,
                       notes={"requested_block": K, "sigma": Fraction(graph.incidences, max(1, len(graph.members)))})


# ---------------------------------------------------------------------------
# bundled abstract graphs


def projective_plane_lines(q: int) -> AbstractGraph:
    """Points and lines of PG(2, q) for a prime ``q``."""
    pts = []
    for x in range(q):
        for y in range(q):
            pts.append((x, y, 1))
    for x in range(q):
        pts.append((x, 1, 0))
    pts.append((1, 0, 0))
    members = []
    for line in pts:
        members.append([i for i, p in enumerate(pts) if sum(a * c for a, c in zip(line, p)) % q == 0])
    return AbstractGraph(len(pts), members)


def affine_parabolas(q: int, count: int) -> AbstractGraph:
    """Points of AG(2, q) against the first ``count`` parabolas ``y = a x^2 + b x + c``."""
    index = {(x, y): x * q + y for x in range(q) for y in range(q)}
    members = []
    for a in range(1, q):
        for bb in range(q):
            for c in range(q):
                if len(members) == count:
                    return AbstractGraph(q * q, members)
                members.append(sorted(index[(x, (a * x * x + bb * x + c) % q)] for x in range(q)))
    return AbstractGraph(q * q, members)
