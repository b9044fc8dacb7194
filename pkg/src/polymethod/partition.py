"""Polynomial ham-sandwich bisection relative to a variety, and iterated partitioning.

Points are lifted through a quotient basis ``q_1..q_t`` of ``Q[x]_{<=m} / I(V)``,
a hyperplane bisecting every lifted set is found by a combinatorial search,
and the hyperplane is pulled back to ``g = sum a_j q_j + a_0``.  Because the
``q_j`` together with ``1`` are independent modulo ``I(V)``, any nonzero
hyperplane pulls back to a polynomial outside ``I(V)``.

Hyperplane search (``discrete_ham_sandwich``):

* the lifted sets are projected to ``R^k`` (``k`` = number of nonempty sets)
  by a Vandermonde matrix, whose maximal minors are all nonzero;
* a hyperplane through one chosen point of each of ``k-1`` sets lies in a
  pencil ``A + lambda*B``; one sweep over the critical values of ``lambda``
  tests every sign pattern the pencil realises;
* choices of points are explored by local search on the total excess and
  then exhaustively; a deterministic perturbation is the last resort.

Exhaustive choice enumeration is complete for point sets in general
position, since a generic ham-sandwich cut of odd sets passes through one
point of each set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

from .errors import HamSandwichNotFound, PreconditionViolated, RoundBudgetExceeded
from .ideal import LIMITS, affine_hilbert
from .linalg import nullspace
from .poly import Polynomial, RationalPoint
from .siegel import quotient_basis


@dataclass
class Hyperplane:
    coefficients: list[Fraction]
    offset: Fraction

    def __post_init__(self):
        if not any(self.coefficients) and not self.offset:
            raise ValueError("hyperplane coefficients are all zero")

    def value(self, y: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.coefficients, y)), Fraction(0)) + self.offset


def side_counts(h: Hyperplane, pts: Sequence[Sequence]) -> tuple[int, int, int]:
    pos = neg = zero = 0
    for y in pts:
        v = h.value(y)
        if v > 0:
            pos += 1
        elif v < 0:
            neg += 1
        else:
            zero += 1
    return pos, neg, zero


def bisects(h: Hyperplane, sets: Sequence[Sequence[Sequence]]) -> bool:
    for S in sets:
        pos, neg, _ = side_counts(h, S)
        if 2 * pos > len(S) or 2 * neg > len(S):
            return False
    return True


# ---------------------------------------------------------------------------
# pencil sweep on integer homogeneous coordinates


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _homogenize(pt: Sequence[Fraction]) -> list[int]:
    den = lcm(*(Fraction(x).denominator for x in pt)) if pt else 1
    return [int(Fraction(x) * den) for x in pt] + [den]


class _Sweep:
    """Best position in the pencil ``A + lambda B`` for a family of sets."""

    def __init__(self, sets: list[list[list[int]]]):
        self.sets = sets
        self.sizes = [len(S) for S in sets]
        self.flat = [(i, p) for i, S in enumerate(sets) for p in S]

    def run(self, A: list[int], B: list[int]):
        """Return ``(excess, lam)``; ``lam`` is a Fraction or ``None`` for ``B`` itself."""
        K = len(self.sets)
        pos = [0] * K
        neg = [0] * K
        events: dict[Fraction, list[tuple[int, int]]] = {}
        for i, p in self.flat:
            a = sum(x * y for x, y in zip(A, p))
            b = sum(x * y for x, y in zip(B, p))
            if b == 0:
                s = _sign(a)
            else:
                s = -_sign(b)
                events.setdefault(Fraction(-a, b), []).append((i, _sign(b)))
            if s > 0:
                pos[i] += 1
            elif s < 0:
                neg[i] += 1
        sizes = self.sizes

        def excess_of(i):
            return max(0, 2 * pos[i] - sizes[i]) + max(0, 2 * neg[i] - sizes[i])

        exc = [excess_of(i) for i in range(K)]
        total = sum(exc)
        keys = sorted(events)
        best = (total, keys[0] - 1 if keys else Fraction(0))
        if total == 0:
            return best

        def move(i, old, new):
            nonlocal total
            if old > 0:
                pos[i] -= 1
            elif old < 0:
                neg[i] -= 1
            if new > 0:
                pos[i] += 1
            elif new < 0:
                neg[i] += 1
            e = excess_of(i)
            total += e - exc[i]
            exc[i] = e

        for idx, lam in enumerate(keys):
            for i, sb in events[lam]:
                move(i, -sb, 0)
            if total < best[0]:
                best = (total, lam)
                if total == 0:
                    return best
            for i, sb in events[lam]:
                move(i, 0, sb)
            nxt = keys[idx + 1] if idx + 1 < len(keys) else lam + 2
            if total < best[0]:
                best = (total, (lam + nxt) / 2)
                if total == 0:
                    return best
        # the pencil member B itself
        pos = [0] * K
        neg = [0] * K
        for i, p in self.flat:
            s = _sign(sum(x * y for x, y in zip(B, p)))
            if s > 0:
                pos[i] += 1
            elif s < 0:
                neg[i] += 1
        tb = sum(excess_of(i) for i in range(K))
        if tb < best[0]:
            best = (tb, None)
        return best


def _vandermonde(rows: int, cols: int, shift: int = 2) -> list[list[int]]:
    return [[(i + shift) ** j for j in range(cols)] for i in range(rows)]


def _median_first(pts: list[list[int]]) -> list[int]:
    """Indices ordered by distance from the median along a generic functional."""
    w = [(3 ** j) for j in range(len(pts[0]) - 1)]

    def score(p):
        return Fraction(sum(a * b for a, b in zip(w, p[:-1])), p[-1])

    order = sorted(range(len(pts)), key=lambda i: (score(pts[i]), i))
    mid = (len(order) - 1) / 2
    return sorted(order, key=lambda i: (abs(order.index(i) - mid), order.index(i)))


def _search_projected(sets: list[list[list[int]]], budget: int, seed: int):
    """Search a bisecting hyperplane for ``k`` sets of homogeneous points in ``R^k``."""
    k = len(sets)
    sweep = _Sweep(sets)
    # sweep the largest set; draw pencil points from the others
    through = sorted(range(k), key=lambda i: len(sets[i]))[: k - 1]
    orders = [_median_first(sets[i]) for i in through]
    evaluations = 0
    cache: dict[tuple[int, ...], tuple[int, object, list, list]] = {}

    def evaluate(choice: tuple[int, ...]):
        nonlocal evaluations
        if choice in cache:
            return cache[choice]
        evaluations += 1
        rows = [sets[i][j] for i, j in zip(through, choice)]
        ns = nullspace(rows, k + 1)
        best = None
        for a in range(len(ns)):
            for b in range(a + 1, len(ns)):
                A = _int_vector(ns[a])
                B = _int_vector(ns[b])
                exc, lam = sweep.run(A, B)
                if best is None or exc < best[0]:
                    best = (exc, lam, A, B)
                if exc == 0:
                    break
            if best and best[0] == 0:
                break
        cache[choice] = best
        return best

    def hyper(res):
        _, lam, A, B = res
        if lam is None:
            return [Fraction(x) for x in B]
        return [Fraction(a) + lam * b for a, b in zip(A, B)]

    if k == 1:
        res = evaluate(())
        return hyper(res) if res[0] == 0 else None

    total_choices = 1
    for i in through:
        total_choices *= len(sets[i])
    if total_choices <= min(budget, 4000):
        for choice in product(*orders):
            res = evaluate(choice)
            if res[0] == 0:
                return hyper(res)
        return None

    rng = random.Random(seed)
    current = tuple(o[0] for o in orders)
    cur = evaluate(current)
    while evaluations < budget // 2:
        if cur[0] == 0:
            return hyper(cur)
        improved = False
        for pos in range(k - 1):
            for j in orders[pos]:
                cand = current[:pos] + (j,) + current[pos + 1:]
                res = evaluate(cand)
                if res[0] < cur[0]:
                    current, cur, improved = cand, res, True
                    break
                if evaluations >= budget // 2:
                    break
            if cur[0] == 0 or evaluations >= budget // 2:
                break
        if not improved and cur[0] > 0:
            current = tuple(rng.choice(o) for o in orders)
            cur = evaluate(current)
    if cur[0] == 0:
        return hyper(cur)
    for choice in product(*orders):
        if evaluations >= budget:
            break
        res = evaluate(choice)
        if res[0] == 0:
            return hyper(res)
    return None


def _int_vector(v: Sequence[Fraction]) -> list[int]:
    den = lcm(*(Fraction(x).denominator for x in v))
    return [int(Fraction(x) * den) for x in v]


def discrete_ham_sandwich(lifted_sets: Sequence[Sequence[Sequence]], t: int | None = None,
                          budget: int = 20000, seed: int = 0) -> Hyperplane:
    """A hyperplane leaving at most half of every set strictly on each side."""
    sets = [[tuple(Fraction(c) for c in y) for y in S] for S in lifted_sets]
    if t is None:
        t = max((len(y) for S in sets for y in S), default=1)
    for S in sets:
        for y in S:
            if len(y) != t:
                raise PreconditionViolated("lifted points have inconsistent dimension")
    live = [S for S in sets if S]
    if len(live) > t:
        raise PreconditionViolated(f"{len(live)} sets cannot be bisected in dimension {t}")
    if not live:
        return Hyperplane([Fraction(1)] + [Fraction(0)] * (t - 1), Fraction(0))

    # fast path: a hyperplane through every point
    allpts = [y for S in live for y in S]
    if len(allpts) <= t:
        ns = nullspace([list(y) + [1] for y in allpts], t + 1)
        for v in ns:
            if any(v[:t]):
                h = Hyperplane(list(v[:t]), v[t])
                if bisects(h, sets):
                    return h

    k = len(live)
    for attempt, shift in enumerate((2, 5, 11)):
        G = _vandermonde(k, t, shift) if t > k else None
        projected = []
        for S in live:
            projected.append([_homogenize(_project(G, y)) for y in S])
        hv = _search_projected(projected, budget, seed + attempt)
        if hv is not None:
            h = _pull_back(G, hv, t)
            if h is not None and bisects(h, sets):
                return h
    h = _perturbed_search(live, sets, t, budget, seed)
    if h is not None:
        return h
    raise HamSandwichNotFound("no bisecting hyperplane found in the candidate search")


def _project(G, y):
    if G is None:
        return list(y)
    return [sum(g * c for g, c in zip(row, y)) for row in G]


def _pull_back(G, hv: Sequence[Fraction], t: int) -> Hyperplane | None:
    k = len(hv) - 1
    if G is None:
        coeffs = list(hv[:k])
    else:
        coeffs = [sum(hv[i] * G[i][j] for i in range(k)) for j in range(t)]
    if not any(coeffs) and not hv[k]:
        return None
    return Hyperplane([Fraction(c) for c in coeffs], Fraction(hv[k]))


def _perturbed_search(live, sets, t, budget, seed) -> Hyperplane | None:
    """Search on deterministically perturbed copies, then check on the originals."""
    rng = random.Random(seed + 12345)
    scale = max((abs(c) for S in live for y in S for c in y), default=Fraction(1)) or Fraction(1)
    k = len(live)
    for exp in (20, 40, 80):
        eps = scale / (2 ** exp)
        noisy = [[tuple(c + eps * Fraction(rng.randint(-1000, 1000), 1000) for c in y) for y in S] for S in live]
        G = _vandermonde(k, t) if t > k else None
        projected = [[_homogenize(_project(G, y)) for y in S] for S in noisy]
        hv = _search_projected(projected, budget, seed)
        if hv is None:
            continue
        h = _pull_back(G, hv, t)
        if h is not None and bisects(h, sets):
            return h
        if h is None:
            continue
        # snap: hyperplane through the original points lying on the perturbed one
        on = [y for S, NS in zip(live, noisy) for y, z in zip(S, NS) if h.value(z) == 0]
        ns = nullspace([list(y) + [1] for y in on], t + 1)
        for v in ns:
            if any(v[:t]) or v[t]:
                cand = Hyperplane(list(v[:t]), v[t]) if any(v[:t]) else None
                if cand is not None and bisects(cand, sets):
                    return cand
    return None


# ---------------------------------------------------------------------------
# bisection relative to a variety


def bisect_sets(V, sets: Sequence[Sequence[RationalPoint]], m: int, seed: int = 0) -> Polynomial:
    """A polynomial of degree <= m outside ``I(V)`` bisecting every set."""
    I = V if not hasattr(V, "ideal") else V.ideal
    qb = quotient_basis(I, m)
    k = sum(1 for S in sets if S)
    if k >= qb.t:
        raise PreconditionViolated(f"{k} sets need H(m) > {k}, got H({m}) = {qb.t}")
    reps = qb.representatives[1:]  # drop the constant monomial
    t = len(reps)
    lifted = [[[q.evaluate(s) for q in reps] for s in S] for S in sets]
    h = discrete_ham_sandwich(lifted, t, seed=seed)
    g = Polynomial.constant(I.n, h.offset)
    for a, q in zip(h.coefficients, reps):
        if a:
            g = g + q.scale(a)
    den = lcm(*(c.denominator for c in g.terms.values()))
    g = g.scale(den)
    if I.contains(g):
        raise HamSandwichNotFound("pulled-back bisector lies in I(V)")
    for S in sets:
        pos = sum(1 for s in S if g.evaluate(s) > 0)
        neg = sum(1 for s in S if g.evaluate(s) < 0)
        if 2 * pos > len(S) or 2 * neg > len(S):
            raise HamSandwichNotFound("pulled-back polynomial does not bisect")
    return g


@dataclass
class BisectorChain:
    rounds: list[Polynomial]
    n: int

    @property
    def degrees(self) -> list[int]:
        return [h.degree for h in self.rounds]

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def product(self) -> Polynomial:
        g = Polynomial.constant(self.n, 1)
        for h in self.rounds:
            g = g * h
        return g


@dataclass
class RoundCensus:
    round: int
    m: int
    classes: dict[str, int]
    on_zero: int
    max_class: int
    bound: int


@dataclass
class PartitionReport:
    size: int
    M: int
    index: int
    fallback: bool
    target: Fraction
    census: list[RoundCensus] = field(default_factory=list)
    total_degree: int = 0

    @property
    def degree_ratio(self) -> Fraction:
        return Fraction(self.total_degree, self.M)


def sign_vector(chain_vals: Sequence[Fraction]) -> str:
    return "".join("+" if v > 0 else "-" if v < 0 else "0" for v in chain_vals)


def partition(V, S: Sequence[RationalPoint], M: int, c0=Fraction(1), c1=Fraction(1, 4), profile=None,
              seed: int = 0, max_rounds: int = 40) -> tuple[BisectorChain, PartitionReport]:
    """Iterated simultaneous bisection of all sign classes."""
    from .variety import i_V_of_M, profile_of

    if M < 1:
        raise PreconditionViolated("M must be at least 1")
    S = [tuple(Fraction(c) for c in s) for s in S]
    n = V.n
    profile = profile or profile_of(V, seed=seed)
    choice = i_V_of_M(profile, n, M, c0, c1)
    s = choice.index
    r = Fraction(M) ** (n - s) * profile.big_deltas[s]
    rounds = 0
    while Fraction(2) ** rounds < r and 2 ** rounds < len(S):
        rounds += 1
    if rounds > max_rounds:
        raise RoundBudgetExceeded(f"{rounds} rounds requested, budget {max_rounds}")
    report = PartitionReport(len(S), M, s, choice.fallback, r)
    chain = BisectorChain([], n)
    signs: list[str] = ["" for _ in S]
    for i in range(1, rounds + 1):
        classes: dict[str, list[int]] = {}
        for idx, sv in enumerate(signs):
            if "0" not in sv:
                classes.setdefault(sv, []).append(idx)
        keys = sorted(classes)
        k = len(keys)
        m = 0
        while affine_hilbert(V.ideal, m) <= k:
            m += 1
            if m > LIMITS.max_degree:
                raise RoundBudgetExceeded("no degree with enough room for the current classes")
        h = bisect_sets(V, [[S[j] for j in classes[key]] for key in keys], m, seed=seed + i)
        chain.rounds.append(h)
        for idx in range(len(S)):
            v = h.evaluate(S[idx])
            signs[idx] += "+" if v > 0 else "-" if v < 0 else "0"
        census: dict[str, int] = {}
        on_zero = 0
        for sv in signs:
            if "0" in sv:
                on_zero += 1
            else:
                census[sv] = census.get(sv, 0) + 1
        biggest = max(census.values(), default=0)
        bound = -(-len(S) // 2 ** i)
        if biggest > bound:
            raise HamSandwichNotFound(f"round {i}: class of size {biggest} exceeds {bound}")
        report.census.append(RoundCensus(i, m, dict(sorted(census.items())), on_zero, biggest, bound))
    report.total_degree = chain.total_degree
    return chain, report


# ---------------------------------------------------------------------------
# grid-based component estimates


@dataclass
class GridEstimate:
    zero_components: int
    complement_components: int
    resolution: int
    stable: bool
    coarse: tuple[int, int]


def _grid_counts(P: Polynomial, box, resolution: int) -> tuple[int, int]:
    import numpy as np
    from scipy import ndimage

    n = P.n
    axes = []
    for lo, hi in box:
        lo, hi = float(Fraction(lo)), float(Fraction(hi))
        step = (hi - lo) / resolution
        axes.append(lo + step * (np.arange(resolution) + 0.5))
    grids = np.meshgrid(*axes, indexing="ij")
    vals = np.zeros_like(grids[0])
    for e, c in P.terms.items():
        term = np.full_like(grids[0], float(c))
        for i, k in enumerate(e):
            if k:
                term = term * grids[i] ** k
        vals = vals + term
    sign = np.sign(vals)
    face = ndimage.generate_binary_structure(n, 1)
    full = ndimage.generate_binary_structure(n, n)
    _, npos = ndimage.label(sign > 0, structure=face)
    _, nneg = ndimage.label(sign < 0, structure=face)
    crossing = sign == 0
    for axis in range(n):
        a = np.moveaxis(sign, axis, 0)
        flip = (a[1:] * a[:-1]) < 0
        c = np.moveaxis(crossing, axis, 0)
        c[1:] |= flip
        c[:-1] |= flip
    _, nzero = ndimage.label(crossing, structure=full)
    return int(nzero), int(npos + nneg)


def estimate_components_grid(P: Polynomial, box, resolution: int = 200) -> GridEstimate:
    """Approximate counts of zero-set and complement components on a grid (n <= 3)."""
    if P.n > 3:
        raise PreconditionViolated("grid estimation is limited to n <= 3")
    if len(box) != P.n:
        raise PreconditionViolated("box needs one interval per variable")
    fine = _grid_counts(P, box, resolution)
    coarse = _grid_counts(P, box, max(2, resolution // 2))
    return GridEstimate(fine[0], fine[1], resolution, fine == coarse, coarse)
