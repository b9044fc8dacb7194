import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_free
from polymethod import fixtures
from polymethod.errors import DomainError, ParseError, PreconditionViolated
from polymethod.incidence import (AbstractGraph, IncidenceStructure, check_exponent_identities, check_kb_free,
                                  choose_partition_degree, count_incidences, exponents, kst_bound,
                                  main_term_unit, partitioned_incidence_report, projective_plane_lines,
                                  regularize, rich_points_bound, sharp_construction, tau, theorem6_bound)
from polymethod.poly import parse
from polymethod.rounding import iroot, pow_down, pow_up

getcontext().prec = 80


def dec(x) -> Decimal:
    x = Fraction(x)
    return Decimal(x.numerator) / Decimal(x.denominator)


def random_structure(rng, n_pts, n_surf, density=0.4):
    cols = []
    for _ in range(n_surf):
        cols.append(sum(1 << i for i in range(n_pts) if rng.random() < density))
    return IncidenceStructure.from_masks(n_pts, cols)


# -- rounding ---------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 30), st.integers(1, 7))
def test_iroot_is_floor_root(a, b):
    r = iroot(a, b)
    assert r ** b <= a < (r + 1) ** b


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=10 ** 6, max_denominator=1000),
       st.fractions(min_value=Fraction(-3), max_value=3, max_denominator=12))
def test_outward_rounding_brackets_high_precision_value(x, p):
    exact = dec(x) ** dec(p)
    lo, hi = pow_down(x, p), pow_up(x, p)
    assert dec(lo) <= exact * (1 + Decimal(10) ** -40)
    assert dec(hi) >= exact * (1 - Decimal(10) ** -40)
    assert hi - lo <= hi * Fraction(1, 2 ** 60)


# -- counting and freeness ------------------------------------------------------------

def test_collinear_points_on_their_line():
    struct = IncidenceStructure.build([(0, 0), (1, 1), (2, 2)], [parse("x0 - x1", 2)])
    assert count_incidences(struct) == 3


def test_empty_family():
    struct = IncidenceStructure.build([(0, 0), (1, 1)], [])
    assert count_incidences(struct) == 0
    assert check_kb_free(struct, 1, 1)


def test_count_matches_naive_double_loop():
    rng = random.Random(7)
    pts = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(10)]
    polys = [parse(f"{rng.randint(-2, 2)}*x0 + {rng.randint(1, 2)}*x1 - {rng.randint(0, 2)}", 2)
             for _ in range(10)]
    struct = IncidenceStructure.build(pts, polys)
    naive = sum(1 for p in pts for q in polys if q.evaluate(p) == 0)
    assert count_incidences(struct) == naive


def test_shared_line_degeneracy():
    # b - 1 = 2 planes through the line x0 = x1 = 0 with k = 3 points on it
    pts = [(0, 0, 0), (0, 0, 1), (0, 0, 2)]
    planes = [parse("x0", 3), parse("x1", 3)]
    struct = IncidenceStructure.build(pts, planes)
    assert check_kb_free(struct, 3, 3)
    assert not check_kb_free(struct, 3, 2)


def test_repeated_members_break_freeness():
    struct = IncidenceStructure.from_masks(2, [0b11, 0b11])
    res = check_kb_free(struct, 2, 2)
    assert not res and res.points == [0, 1] and res.surfaces == [0, 1]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(1, 3))
def test_freeness_matches_brute_force(seed, k, b):
    rng = random.Random(seed)
    struct = random_structure(rng, rng.randint(1, 9), rng.randint(1, 9))
    assert bool(check_kb_free(struct, k, b)) == brute_force_free(struct, k, b)


# -- bound formulas -------------------------------------------------------------------------

def test_kst_examples():
    assert kst_bound(30, 4, 1, 2) == 60
    assert kst_bound(100, 100, 2, 1) == 1100
    value = kst_bound(50, 8, 2, 2)
    assert dec(value) >= Decimal(2).sqrt() * 50 * Decimal(8).sqrt() + 8 - Decimal(10) ** -30
    assert value - 208 < Fraction(1, 10 ** 15)


def test_incidence_bound_at_k_one_d_one():
    rep = theorem6_bound(10, 6, 2, 1, 1, 2, c1=Fraction(3))
    assert (rep.alpha, rep.beta) == (0, 1)
    assert rep.main == 3 * 6 * 2
    assert rep.secondary == 1 * 6 * 2
    assert rep.linear == 10


def test_exponents_example():
    a, b = exponents(2, 2)
    assert (a, b) == (Fraction(2, 3), Fraction(2, 3))
    assert 1 - a == b / 2 == Fraction(1, 3)


@pytest.mark.parametrize("k", range(2, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_exponent_identities(k, d):
    a, b = exponents(k, d)
    assert 1 - a == b / d
    assert b / (1 - a) == d
    assert (1 - b) / (1 - a) == Fraction(d - 1, k - 1)
    assert check_exponent_identities(k, d)


def test_exponents_domain():
    with pytest.raises(DomainError):
        exponents(0, 2)


def test_tau_upper_rounding():
    a, b = exponents(3, 2)
    exact = dec(2) ** (1 - dec(b)) * dec(3) ** (1 - dec(a))
    assert dec(tau(2, 2, 3)) >= exact * (1 - Decimal(10) ** -40)


def test_curves_are_dominated_by_the_secondary_term():
    # lines through many points of a line: d = 1 makes the main term a multiple of deg(T) deg(V)
    rep = theorem6_bound(100, 10, 1, 1, 2, 1, c1=Fraction(1, 4), incidences=100, n_surfaces=10)
    assert rep.dominant == "secondary"


def test_rich_points_at_r_equal_b():
    v = rich_points_bound(2, 5, 1, 2, 2, 2)
    assert v > 0
    with pytest.raises(PreconditionViolated):
        rich_points_bound(1, 5, 1, 2, 2, 2)


def test_partition_degree_chooser():
    # s = 0: empty product, M_0 = (b |S|^k / (k^k deg T))^(1/(k n - 1))
    v = choose_partition_degree(100, 10, [2, 2], 2, 1, 0, 3)
    exact = (dec(100) ** 2 / (dec(4) * 10)) ** (Decimal(1) / 5)
    assert dec(v) >= exact * (1 - Decimal(10) ** -40)
    assert dec(v) <= exact * (1 + Decimal(10) ** -15)
    v2 = choose_partition_degree(100, 10, [2, 2], 2, 1, 1, 3)
    exact2 = (dec(100) ** 2 / (dec(4) * 10 * 4)) ** (Decimal(1) / 3)
    assert abs(dec(v2) - exact2) <= exact2 * Decimal(10) ** -15


def test_main_term_unit_positive():
    assert main_term_unit(64, 12, 3, 1, 2) > 0


# -- partition buckets ----------------------------------------------------------------------

def test_bucket_sums_equal_total():
    rng = random.Random(3)
    pts = list(dict.fromkeys((rng.randint(-8, 8), rng.randint(-8, 8)) for _ in range(16)))
    lines = [parse(s, 2) for s in ("x0 - x1", "x0 + x1", "x1 - 1", "x0 - 2")]
    struct = IncidenceStructure.build(pts, lines)
    rep = partitioned_incidence_report(fixtures.plane(), struct, 2)
    assert sum(rep.buckets.values()) + rep.zero_set == rep.total == count_incidences(struct)


def test_empty_family_buckets():
    pts = [(0, 0), (1, 3), (2, 1), (5, 5)]
    rep = partitioned_incidence_report(fixtures.plane(), IncidenceStructure.build(pts, []), 2)
    assert rep.total == 0 and all(v == 0 for v in rep.buckets.values())


def test_single_class_bucket():
    pts = [(0, 0)]
    struct = IncidenceStructure.build(pts, [parse("x0", 2)])
    rep = partitioned_incidence_report(fixtures.plane(), struct, 1)
    assert rep.buckets == {"": 1}


# -- abstract graphs and the construction ------------------------------------------------------

def test_graph_round_trip():
    g = projective_plane_lines(3)
    assert AbstractGraph.parse(g.render()) == g
    assert g.n_points == 13 and all(len(m) == 4 for m in g.members)


def test_graph_parse_errors():
    with pytest.raises(ParseError):
        AbstractGraph.parse("# points: 2\n0 5\n")
    with pytest.raises(ParseError):
        AbstractGraph.parse("0 a\n")


def test_regularize_drops_small_members():
    g = AbstractGraph(10, [[0, 1, 2, 3, 4, 5, 6, 7], [8], [0, 1, 2, 3, 4, 6, 8, 9]])
    assert regularize(g)[1] == int(Fraction(17, 3) / 4)
    reg, K = regularize(g, block_size=2)
    # the singleton member is below half the average size and disappears
    assert reg.members == [[0, 1], [2, 3], [4, 5], [6, 7], [4, 6], [8, 9]]


def test_two_pairs_on_the_parabola():
    g = AbstractGraph(4, [[0, 1], [2, 3]])
    res = sharp_construction(g, fixtures.parabola(), 3, 1, block_size=2)
    assert res.graph_equal and res.free
    assert len(res.structure.hypersurfaces) == 2
    for j, P in enumerate(res.structure.hypersurfaces):
        on = [i for i, p in enumerate(res.structure.points) if P.evaluate(p) == 0]
        assert on == res.graph.members[j]


def test_construction_rejects_non_free_input():
    g = AbstractGraph(2, [[0, 1], [0, 1]])
    with pytest.raises(PreconditionViolated):
        sharp_construction(g, fixtures.parabola(), 2, 2, block_size=2)


@pytest.mark.parametrize("name", sorted(fixtures.GRAPH_FIXTURES))
def test_bundled_graph_fixtures(name):
    k, b, factory = fixtures.GRAPH_FIXTURES[name]
    V = factory()
    res = sharp_construction(fixtures.load_graph(name), V, k, b)
    st_ = res.structure
    expected = {(i, j) for j, m in enumerate(res.graph.members) for i in m}
    recount = {(i, j) for j, P in enumerate(st_.hypersurfaces) for i, p in enumerate(st_.points)
               if P.evaluate(p) == 0}
    assert recount == expected
    assert brute_force_free(st_, k, b) if st_.n_points <= 30 else check_kb_free(st_, k, b)
    assert all(P.degree <= res.degree for P in st_.hypersurfaces)
    assert res.ratio > 0
