"""Named varieties and abstract incidence graphs used by tests, calibration and the CLI."""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from ..ideal import Ideal
from ..incidence import AbstractGraph
from ..poly import Polynomial, parse
from ..variety import Variety


def _t(expr: str, k: int = 1) -> Polynomial:
    """A parameter-ring polynomial; ``x0`` is the parameter."""
    return parse(expr, k)


def twisted_cubic() -> Variety:
    return Variety(Ideal.from_strings(["x1 - x0^2", "x2 - x0^3"], 3),
                   parameterization=[_t("x0"), _t("x0^2"), _t("x0^3")], name="twisted cubic")


def circle() -> Variety:
    # ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))
    return Variety(Ideal.from_strings(["x0^2 + x1^2 - 1"], 2),
                   parameterization=[_t("1 - x0^2"), _t("2*x0")], denominator=_t("1 + x0^2"),
                   name="circle")


def parabola() -> Variety:
    return Variety(Ideal.from_strings(["x1 - x0^2"], 2), parameterization=[_t("x0"), _t("x0^2")],
                   name="parabola")


def line_in_space() -> Variety:
    """The line ``x0 = x2 = 0`` in three-space."""
    return Variety(Ideal.from_strings(["x0", "x2"], 3), parameterization=[_t("0"), _t("x0"), _t("0")],
                   name="line in 3-space")


def plane() -> Variety:
    """All of two-space (zero ideal)."""
    return Variety(Ideal([], 2), parameterization=[parse("x0", 2), parse("x1", 2)], name="plane")


def space(n: int) -> Variety:
    return Variety(Ideal([], n), parameterization=[Polynomial.variable(n, i) for i in range(n)],
                   name=f"{n}-space")


def hyperplane(n: int = 3) -> Variety:
    params = [Polynomial.zero(n - 1)] + [Polynomial.variable(n - 1, i) for i in range(n - 1)]
    return Variety(Ideal([Polynomial.variable(n, 0)], n), parameterization=params, name="hyperplane x0=0")


def plane_curve(e: int) -> Variety:
    """The circle for ``e = 2``, otherwise the Fermat-type curve ``x0^e + x1^e - 1``."""
    if e == 2:
        return circle()
    return Variety(Ideal.from_strings([f"x0^{e} + x1^{e} - 1"], 2), name=f"Fermat curve of degree {e}")


def monomial_curve(e: int) -> Variety:
    """The rational plane curve ``x1 = x0^e``."""
    return Variety(Ideal.from_strings([f"x1 - x0^{e}"], 2), parameterization=[_t("x0"), _t(f"x0^{e}")],
                   name=f"curve x1 = x0^{e}")


def cubic_union_line() -> Ideal:
    """Twisted cubic together with the line ``x0 = x1 = 0``."""
    return Ideal.from_strings(["x1 - x0^2", "x0*x2 - x1^2"], 3)


FOUR_POINTS = [(0, 0), (1, 0), (0, 1), (2, 3)]


def four_points() -> Variety:
    """Four rational points in the plane, given by the vanishing ideal they generate."""
    from ..ideal import ideal_of_points

    pts = [tuple(Fraction(c) for c in p) for p in FOUR_POINTS]
    return Variety(ideal_of_points(pts, 2), points=pts, name="four points")


def hilbert_fixtures() -> dict[str, tuple[Ideal, object]]:
    """Fixture ideals with an independent point sampler for the Hilbert oracle."""
    return {
        "twisted cubic": twisted_cubic(),
        "circle": circle(),
        "line in 3-space": line_in_space(),
        "parabola": parabola(),
        "four points": four_points(),
    }


def load_graph(name: str) -> AbstractGraph:
    text = resources.files(__package__).joinpath(f"{name}.txt").read_text()
    return AbstractGraph.parse(text)


GRAPH_FIXTURES = {
    # name: (k, b, variety factory)
    "pg2_7_lines": (2, 2, parabola),
    "ag2_13_parabolas": (3, 2, twisted_cubic),
    "pg2_11_lines": (2, 2, plane),
}
