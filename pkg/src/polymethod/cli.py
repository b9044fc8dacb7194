"""Scenario-driven command line front end.

A scenario is a JSON document::

    {"kind": "hilbert", "seed": 0, "budgets": {"degree": 40},
     "inputs": {"ideal": ["x1 - x0^2", "x2 - x0^3"], "n": 3, "m": [1, 2, 3]}}

Polynomials are strings in the ``3/2*x0^2*x1 - x2 + 1`` grammar and
rationals are ``"p/q"`` strings.  Reports are JSON with sorted keys, so the
same scenario and seed always produce the same bytes.  Exit status is 0 on
success, 1 on input errors and 2 when a budget or decomposition limit was
hit (partial results are still written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import ideal as ideal_mod
from .errors import FixtureFailure, InputError, ParseError, PolyMethodError
from .ideal import Ideal
from .poly import LEX, GREVLEX, Polynomial, parse

KINDS = ("hilbert", "groebner", "profile", "siegel", "partition", "envelope", "fullcover", "incidence",
         "construct-sharp", "components-grid", "calibrate")
SCENARIO_KEYS = {"kind", "seed", "budgets", "inputs"}
BUDGET_KEYS = {"degree", "basis", "time"}
VARIETY_KEYS = {"fixture", "ideal", "n", "parameterization", "denominator", "points", "name"}

INPUT_KEYS = {
    "hilbert": {"variety", "m", "m_max"},
    "groebner": {"variety", "order", "probes"},
    "profile": {"variety", "M"},
    "siegel": {"variety", "points", "targets"},
    "partition": {"variety", "points", "sample", "M"},
    "envelope": {"variety", "tuple", "K"},
    "fullcover": {"variety"},
    "incidence": {"points", "hypersurfaces", "k", "b", "variety", "M"},
    "construct-sharp": {"graph", "graph_fixture", "variety", "k", "b", "block_size"},
    "components-grid": {"polynomial", "box", "resolution"},
    "calibrate": {"fixtures", "M_max"},
}

DEFAULT_CONSTANTS = {"c0": Fraction(1), "c1": Fraction(1, 4), "c1_incidence": Fraction(1), "c2": Fraction(1)}


# ---------------------------------------------------------------------------
# serialization


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Polynomial):
        return str(obj)
    if isinstance(obj, Ideal):
        return [str(g) for g in obj.groebner().basis]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return str(obj)


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2) + "\n"


def _rational(x) -> Fraction:
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {x!r}") from exc


def _point(p) -> tuple[Fraction, ...]:
    if not isinstance(p, (list, tuple)):
        raise ParseError(f"point must be a list, got {p!r}")
    return tuple(_rational(c) for c in p)


# ---------------------------------------------------------------------------
# scenario parsing


def _check_keys(d: dict, allowed: set, where: str):
    if not isinstance(d, dict):
        raise ParseError(f"{where} must be an object")
    unknown = set(d) - allowed
    if unknown:
        raise ParseError(f"unknown {where} field(s): {', '.join(sorted(unknown))}")


def load_scenario(text: str, kind_override: str | None = None) -> dict:
    try:
        sc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario is not valid JSON: {exc}") from exc
    _check_keys(sc, SCENARIO_KEYS, "scenario")
    if kind_override:
        sc["kind"] = kind_override
    kind = sc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown scenario kind {kind!r}")
    sc.setdefault("seed", 0)
    sc.setdefault("budgets", {})
    sc.setdefault("inputs", {})
    _check_keys(sc["budgets"], BUDGET_KEYS, "budgets")
    _check_keys(sc["inputs"], INPUT_KEYS[kind], f"{kind} inputs")
    return sc


def parse_variety(desc):
    from . import fixtures
    from .variety import Variety

    if isinstance(desc, str):
        desc = {"fixture": desc}
    _check_keys(desc, VARIETY_KEYS, "variety")
    if "fixture" in desc:
        name = desc["fixture"]
        table = {
            "twisted cubic": fixtures.twisted_cubic, "circle": fixtures.circle, "parabola": fixtures.parabola,
            "line in 3-space": fixtures.line_in_space, "plane": fixtures.plane, "four points": fixtures.four_points,
            "hyperplane": fixtures.hyperplane,
        }
        if name.startswith("fermat "):
            return fixtures.plane_curve(int(name.split()[1]))
        if name not in table:
            raise ParseError(f"unknown variety fixture {name!r}")
        return table[name]()
    gens = desc.get("ideal", [])
    n = desc.get("n")
    if n is None:
        n = max([parse(g).n for g in gens] + [1])
    I = Ideal([parse(g, n) for g in gens], n)
    param = den = None
    if "parameterization" in desc:
        exprs = desc["parameterization"]
        k = max([parse(e).n for e in exprs] + [1])
        param = [parse(e, k) for e in exprs]
        if "denominator" in desc:
            den = parse(desc["denominator"], k)
    pts = [_point(p) for p in desc["points"]] if "points" in desc else None
    return Variety(I, parameterization=param, denominator=den, points=pts, name=desc.get("name", ""))


def load_constants(path: str | None) -> dict[str, Fraction]:
    consts = dict(DEFAULT_CONSTANTS)
    if path and Path(path).exists():
        data = json.loads(Path(path).read_text())
        for key in consts:
            if key in data:
                consts[key] = _rational(data[key])
    return consts


# ---------------------------------------------------------------------------
# handlers


def _hilbert(inp, seed, consts):
    from .ideal import affine_hilbert, dimension_and_degree

    V = parse_variety(inp["variety"])
    ms = inp.get("m") or list(range(0, int(inp.get("m_max", 6)) + 1))
    values = {m: affine_hilbert(V.ideal, int(m)) for m in ms}
    d, deg, data = dimension_and_degree(V.ideal)
    return {"values": values, "dimension": d, "degree": deg, "c0_observed": data.c0_observed,
            "regularity": data.regularity}, {"c0_observed": data.c0_observed}


def _groebner(inp, seed, consts):
    V = parse_variety(inp["variety"])
    order = {"grevlex": GREVLEX, "lex": LEX}.get(inp.get("order", "grevlex"))
    if order is None:
        raise ParseError(f"unknown order {inp.get('order')!r}")
    gb = V.ideal.groebner(order)
    probes = {p: gb.contains(parse(p, V.n)) for p in inp.get("probes", [])}
    return {"basis": gb.basis, "order": inp.get("order", "grevlex"), "membership": probes}, {}


def _profile_results(V, prof, consts, Ms):
    from .variety import converse_bezout_report, i_V_of_M

    out = {"deltas": prof.deltas, "big_deltas": prof.big_deltas, "admissible": sorted(prof.admissible),
           "tuple": prof.tuple, "certified": prof.certified, "notes": prof.notes,
           "dimension": V.dim, "degree": V.degree}
    if prof.certified:
        out["converse_bezout"] = converse_bezout_report(V, prof)
    out["i_V"] = {M: i_V_of_M(prof, V.n, int(M), consts["c0"], consts["c1"]) for M in Ms}
    return out


def _profile(inp, seed, consts):
    from .variety import delta_profile

    V = parse_variety(inp["variety"])
    prof = delta_profile(V, seed=seed)
    return _profile_results(V, prof, consts, inp.get("M", [])), {}


def _siegel(inp, seed, consts):
    from .siegel import vanish_on_points, vanish_on_varieties

    V = parse_variety(inp["variety"])
    if "targets" in inp:
        res = vanish_on_varieties(V, [parse_variety(t) for t in inp["targets"]])
    else:
        res = vanish_on_points(V, [_point(p) for p in inp.get("points", [])])
    return {"result": res}, {}


def _partition(inp, seed, consts):
    from .partition import partition

    V = parse_variety(inp["variety"])
    if "points" in inp:
        pts = [_point(p) for p in inp["points"]]
    else:
        pts = V.sample_points(int(inp.get("sample", 16)))
    chain, rep = partition(V, pts, int(inp.get("M", 2)), consts["c0"], consts["c1"], seed=seed)
    return {"chain": chain.rounds, "degrees": chain.degrees, "report": rep,
            "degree_ratio": rep.degree_ratio}, {"degree_ratio": rep.degree_ratio}


def _envelope(inp, seed, consts):
    from .variety import AdmissibleTuple, envelope, envelope_killers

    V = parse_variety(inp["variety"])
    polys = [parse(q, V.n) for q in inp["tuple"]]
    K = [_rational(x) for x in inp.get("K", [1] * len(polys))]
    Q = AdmissibleTuple(polys, K)
    rep = envelope(V, Q)
    killers = envelope_killers(V, Q, rep)
    stages = [{"j": st.j, "exact": [(c.ideal, c.dim, c.degree) for c in st.exact],
               "excess": [(c.ideal, c.dim, c.degree) for c in st.excess],
               "degree_sum": st.degree_sum, "bezout_bound": st.bezout_bound} for st in rep.stages]
    return {"stages": stages, "location_ok": rep.location_ok, "killers": killers}, {}


def _fullcover(inp, seed, consts):
    from .variety import cover_contains_component, full_cover

    V = parse_variety(inp["variety"])
    cover = full_cover(V, seed=seed)
    flat = cover.flattened()
    return {"components": [(c.ideal, c.dim, c.degree) for c in flat], "degree_sum": cover.degree_sum(),
            "degree_ratio": Fraction(cover.degree_sum(), V.degree),
            "variety_is_component": cover_contains_component(V, cover), "eps_ok": cover.eps_ok}, {}


def _incidence(inp, seed, consts):
    from .incidence import (IncidenceStructure, check_kb_free, count_incidences, kst_bound,
                            partitioned_incidence_report, theorem6_bound)

    pts = [_point(p) for p in inp["points"]]
    n = len(pts[0]) if pts else 1
    T = [parse(t, n) for t in inp.get("hypersurfaces", [])]
    k, b = int(inp.get("k", 2)), int(inp.get("b", 1))
    struct = IncidenceStructure.build(pts, T)
    inc = count_incidences(struct)
    free = check_kb_free(struct, k, b)
    out = {"incidences": inc, "free": free, "kst": kst_bound(len(pts), len(T), k, b)}
    if "variety" in inp:
        V = parse_variety(inp["variety"])
        rep = theorem6_bound(len(pts), struct.deg_T, V.degree, V.dim, k, b, consts["c1_incidence"],
                             incidences=inc, n_surfaces=len(T))
        out["incidence_bound"] = rep
        out["dominant"] = rep.dominant
        if "M" in inp:
            out["buckets"] = partitioned_incidence_report(V, struct, int(inp["M"]), seed=seed)
        return out, {"c1_incidence_ratio": rep.measured_c1}
    return out, {}


def _construct_sharp(inp, seed, consts):
    from . import fixtures
    from .incidence import AbstractGraph, sharp_construction

    if "graph_fixture" in inp:
        graph = fixtures.load_graph(inp["graph_fixture"])
    elif "graph" in inp:
        graph = AbstractGraph.parse(inp["graph"])
    else:
        raise ParseError("construct-sharp needs graph or graph_fixture")
    V = parse_variety(inp["variety"])
    res = sharp_construction(graph, V, int(inp["k"]), int(inp["b"]), seed=seed,
                             block_size=inp.get("block_size"))
    return {"degree": res.degree, "block_size": res.block_size, "members": len(res.graph.members),
            "points": res.structure.points, "hypersurfaces": res.structure.hypersurfaces,
            "graph_equal": res.graph_equal, "free": res.free, "ratio": res.ratio,
            "resamples": res.resamples, "size_condition": res.size_condition}, {"incidence_ratio": res.ratio}


def _components_grid(inp, seed, consts):
    from .partition import estimate_components_grid

    P = parse(inp["polynomial"])
    box = [(_rational(a), _rational(b)) for a, b in inp["box"]]
    if len(box) > P.n:
        P = parse(inp["polynomial"], len(box))
    est = estimate_components_grid(P, box, int(inp.get("resolution", 200)))
    flags = {} if est.stable else {"advisory": "resolution_too_coarse"}
    return {"estimate": est, **flags}, {}


HANDLERS = {
    "hilbert": _hilbert, "groebner": _groebner, "profile": _profile, "siegel": _siegel,
    "partition": _partition, "envelope": _envelope, "fullcover": _fullcover, "incidence": _incidence,
    "construct-sharp": _construct_sharp, "components-grid": _components_grid,
}


# ---------------------------------------------------------------------------
# calibration


CALIBRATION_SUITE = ("twisted cubic", "circle", "parabola", "line in 3-space", "fermat 3", "fermat 4")
SHARP_SUITE = ("pg2_7_lines", "ag2_13_parabolas")


def calibrate(names=CALIBRATION_SUITE, sharp=SHARP_SUITE, M_max: int = 16) -> dict[str, Any]:
    """Measure the constant envelope on a fixture suite."""
    from . import fixtures
    from .ideal import dimension_and_degree
    from .incidence import rich_points_bound, sharp_construction
    from .variety import delta_profile, i_V_of_M

    if not names:
        raise FixtureFailure("calibration needs at least one fixture")
    c0 = None
    per_fixture = {}
    profiles = []
    for name in names:
        V = parse_variety(name)
        _, _, data = dimension_and_degree(V.ideal)
        if data.c0_observed <= 0:
            raise FixtureFailure(f"fixture {name}: non-positive c0_observed")
        per_fixture[name] = {"c0_observed": data.c0_observed}
        c0 = data.c0_observed if c0 is None else min(c0, data.c0_observed)
        prof = delta_profile(V)
        if not prof.certified:
            raise FixtureFailure(f"fixture {name}: profile not certified")
        profiles.append((name, V, prof))

    # largest c1 = 2^-j for which every M <= M_max is covered without fallback
    c1 = None
    for j in range(0, 21):
        cand = Fraction(1, 2 ** j)
        if all(not i_V_of_M(prof, V.n, M, c0, cand).fallback
               for _, V, prof in profiles for M in range(1, M_max + 1)):
            c1 = cand
            break
    if c1 is None:
        raise FixtureFailure("no c1 >= 2^-20 covers every M on the suite")

    c1_thm6 = Fraction(0)
    c2 = Fraction(0)
    for gname in sharp:
        k, b, fac = fixtures.GRAPH_FIXTURES[gname]
        V = fac()
        res = sharp_construction(fixtures.load_graph(gname), V, k, b)
        st = res.structure
        # ratio of incidences to the main-term unit: a lower-bound witness
        c1_thm6 = max(c1_thm6, res.ratio)
        # ratio of each r-rich count to the rich-point bound taken with c2 = 1
        richness = [bin(r).count("1") for r in st.rows]
        worst = Fraction(0)
        for r in range(b, max(richness) + 1):
            count = sum(1 for x in richness if x >= r)
            worst = max(worst, count / rich_points_bound(r, st.deg_T, V.degree, V.dim, k, b))
        c2 = max(c2, worst)
        per_fixture[gname] = {"incidence_ratio": res.ratio, "rich_ratio": worst}
    return {"constants": {"c0": c0, "c1": c1, "c1_incidence": c1_thm6, "c2": c2}, "fixtures": per_fixture}


# ---------------------------------------------------------------------------
# entry point


def run_scenario(sc: dict, constants_file: str | None = None, timing: bool = False) -> tuple[dict, int]:
    consts = load_constants(constants_file)
    kind = sc["kind"]
    budgets = sc.get("budgets", {})
    limits = ideal_mod.LIMITS
    saved = (limits.max_degree, limits.max_basis, limits.deadline)
    limits.max_degree = int(budgets.get("degree", limits.max_degree))
    limits.max_basis = int(budgets.get("basis", limits.max_basis))
    start = time.monotonic()
    if "time" in budgets:
        limits.deadline = start + float(budgets["time"])
    report: dict[str, Any] = {"scenario": sc, "status": "ok", "results": {}, "measured": {},
                              "budget_flags": {}}
    status = 0
    try:
        if kind == "calibrate":
            inp = sc["inputs"]
            out = calibrate(tuple(inp.get("fixtures", CALIBRATION_SUITE)),
                            M_max=int(inp.get("M_max", 16)))
            report["results"] = out
            report["measured"] = out["constants"]
            if constants_file:
                Path(constants_file).write_text(dumps(out["constants"]))
        else:
            results, measured = HANDLERS[kind](sc["inputs"], int(sc["seed"]), consts)
            report["results"] = results
            report["measured"] = measured
    except PolyMethodError as exc:
        status = exc.exit_status
        report["status"] = "error"
        report["error"] = {"code": exc.code, "message": str(exc)}
        if status == 2:
            report["budget_flags"][exc.code] = True
    except (KeyError, TypeError, ValueError) as exc:
        status = 1
        report["status"] = "error"
        report["error"] = {"code": "input_error", "message": f"{type(exc).__name__}: {exc}"}
    finally:
        limits.max_degree, limits.max_basis, limits.deadline = saved
    report["constants"] = consts
    if timing:
        report["timing_seconds"] = round(time.monotonic() - start, 3)
    return report, status


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="polymethod", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=("run",) + KINDS, help="'run' or a scenario kind overriding the file")
    ap.add_argument("scenario", nargs="?", help="scenario JSON file ('-' for stdin)")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget-degree", type=int)
    ap.add_argument("--budget-time", type=float)
    ap.add_argument("--constants-file")
    ap.add_argument("--out")
    ap.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte determinism)")
    args = ap.parse_args(argv)

    try:
        if args.scenario is None:
            if args.command != "calibrate":
                raise ParseError("a scenario file is required")
            text = json.dumps({"kind": "calibrate"})
        elif args.scenario == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.scenario).read_text()
        sc = load_scenario(text, None if args.command == "run" else args.command)
    except (InputError, OSError) as exc:
        code = getattr(exc, "code", "input_error")
        report, status = {"status": "error", "error": {"code": code, "message": str(exc)}}, 1
    else:
        if args.seed is not None:
            sc["seed"] = args.seed
        if args.budget_degree is not None:
            sc["budgets"]["degree"] = args.budget_degree
        if args.budget_time is not None:
            sc["budgets"]["time"] = args.budget_time
        report, status = run_scenario(sc, args.constants_file, args.timing)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if status == 1 and "error" in report:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
