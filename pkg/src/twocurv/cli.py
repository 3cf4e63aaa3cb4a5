"""Command line interface.

Exit status is 0 on success, 2 for unreadable input (parse or schema
errors) and 1 for any other failure. Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import curvature as curv
from . import enumeration as en
from . import links as lk
from . import smallcancel as sc
from . import words
from .core import (
    BranchedTwoComplex,
    area,
    average_curvature,
    chi_skeleton,
    deficiency,
    euler_characteristic,
    is_concise,
    total_curvature,
)
from .fold import is_branched_covering
from .io import ParseError, SchemaError, TrivialRelator, load_complex, sample_presentation
from .reduce import classify, is_surface


class UsageError(ValueError):
    pass


def rational(x) -> str | None:
    """Exact ``p/q`` string; None for an infinite or missing value."""
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _text(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return str(x)


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------- analyze


def analyze(X: BranchedTwoComplex) -> dict:
    concise, witness = is_concise(X) if X.faces else (True, None)
    try:
        orientation = curv.find_orientation(X)
        orientable = orientation is not None
    except curv.BudgetExceeded:
        orientable = None
    link_rows = []
    for L in lk.all_links(X):
        g = lk.girth(L)
        cut = lk.has_cut_vertex(L)
        link_rows.append({
            "vertex": L.vertex,
            "nodes": len(L.nodes),
            "edges": len(L.edges),
            "girth": None if g == math.inf else g,
            "circle": lk.is_circle(L),
            "planar": lk.is_planar(L),
            "cut_node": cut,
        })
    return {
        "vertices": X.n_vertices,
        "edges": X.n_edges,
        "faces": X.n_faces,
        "area": area(X),
        "euler_characteristic": euler_characteristic(X),
        "skeleton_euler_characteristic": chi_skeleton(X),
        "total_curvature": total_curvature(X),
        "average_curvature": rational(average_curvature(X)) if X.faces else None,
        "deficiency": deficiency(X),
        "classification": str(classify(X)),
        "surface": is_surface(X),
        "concise": concise,
        "concise_witness": None if witness is None else {"kind": witness.kind, "faces": list(witness.faces)},
        "orientable": orientable,
        "links": link_rows,
    }


def _yes(b) -> str:
    return "unknown" if b is None else "yes" if b else "no"


def cmd_analyze(args) -> int:
    X = load_complex(args.file)
    d = analyze(X)
    lines = [
        f"vertices: {d['vertices']}  edges: {d['edges']}  faces: {d['faces']}  area: {d['area']}",
        f"euler characteristic: {d['euler_characteristic']}",
        f"skeleton euler characteristic: {d['skeleton_euler_characteristic']}",
        f"total curvature: {d['total_curvature']}",
        f"average curvature: {_text(average_curvature(X) if X.faces else None)}",
        f"deficiency: {d['deficiency']}",
        f"classification: {d['classification']}",
        f"surface: {_yes(d['surface'])}",
        f"concise: {_yes(d['concise'])}"
        + (f" ({d['concise_witness']['kind']}: faces {d['concise_witness']['faces']})" if d["concise_witness"] else ""),
        f"orientable: {_yes(d['orientable'])}",
        "links:",
    ]
    for r in d["links"]:
        lines.append(
            f"  vertex {r['vertex']}: {r['nodes']} nodes, {r['edges']} edges, girth {_text(r['girth'])}, "
            f"circle {_yes(r['circle'])}, planar {_yes(r['planar'])}, cut node {_text(r['cut_node'])}"
        )
    _emit(args, d, lines)
    return 0


# ---------------------------------------------------------------- bound


def _load_angles(path, X: BranchedTwoComplex) -> curv.AngleStructure:
    """Angle file: ``{"uniform": "5/9"}`` or ``{"faces": [["1/2", ...], ...]}``
    with values in units of pi."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"angle file is not valid JSON: {exc}") from exc
    try:
        if "uniform" in data:
            A = curv.AngleStructure.uniform(X, Fraction(data["uniform"]))
        else:
            A = curv.AngleStructure(tuple(tuple(Fraction(a) for a in row) for row in data["faces"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad angle file: {exc}") from exc
    problems = A.problems(X)
    if problems:
        raise SchemaError("; ".join(problems))
    return A


def _dump_angles(X, A) -> list:
    return [[rational(A[(f, i)]) for i in range(len(w))] for f, w in enumerate(X.faces)]


def cmd_bound(args) -> int:
    X = load_complex(args.file)
    target = "sigma" if args.sigma else "rho"
    method = args.method
    if method == "lp":
        A, value = curv.optimize_angles(X, target)
    else:
        if method == "girth":
            A = curv.girth_angles(X)
        elif method.startswith("angles="):
            A = _load_angles(method.split("=", 1)[1], X)
        else:
            raise UsageError("method must be girth, angles=FILE or lp")
        if target == "sigma":
            value = curv.sigma_upper_bound_angles(X, A)
        else:
            value = curv.rho_upper_bound_sectional(X, A)
    faces = [rational(curv.face_curvature(X, A, f)) for f in range(X.n_faces)]
    sections = []
    systoles = []
    for L in lk.all_links(X):
        s, _ = lk.shortest_cycle(L, A)
        systoles.append(rational(s))
        if target == "rho":
            try:
                k, _ = curv.best_section(L, A)
                sections.append(rational(k))
            except curv.SectionCapExceeded:
                sections.append(None)
    data = {
        "target": target,
        "method": method.split("=", 1)[0],
        "bound": rational(value),
        "certified": value is not None,
        "angles": _dump_angles(X, A),
        "face_curvatures": faces,
        "link_systoles": systoles,
    }
    if target == "rho":
        data["max_section_curvatures"] = sections
    name = "sigma_plus" if target == "sigma" else "rho_plus"
    lines = [f"{name} <= {value}" if value is not None else f"{name}: no certificate from these angles"]
    lines.append("angles (units of pi): " + "; ".join(" ".join(_text(Fraction(a)) for a in row) for row in data["angles"]))
    lines.append("face curvatures (units of pi): " + " ".join(_text(Fraction(c)) for c in faces))
    lines.append("link systoles (units of pi): " + " ".join(_text(None if s is None else Fraction(s)) for s in systoles))
    if target == "rho":
        lines.append("largest section curvatures (units of pi): "
                     + " ".join(_text(None if s is None else Fraction(s)) for s in sections))
    _emit(args, data, lines)
    return 0


# ---------------------------------------------------------------- enumerate


def _witness_row(w: en.Witness) -> dict:
    return {
        "area": sum(w.complex.areas),
        "vertices": w.complex.n_vertices,
        "edges": w.complex.n_edges,
        "faces": [{"target": g, "multiplicity": m} for g, m in zip(w.map.face_map, w.map.multiplicity)],
        "tau": w.tau,
        "kappa": rational(w.kappa),
        "surface": w.is_surface,
        "covering_degree": is_branched_covering(w.map),
    }


def _bound_row(b: en.Bound) -> dict:
    return {
        "lower": rational(b.lower),
        "upper": rational(b.upper),
        "exact": b.exact,
        "lower_from": b.lower_from,
        "upper_from": b.upper_from,
    }


def report_dict(r: en.CurvatureReport) -> dict:
    return {
        "kappa": rational(r.kappa),
        "rho_plus": _bound_row(r.rho_plus),
        "rho_minus": _bound_row(r.rho_minus),
        "sigma_plus": _bound_row(r.sigma_plus),
        "sigma_minus": _bound_row(r.sigma_minus),
        "exhaustive": r.exhaustive,
    }


def _bound_line(name: str, b: en.Bound) -> str:
    if b.exact:
        return f"{name} = {b.lower}   [{'; '.join(b.lower_from + [u for u in b.upper_from if u not in b.lower_from])}]"
    return f"{name} in [{_text(b.lower)}, {_text(b.upper)}]"


def _minus_line(name: str, b: en.Bound) -> str:
    if b.exact:
        return _bound_line(name, b)
    if b.upper == math.inf:
        return f"{name}: no witness found"
    return f"{name} <= {b.upper}"


def cmd_enumerate(args) -> int:
    X = load_complex(args.file)
    budget = en.Budget(args.max_area, args.max_partitions, args.surfaces_only)
    r = en.curvature_report(X, budget)
    rows = [_witness_row(w) for w in r.witnesses]
    data = {"witnesses": rows, "report": report_dict(r)}
    lines = [f"{len(rows)} witnesses (area <= {args.max_area}{', surfaces only' if args.surfaces_only else ''}"
             f"{'' if r.exhaustive else ', search incomplete'})"]
    for k, w in enumerate(rows):
        lines.append(
            f"  {k}: area {w['area']}, tau {w['tau']}, kappa {Fraction(w['kappa'])}"
            f"{', surface' if w['surface'] else ''}"
            f"{', covering of degree ' + str(w['covering_degree']) if w['covering_degree'] else ''}"
        )
    lines += [
        _bound_line("rho_plus", r.rho_plus),
        _bound_line("sigma_plus", r.sigma_plus),
        _minus_line("rho_minus", r.rho_minus),
        _minus_line("sigma_minus", r.sigma_minus),
    ]
    _emit(args, data, lines)
    return 0


# ---------------------------------------------------------------- prank


def cmd_prank(args) -> int:
    w = words.cyclic_reduce(words.from_string(args.word))
    if not w:
        raise UsageError("word reduces to the empty word")
    if any(abs(k) > args.gens for k in w):
        raise UsageError("word uses letters beyond the given generators")
    p = en.primitivity_rank(w, args.gens)
    sp = en.stable_primitivity_bounds(w, args.gens, en.Budget(args.max_area))
    data = {
        "word": words.to_string(w),
        "primitivity_rank": None if p.value == math.inf else p.value,
        "primitive": p.value == math.inf,
        "witness": None if p.witness is None else _witness_row(p.witness),
        "stable_primitivity_rank": {"lower": rational(sp.lower), "upper": rational(sp.upper), "exact": sp.exact},
    }
    lines = [f"primitivity rank of {data['word']}: {_text(p.value)}"]
    if p.witness is not None:
        wr = data["witness"]
        lines.append(f"  witness: {wr['vertices']} vertices, {wr['edges']} edges, kappa {Fraction(wr['kappa'])}")
    if sp.exact:
        lines.append(f"stable primitivity rank = {_text(sp.lower)}")
    else:
        upper = "no finite cap" if sp.upper == math.inf else _text(sp.upper)
        lines.append(f"stable primitivity rank in [{_text(sp.lower)}, {upper}]")
    _emit(args, data, lines)
    return 0


# ---------------------------------------------------------------- smallcancel


def cmd_smallcancel(args) -> int:
    X = load_complex(args.file)
    pieces = sc.compute_pieces(X)
    mins = [sc.min_piece_number(X, f) for f in range(X.n_faces)]
    largest = sc.largest_C(X)

    def name(wd):
        return "".join(X.dart_name(d) for d in wd)

    data = {
        "pieces": [{"word": name(p.word), "occurrences": [list(o) for o in p.occurrences]} for p in pieces],
        "min_piece_numbers": [None if m == math.inf else m for m in mins],
        "largest_p": None if largest == math.inf else largest,
    }
    lines = [f"{len(pieces)} pieces: " + " ".join(name(p.word) for p in pieces)]
    lines.append("fewest pieces per face: " + " ".join(_text(m) for m in mins))
    lines.append(f"largest p with C(p): {_text(largest)}")
    if args.p is not None:
        holds = sc.check_C(X, args.p)
        data["p"], data["holds"] = args.p, holds
        lines.append(f"C({args.p}): {_yes(holds)}")
    _emit(args, data, lines)
    return 0


def cmd_sample(args) -> int:
    src = sample_presentation(args.gens, args.rels, args.len, args.seed)
    sys.stdout.write(src.to_text())
    return 0


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twocurv", description="Curvature invariants of branched 2-complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="basic invariants, classification and link statistics")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("bound", help="certified upper bound from an angle structure")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sigma", action="store_true")
    g.add_argument("--rho", action="store_true")
    p.add_argument("--method", default="girth", help="girth, angles=FILE or lp")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_bound)

    p = sub.add_parser("enumerate", help="witness search and curvature report")
    p.add_argument("file")
    p.add_argument("--max-area", type=int, required=True)
    p.add_argument("--max-partitions", type=int, default=10**6)
    p.add_argument("--surfaces-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("prank", help="primitivity rank of a word")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--max-area", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_prank)

    p = sub.add_parser("smallcancel", help="pieces and the C(p) condition")
    p.add_argument("file")
    p.add_argument("--p", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_smallcancel)

    p = sub.add_parser("sample", help="random few-relator presentation")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--rels", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(run=cmd_sample)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.run(args)
    except (ParseError, SchemaError, TrivialRelator, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001  (any other failure maps to status 1)
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
