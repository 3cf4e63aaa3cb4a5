"""Acceptance criteria 1-10.

Each test prints exactly one line ``criterion N PASS|FAIL: title`` (failing
sub-checks are listed after the title). The lines are repeated in the pytest
terminal summary. All numeric comparisons are exact rationals; the only
tolerances are the runtime cap in criterion 4 and the C(7) count in
criterion 8, both pinned below.
"""
import json
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import conftest
import helpers
import oracles
from conftest import DATA
from test_enumeration import TWO_GENERATOR_WORDS, _relabellings
from test_smallcancel import _fixtures as small_cancellation_fixtures
from twocurv import corpus as C
from twocurv import curvature as K
from twocurv import enumeration as E
from twocurv import io, words
from twocurv import smallcancel as sc
from twocurv.cli import main
from twocurv.core import average_curvature, subdivide, total_curvature
from twocurv.fold import compose, is_branched_covering, is_branched_immersion, is_essential
from twocurv.reduce import classify

PRANK_SECONDS = 60  # wall-clock cap for the length-9 primitivity rank
C7_REQUIRED = 95  # of the 100 seeded length-200 one-relator samples
C7_SEEDS = range(100)
GAUSS_BONNET_SEEDS = range(200)
CORPUS = sorted(p for p in DATA.iterdir() if p.suffix in (".txt", ".json") and "angles" not in p.name)


@contextmanager
def criterion(number, title):
    checks = []
    try:
        yield checks
    except Exception as exc:  # noqa: BLE001  (an exception is a failed check, reported on the line)
        checks.append((f"raised {type(exc).__name__}: {exc}", False))
    failed = [label for label, ok in checks if not ok]
    verdict = "PASS" if checks and not failed else "FAIL"
    line = f"criterion {number} {verdict}: {title}"
    if failed:
        line += " (failed: " + "; ".join(failed) + ")"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert verdict == "PASS", line


def cli_json(capsys, *argv):
    code = main([str(a) for a in argv] + ["--json"])
    out, err = capsys.readouterr()
    if code != 0:
        raise RuntimeError(f"exit {code}: {err.strip()}")
    return json.loads(out)


def test_criterion_01_basic_invariants(capsys):
    expected = {
        "sphere.txt": "1/1",
        "f2xf2.txt": "1/4",
        "trefoil.txt": "0/1",
        "three_torus.txt": "1/3",
        "four_torus.txt": "1/2",
        "five_torus.txt": "3/5",
    }
    with criterion(1, "average curvature of sphere, F2xF2, trefoil and n-tori") as checks:
        for name, kappa in expected.items():
            got = cli_json(capsys, "analyze", DATA / name)["average_curvature"]
            checks.append((f"{name} kappa {got} != {kappa}", got == kappa))
        for n in (3, 4, 5):
            value = average_curvature(C.n_torus(n))
            checks.append((f"{n}-torus builder kappa {value}", value == 1 - Fraction(2, n)))


def test_criterion_02_girth_bounds(capsys):
    expected = {"manning.txt": "-5/4", "tripus.txt": "-1/2", "three_torus.txt": "1/3"}
    with criterion(2, "girth bounds for sigma_plus") as checks:
        for name, bound in expected.items():
            got = cli_json(capsys, "bound", DATA / name, "--sigma", "--method", "girth")["bound"]
            checks.append((f"{name} bound {got} != {bound}", got == bound))


def test_criterion_03_sectional_certificate(capsys):
    with criterion(3, "Manning rho_plus = -1 from 5/9 angles and the identity witness") as checks:
        data = cli_json(capsys, "bound", DATA / "manning.txt", "--rho", "--method",
                        f"angles={DATA / 'manning_angles.json'}")
        checks.append(("angles certify rho_plus <= -1", data["certified"] and data["bound"] == "-1/1"))
        checks.append(("all angles are 5/9", all(a == "5/9" for row in data["angles"] for a in row)))
        rep = cli_json(capsys, "enumerate", DATA / "manning.txt", "--max-area", 1)
        kappas = [w["kappa"] for w in rep["witnesses"]]
        checks.append(("identity witness with kappa -1", "-1/1" in kappas))
        rho = rep["report"]["rho_plus"]
        checks.append(("rho_plus declared exactly -1", rho["exact"] and rho["lower"] == rho["upper"] == "-1/1"))


def test_criterion_04_primitivity_rank(capsys):
    with criterion(4, "primitivity ranks against the Whitehead and unpruned oracles") as checks:
        start = time.perf_counter()
        data = cli_json(capsys, "prank", "--gens", 3, "--word", "bbaaccabc")
        elapsed = time.perf_counter() - start
        checks.append((f"pi(bbaaccabc) = {data['primitivity_rank']}", data["primitivity_rank"] == 3))
        checks.append((f"length-9 case took {elapsed:.1f}s", elapsed < PRANK_SECONDS))
        for w in ("a", "ab", "aab", "abaab"):
            data = cli_json(capsys, "prank", "--gens", 2, "--word", w)
            checks.append((f"{w} is primitive", data["primitive"] and data["primitivity_rank"] is None))
        for w, value in (("aa", 1), ("abAB", 2)):
            data = cli_json(capsys, "prank", "--gens", 2, "--word", w)
            checks.append((f"pi({w}) = {data['primitivity_rank']}", data["primitivity_rank"] == value))
        # the unpruned search runs once per class of words under rotation,
        # inversion and signed generator permutation, which all preserve the rank
        unpruned = {w: oracles.unpruned_primitivity_rank(w, 2) for w in TWO_GENERATOR_WORDS}
        bad = []
        count = 0
        for n in range(1, 9):
            for w in product((1, -1, 2, -2), repeat=n):
                if words.cyclic_reduce(w) != w:
                    continue
                count += 1
                key = min(words.cyclic_canonical(v, allow_inversion=True) for v in _relabellings(w))
                got = E.primitivity_rank(w, 2).value
                if got != unpruned[key] or got != oracles.whitehead_primitivity_rank2(w):
                    bad.append(words.to_string(w))
        checks.append((f"{len(bad)} of {count} words disagree, first {bad[:3]}", not bad and count == 9856))


def test_criterion_05_surface_minimality(capsys):
    with criterion(5, "witnesses over the sphere and torus are branched coverings") as checks:
        for name, kappa in (("sphere.txt", "1/1"), ("torus.txt", "0/1")):
            data = cli_json(capsys, "enumerate", DATA / name, "--max-area", 4)
            rows = data["witnesses"]
            checks.append((f"{name} search exhaustive", data["report"]["exhaustive"]))
            checks.append((f"{name} has witnesses", bool(rows)))
            checks.append((f"{name} every witness is a covering",
                           all(r["covering_degree"] is not None for r in rows)))
            checks.append((f"{name} every witness has kappa {kappa}", all(r["kappa"] == kappa for r in rows)))
            for key in ("rho_plus", "rho_minus", "sigma_plus", "sigma_minus"):
                b = data["report"][key]
                checks.append((f"{name} {key} exact", b["exact"] and b["lower"] == kappa))


def test_criterion_06_cube_witness():
    with criterion(6, "cube fixture immerses essentially with kappa 1/3, sigma_plus = 1/3") as checks:
        cube = io.load_complex(DATA / "cube.json")
        X = io.load_complex(DATA / "three_torus.txt")
        phi = C.labelled_map(cube, X)
        checks.append(("is_branched_immersion", is_branched_immersion(phi)))
        checks.append(("is_essential", is_essential(phi)))
        checks.append(("kappa 1/3", average_curvature(cube) == Fraction(1, 3)))
        checks.append(("girth certificate 1/3", K.sigma_upper_bound_girth(X) == Fraction(1, 3)))
        r = E.curvature_report(X, E.Budget(1), extra_witnesses=[phi])
        checks.append((f"sigma_plus [{r.sigma_plus.lower}, {r.sigma_plus.upper}]",
                       r.sigma_plus.exact and r.sigma_plus.lower == Fraction(1, 3)))


def test_criterion_07_gauss_bonnet_and_coverings():
    with criterion(7, "Gauss-Bonnet on 200 random pairs and Riemann-Hurwitz on covers") as checks:
        bad = []
        for seed in GAUSS_BONNET_SEEDS:
            rng = random.Random(seed)
            X = helpers.random_complex(rng)
            lhs, rhs = K.gauss_bonnet_identity(X, helpers.random_angles(rng, X))
            if lhs != rhs:
                bad.append(seed)
        checks.append((f"Gauss-Bonnet fails for seeds {bad}", not bad))
        X1 = C.sphere()
        for n in range(1, 5):
            phi = C.sphere_cover(n)
            checks.append((f"X_{n} covers X_1 with degree n", is_branched_covering(phi) == n))
            checks.append((f"tau(X_{n}) = {n} tau(X_1)", total_curvature(phi.source) == n * total_curvature(X1)))
            checks.append((f"kappa(X_{n}) = kappa(X_1)", average_curvature(phi.source) == average_curvature(X1)))
            A = K.AngleStructure.uniform(X1, Fraction(1, 3))
            B = K.pullback(A, phi)
            lhs, rhs = K.gauss_bonnet_identity(phi.source, B)
            checks.append((f"Gauss-Bonnet on the pulled back angles of X_{n}", lhs == rhs))
        chain = compose(C.sphere_cover(4, 2), C.sphere_cover(2))
        checks.append(("X_4 -> X_2 -> X_1 has degree 4", is_branched_covering(chain) == 4))
        for w in E.enumerate_witnesses(C.torus(), E.Budget(4)):
            deg = is_branched_covering(w.map)
            checks.append(("torus cover tau = degree * tau", deg is not None and w.tau == deg * 0))


def test_criterion_08_small_cancellation():
    with criterion(8, "piece numbers match the oracle; C(7) for random long relators") as checks:
        bad = 0
        for X in small_cancellation_fixtures():
            for f in range(X.n_faces):
                if sc.min_piece_number(X, f) != oracles.min_pieces(X, f):
                    bad += 1
        checks.append((f"{bad} faces disagree with the oracle", bad == 0))
        good = sum(sc.check_C(io.source_to_complex(io.sample_presentation(2, 1, 200, seed)), 7)
                   for seed in C7_SEEDS)
        checks.append((f"{good}/100 samples are C(7)", good >= C7_REQUIRED))


def _chain_problems(r):
    order = [("rho_minus", r.rho_minus), ("sigma_minus", r.sigma_minus),
             ("sigma_plus", r.sigma_plus), ("rho_plus", r.rho_plus)]
    out = []
    for i, (a, lo) in enumerate(order):
        for b, hi in order[i + 1:]:
            if lo.lower > hi.upper:
                out.append(f"{a} >= {lo.lower} but {b} <= {hi.upper}")
    if r.rho_plus.upper > 1:
        out.append("rho_plus upper bound above 1")
    return out


def test_criterion_09_sandwich():
    with criterion(9, "rho_minus <= sigma_minus <= sigma_plus <= rho_plus <= 1 on the corpus") as checks:
        for path in CORPUS:
            r = E.curvature_report(io.load_complex(path), E.Budget(2))
            E.check_report(r)
            problems = _chain_problems(r)
            checks.append((f"{path.name}: {problems}", not problems))


def _summary(X):
    r = E.curvature_report(X, E.Budget(2))
    bounds = [(b.lower, b.upper) for b in (r.rho_plus, r.rho_minus, r.sigma_plus, r.sigma_minus)]
    certs = {k: v[1] for k, v in r.certificates.items()}
    return {
        "kappa": average_curvature(X),
        "tau per area": Fraction(total_curvature(X), sum(X.areas)),
        "classification": classify(X).verdict,
        "bounds": bounds,
        "certificates": certs,
        "witness kappas": sorted(w.kappa for w in r.witnesses),
    }


def test_criterion_10_nielsen_invariance():
    with criterion(10, "edge subdivision changes no invariant or bound (Manning, torus)") as checks:
        for name in ("manning.txt", "torus.txt"):
            X = io.load_complex(DATA / name)
            before, after = _summary(X), _summary(subdivide(X))
            for key in before:
                checks.append((f"{name} {key}: {before[key]} vs {after[key]}", before[key] == after[key]))
