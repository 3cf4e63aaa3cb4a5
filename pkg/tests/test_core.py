from fractions import Fraction

import pytest

from twocurv import corpus as C
from twocurv import words as W
from twocurv.core import (
    BranchedTwoComplex,
    DisconnectedComplex,
    EmptySkeleton,
    ZeroArea,
    average_curvature,
    chi_skeleton,
    deficiency,
    disjoint_union,
    euler_characteristic,
    group_pair,
    identity,
    is_concise,
    morphism_problems,
    presentation_complex,
    rose,
    subdivide,
    total_curvature,
    validate,
)


def test_validate_accepts_torus():
    assert validate(C.torus()) == []


def test_validate_reports_backtracking_once():
    X = BranchedTwoComplex.build(1, [0, 0], [1, 0], [[0, 1]])
    assert validate(X) == ["face 0: backtracking at position 0"]


def test_validate_reports_zero_area():
    X = BranchedTwoComplex.build(1, [0, 0, 0, 0], [1, 0, 3, 2], [[0, 2, 1, 3]], [0])
    assert validate(X) == ["face 0: nonpositive area"]


def test_validate_reports_bad_involution_and_open_word():
    X = BranchedTwoComplex.build(2, [0, 1], [0, 1], [[0]])
    problems = validate(X)
    assert any("reverse" in p or "involution" in p for p in problems)


@pytest.mark.parametrize("X, chi", [
    (C.torus(), 0),
    (C.manning(), -1),
    (rose(4), -3),
    (C.cube(), 2),
    (C.sphere(), 2),
])
def test_euler_characteristic(X, chi):
    assert euler_characteristic(X) == chi


def test_total_curvature_examples():
    assert total_curvature(C.sphere()) == 2
    assert average_curvature(C.sphere()) == 1
    assert total_curvature(C.cube()) == 2
    assert average_curvature(C.cube()) == Fraction(1, 3)
    for n in range(1, 6):
        assert total_curvature(C.sphere(n)) == 2 * n


def test_average_curvature_examples():
    assert average_curvature(C.f2xf2()) == Fraction(1, 4)
    assert average_curvature(C.trefoil()) == 0
    for n in (3, 4, 5):
        assert average_curvature(C.n_torus(n)) == 1 - Fraction(2, n)


def test_average_curvature_needs_faces():
    with pytest.raises(ZeroArea):
        average_curvature(rose(2))


def test_deficiency():
    assert deficiency(C.trefoil()) == 1
    assert deficiency(C.manning()) == 2
    assert deficiency(rose(5)) == 5


def test_tau_is_area_plus_skeleton_chi():
    for make in C.CORPUS.values():
        X = make()
        assert total_curvature(X) == sum(X.areas) + chi_skeleton(X)


def test_group_pair_of_torus_and_bs():
    gp = group_pair(C.torus())
    assert gp.rank == 2 and gp.classes == ((W.from_string("abAB"), 1),)
    gp = group_pair(C.baumslag_solitar())
    assert gp.rank == 2 and len(gp.classes[0][0]) == 7 and gp.classes[0][1] == 1


def test_group_pair_survives_subdivision():
    T = C.torus()
    S = subdivide(T)
    a, b = group_pair(T), group_pair(S)
    assert a.rank == b.rank
    # the spanning tree may rename generators; compare up to signed relabelling
    (u, _), (v, _) = a.classes[0], b.classes[0]
    assert any(
        W.cyclic_equal(u, tuple(s[abs(k) - 1] * p[abs(k) - 1] * (1 if k > 0 else -1) for k in v), False)
        for p in ((1, 2), (2, 1)) for s in ((1, 1), (1, -1), (-1, 1), (-1, -1))
    )


def test_group_pair_errors():
    with pytest.raises(EmptySkeleton):
        group_pair(BranchedTwoComplex.build(0, [], []))
    with pytest.raises(DisconnectedComplex):
        group_pair(disjoint_union([C.torus(), C.torus()]))
    assert len(group_pair(disjoint_union([C.torus(), C.torus()]), per_component=True)) == 2


def test_conciseness():
    ok, wit = is_concise(C.sphere())
    assert not ok and wit.kind == "shared_root" and wit.faces == (0, 1)
    ok, wit = is_concise(C.from_relators(2, "aa"))
    assert not ok and wit.kind == "proper_power"
    assert is_concise(C.manning()) == (True, None)


def test_conciseness_counts_inverse_relators_as_equal():
    ok, wit = is_concise(C.from_relators(2, "abAB", "baBA"))
    assert not ok and wit.kind == "shared_root"


def test_disjoint_union_kappa_is_weighted_mean():
    parts = [C.torus(), C.sphere(), C.manning()]
    U = disjoint_union(parts)
    ks = [average_curvature(P) for P in parts]
    assert min(ks) <= average_curvature(U) <= max(ks)
    assert total_curvature(U) == sum(total_curvature(P) for P in parts)


def test_identity_is_a_morphism():
    for make in C.CORPUS.values():
        assert morphism_problems(identity(make())) == []


def test_presentation_complex_layout():
    X = presentation_complex(2, [W.from_string("abAB")])
    assert X.n_vertices == 1 and X.n_darts == 4 and X.faces == ((0, 2, 1, 3),)
