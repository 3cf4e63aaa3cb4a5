import math
import random

import pytest

import oracles
from twocurv import corpus as C
from twocurv import io
from twocurv import smallcancel as sc
from twocurv import words as W


def names(X, pieces):
    return ["".join(X.dart_name(d) for d in p.word) for p in pieces]


def test_sphere_pieces():
    X = C.sphere()
    (p,) = sc.compute_pieces(X)
    assert {o[0] for o in p.occurrences} == {0, 1}
    assert sc.min_piece_number(X, 0) == 1
    assert not sc.check_C(X, 2)


def test_torus_pieces_have_length_one():
    X = C.torus()
    assert names(X, sc.compute_pieces(X)) == ["a", "b"]
    assert sc.min_piece_number(X, 0) == 4
    assert sc.check_C(X, 4) and not sc.check_C(X, 5)


def test_power_relator_pieces():
    X = C.from_relators(2, "a" * 7 + "b" * 7)
    got = names(X, sc.compute_pieces(X))
    # one maximal piece per alignment of the two powers against themselves
    assert got == ["a" * k for k in range(1, 7)] + ["b" * k for k in range(1, 7)]
    assert sc.min_piece_number(X, 0) == oracles.min_pieces(X, 0)


def test_check_C_needs_p_at_least_two():
    with pytest.raises(ValueError):
        sc.check_C(C.torus(), 1)


def test_pieces_are_maximal_and_read_the_word():
    for make in (C.torus, C.manning, C.tripus, C.f2xf2, C.trefoil):
        X = make()
        for p in sc.compute_pieces(X):
            assert len(p.occurrences) >= 2
            for f, i, o in p.occurrences:
                assert oracles._read(X, f, i, o, len(p.word)) == p.word


def _fixtures():
    out = [make() for make in C.CORPUS.values()]
    out.append(C.from_relators(2, "a" * 7 + "b" * 7))
    rng = random.Random(20)
    for k in range(40):
        n = rng.randint(1, 20)
        w = io.random_cyclic_word(rng, 2, n)
        rels = [W.to_string(w)]
        if k % 4 == 0:
            rels.append(W.to_string(io.random_cyclic_word(rng, 2, rng.randint(1, 20))))
        out.append(C.from_relators(2, *rels))
    return out


@pytest.mark.parametrize("X", _fixtures())
def test_min_piece_number_matches_exhaustive_oracle(X):
    for f in range(X.n_faces):
        assert sc.min_piece_number(X, f) == oracles.min_pieces(X, f)


def test_min_piece_number_rotation_and_inversion_invariant():
    rng = random.Random(3)
    for _ in range(20):
        w = io.random_cyclic_word(rng, 2, rng.randint(2, 16))
        base = sc.min_piece_number(C.from_relators(2, W.to_string(w)), 0)
        k = rng.randrange(len(w))
        rot = w[k:] + w[:k]
        assert sc.min_piece_number(C.from_relators(2, W.to_string(rot)), 0) == base
        assert sc.min_piece_number(C.from_relators(2, W.to_string(W.inverse(w))), 0) == base


def test_check_C_monotone():
    rng = random.Random(5)
    for _ in range(10):
        X = C.from_relators(2, W.to_string(io.random_cyclic_word(rng, 2, 30)))
        top = sc.largest_C(X)
        for p in range(2, 12):
            assert sc.check_C(X, p) == (p <= top)


def test_random_long_relator_is_C7():
    X = io.source_to_complex(io.sample_presentation(2, 1, 200, 7))
    assert sc.check_C(X, 7)


def test_no_faces_gives_infinite_p():
    assert sc.largest_C(C.from_relators(2)) == math.inf
