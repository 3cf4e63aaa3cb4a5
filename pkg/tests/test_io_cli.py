import json
import os
import random
import re

import pytest

from conftest import DATA, SNAPSHOTS
from twocurv import corpus as C
from twocurv import io
from twocurv.cli import main, rational
from twocurv.core import euler_characteristic, validate
from twocurv.enumeration import canonical_form
from twocurv.core import identity
from twocurv.smallcancel import check_C

CORPUS = sorted(p for p in DATA.iterdir() if p.suffix in (".txt", ".json") and "angles" not in p.name)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------- presentation text


def test_parse_torus():
    X = io.parse_presentation("gens: a b\nrel: abAB")
    assert X.faces == C.torus().faces
    assert X.labels == ("a", "A", "b", "B")


def test_parse_manning():
    X = io.parse_presentation("gens: a b c\nrel: bbaaccabc")
    assert euler_characteristic(X) == -1
    assert X.faces == C.manning().faces


def test_parse_reduces_relators():
    X = io.parse_presentation("gens: a b\nrel: aBAb")
    assert len(X.faces[0]) == 4
    X = io.parse_presentation("gens: a b\nrel: baBAab")
    assert len(X.faces[0]) == 2


def test_parse_trivial_relator():
    with pytest.raises(io.TrivialRelator) as info:
        io.parse_presentation("gens: a b\nrel: ab\nrel: aA")
    assert info.value.index == 1


def test_parse_areas_and_comments():
    X = io.parse_presentation("# torus with a heavy face\ngens: a b   # two letters\nrel: abAB area: 3\n")
    assert X.areas == (3,)


@pytest.mark.parametrize("text, line, col", [
    ("gens: a b\nrel: abx", 2, 8),
    ("rel: ab", 1, 1),
    ("gens: a B", 1, 9),
    ("gens: a b\nfoo: ab", 2, 1),
    ("gens: a b\nrel: ab area: 0", 2, 9),
    ("gens: a b\n  nonsense", 2, 3),
    ("", 1, 1),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(io.ParseError) as info:
        io.parse_source(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_source_round_trip():
    src = io.parse_source("gens: a b c\nrel: bbaaccabc\nrel: abAB area: 2\n")
    assert io.parse_source(src.to_text()) == src


# ---------------------------------------------------------------- JSON complexes


@pytest.mark.parametrize("make", [C.torus, C.manning, C.cube, lambda: C.sphere(3), C.f2xf2])
def test_json_round_trip_is_bit_exact(tmp_path, make):
    X = make()
    p = tmp_path / "x.json"
    io.save_complex(X, p)
    first = p.read_bytes()
    Y = io.load_complex(p)
    assert Y == X
    io.save_complex(Y, p)
    assert p.read_bytes() == first


def test_sphere3_fixture():
    X = io.load_complex(DATA / "sphere3.json")
    assert (X.n_vertices, X.n_edges, X.n_faces) == (3, 3, 2)
    assert canonical_form(identity(X)) == canonical_form(identity(C.sphere(3)))


def test_cube_fixture_matches_builder():
    X = io.load_complex(DATA / "cube.json")
    assert canonical_form(identity(X)) == canonical_form(identity(C.cube()))


def test_missing_areas_default_to_one():
    data = io.complex_to_json(C.torus())
    del data["areas"]
    assert io.complex_from_json(data).areas == (1,)


def test_negative_dart_references():
    data = io.complex_to_json(C.torus())
    # a, b, reverse of a, reverse of b
    data["faces"] = [{"word": [0, 2, -1, -3]}]
    assert io.complex_from_json(data).faces == C.torus().faces


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("darts"),
    lambda d: d.__setitem__("vertices", "one"),
    lambda d: d["darts"][0].__setitem__("reverse", 0),
    lambda d: d["darts"][0].__setitem__("reverse", 2),
    lambda d: d["darts"][0].__setitem__("origin", 5),
    lambda d: d["faces"][0].__setitem__("word", []),
    lambda d: d["faces"][0].__setitem__("word", [9]),
    lambda d: d.__setitem__("areas", [1, 1]),
    lambda d: d.__setitem__("areas", [0]),
    lambda d: d["faces"][0].__setitem__("word", [0, 0, 1, 1]),
])
def test_schema_errors(mutate):
    data = io.complex_to_json(C.torus())
    mutate(data)
    with pytest.raises(io.SchemaError):
        io.complex_from_json(data)


def test_schema_error_on_non_object():
    with pytest.raises(io.SchemaError):
        io.complex_from_json([1, 2])


def test_corpus_files_are_valid():
    for p in CORPUS:
        assert validate(io.load_complex(p)) == [], p.name


# ---------------------------------------------------------------- sampler


def test_sampler_is_deterministic():
    a = io.sample_presentation(2, 2, 50, seed=1)
    b = io.sample_presentation(2, 2, 50, seed=1)
    assert a == b
    assert [len(w) for w, _ in a.relators] == [50, 50]
    assert io.sample_presentation(2, 2, 50, seed=2) != a


def test_sampled_words_are_cyclically_reduced():
    rng = random.Random(3)
    for length in (1, 2, 3, 10, 41):
        for _ in range(50):
            w = io.random_cyclic_word(rng, 3, length)
            assert len(w) == length
            assert all(w[i] != -w[i + 1] for i in range(length - 1))
            assert length == 1 or w[0] != -w[-1]


def test_sampler_seed_seven_is_c7():
    X = io.source_to_complex(io.sample_presentation(2, 1, 200, seed=7))
    assert check_C(X, 7)


def test_sampler_rejects_bad_arguments():
    for args in ((1, 1, 5), (2, 0, 5), (2, 1, 0), (27, 1, 5)):
        with pytest.raises(ValueError):
            io.sample_presentation(*args, seed=0)


# ---------------------------------------------------------------- command line


def test_rational_strings():
    assert rational(None) is None
    assert rational(float("inf")) is None
    from fractions import Fraction
    assert rational(Fraction(-5, 4)) == "-5/4"
    assert rational(2) == "2/1"


def _floats(obj):
    if isinstance(obj, float):
        yield obj
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from _floats(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _floats(v)


def _strings(obj):
    if isinstance(obj, str):
        yield obj
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from _strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _strings(v)


@pytest.mark.parametrize("argv", [
    ["analyze", DATA / "manning.txt", "--json"],
    ["bound", DATA / "manning.txt", "--sigma", "--method", "girth", "--json"],
    ["bound", DATA / "manning.txt", "--rho", "--method", f"angles={DATA / 'manning_angles.json'}", "--json"],
    ["bound", DATA / "tripus.txt", "--rho", "--method", "lp", "--json"],
    ["enumerate", DATA / "manning.txt", "--max-area", 1, "--json"],
    ["prank", "--gens", 2, "--word", "abAB", "--json"],
    ["smallcancel", DATA / "torus.txt", "--json"],
])
def test_json_output_has_no_floats(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    data = json.loads(out)
    assert list(_floats(data)) == []
    for s in _strings(data):
        if re.fullmatch(r"-?[0-9./]+", s):
            assert re.fullmatch(r"-?[0-9]+/[0-9]+", s), s


def test_bound_outputs(capsys):
    code, out, _ = run(capsys, "bound", DATA / "manning.txt", "--sigma", "--method", "girth", "--json")
    assert code == 0 and json.loads(out)["bound"] == "-5/4"
    code, out, _ = run(capsys, "bound", DATA / "manning.txt", "--rho", "--method",
                       f"angles={DATA / 'manning_angles.json'}", "--json")
    assert code == 0 and json.loads(out)["bound"] == "-1/1"


def test_sample_prints_parseable_text(capsys):
    code, out, _ = run(capsys, "sample", "--gens", 2, "--rels", 2, "--len", 30, "--seed", 4)
    assert code == 0
    assert io.parse_source(out) == io.sample_presentation(2, 2, 30, seed=4)


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("gens: a\nrel: ab\n")
    trivial = tmp_path / "trivial.txt"
    trivial.write_text("gens: a\nrel: aA\n")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    schema = tmp_path / "schema.json"
    schema.write_text('{"vertices": 1}')
    assert run(capsys, "analyze", DATA / "torus.txt")[0] == 0
    for path in (bad, trivial, broken, schema):
        code, out, err = run(capsys, "analyze", path)
        assert code == 2 and out == "" and err.startswith("error:")
    code, out, err = run(capsys, "analyze", tmp_path / "missing.txt")
    assert code == 1 and err
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "bound", DATA / "torus.txt")[0] == 2
    assert run(capsys, "bound", DATA / "torus.txt", "--sigma", "--method", "magic")[0] == 1
    assert run(capsys, "prank", "--gens", 1, "--word", "ab")[0] != 0


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_analyze_snapshots(capsys, path):
    snap = SNAPSHOTS / (path.stem + ".analyze.txt")
    code, out, _ = run(capsys, "analyze", path)
    assert code == 0
    if os.environ.get("TWOCURV_WRITE_SNAPSHOTS"):
        snap.write_text(out)
    assert out == snap.read_text()
