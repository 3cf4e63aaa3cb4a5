"""Presentation text, JSON complexes, and the random few-relator sampler.

Presentation text is line oriented::

    # comment
    gens: a b c
    rel: bbaaccabc
    rel: abAB area: 2

Uppercase letters are inverses. Relators are freely and cyclically reduced.
A relator that reduces to nothing is rejected rather than dropped.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from pathlib import Path

from . import words
from .core import BranchedTwoComplex, check, presentation_complex, validate


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col = line, col


class TrivialRelator(ValueError):
    def __init__(self, index: int):
        super().__init__(f"relator {index} reduces to the empty word")
        self.index = index


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class PresentationSource:
    generators: tuple  # of single lowercase letters
    relators: tuple  # of (word string, area)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        for w, a in self.relators:
            lines.append(f"rel: {w}" + (f" area: {a}" if a != 1 else ""))
        return "\n".join(lines) + "\n"


_REL = re.compile(r"^(\S+)(?:\s+area:\s*(\S+))?\s*$")


def parse_source(text: str) -> PresentationSource:
    gens: list[str] | None = None
    rels = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        key, sep, rest = body.partition(":")
        if not sep:
            raise ParseError(ln, indent + 1, "expected 'gens:' or 'rel:'")
        key = key.strip()
        col0 = indent + len(body) - len(rest.lstrip()) + 1
        rest = rest.strip()
        if key == "gens":
            if gens is not None:
                raise ParseError(ln, indent + 1, "generators declared twice")
            gens = rest.split()
            for g in gens:
                if len(g) != 1 or not ("a" <= g <= "z"):
                    raise ParseError(ln, col0 + rest.index(g), f"generator {g!r} is not a lowercase letter")
            if len(set(gens)) != len(gens):
                raise ParseError(ln, col0, "repeated generator")
        elif key == "rel":
            if gens is None:
                raise ParseError(ln, indent + 1, "relator before 'gens:'")
            m = _REL.match(rest)
            if not m:
                raise ParseError(ln, col0, "expected a word and an optional 'area: k'")
            word, area = m.group(1), m.group(2)
            for k, ch in enumerate(word):
                if ch.lower() not in gens:
                    raise ParseError(ln, col0 + k, f"letter {ch!r} is not a generator or an inverse")
            if area is None:
                a = 1
            elif area.isdigit() and int(area) > 0:
                a = int(area)
            else:
                raise ParseError(ln, col0 + rest.index("area:"), "area must be a positive integer")
            rels.append((word, a))
        else:
            raise ParseError(ln, indent + 1, f"unknown key {key!r}")
    if gens is None:
        raise ParseError(1, 1, "missing 'gens:' line")
    return PresentationSource(tuple(gens), tuple(rels))


def source_to_complex(src: PresentationSource) -> BranchedTwoComplex:
    index = {g: k + 1 for k, g in enumerate(src.generators)}
    rels, areas = [], []
    for i, (word, a) in enumerate(src.relators):
        w = tuple(index[ch] if ch.islower() else -index[ch.lower()] for ch in word)
        w = words.cyclic_reduce(w)
        if not w:
            raise TrivialRelator(i)
        rels.append(w)
        areas.append(a)
    X = presentation_complex(len(src.generators), rels, areas)
    labels = [x for g in src.generators for x in (g, g.upper())]
    return BranchedTwoComplex.build(1, X.skeleton.origin, X.skeleton.reverse, X.faces, X.areas, labels)


def parse_presentation(text: str) -> BranchedTwoComplex:
    return source_to_complex(parse_source(text))


# ---------------------------------------------------------------- JSON


def complex_to_json(X: BranchedTwoComplex) -> dict:
    darts = []
    for d in range(X.n_darts):
        entry = {"origin": X.origin(d), "reverse": X.reverse(d)}
        if X.labels is not None:
            entry["label"] = X.labels[d]
        darts.append(entry)
    return {
        "vertices": X.n_vertices,
        "darts": darts,
        "faces": [{"word": list(w)} for w in X.faces],
        "areas": list(X.areas),
    }


def _int(value, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{where}: expected an integer")
    return value


def complex_from_json(data) -> BranchedTwoComplex:
    """Build a complex; a word entry ``-(d+1)`` stands for the reverse of dart d."""
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    for key in ("vertices", "darts", "faces"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    n = _int(data["vertices"], "vertices")
    if not isinstance(data["darts"], list) or not isinstance(data["faces"], list):
        raise SchemaError("darts and faces must be lists")
    origin, reverse, labels = [], [], []
    for k, d in enumerate(data["darts"]):
        if not isinstance(d, dict) or "origin" not in d or "reverse" not in d:
            raise SchemaError(f"dart {k}: needs origin and reverse")
        origin.append(_int(d["origin"], f"dart {k} origin"))
        reverse.append(_int(d["reverse"], f"dart {k} reverse"))
        labels.append(d.get("label"))
    nd = len(origin)
    for k in range(nd):
        if not 0 <= origin[k] < n:
            raise SchemaError(f"dart {k}: origin out of range")
        r = reverse[k]
        if not 0 <= r < nd or r == k or reverse[r] != k:
            raise SchemaError(f"dart {k}: reverse is not a fixed-point-free involution")
    faces = []
    for k, f in enumerate(data["faces"]):
        if not isinstance(f, dict) or not isinstance(f.get("word"), list) or not f["word"]:
            raise SchemaError(f"face {k}: needs a nonempty word")
        w = []
        for x in f["word"]:
            x = _int(x, f"face {k} word")
            d = x if x >= 0 else reverse[-x - 1] if -x - 1 < nd else nd
            if not 0 <= d < nd:
                raise SchemaError(f"face {k}: dart reference {x} out of range")
            w.append(d)
        faces.append(w)
    areas = data.get("areas")
    if areas is None:
        areas = [1] * len(faces)
    elif not isinstance(areas, list) or len(areas) != len(faces):
        raise SchemaError("areas must list one integer per face")
    areas = [_int(a, "areas") for a in areas]
    if any(lbl is None for lbl in labels) or not labels:
        labels = None
    X = BranchedTwoComplex.build(n, origin, reverse, faces, areas, labels)
    problems = validate(X)
    if problems:
        raise SchemaError("; ".join(problems))
    return X


def save_complex(X: BranchedTwoComplex, path) -> None:
    Path(path).write_text(json.dumps(complex_to_json(X), indent=1) + "\n")


def load_complex(path) -> BranchedTwoComplex:
    """Read a JSON complex, or presentation text for any other suffix."""
    p = Path(path)
    text = p.read_text()
    if p.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
        return complex_from_json(data)
    return check(parse_presentation(text))


# ---------------------------------------------------------------- sampling


def random_cyclic_word(rng: random.Random, n_gens: int, length: int) -> tuple:
    """Uniform cyclically reduced word of the given length (rejection sampling)."""
    letters = [k for g in range(1, n_gens + 1) for k in (g, -g)]
    while True:
        w = [rng.choice(letters)]
        while len(w) < length:
            x = rng.choice(letters)
            if x != -w[-1]:
                w.append(x)
        if length == 1 or w[0] != -w[-1]:
            return tuple(w)


def sample_presentation(n_gens: int, n_rels: int, length: int, seed: int) -> PresentationSource:
    if n_gens < 2 or n_rels < 1 or length < 1:
        raise ValueError("need at least 2 generators, 1 relator and length 1")
    if n_gens > 26:
        raise ValueError("at most 26 generators")
    rng = random.Random(seed)
    gens = tuple(words.int_to_letter(k) for k in range(1, n_gens + 1))
    rels = tuple((words.to_string(random_cyclic_word(rng, n_gens, length)), 1) for _ in range(n_rels))
    return PresentationSource(gens, rels)
