"""Pieces and the C(p) small-cancellation condition.

A reading position is ``(face, index, orientation)``: orientation +1 reads
the face word forwards from ``index``; -1 reads it backwards starting at
``index`` with every dart reversed. Two distinct positions that read the
same darts for a while share a piece.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BranchedTwoComplex


@dataclass(frozen=True)
class Piece:
    word: tuple  # darts
    occurrences: tuple  # of (face, index, orientation)


def _readings(X: BranchedTwoComplex):
    """Every reading position with the function giving its k-th dart."""
    out = []
    for f, w in enumerate(X.faces):
        n = len(w)
        fwd = tuple(w)
        bwd = tuple(X.reverse(w[(-k) % n]) for k in range(n))  # reading from index 0 backwards
        for i in range(n):
            out.append(((f, i, 1), fwd, i, n))
        for i in range(n):
            # backwards from index i: reverse(w[i]), reverse(w[i-1]), ...
            out.append(((f, i, -1), bwd, (-i) % n, n))
    return out


def _agreement(a, b, cap: int) -> int:
    _, sa, ia, na = a
    _, sb, ib, nb = b
    k = 0
    while k < cap and sa[(ia + k) % na] == sb[(ib + k) % nb]:
        k += 1
    return k


def _back(r):
    """The reading position one step earlier."""
    (f, i, o), s, start, n = r
    return ((f, (i - o) % n, o), s, (start - 1) % n, n)


def max_piece_lengths(X: BranchedTwoComplex, f: int) -> list[int]:
    """For each index i of face f: longest forward subword starting at i that
    also occurs at another reading position (capped at the face length)."""
    reads = _readings(X)
    n = len(X.faces[f])
    by_letter: dict[int, list] = {}
    for r in reads:
        by_letter.setdefault(r[1][r[2]], []).append(r)
    out = []
    for i in range(n):
        me = next(r for r in reads if r[0] == (f, i, 1))
        best = 0
        for other in by_letter.get(X.faces[f][i], ()):
            if other[0] == me[0]:
                continue
            best = max(best, _agreement(me, other, n))
            if best == n:
                break
        out.append(best)
    return out


def min_piece_number(X: BranchedTwoComplex, f: int):
    """Fewest pieces whose concatenation is the cyclic word of face f."""
    reach = max_piece_lengths(X, f)
    n = len(reach)
    if 0 in reach:
        return math.inf
    if max(reach) >= n:
        return 1
    best = math.inf
    for s in range(n):
        # breadth-first jump count from s to s + n
        steps, lo, hi = 0, s, s
        while hi < s + n:
            far = max(i + reach[i % n] for i in range(lo, hi + 1))
            steps += 1
            if far <= hi:
                break
            lo, hi = hi + 1, far
        else:
            best = min(best, steps)
        if best <= 2:
            break
    return best


def check_C(X: BranchedTwoComplex, p: int) -> bool:
    if p < 2:
        raise ValueError("p must be at least 2")
    return all(min_piece_number(X, f) >= p for f in range(X.n_faces))


def largest_C(X: BranchedTwoComplex):
    """Largest p with C(p); infinite when there are no faces."""
    if not X.faces:
        return math.inf
    return min(min_piece_number(X, f) for f in range(X.n_faces))


def compute_pieces(X: BranchedTwoComplex) -> list[Piece]:
    """All maximal pieces, one per word up to inversion."""
    reads = _readings(X)
    by_letter: dict[int, list] = {}
    for r in reads:
        by_letter.setdefault(r[1][r[2]], []).append(r)
    found: dict[tuple, set] = {}
    for a in reads:
        for b in by_letter[a[1][a[2]]]:
            if b[0] <= a[0]:
                continue
            cap = max(a[3], b[3])
            k = _agreement(a, b, cap)
            if k < cap:
                # maximal on the left unless the pair extends backwards
                if _agreement(_back(a), _back(b), 1):
                    continue
            else:
                # a closed agreement: keep one canonical alignment
                k = min(a[3], b[3])
                if not _is_least_alignment(a, b, k):
                    continue
            word = tuple(a[1][(a[2] + j) % a[3]] for j in range(k))
            inv = tuple(X.reverse(d) for d in reversed(word))
            if inv < word:
                word = inv
                occ = {_far_end(a, k), _far_end(b, k)}
            else:
                occ = {a[0], b[0]}
            found.setdefault(word, set()).update(occ)
    pieces = [Piece(word, tuple(sorted(occ))) for word, occ in found.items()]
    pieces.sort(key=lambda p: (p.word, p.occurrences[0]))
    return pieces


def _far_end(r, k):
    """The reading position that reads the inverse of the k darts read from r."""
    (f, i, o), _, _, n = r
    return (f, (i + o * (k - 1)) % n, -o)


def _is_least_alignment(a, b, k) -> bool:
    word = tuple(a[1][(a[2] + j) % a[3]] for j in range(k))
    rots = [word[j:] + word[:j] for j in range(k)]
    return word == min(rots) and a[0][0] <= b[0][0]
