"""Words in a free group.

A word is a tuple of nonzero integers: ``k`` stands for the k-th generator
(1-based) and ``-k`` for its inverse. Letters are written ``a``, ``b``, ...
with uppercase for inverses.
"""
from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple


def letter_to_int(ch: str) -> int:
    if ch.islower():
        return ord(ch) - ord("a") + 1
    return -(ord(ch) - ord("A") + 1)


def int_to_letter(k: int) -> str:
    if k > 0:
        return chr(ord("a") + k - 1)
    return chr(ord("A") - k - 1)


def from_string(s: str) -> Word:
    return tuple(letter_to_int(ch) for ch in s)


def to_string(w: Iterable[int]) -> str:
    return "".join(int_to_letter(k) for k in w)


def inverse(w: Sequence) -> Word:
    return tuple(-k for k in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for k in w:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def rotations(w: Sequence) -> list:
    return [tuple(w[i:]) + tuple(w[:i]) for i in range(len(w))]


def minimal_period(w: Sequence) -> int:
    """Smallest p dividing len(w) such that w is invariant under rotation by p."""
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and all(w[i] == w[(i + p) % n] for i in range(n)):
            return p
    return n


def is_proper_power(w: Sequence):
    """Return ``(root, k)`` with k >= 2 if the cyclic word w is a proper power."""
    w = tuple(w)
    if not w:
        raise ValueError("empty word")
    p = minimal_period(w)
    k = len(w) // p
    if k < 2:
        return None
    return w[:p], k


def is_rotation(u: Sequence, v: Sequence) -> bool:
    u, v = tuple(u), tuple(v)
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = u + u
    n = len(u)
    return any(doubled[i:i + n] == v for i in range(n))


def cyclic_equal(w1: Sequence, w2: Sequence, allow_inversion: bool = False) -> bool:
    if is_rotation(w1, w2):
        return True
    return allow_inversion and is_rotation(inverse(w1), w2)


def least_rotation(w: Sequence) -> Word:
    w = tuple(w)
    if not w:
        return w
    return min(rotations(w))


def cyclic_canonical(w: Sequence, allow_inversion: bool = False) -> Word:
    best = least_rotation(w)
    if allow_inversion:
        best = min(best, least_rotation(inverse(w)))
    return best
