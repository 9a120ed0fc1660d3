"""Small helpers for integer vectors in Z^d, stored as plain tuples."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

Vec = tuple[int, ...]


def vec(*components: int) -> Vec:
    return tuple(int(c) for c in components)


def zero(d: int) -> Vec:
    return (0,) * d


def unit(d: int, axis: int, sign: int = 1) -> Vec:
    """The vector ``sign * e_axis``; axes are numbered from 1."""
    if not 1 <= axis <= d:
        raise ValueError(f"axis {axis} out of range for dimension {d}")
    return tuple(sign if i == axis - 1 else 0 for i in range(d))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def scale(c: int, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def norm(u: Vec) -> int:
    """Max-norm; the empty vector (d = 0 never occurs) would give 0."""
    return max((abs(a) for a in u), default=0)


def support_radius(cells: Iterable[Vec]) -> int:
    """Least r with ``cells`` inside [-r, r]^d, or -1 for the empty set."""
    return max((norm(c) for c in cells), default=-1)


def cube(d: int, r: int) -> list[Vec]:
    """All cells of [-r, r]^d in lexicographic order (empty when r < 0)."""
    if r < 0:
        return []
    return [tuple(c) for c in itertools.product(range(-r, r + 1), repeat=d)]


def enumerate_lattice(d: int) -> Iterator[Vec]:
    """The fixed enumeration of Z^d used for ancillas and the window E0.

    It starts with 0, e1, 2e1, 3e1 and then lists every remaining point by
    increasing max-norm, lexicographically within each shell.
    """
    head = [scale(i, unit(d, 1)) for i in range(4)]
    yield from head
    seen = set(head)
    r = 0
    while True:
        shell = [c for c in cube(d, r) if norm(c) == r and c not in seen]
        yield from shell
        r += 1


def window_e0(d: int) -> tuple[Vec, ...]:
    """The four-cell window {0, e1, 2e1, 3e1} carrying A2 generators."""
    return tuple(itertools.islice(enumerate_lattice(d), 4))


def fmt_vec(v: Vec) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"
