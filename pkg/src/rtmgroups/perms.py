"""Permutations of ``range(N)`` stored as image arrays."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np


class Permutation:
    """A bijection of ``range(N)``; ``p[i]`` is the image of ``i``.

    ``p * q`` is the composition ``p o q`` (``q`` first).
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int] | np.ndarray, *, check: bool = True):
        a = np.ascontiguousarray(images, dtype=np.int64)
        if check:
            if a.ndim != 1 or not np.array_equal(np.sort(a), np.arange(a.shape[0])):
                raise ValueError("not a permutation")
        a.flags.writeable = False
        self.images = a

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(np.arange(size), check=False)

    @classmethod
    def from_cycles(cls, size: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        a = np.arange(size)
        for cyc in cycles:
            for i, x in enumerate(cyc):
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    def __len__(self) -> int:
        return self.images.shape[0]

    def __getitem__(self, i: int) -> int:
        return int(self.images[i])

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise ValueError("permutations act on sets of different sizes")
        return Permutation(self.images[other.images], check=False)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self))
        return Permutation(inv, check=False)

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Permutation.identity(len(self))
        while e:
            if e & 1:
                out = base * out
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def __repr__(self) -> str:
        return f"Permutation({self.cycles()!r} on {len(self)})"

    def is_identity(self) -> bool:
        return bool(np.all(self.images == np.arange(len(self))))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least element, sorted."""
        img = self.images.tolist()
        seen = [False] * len(img)
        out = []
        for start in range(len(img)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = img[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = img[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        img = self.images.tolist()
        seen = [False] * len(img)
        lengths = []
        for start in range(len(img)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = img[x]
                length += 1
            lengths.append(length)
        return lengths

    def sign(self) -> int:
        lengths = self.cycle_lengths()
        return -1 if (len(self) - len(lengths)) % 2 else 1

    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if len(self) else 1


def product(perms: Iterable[Permutation], size: int) -> Permutation:
    """Apply ``perms`` left to right (the first one acts first)."""
    out = Permutation.identity(size)
    for p in perms:
        out = p * out
    return out
