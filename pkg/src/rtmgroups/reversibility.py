"""Reversibility via images of input cylinders, exact inverses, and measures.

Throughout, an input cylinder fixes the tape on a window ``W`` around the
head together with the state.  After one step the head sits at ``v`` and the
image, seen from the new head position, fixes the cells ``W - v``.  Images of
distinct input cylinders are pairwise disjoint exactly when the machine is
injective, and they always have total measure one, so injectivity,
surjectivity and full measure of the image union are the same condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import (
    LocalRule,
    Machine,
    _expand,
    all_lhs,
    compose,
    lhs_index,
)
from .errors import NotReversible
from .lattice import Vec, cube, sub

RationalVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class CylinderImage:
    """Image of one input cylinder, in coordinates centred on the new head."""

    support: tuple[Vec, ...]
    values: tuple[int, ...]
    state: int
    move: Vec

    def compatible(self, other: "CylinderImage") -> bool:
        """True when the two cylinders intersect."""
        if self.state != other.state:
            return False
        mine = dict(zip(self.support, self.values))
        return all(mine.get(c, s) == s for c, s in zip(other.support, other.values))


def default_window(machine: Machine) -> list[Vec]:
    return cube(machine.dims.d, max(machine.radius, 0))


def image_cylinders(machine: Machine, window: Optional[Sequence[Vec]] = None) -> list[CylinderImage]:
    """One image per (window pattern, state), in table order.

    ``window`` defaults to the hypercube ``[-r, r]^d`` with ``r`` the radius;
    any window containing the read and write supports gives the same verdicts.
    """
    W = tuple(sorted(window)) if window is not None else tuple(default_window(machine))
    missing = (set(machine.rule.read) | set(machine.rule.write)) - set(W)
    if missing:
        raise ValueError(f"window misses support cells {sorted(missing)}")
    _, written, state, move = _expand(machine.rule, W)
    images = []
    for row in range(state.shape[0]):
        v = tuple(int(a) for a in move[row])
        images.append(CylinderImage(tuple(sub(c, v) for c in W),
                                    tuple(int(s) for s in written[row]),
                                    int(state[row]), v))
    return images


class _Images:
    """Images over the compact window ``F | G``, grouped by move vector."""

    def __init__(self, machine: Machine):
        rule = machine.rule
        self.machine = machine
        self.n, self.k = rule.dims.n, rule.dims.k
        self.W = tuple(sorted(set(rule.read) | set(rule.write)))
        self.inputs, self.written, self.state, self.move = _expand(rule, self.W)
        moves = np.unique(self.move, axis=0)
        self.groups: list[tuple[Vec, np.ndarray]] = []
        for mv in moves:
            rows = np.flatnonzero(np.all(self.move == mv, axis=1))
            self.groups.append((tuple(int(a) for a in mv), rows))
        cells = set()
        for v, _ in self.groups:
            cells.update(sub(c, v) for c in self.W)
        self.H = tuple(sorted(cells))

    def keys(self, rows: np.ndarray, cols: Sequence[int]) -> np.ndarray:
        """Key (pattern on the chosen columns, state) of the given image rows."""
        return lhs_index(self.written[np.ix_(rows, cols)], self.state[rows], self.n, self.k)

    def collision(self) -> Optional[tuple[int, int]]:
        """Two input rows whose images intersect, or None."""
        all_cols = list(range(len(self.W)))
        for v, rows in self.groups:
            keys = self.keys(rows, all_cols)
            order = np.argsort(keys, kind="stable")
            dup = np.flatnonzero(np.diff(keys[order]) == 0)
            if dup.size:
                return int(rows[order[dup[0]]]), int(rows[order[dup[0] + 1]])
        for a in range(len(self.groups)):
            va, ra = self.groups[a]
            cells_a = {sub(c, va): j for j, c in enumerate(self.W)}
            for b in range(a + 1, len(self.groups)):
                vb, rb = self.groups[b]
                cells_b = {sub(c, vb): j for j, c in enumerate(self.W)}
                common = sorted(set(cells_a) & set(cells_b))
                ka = self.keys(ra, [cells_a[c] for c in common])
                kb = self.keys(rb, [cells_b[c] for c in common])
                hit = np.intersect1d(ka, kb)
                if hit.size:
                    i = int(ra[np.flatnonzero(ka == hit[0])[0]])
                    j = int(rb[np.flatnonzero(kb == hit[0])[0]])
                    return i, j
        return None

    def cover_count(self) -> np.ndarray:
        """For every (pattern on H, state), how many images contain it."""
        n, k = self.n, self.k
        P, S = all_lhs(n, len(self.H), k)
        hcol = {c: j for j, c in enumerate(self.H)}
        count = np.zeros(P.shape[0], dtype=np.int64)
        full = n ** len(self.W) * k
        for v, rows in self.groups:
            present = np.zeros(full, dtype=bool)
            present[self.keys(rows, list(range(len(self.W))))] = True
            cols = [hcol[sub(c, v)] for c in self.W]
            count += present[lhs_index(P[:, cols], S, n, k)]
        return count


def find_collision(machine: Machine) -> Optional[tuple[tuple, tuple]]:
    """Two distinct inputs ``((pattern, q), (pattern, q))`` over ``F | G`` with
    intersecting images, or None when the machine is reversible."""
    imgs = _Images(machine)
    hit = imgs.collision()
    if hit is None:
        return None
    k = imgs.k
    out = []
    for row in hit:
        out.append((tuple(int(s) for s in imgs.inputs[row]), row % k + 1))
    return tuple(out)


def is_reversible(machine: Machine) -> bool:
    return _Images(machine).collision() is None


def measure_defect(machine: Machine) -> Fraction:
    """``1 - mu(image of the whole space)``, exactly."""
    imgs = _Images(machine)
    count = imgs.cover_count()
    return 1 - Fraction(int(np.count_nonzero(count)), count.shape[0])


def average_movement(machine: Machine) -> RationalVector:
    """Expected move vector under the uniform measure on (tape, state)."""
    rule = machine.rule
    totals = rule.move.sum(axis=0)
    return tuple(Fraction(int(t), rule.size) for t in totals)


def invert(machine: Machine) -> Machine:
    """The inverse machine, built straight from the cylinder bijection.

    It reads the window ``H`` where images live (inside
    ``[-r - r_m, r + r_m]^d``), finds the unique image containing what it sees,
    restores that cylinder's original contents and steps back by ``-v``.
    """
    imgs = _Images(machine)
    hit = imgs.collision()
    if hit is not None:
        raise NotReversible("images of two input cylinders intersect", witness=find_collision(machine))
    n, k = imgs.n, imgs.k
    dims = machine.dims
    H = imgs.H
    hcol = {c: j for j, c in enumerate(H)}
    P, S = all_lhs(n, len(H), k)
    written = P.copy()
    state = np.zeros(P.shape[0], dtype=np.int64)
    move = np.zeros((P.shape[0], dims.d), dtype=np.int64)
    matched = np.zeros(P.shape[0], dtype=np.int64)
    full = n ** len(imgs.W) * k
    wcols = list(range(len(imgs.W)))
    for v, rows in imgs.groups:
        source = np.full(full, -1, dtype=np.int64)
        source[imgs.keys(rows, wcols)] = rows
        cols = [hcol[sub(c, v)] for c in imgs.W]
        src = source[lhs_index(P[:, cols], S, n, k)]
        hits = np.flatnonzero(src >= 0)
        matched[hits] += 1
        if cols:
            written[np.ix_(hits, cols)] = imgs.inputs[src[hits]]
        state[hits] = src[hits] % k + 1
        move[hits] = [-a for a in v]
    if not np.all(matched == 1):
        raise NotReversible("image cylinders do not partition the space")
    inverse = Machine(LocalRule(dims, H, H, written, state, move))
    ident = compose(machine, inverse)
    if not (ident.is_identity() and compose(inverse, machine).is_identity()):
        raise AssertionError("constructed inverse failed the round-trip check")
    return inverse


__all__ = [
    "CylinderImage", "image_cylinders", "is_reversible", "find_collision",
    "invert", "average_movement", "measure_defect", "RationalVector",
]
