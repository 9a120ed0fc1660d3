"""Actions on the finite sets ``Y_m`` of periodic configurations.

A point of ``Y_m`` is an ``m``-periodic tape (in every axis) with one head in
every period, all heads at the same offset and in the same state.  A machine
acts by applying its local rule once at every head simultaneously.  Points are
indexed state-major, then head offset, then tape digits; the offset and the
tape both list cells of ``[0, m)^d`` lexicographically, first cell most
significant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Machine, MachineDims, _check_same, compose, digits, radix_weights
from .errors import NotRFA, PeriodTooSmall, RadiusBound
from .lattice import Vec, add
from .perms import Permutation
from .reversibility import is_reversible


def domain(d: int, m: int) -> list[Vec]:
    return [tuple(c) for c in itertools.product(range(m), repeat=d)]


def _cell_index(c: Vec, m: int) -> int:
    i = 0
    for a in c:
        i = i * m + a % m
    return i


def quotient_size(dims: MachineDims, m: int) -> int:
    return dims.k * m ** dims.d * dims.n ** (m ** dims.d)


@dataclass(frozen=True)
class PeriodicConfiguration:
    dims: MachineDims
    m: int
    tape: tuple[int, ...]
    head_offset: Vec
    state: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("period must be positive")
        if len(self.tape) != self.m ** self.dims.d:
            raise ValueError("tape must cover the fundamental domain")
        if any(not 0 <= a < self.m for a in self.head_offset) or len(self.head_offset) != self.dims.d:
            raise ValueError(f"head offset {self.head_offset} outside [0, {self.m})^d")

    def symbol(self, cell: Vec) -> int:
        return self.tape[_cell_index(cell, self.m)]

    def index(self) -> int:
        d, n, k = self.dims.d, self.dims.n, self.dims.k
        t = 0
        for s in self.tape:
            t = t * n + s
        off = _cell_index(self.head_offset, self.m)
        return ((self.state - 1) * self.m ** d + off) * n ** len(self.tape) + t

    @classmethod
    def from_index(cls, dims: MachineDims, m: int, index: int) -> "PeriodicConfiguration":
        cells = m ** dims.d
        rest, t = divmod(index, dims.n ** cells)
        q, off = divmod(rest, cells)
        tape = []
        for _ in range(cells):
            t, s = divmod(t, dims.n)
            tape.append(s)
        offset = []
        for _ in range(dims.d):
            off, a = divmod(off, m)
            offset.append(a)
        return cls(dims, m, tuple(reversed(tape)), tuple(reversed(offset)), q + 1)


def _check_period(machine: Machine, m: int) -> None:
    if machine.rule.write and m <= 2 * machine.radius:
        raise PeriodTooSmall(
            f"period {m} lets write windows of radius {machine.radius} overlap; need m > {2 * machine.radius}")


def act_on_periodic(machine: Machine, c: PeriodicConfiguration) -> PeriodicConfiguration:
    """Apply the local rule once at every head of ``c``."""
    _check_same(machine.dims, c.dims)
    _check_period(machine, c.m)
    rule, m = machine.rule, c.m
    pattern = tuple(c.symbol(add(c.head_offset, v)) for v in rule.read)
    written, q2, move = rule.lookup(pattern, c.state)
    tape = list(c.tape)
    for v, s in zip(rule.write, written):
        tape[_cell_index(add(c.head_offset, v), m)] = s
    offset = tuple((a + b) % m for a, b in zip(c.head_offset, move))
    return PeriodicConfiguration(c.dims, m, tuple(tape), offset, q2)


def action_array(machine: Machine, m: int) -> np.ndarray:
    """Image index of every point of ``Y_m`` under one synchronous application."""
    _check_period(machine, m)
    dims, rule = machine.dims, machine.rule
    d, n, k = dims.d, dims.n, dims.k
    cells = domain(d, m)
    ncell = len(cells)
    tapes = digits(np.arange(n ** ncell), n, ncell)
    weights = radix_weights(n, ncell)
    tsize = n ** ncell
    out = np.empty(quotient_size(dims, m), dtype=np.int64)
    for oi, off in enumerate(cells):
        rcols = [_cell_index(add(off, v), m) for v in rule.read]
        wcols = [_cell_index(add(off, v), m) for v in rule.write]
        pat = tapes[:, rcols] @ radix_weights(n, len(rcols)) if rcols else np.zeros(tsize, dtype=np.int64)
        for q in range(1, k + 1):
            idx = pat * k + (q - 1)
            if wcols:
                new = tapes.copy()
                new[:, wcols] = rule.out[idx]
                tindex = new @ weights
            else:
                tindex = np.arange(tsize)
            moves = rule.move[idx]
            noff = np.zeros(tsize, dtype=np.int64)
            for j in range(d):
                noff = noff * m + (off[j] + moves[:, j]) % m
            src = ((q - 1) * ncell + oi) * tsize
            out[src: src + tsize] = ((rule.state[idx] - 1) * ncell + noff) * tsize + tindex
    return out


def _require_rfa(machine: Machine) -> None:
    if machine.rule.write or not is_reversible(machine):
        raise NotRFA("expected a reversible machine that never writes")


def phi(machine: Machine, m: int) -> Permutation:
    """The permutation of ``Y_m`` induced by a reversible finite-state automaton."""
    _require_rfa(machine)
    return Permutation(action_array(machine, m))


def sign_vector(machine: Machine, ms: Sequence[int]) -> list[int]:
    _require_rfa(machine)
    return [Permutation(action_array(machine, m), check=False).sign() for m in ms]


@dataclass(frozen=True)
class LefResult:
    """Outcome of ``lef_check``; truthy when every check passed.

    ``witness`` names the failure: ``("collision", i, x, y)`` when machine
    ``i`` maps points ``x != y`` of ``Y_m`` to the same point, or
    ``("product", i, j, x)`` when ``T_i o T_j`` and the composed maps differ at ``x``.
    """

    ok: bool
    m: int
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def lef_check(machines: Sequence[Machine], r: int) -> LefResult:
    """Check that single applications on ``Y_{8r}`` multiply like the machines do."""
    for i, t in enumerate(machines):
        if t.radius > r:
            raise RadiusBound(f"machine {i} has radius {t.radius} > {r}")
    if machines:
        _check_same(*(t.dims for t in machines))
    m = max(8 * r, 1)
    maps = [action_array(t, m) for t in machines]
    for i, a in enumerate(maps):
        order = np.argsort(a, kind="stable")
        dup = np.flatnonzero(np.diff(a[order]) == 0)
        if dup.size:
            x, y = int(order[dup[0]]), int(order[dup[0] + 1])
            return LefResult(False, m, ("collision", i, x, y))
    for i, a in enumerate(maps):
        for j, b in enumerate(maps):
            both = action_array(compose(machines[i], machines[j]), m)
            bad = np.flatnonzero(both != a[b])
            if bad.size:
                return LefResult(False, m, ("product", i, j, int(bad[0])))
    return LefResult(True, m)


__all__ = [
    "PeriodicConfiguration", "act_on_periodic", "action_array", "phi", "sign_vector",
    "lef_check", "LefResult", "quotient_size", "domain",
]
