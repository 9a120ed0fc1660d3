"""Constructors for the named machine families and subgroup membership tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import (
    HeadConfiguration,
    LocalRule,
    Machine,
    MachineDims,
    _expand,
    all_lhs,
    compose,
    identity,
    lhs_index,
)
from .errors import EmptyPattern, NotBijective, NotClassical, NotReversible
from .lattice import Vec, add, neg, scale, unit, zero
from .reversibility import is_reversible


def shift_machine(dims: MachineDims, v: Vec) -> Machine:
    """Move the head by ``v`` on every step, reading and writing nothing."""
    v = tuple(int(a) for a in v)
    if len(v) != dims.d:
        raise ValueError(f"shift vector {v} is not {dims.d}-dimensional")
    k = dims.k
    rule = LocalRule(dims, (), (), np.zeros((k, 0)), np.arange(1, k + 1),
                     np.tile(np.array(v, dtype=np.int64), (k, 1)))
    return Machine(rule, canonical=True)


def local_permutation(dims: MachineDims, F: Sequence[Vec],
                      pi: Mapping | Callable) -> Machine:
    """The machine ``P_pi``: permute ``Sigma^F x Q`` in place and never move.

    ``pi`` maps ``(pattern, q)`` to ``(pattern, q)`` (patterns in sorted order
    of ``F``), as a mapping or a callable.
    """
    F = tuple(sorted(tuple(c) for c in F))
    n, k = dims.n, dims.k
    get = pi.__getitem__ if isinstance(pi, Mapping) else pi
    images = {}
    for pattern in itertools.product(range(n), repeat=len(F)):
        for q in range(1, k + 1):
            p2, q2 = get((pattern, q))
            images[(pattern, q)] = (tuple(p2), int(q2))
    if len(set(images.values())) != len(images) or any(
            len(p) != len(F) or not 1 <= q <= k or any(not 0 <= s < n for s in p)
            for p, q in images.values()):
        raise NotBijective("pi is not a permutation of Sigma^F x Q")
    table = {lhs: (p2, q2, zero(dims.d)) for lhs, (p2, q2) in images.items()}
    return Machine.from_table(dims, F, F, table)


def local_permutation_from_array(dims: MachineDims, F: Sequence[Vec], perm: np.ndarray) -> Machine:
    """``P_pi`` from ``pi`` given on table indices (pattern-major, state last)."""
    F = tuple(sorted(tuple(c) for c in F))
    n, k = dims.n, dims.k
    size = n ** len(F) * k
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (size,) or not np.array_equal(np.sort(perm), np.arange(size)):
        raise NotBijective("not a permutation of the table indices")
    pats = _pattern_digits(n, len(F), k)
    rule = LocalRule(dims, F, F, pats[perm], perm % k + 1,
                     np.zeros((size, dims.d)))
    return Machine(rule)


def _pattern_digits(n: int, width: int, k: int) -> np.ndarray:
    P, _ = all_lhs(n, width, k)
    return P


def cell_permutation(dims: MachineDims, alpha: Mapping[Vec, Vec]) -> Machine:
    """``C_alpha``: the cell ``v`` (relative to the head) receives the symbol of ``alpha(v)``."""
    alpha = {tuple(a): tuple(b) for a, b in alpha.items() if tuple(a) != tuple(b)}
    if set(alpha) != set(alpha.values()):
        raise NotBijective("alpha is not a permutation of its support")
    cells = tuple(sorted(alpha))
    col = {c: j for j, c in enumerate(cells)}
    P, S = all_lhs(dims.n, len(cells), dims.k)
    out = P[:, [col[alpha[c]] for c in cells]] if cells else P
    rule = LocalRule(dims, cells, cells, out, S, np.zeros((S.shape[0], dims.d)))
    return Machine(rule)


def cell_swap(dims: MachineDims, axis: int) -> Machine:
    """The generator ``C_i`` exchanging the scanned cell and its ``e_i`` neighbour."""
    o, e = zero(dims.d), unit(dims.d, axis)
    return cell_permutation(dims, {o: e, e: o})


def surf_machine(dims: MachineDims, m: int) -> Machine:
    """Reads ``0^m a`` on cells 0..m of the first axis, writes ``a 0^m`` and moves by e1.

    Every other window is left alone.  The all-zero window also moves, which
    is what makes the average movement exactly ``1 / n^m``.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    e1 = unit(dims.d, 1)
    F = [scale(j, e1) for j in range(m + 1)]

    def f(p, q):
        if all(s == 0 for s in p[:m]):
            return (p[m],) + (0,) * m, q, e1
        return p, q, zero(dims.d)

    return Machine.from_function(dims, F, F, f)


def involution_walker(dims: MachineDims, a: int) -> Machine:
    """The involution ``T_a`` walking on boundaries of runs of the symbol ``a``.

    Along the first axis: step right if ``x_0 = a != x_1``, step left if
    ``x_-1 = a != x_0``, otherwise stay.
    """
    if dims.n < 2:
        raise ValueError("needs at least two tape symbols")
    if not 0 <= a < dims.n:
        raise ValueError(f"symbol {a} out of range")
    e1 = unit(dims.d, 1)
    F = [neg(e1), zero(dims.d), e1]

    def f(p, q):
        left, here, right = p
        if here == a and right != a:
            return (), q, e1
        if left == a and here != a:
            return (), q, neg(e1)
        return (), q, zero(dims.d)

    return Machine.from_function(dims, F, [], f)


def free_product_witness(word: Sequence[int]) -> dict[Vec, int]:
    """Tape on which ``T_{w_t} o ... o T_{w_1}`` walks ``t`` cells to the right.

    Cell ``j`` carries ``w_{j+1}`` and cell ``t`` differs from ``w_t``; for a
    reduced word each walker then finds its symbol under the head and a
    different one to the right.  Symbols are 0/1, so this is for ``n = 2``.
    """
    tape = {(j,): int(s) for j, s in enumerate(word)}
    if word:
        tape[(len(word),)] = 1 - int(word[-1])
    return tape


def state_cycler(dims: MachineDims, axis: int = 1) -> Machine:
    """State ``q -> q + 1 (mod k)``; steps along ``e_axis`` when entering state 1."""
    k = dims.k
    e = unit(dims.d, axis)
    state = np.array([q % k + 1 for q in range(1, k + 1)])
    move = np.array([e if s == 1 else zero(dims.d) for s in state], dtype=np.int64)
    return Machine(LocalRule(dims, (), (), np.zeros((k, 0)), state, move))


def lamplighter_generators(dims: MachineDims, m: int,
                           generators: Sequence[Sequence[int]]) -> list[Machine]:
    """Machines realising ``G wr Z^d`` for ``G`` generated by permutations of ``range(m)``.

    Each generator ``s`` permutes the cells ``0, e1, ..., (m-1) e1`` by
    ``p'_i = p_{s(i)}``; the list ends with the shifts ``T_{m e_j}``.
    """
    if dims.n < 2:
        raise ValueError("needs at least two tape symbols")
    e1 = unit(dims.d, 1)
    out = []
    for s in generators:
        if sorted(s) != list(range(m)):
            raise NotBijective(f"{s} is not a permutation of range({m})")
        out.append(cell_permutation(dims, {scale(i, e1): scale(s[i], e1) for i in range(m)}))
    for j in range(1, dims.d + 1):
        out.append(shift_machine(dims, scale(m, unit(dims.d, j))))
    return out


# ---------------------------------------------------------------------------
# subgroup membership


@dataclass(frozen=True)
class SubgroupFlags:
    isSP: bool
    isLP: bool
    isShift: bool
    isOblivious: bool
    isRFA: bool
    isClassical: bool
    isReversible: bool


def classify(machine: Machine) -> SubgroupFlags:
    rule = machine.rule
    rev = is_reversible(machine)
    moves = machine.moves()
    constant = len(moves) == 1
    still = constant and not any(moves[0])
    no_writes = not rule.write
    rfa = rev and no_writes
    lp = rev and still
    shift = (constant and not rule.read and not rule.write
             and np.array_equal(rule.state, np.arange(1, machine.dims.k + 1)))
    classical = (machine.dims.d == 1 and machine.in_radius <= 0
                 and machine.out_radius <= 0 and machine.move_radius <= 1)
    return SubgroupFlags(isSP=rfa and lp, isLP=lp, isShift=shift,
                         isOblivious=rev and constant, isRFA=rfa,
                         isClassical=classical, isReversible=rev)


def classical_decompose(machine: Machine) -> tuple[Machine, Machine]:
    """Split a reversible classical machine as ``T1 o T0``.

    ``T0`` permutes (symbol, state) at the head without moving; ``T1`` moves by
    a vector determined by the state alone.  A non-reversible input raises
    ``NotReversible`` carrying two distinct configurations with equal image.
    """
    dims = machine.dims
    if not classify(machine).isClassical:
        raise NotClassical(
            f"radii (in, out, move) = ({machine.in_radius}, {machine.out_radius}, "
            f"{machine.move_radius}) in dimension {dims.d}")
    o = zero(dims.d)
    P, written, state, move = _expand(machine.rule, (o,))
    k = dims.k
    rows = sorted(range(P.shape[0]), key=lambda i: (i % k, i // k))
    entries = [(i % k + 1, int(P[i, 0]), int(written[i, 0]), int(state[i]), int(move[i, 0]))
               for i in rows]
    for x, y in itertools.combinations(entries, 2):
        q1, a1, b1, r1, d1 = x
        q2, a2, b2, r2, d2 = y
        if r1 != r2 or (d1 == d2 and b1 != b2):
            continue
        h = d1 - d2
        if h == 0:
            c1 = HeadConfiguration.make(dims, {o: a1}, o, q1)
            c2 = HeadConfiguration.make(dims, {o: a2}, o, q2)
        else:
            c1 = HeadConfiguration.make(dims, {o: a1, (h,): b2}, o, q1)
            c2 = HeadConfiguration.make(dims, {(h,): a2, o: b1}, (h,), q2)
        raise NotReversible("two configurations have the same image", witness=(c1, c2))
    direction = {}
    for q, a, b, r, dmove in entries:
        direction[r] = dmove
    t0 = Machine(LocalRule(dims, (o,), (o,), written, state, np.zeros((P.shape[0], 1))))
    t1 = Machine(LocalRule(dims, (), (), np.zeros((k, 0)), np.arange(1, k + 1),
                           np.array([[direction[q]] for q in range(1, k + 1)])))
    if compose(t1, t0) != machine:
        raise AssertionError("classical decomposition failed to rebuild the machine")
    return t1, t0


def state_dependent_shift(dims: MachineDims, moves: Sequence[Vec]) -> Machine:
    """Move by ``moves[q - 1]`` in state ``q``; tape and state untouched."""
    k = dims.k
    return Machine(LocalRule(dims, (), (), np.zeros((k, 0)), np.arange(1, k + 1),
                             np.array(moves, dtype=np.int64).reshape(k, dims.d)))


def state_symbol_permutation(dims: MachineDims, g: Mapping[tuple[int, int], tuple[int, int]]) -> Machine:
    """Permute (symbol under the head, state) by ``g`` without moving."""
    return local_permutation(dims, [zero(dims.d)],
                             lambda lhs: ((g[(lhs[0][0], lhs[1])][0],), g[(lhs[0][0], lhs[1])][1]))


# ---------------------------------------------------------------------------
# snake gadgets

DIRECTIONS: tuple[Vec, ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True)
class DirectedTileSet:
    """Wang tiles with edge colours (north, east, south, west) and a direction each."""

    tiles: tuple[tuple[int, int, int, int], ...]
    directions: tuple[Vec, ...]

    def __post_init__(self):
        if not self.tiles:
            raise ValueError("a tile set needs at least one tile")
        if len(self.tiles) != len(self.directions):
            raise ValueError("one direction per tile")
        for t in self.tiles:
            if len(t) != 4:
                raise ValueError(f"tile {t} must list four edge colours")
        for v in self.directions:
            if tuple(v) not in DIRECTIONS:
                raise ValueError(f"direction {v} is not a unit vector of Z^2")


def path_symbols() -> list[tuple[Vec, Vec]]:
    """The path alphabet: symbol ``i + 1`` is the i-th (entry, exit) pair.

    The entry is the direction of the arrow arriving at the cell and the exit
    the direction leaving it; a path never turns straight back.  Symbol 0 is
    the blank cell.
    """
    return [(w, u) for w in DIRECTIONS for u in DIRECTIONS if u != neg(w)]


class SnakeGadgets:
    """Generators over the path alphabet (n = 13) with states (direction bit, aux bit).

    State ``q`` encodes ``q - 1 = dir + 2 * aux``.  Built machines:
    ``walk``, ``step(v)``, ``g(s)``, ``h(s)``, ``g_plus(s)``, ``h_plus(s)`` and
    the pattern-controlled flips ``g_pattern(p)``, ``h_pattern(p)``.
    """

    dims = MachineDims(2, 13, 4)

    def __init__(self, tiles: DirectedTileSet):
        self.tiles = tiles
        self.symbols = path_symbols()
        self._walk = None

    # state helpers
    @staticmethod
    def state(direction: int, aux: int) -> int:
        return 1 + direction + 2 * aux

    @staticmethod
    def bits(q: int) -> tuple[int, int]:
        return (q - 1) % 2, (q - 1) // 2

    def _on_symbol(self, s: int, update: Callable[[int, int], tuple[int, int]]) -> Machine:
        o = (0, 0)

        def f(p, q):
            dbit, abit = self.bits(q)
            if p[0] == s:
                dbit, abit = update(dbit, abit)
            return (), self.state(dbit, abit), o

        return Machine.from_function(self.dims, [o], [], f)

    def g(self, s: int) -> Machine:
        """Flip the direction bit when the scanned cell holds ``s``."""
        return self._on_symbol(s, lambda dbit, abit: (1 - dbit, abit))

    def h(self, s: int) -> Machine:
        """Flip the aux bit when the scanned cell holds ``s``."""
        return self._on_symbol(s, lambda dbit, abit: (dbit, 1 - abit))

    def g_plus(self, s: int) -> Machine:
        return self._on_symbol(s, lambda dbit, abit: (dbit ^ abit, abit))

    def h_plus(self, s: int) -> Machine:
        return self._on_symbol(s, lambda dbit, abit: (dbit, abit ^ dbit))

    def step(self, v: Vec) -> Machine:
        if tuple(v) not in DIRECTIONS and any(v):
            raise ValueError(f"{v} is not in D")
        return shift_machine(self.dims, v)

    @property
    def walk(self) -> Machine:
        """Follow the drawn path forwards (dir 0) or backwards (dir 1).

        Where the path cannot be followed the direction bit flips instead,
        which keeps the machine a bijection.
        """
        if self._walk is None:
            self._walk = self._build_walk()
        return self._walk

    def _build_walk(self) -> Machine:
        dims = self.dims
        F = sorted([(0, 0)] + list(DIRECTIONS))
        col = {c: j for j, c in enumerate(F)}
        P, S = all_lhs(dims.n, len(F), dims.k)
        entry = np.array([(0, 0)] + [w for w, _ in self.symbols], dtype=np.int64)
        exit_ = np.array([(0, 0)] + [u for _, u in self.symbols], dtype=np.int64)
        here = P[:, col[(0, 0)]]
        dbit, abit = (S - 1) % 2, (S - 1) // 2
        move = np.zeros((P.shape[0], 2), dtype=np.int64)
        flip = np.ones(P.shape[0], dtype=bool)
        for u in DIRECTIONS:
            ua = np.array(u)
            nb = P[:, col[u]]
            # forward: exit of here is u and the neighbour at u is entered along u
            fwd = (dbit == 0) & (here > 0) & np.all(exit_[here] == ua, axis=1) \
                & (nb > 0) & np.all(entry[nb] == ua, axis=1)
            # backward: entry of here is -u, neighbour at u leaves along -u
            bwd = (dbit == 1) & (here > 0) & np.all(entry[here] == -ua, axis=1) \
                & (nb > 0) & np.all(exit_[nb] == -ua, axis=1)
            go = fwd | bwd
            move[go] = ua
            flip &= ~go
        dbit = np.where(flip, 1 - dbit, dbit)
        state = 1 + dbit + 2 * abit
        return Machine(LocalRule(dims, F, (), np.zeros((P.shape[0], 0)), state, move))

    def g_pattern(self, pattern: Mapping[Vec, int]) -> Machine:
        """Flip the direction bit exactly when ``pattern`` is present around the head."""
        return self._controlled(tuple(sorted((tuple(c), s) for c, s in pattern.items())), "g")

    def h_pattern(self, pattern: Mapping[Vec, int]) -> Machine:
        return self._controlled(tuple(sorted((tuple(c), s) for c, s in pattern.items())), "h")

    @lru_cache(maxsize=None)
    def _controlled(self, items: tuple, kind: str) -> Machine:
        if not items:
            raise EmptyPattern("pattern-controlled flips need at least one cell")
        (v, s) = items[-1]
        there, back = shift_machine(self.dims, v), shift_machine(self.dims, neg(v))
        if len(items) == 1:
            base = self.g(s) if kind == "g" else self.h(s)
            return compose(back, compose(base, there))
        rest = items[:-1]
        other = self._controlled(rest, "h" if kind == "g" else "g")
        plus = self.g_plus(s) if kind == "g" else self.h_plus(s)
        once = compose(back, compose(plus, compose(there, other)))
        return compose(once, once)
