"""Local rules, canonical forms, composition and the two application semantics.

A local rule ``f : Sigma^F x Q -> Sigma^G x Q x Z^d`` is stored as three
numpy arrays indexed by the mixed-radix number of its left-hand side:
pattern digits in sorted-support order (most significant first), then the
state as the least significant digit.  ``Machine`` wraps the canonical rule
and is the value everything else in the package works with.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    DimsMismatch,
    DuplicateEntry,
    MissingEntry,
    StateOutOfRange,
    SymbolOutOfRange,
    ValidationError,
)
from .lattice import Vec, add, fmt_vec, support_radius, zero

Pattern = tuple[int, ...]


@dataclass(frozen=True)
class MachineDims:
    d: int
    n: int
    k: int

    def __post_init__(self):
        if self.d < 1 or self.n < 1 or self.k < 1:
            raise ValueError(f"invalid dimensions d={self.d} n={self.n} k={self.k}")

    def __str__(self) -> str:
        return f"d={self.d} n={self.n} k={self.k}"


def _check_same(*dims: MachineDims) -> MachineDims:
    first = dims[0]
    for other in dims[1:]:
        if other != first:
            raise DimsMismatch(f"{first} vs {other}")
    return first


# ---------------------------------------------------------------------------
# mixed-radix helpers


def digits(indices: np.ndarray, n: int, width: int) -> np.ndarray:
    """Base-n digits of ``indices``, most significant first, as (len, width)."""
    indices = np.asarray(indices, dtype=np.int64)
    out = np.empty((indices.shape[0], width), dtype=np.int64)
    rest = indices.copy()
    for j in range(width - 1, -1, -1):
        out[:, j] = rest % n
        rest //= n
    return out


def radix_weights(n: int, width: int) -> np.ndarray:
    return np.array([n ** (width - 1 - j) for j in range(width)], dtype=np.int64)


def all_lhs(n: int, width: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Every (pattern, state) in table order: digit matrix and state vector."""
    total = n**width * k
    idx = np.arange(total, dtype=np.int64)
    return digits(idx // k, n, width), (idx % k) + 1


def lhs_index(pattern_digits: np.ndarray, states: np.ndarray, n: int, k: int) -> np.ndarray:
    width = pattern_digits.shape[1]
    if width:
        p = pattern_digits @ radix_weights(n, width)
    else:
        p = np.zeros(pattern_digits.shape[0], dtype=np.int64)
    return p * k + (np.asarray(states, dtype=np.int64) - 1)


# ---------------------------------------------------------------------------
# local rules


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


class LocalRule:
    """A total table over ``Sigma^F x Q`` with outputs over ``Sigma^G x Q x Z^d``.

    ``read`` and ``write`` are sorted tuples of cells.  ``out`` has one row per
    left-hand side and one column per cell of ``write``; ``state`` holds output
    states in 1..k and ``move`` has ``d`` columns.
    """

    __slots__ = ("dims", "read", "write", "out", "state", "move")

    def __init__(self, dims: MachineDims, read: Sequence[Vec], write: Sequence[Vec],
                 out: np.ndarray, state: np.ndarray, move: np.ndarray):
        self.dims = dims
        self.read = tuple(read)
        self.write = tuple(write)
        size = dims.n ** len(self.read) * dims.k
        self.out = _frozen(np.asarray(out).reshape(size, len(self.write)))
        self.state = _frozen(np.asarray(state).reshape(size))
        self.move = _frozen(np.asarray(move).reshape(size, dims.d))

    @property
    def size(self) -> int:
        return self.state.shape[0]

    def index(self, pattern: Pattern, q: int) -> int:
        n = self.dims.n
        p = 0
        for s in pattern:
            p = p * n + s
        return p * self.dims.k + (q - 1)

    def lhs(self, index: int) -> tuple[Pattern, int]:
        k, n = self.dims.k, self.dims.n
        p, q = divmod(index, k)
        pattern = []
        for _ in self.read:
            p, s = divmod(p, n)
            pattern.append(s)
        return tuple(reversed(pattern)), q + 1

    def lookup(self, pattern: Pattern, q: int) -> tuple[Pattern, int, Vec]:
        i = self.index(pattern, q)
        return (tuple(int(s) for s in self.out[i]), int(self.state[i]),
                tuple(int(c) for c in self.move[i]))

    def entries(self) -> Iterator[tuple[Pattern, int, Pattern, int, Vec]]:
        for i in range(self.size):
            p, q = self.lhs(i)
            yield (p, q, tuple(int(s) for s in self.out[i]), int(self.state[i]),
                   tuple(int(c) for c in self.move[i]))

    def key(self) -> tuple:
        return (self.dims, self.read, self.write, self.out.tobytes(),
                self.state.tobytes(), self.move.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalRule) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (f"LocalRule({self.dims}, F={[fmt_vec(c) for c in self.read]}, "
                f"G={[fmt_vec(c) for c in self.write]})")


def _sorted_support(cells: Iterable[Vec], d: int, what: str) -> tuple[Vec, ...]:
    cells = [tuple(int(a) for a in c) for c in cells]
    for c in cells:
        if len(c) != d:
            raise ValidationError(f"{what} cell {c} does not have {d} components")
    if len(set(cells)) != len(cells):
        raise ValidationError(f"{what} support has repeated cells")
    return tuple(cells)


def make_rule(dims: MachineDims, F: Iterable[Vec], G: Iterable[Vec],
              table: Mapping | Iterable) -> LocalRule:
    """Validate and build a rule from an explicit table.

    ``table`` maps ``(pattern, q)`` to ``(written, q2, move)``, either as a
    mapping or as an iterable of pairs (the latter lets duplicates surface).
    Patterns list symbols in the order the cells of ``F`` (resp. ``G``) were
    given; they are re-sorted internally.
    """
    d, n, k = dims.d, dims.n, dims.k
    F_given = _sorted_support(F, d, "read")
    G_given = _sorted_support(G, d, "write")
    F_sorted, G_sorted = tuple(sorted(F_given)), tuple(sorted(G_given))
    f_perm = [F_given.index(c) for c in F_sorted]
    g_perm = [G_given.index(c) for c in G_sorted]

    pairs = table.items() if isinstance(table, Mapping) else table
    size = n ** len(F_sorted) * k
    out = np.zeros((size, len(G_sorted)), dtype=np.int64)
    state = np.zeros(size, dtype=np.int64)
    move = np.zeros((size, d), dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    for lhs, rhs in pairs:
        pattern, q = lhs
        pattern = tuple(pattern)
        if len(pattern) != len(F_sorted):
            raise ValidationError(f"left-hand side {lhs!r} has the wrong length")
        if any(not 0 <= s < n for s in pattern):
            raise SymbolOutOfRange(f"left-hand side {lhs!r}: symbol outside 0..{n - 1}")
        if not 1 <= q <= k:
            raise StateOutOfRange(f"left-hand side {lhs!r}: state outside 1..{k}")
        written, q2, mv = rhs
        written, mv = tuple(written), tuple(mv)
        if len(written) != len(G_sorted) or len(mv) != d:
            raise ValidationError(f"entry for {lhs!r} has the wrong shape")
        if any(not 0 <= s < n for s in written):
            raise SymbolOutOfRange(f"entry for {lhs!r} writes a symbol outside 0..{n - 1}")
        if not 1 <= q2 <= k:
            raise StateOutOfRange(f"entry for {lhs!r} enters state {q2} outside 1..{k}")
        i = 0
        for j in f_perm:
            i = i * n + pattern[j]
        i = i * k + (q - 1)
        if seen[i]:
            raise DuplicateEntry(f"left-hand side {lhs!r} appears twice")
        seen[i] = True
        out[i] = [written[j] for j in g_perm]
        state[i] = q2
        move[i] = mv
    if not seen.all():
        p, q = divmod(int(np.flatnonzero(~seen)[0]), k)
        sym = {}
        for c in reversed(F_sorted):
            p, sym[c] = divmod(p, n)
        p, q = tuple(sym[c] for c in F_given), q + 1
        raise MissingEntry(f"no entry for left-hand side {(p, q)!r}")
    return LocalRule(dims, F_sorted, G_sorted, out, state, move)


def rule_from_function(dims: MachineDims, F: Iterable[Vec], G: Iterable[Vec],
                       fn: Callable[[Pattern, int], tuple[Pattern, int, Vec]]) -> LocalRule:
    """Tabulate ``fn(pattern, q) -> (written, q2, move)`` over every input.

    Patterns are passed and returned in sorted-support order.
    """
    F = sorted(_sorted_support(F, dims.d, "read"))
    G = sorted(_sorted_support(G, dims.d, "write"))
    table = {}
    for pattern in itertools.product(range(dims.n), repeat=len(F)):
        for q in range(1, dims.k + 1):
            table[(pattern, q)] = fn(pattern, q)
    return make_rule(dims, F, G, table)


# ---------------------------------------------------------------------------
# canonical form


def _expand(rule: LocalRule, U: Sequence[Vec]) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Re-tabulate ``rule`` reading and writing exactly the cells ``U``.

    Returns (input digits, written digits, states, moves) over all
    ``n^|U| k`` left-hand sides; unwritten cells copy their input.
    """
    n, k = rule.dims.n, rule.dims.k
    col = {c: j for j, c in enumerate(U)}
    P, S = all_lhs(n, len(U), k)
    src = lhs_index(P[:, [col[c] for c in rule.read]], S, n, k)
    written = P.copy()
    if rule.write:
        written[:, [col[c] for c in rule.write]] = rule.out[src]
    return P, written, rule.state[src], rule.move[src]


def canonicalize(rule: LocalRule) -> LocalRule:
    """The unique minimal presentation of the machine defined by ``rule``.

    The rule is padded to the cells ``F | G`` (cells outside both are never
    read nor written).  The canonical write support keeps the cells where
    some entry writes a symbol different from the one read; the canonical
    read support keeps the cells on which some output (those writes, the new
    state or the move) depends.  Dropping every other cell is exactly the
    fixpoint of removing, one at a time, cells that are written identically
    and read by nobody; that set does not depend on the removal order.
    """
    dims = rule.dims
    n, k = dims.n, dims.k
    U = tuple(sorted(set(rule.read) | set(rule.write)))
    P, written, state, move = _expand(rule, U)
    keep_w = [j for j in range(len(U)) if np.any(written[:, j] != P[:, j])]
    G = tuple(U[j] for j in keep_w)
    Y = np.concatenate([written[:, keep_w], state[:, None], move], axis=1)
    width = Y.shape[1]
    Y = Y.reshape((n,) * len(U) + (k, width))
    keep_r = []
    for j in range(len(U)):
        first = np.take(Y, [0], axis=j)
        if np.any(Y != first):
            keep_r.append(j)
    index = tuple(slice(None) if j in keep_r else 0 for j in range(len(U)))
    Y = Y[index].reshape(-1, width)
    F = tuple(U[j] for j in keep_r)
    return LocalRule(dims, F, G, Y[:, : len(G)], Y[:, len(G)], Y[:, len(G) + 1:])


# ---------------------------------------------------------------------------
# machines


class Machine:
    """A Turing machine, held as its canonical local rule.

    Two machines are equal exactly when their canonical rules coincide.
    ``a @ b`` is the composition ``a o b`` (``b`` acts first).
    """

    __slots__ = ("rule", "_hash")

    def __init__(self, rule: LocalRule, *, canonical: bool = False):
        self.rule = rule if canonical else canonicalize(rule)
        self._hash = None

    @classmethod
    def from_table(cls, dims: MachineDims, F, G, table) -> "Machine":
        return cls(make_rule(dims, F, G, table))

    @classmethod
    def from_function(cls, dims: MachineDims, F, G, fn) -> "Machine":
        return cls(rule_from_function(dims, F, G, fn))

    @property
    def dims(self) -> MachineDims:
        return self.rule.dims

    @property
    def in_radius(self) -> int:
        return support_radius(self.rule.read)

    @property
    def out_radius(self) -> int:
        return support_radius(self.rule.write)

    @property
    def move_radius(self) -> int:
        if self.rule.move.size == 0:
            return 0
        return int(np.abs(self.rule.move).max())

    @property
    def radius(self) -> int:
        return max(self.in_radius, self.out_radius, self.move_radius)

    def moves(self) -> list[Vec]:
        """Distinct move vectors of the canonical table, sorted."""
        uniq = np.unique(self.rule.move, axis=0)
        return [tuple(int(c) for c in row) for row in uniq]

    def is_identity(self) -> bool:
        r = self.rule
        return (not r.read and not r.write and not r.move.any()
                and np.array_equal(r.state, np.arange(1, self.dims.k + 1)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Machine) and self.rule == other.rule

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rule)
        return self._hash

    def __matmul__(self, other: "Machine") -> "Machine":
        return compose(self, other)

    def __repr__(self) -> str:
        r = self.rule
        return (f"Machine({self.dims}, F={','.join(fmt_vec(c) for c in r.read) or '-'}, "
                f"G={','.join(fmt_vec(c) for c in r.write) or '-'}, radius={self.radius})")


def radii(machine: Machine) -> tuple[int, int, int]:
    return machine.in_radius, machine.out_radius, machine.move_radius


def identity(dims: MachineDims) -> Machine:
    k = dims.k
    rule = LocalRule(dims, (), (), np.zeros((k, 0)), np.arange(1, k + 1),
                     np.zeros((k, dims.d)))
    return Machine(rule, canonical=True)


def machines_equal(a: Machine, b: Machine) -> bool:
    _check_same(a.dims, b.dims)
    return a.rule == b.rule


def compose(f: Machine, g: Machine) -> Machine:
    """The machine ``T_f o T_g``: run ``g``, then ``f`` from where ``g`` left the head."""
    dims = _check_same(f.dims, g.dims)
    n, k = dims.n, dims.k
    rf, rg = f.rule, g.rule
    g_moves = g.moves()
    cells = set(rg.read) | set(rg.write)
    for v in g_moves:
        cells.update(add(v, c) for c in rf.read)
        cells.update(add(v, c) for c in rf.write)
    U = tuple(sorted(cells))
    col = {c: j for j, c in enumerate(U)}
    P, S = all_lhs(n, len(U), k)
    tape = P.copy()

    gi = lhs_index(P[:, [col[c] for c in rg.read]], S, n, k)
    if rg.write:
        tape[:, [col[c] for c in rg.write]] = rg.out[gi]
    mid_state = rg.state[gi]
    g_move = rg.move[gi]
    state = np.empty_like(mid_state)
    move = np.empty_like(g_move)
    for v in g_moves:
        rows = np.flatnonzero(np.all(g_move == np.array(v, dtype=np.int64), axis=1))
        read_cols = [col[add(v, c)] for c in rf.read]
        fi = lhs_index(tape[np.ix_(rows, read_cols)], mid_state[rows], n, k)
        if rf.write:
            write_cols = [col[add(v, c)] for c in rf.write]
            tape[np.ix_(rows, write_cols)] = rf.out[fi]
        state[rows] = rf.state[fi]
        move[rows] = g_move[rows] + rf.move[fi]
    return Machine(LocalRule(dims, U, U, tape, state, move))


def power(machine: Machine, e: int) -> Machine:
    """``machine`` composed with itself ``e`` times; negative ``e`` inverts first."""
    if e < 0:
        from .reversibility import invert

        return power(invert(machine), -e)
    result = identity(machine.dims)
    base = machine
    while e:
        if e & 1:
            result = compose(base, result)
        e >>= 1
        if e:
            base = compose(base, base)
    return result


# ---------------------------------------------------------------------------
# configurations


def _normal_tape(dims: MachineDims, tape: Mapping[Vec, int] | Iterable) -> tuple[tuple[Vec, int], ...]:
    items = tape.items() if isinstance(tape, Mapping) else tape
    clean = {}
    for cell, s in items:
        cell = tuple(int(a) for a in cell)
        if len(cell) != dims.d:
            raise DimsMismatch(f"cell {cell} is not {dims.d}-dimensional")
        if not 0 <= s < dims.n:
            raise SymbolOutOfRange(f"symbol {s} at {cell}")
        if s:
            clean[cell] = int(s)
        else:
            clean.pop(cell, None)
    return tuple(sorted(clean.items()))


@dataclass(frozen=True)
class HeadConfiguration:
    """Finite-support tape over background 0 with at most one head.

    ``head`` is ``(position, state)`` or ``None`` for a headless configuration.
    """

    dims: MachineDims
    tape: tuple[tuple[Vec, int], ...]
    head: Optional[tuple[Vec, int]] = None

    @classmethod
    def make(cls, dims: MachineDims, tape: Mapping[Vec, int] | Iterable = (),
             head: Optional[Vec] = None, state: int = 1) -> "HeadConfiguration":
        h = None
        if head is not None:
            if not 1 <= state <= dims.k:
                raise StateOutOfRange(f"state {state}")
            h = (tuple(int(a) for a in head), int(state))
        return cls(dims, _normal_tape(dims, tape), h)

    def cells(self) -> dict[Vec, int]:
        return dict(self.tape)

    def symbol(self, cell: Vec) -> int:
        return self.cells().get(cell, 0)

    def shifted(self, v: Vec) -> "HeadConfiguration":
        """The translate with every cell (and the head) moved by ``v``."""
        tape = tuple((add(c, v), s) for c, s in self.tape)
        head = None if self.head is None else (add(self.head[0], v), self.head[1])
        return HeadConfiguration(self.dims, tuple(sorted(tape)), head)


@dataclass(frozen=True)
class TapeState:
    """A moving-tape point: tape contents, the head's place on them, a state.

    The represented configuration ``x`` has ``x_u = tape[u + offset]``, so the
    head always sits at the origin of ``x`` and ``offset`` records where that
    origin lies in the stored coordinates.  Shifting the tape by ``v`` only
    adds ``v`` to ``offset``.
    """

    dims: MachineDims
    tape: tuple[tuple[Vec, int], ...]
    offset: Vec
    state: int

    @classmethod
    def make(cls, dims: MachineDims, tape: Mapping[Vec, int] | Iterable = (),
             state: int = 1, offset: Optional[Vec] = None) -> "TapeState":
        if not 1 <= state <= dims.k:
            raise StateOutOfRange(f"state {state}")
        off = zero(dims.d) if offset is None else tuple(int(a) for a in offset)
        return cls(dims, _normal_tape(dims, tape), off, int(state))

    def view(self) -> dict[Vec, int]:
        """Nonzero cells of the represented configuration (head at origin)."""
        return {tuple(a - b for a, b in zip(c, self.offset)): s for c, s in self.tape}


def _step(rule: LocalRule, cells: dict[Vec, int], at: Vec, q: int) -> tuple[int, Vec]:
    """Apply ``rule`` in place with the head at ``at``; return (state, move)."""
    pattern = tuple(cells.get(add(at, c), 0) for c in rule.read)
    i = rule.index(pattern, q)
    for c, s in zip(rule.write, rule.out[i]):
        cell = add(at, c)
        if s:
            cells[cell] = int(s)
        else:
            cells.pop(cell, None)
    return int(rule.state[i]), tuple(int(a) for a in rule.move[i])


def apply_moving_head(machine: Machine, config: HeadConfiguration) -> HeadConfiguration:
    _check_same(machine.dims, config.dims)
    if config.head is None:
        return config
    pos, q = config.head
    cells = dict(config.tape)
    q2, mv = _step(machine.rule, cells, pos, q)
    return HeadConfiguration(config.dims, tuple(sorted(cells.items())), (add(pos, mv), q2))


def apply_moving_tape(machine: Machine, t: TapeState) -> TapeState:
    _check_same(machine.dims, t.dims)
    cells = dict(t.tape)
    q2, mv = _step(machine.rule, cells, t.offset, t.state)
    return TapeState(t.dims, tuple(sorted(cells.items())), add(t.offset, mv), q2)


def shift_indicator(machine: Machine, t: TapeState) -> Vec:
    """The move vector emitted on input ``t`` (the tape shift it performs)."""
    _check_same(machine.dims, t.dims)
    rule = machine.rule
    cells = dict(t.tape)
    pattern = tuple(cells.get(add(t.offset, c), 0) for c in rule.read)
    return tuple(int(a) for a in rule.move[rule.index(pattern, t.state)])


__all__ = [
    "MachineDims", "LocalRule", "Machine", "HeadConfiguration", "TapeState",
    "make_rule", "rule_from_function", "canonicalize", "machines_equal", "compose",
    "power", "identity", "radii", "apply_moving_head", "apply_moving_tape",
    "shift_indicator",
]
