"""Compile oblivious machines into words over a finite generating set.

The generators are unit shifts, swaps of the scanned cell with a neighbour
along one axis, and arbitrary permutations of ``Sigma^E0 x Q`` for the fixed
four-cell window ``E0 = {0, e1, 2e1, 3e1}``.

Points of ``Q x Sigma^m`` use the same numbering as rule tables: tape digits
most significant first, the state as the last digit.  A ``Gate`` applies a
permutation of ``Q x Sigma^w`` to the state and ``w`` chosen tape
coordinates (wires), leaving the other coordinates alone.  Words of gates
and of tokens are applied left to right: the first entry acts first.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .core import (
    LocalRule,
    Machine,
    MachineDims,
    _expand,
    all_lhs,
    compose,
    digits,
    identity,
    lhs_index,
)
from .errors import NotAControlled3Cycle, NotOblivious, ParityObstruction
from .lattice import Vec, add, enumerate_lattice, neg, sub, unit, window_e0, zero
from .perms import Permutation, product
from .reversibility import is_reversible
from .zoo import cell_swap, local_permutation_from_array, shift_machine

# ---------------------------------------------------------------------------
# points and gates


def point_coords(index: int, n: int, k: int, m: int) -> tuple[int, tuple[int, ...]]:
    """(state, tape digits) of a point of ``Q x Sigma^m``."""
    p, q = divmod(index, k)
    return q + 1, tuple(int(s) for s in digits(np.array([p]), n, m)[0])


def point_index(q: int, tape: Sequence[int], n: int, k: int) -> int:
    p = 0
    for s in tape:
        p = p * n + s
    return p * k + (q - 1)


def hamming_distance(a: int, b: int, n: int, k: int, m: int) -> int:
    qa, ta = point_coords(a, n, k, m)
    qb, tb = point_coords(b, n, k, m)
    return int(qa != qb) + sum(x != y for x, y in zip(ta, tb))


@dataclass(frozen=True)
class Gate:
    """``perm`` (on ``Q x Sigma^len(wires)``) applied to the state and the given wires."""

    perm: Permutation
    wires: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.wires)


def gate_action(gate: Gate, n: int, k: int, m: int) -> Permutation:
    """The permutation of ``Q x Sigma^m`` performed by ``gate``."""
    P, S = all_lhs(n, m, k)
    w = list(gate.wires)
    img = gate.perm.images[lhs_index(P[:, w], S, n, k)]
    P[:, w] = digits(img // k, n, len(w))
    return Permutation(lhs_index(P, img % k + 1, n, k), check=False)


def gate_action_by_rewiring(gate: Gate, n: int, k: int, m: int) -> Permutation:
    """Same as ``gate_action`` but built as ``r^-1 o (perm x id) o r``.

    ``r`` reorders the tape coordinates so the wires come first; ``perm x id``
    acts on the leading coordinates only.
    """
    order = list(gate.wires) + [j for j in range(m) if j not in gate.wires]
    P, S = all_lhs(n, m, k)
    r = Permutation(lhs_index(P[:, order], S, n, k), check=False)
    w, rest = len(gate.wires), m - len(gate.wires)
    lead = np.arange(k * n ** m) // k // n ** rest
    tail = np.arange(k * n ** m) // k % n ** rest
    q = np.arange(k * n ** m) % k
    img = gate.perm.images[lead * k + q]
    fhat = Permutation((img // k * n ** rest + tail) * k + img % k, check=False)
    return r.inverse() * fhat * r


def word_action(gates: Iterable[Gate], n: int, k: int, m: int) -> Permutation:
    return product((gate_action(g, n, k, m) for g in gates), k * n ** m)


def transposition(size: int, a: int, b: int) -> Permutation:
    img = np.arange(size)
    img[a], img[b] = b, a
    return Permutation(img, check=False)


# ---------------------------------------------------------------------------
# transpositions along the Hamming graph


def _parents(n: int, k: int, m: int) -> list[int]:
    """Canonical spanning tree: every point hangs off its least-index neighbour."""
    size = k * n ** m
    parent = [-1] * size
    for x in range(1, size):
        q, t = point_coords(x, n, k, m)
        best = point_index(1, t, n, k) if q != 1 else None
        for j, s in enumerate(t):
            if s:
                cand = point_index(q, t[:j] + (0,) + t[j + 1:], n, k)
                best = cand if best is None else min(best, cand)
        parent[x] = best
    return parent


def _tree_path(parent: list[int], a: int, b: int) -> list[int]:
    def ancestors(x):
        out = [x]
        while parent[out[-1]] != -1:
            out.append(parent[out[-1]])
        return out

    up_a, up_b = ancestors(a), ancestors(b)
    on_b = set(up_b)
    common = next(x for x in up_a if x in on_b)
    return up_a[: up_a.index(common) + 1] + up_b[: up_b.index(common)][::-1]


def hamming_transpositions(target: Permutation, n: int, k: int, m: int) -> list[tuple[int, int]]:
    """Transpositions of Hamming-adjacent points whose left-to-right product is ``target``.

    Points are fixed from the largest index down; the largest unfixed point
    is a leaf of the spanning tree on the remaining points, so its preimage
    can be walked to it along tree edges without disturbing fixed points.
    """
    size = k * n ** m
    if len(target) != size:
        raise ValueError(f"target acts on {len(target)} points, expected {size}")
    parent = _parents(n, k, m)
    cur = target.images.tolist()
    inv = target.inverse().images.tolist()
    word = []
    for v in range(size - 1, 0, -1):
        u = inv[v]
        if u == v:
            continue
        path = _tree_path(parent, u, v)
        for a, b in zip(path, path[1:]):
            # cur <- cur o (a b)
            ca, cb = cur[a], cur[b]
            cur[a], cur[b] = cb, ca
            inv[ca], inv[cb] = b, a
            word.append((a, b))
    return word


# ---------------------------------------------------------------------------
# controlled 3-cycles from controlled swaps


def _differing(a: int, b: int, n: int, k: int, m: int) -> list:
    """Coordinates where two points differ: ``'Q'`` for the state, else a wire."""
    qa, ta = point_coords(a, n, k, m)
    qb, tb = point_coords(b, n, k, m)
    out = ["Q"] if qa != qb else []
    return out + [j for j in range(m) if ta[j] != tb[j]]


def _restricted_swap(a: int, b: int, wires: Sequence[int], n: int, k: int, m: int) -> Gate:
    """The transposition of the restrictions of ``a`` and ``b`` to ``wires``."""
    qa, ta = point_coords(a, n, k, m)
    qb, tb = point_coords(b, n, k, m)
    x = point_index(qa, [ta[j] for j in wires], n, k)
    y = point_index(qb, [tb[j] for j in wires], n, k)
    return Gate(transposition(k * n ** len(wires), x, y), tuple(wires))


def three_cycle_from_swaps(target: Permutation, n: int, k: int, m: int) -> list[Gate]:
    """Four controlled swaps of width ``m - 2`` multiplying to a controlled 3-cycle.

    The pivot is the point adjacent to both others.  One swap exchanges the
    pivot with the first neighbour and ignores two wires, the other exchanges
    it with the second neighbour and ignores two different wires; neither
    ignores a coordinate in which the three points differ.  Their supports
    then meet only in the pivot, so alternating them twice gives the 3-cycle.
    """
    if m < 6:
        raise ValueError("three-cycle decomposition needs m >= 6")
    cyc = target.cycles()
    if len(cyc) != 1 or len(cyc[0]) != 3:
        raise NotAControlled3Cycle("target is not a 3-cycle")
    pts = cyc[0]
    pivot = [p for p in pts if all(hamming_distance(p, o, n, k, m) == 1 for o in pts if o != p)]
    if len(pivot) != 1:
        raise NotAControlled3Cycle("distances between the three points are not 1, 1 and 2")
    ps = pivot[0]
    qs, pt = [p for p in pts if p != ps]
    (a_coord,) = _differing(ps, qs, n, k, m)
    (b_coord,) = _differing(ps, pt, n, k, m)
    rest = [j for j in range(m) if j not in (a_coord, b_coord)]
    skip1, skip2 = rest[:2], rest[2:4]
    p1 = _restricted_swap(ps, pt, [j for j in range(m) if j not in skip1], n, k, m)
    p2 = _restricted_swap(ps, qs, [j for j in range(m) if j not in skip2], n, k, m)
    for word in ([p1, p2, p1, p2], [p2, p1, p2, p1]):
        if word_action(word, n, k, m) == target:
            return word
    raise AssertionError("swap commutator did not produce the 3-cycle")


def _corner_neighbours(edge: tuple[int, int], n: int, k: int, m: int) -> Iterator:
    a, b = edge
    (coord,) = _differing(a, b, n, k, m)
    for p in (a, b):
        q, t = point_coords(p, n, k, m)
        if coord != "Q":
            for q2 in range(1, k + 1):
                if q2 != q:
                    yield tuple(sorted((p, point_index(q2, t, n, k))))
        for j in range(m):
            if j == coord:
                continue
            for s in range(n):
                if s != t[j]:
                    yield tuple(sorted((p, point_index(q, t[:j] + (s,) + t[j + 1:], n, k))))


def _corner_chain(e: tuple[int, int], f: tuple[int, int], n: int, k: int, m: int) -> list[tuple[int, int]]:
    """Edges ``e = c_0, ..., c_r = f`` with consecutive edges forming corners."""
    e, f = tuple(sorted(e)), tuple(sorted(f))
    prev = {e: None}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        if x == f:
            break
        for y in _corner_neighbours(x, n, k, m):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if f not in prev:
        raise AssertionError("Hamming graph edges are not corner-connected")
    chain = [f]
    while chain[-1] != e:
        chain.append(prev[chain[-1]])
    return chain[::-1]


def controlled_three_cycles(target: Permutation, n: int, k: int, m: int) -> list[Permutation]:
    """Controlled 3-cycles whose left-to-right product is the even ``target``."""
    size = k * n ** m
    taus = hamming_transpositions(target, n, k, m)
    if len(taus) % 2:
        raise ParityObstruction("odd permutation is not a product of 3-cycles")
    cycles = []
    for t1, t2 in zip(taus[0::2], taus[1::2]):
        if tuple(sorted(t1)) == tuple(sorted(t2)):
            continue
        chain = _corner_chain(t1, t2, n, k, m)
        for x, y in zip(chain, chain[1:]):
            cycles.append(transposition(size, *y) * transposition(size, *x))
    return cycles


# ---------------------------------------------------------------------------
# reduction to width four


@dataclass(frozen=True)
class Reduction:
    """Width-4 gates on ``Q x Sigma^m`` (``m`` grows by one when an ancilla was borrowed)."""

    gates: tuple[Gate, ...]
    m: int
    ancilla: bool = False


def _is_odd(p: Permutation) -> bool:
    return p.sign() == -1


def _extend(perm: Permutation, n: int, k: int) -> Permutation:
    """``perm x id`` with one extra (last) untouched coordinate."""
    size = len(perm)
    idx = np.arange(size * n)
    p, s = idx // k // n, idx // k % n
    q = idx % k
    img = perm.images[p * k + q]
    return Permutation((img // k * n + s) * k + img % k, check=False)


def reduce_to_width4(target: Permutation, n: int, k: int, m: int,
                     allow_ancilla: bool = True) -> Reduction:
    """Write ``target`` as a product of width-4 gates.

    Even targets become controlled 3-cycles, each of which becomes four
    controlled swaps of width ``m - 2``; swaps wider than four are widened by
    one untouched wire and reduced again on ``m - 1`` coordinates.  An odd
    target is first corrected by a width-4 swap when ``n`` is odd; when ``n``
    is even it needs a borrowed coordinate, which is appended as wire ``m``.
    """
    if m < 6:
        raise ValueError("reduction needs at least six tape coordinates")
    if len(target) != k * n ** m:
        raise ValueError("target has the wrong size")
    if _is_odd(target) and n % 2 == 0:
        if not allow_ancilla:
            raise ParityObstruction("odd permutation with an even alphabet needs a borrowed coordinate")
        inner = reduce_to_width4(_extend(target, n, k), n, k, m + 1, allow_ancilla=False)
        return Reduction(inner.gates, m + 1, ancilla=True)
    gates = _reduce(target, n, k, m, {})
    if word_action(gates, n, k, m) != target:
        raise AssertionError("width-4 reduction does not multiply to the target")
    return Reduction(tuple(gates), m)


def _reduce(target: Permutation, n: int, k: int, m: int, memo: dict) -> list[Gate]:
    key = (m, target.images.tobytes())
    if key in memo:
        return memo[key]
    gates: list[Gate] = []
    rest = target
    if _is_odd(target):
        # only reached for odd n: a width-4 swap fixes the parity
        fix = Gate(transposition(k * n ** 4, 0, k), (0, 1, 2, 3))
        gates.append(fix)
        rest = target * gate_action(fix, n, k, m).inverse()
    for cyc in controlled_three_cycles(rest, n, k, m):
        for sw in three_cycle_from_swaps(cyc, n, k, m):
            if sw.width <= 4:
                gates.append(sw)
                continue
            extra = min(j for j in range(m) if j not in sw.wires)
            wires = tuple(sorted(sw.wires + (extra,)))
            local = Gate(sw.perm, tuple(wires.index(j) for j in sw.wires))
            wide = gate_action(local, n, k, len(wires))
            for g in _reduce(wide, n, k, len(wires), memo):
                gates.append(Gate(g.perm, tuple(wires[j] for j in g.wires)))
    memo[key] = gates
    return gates


# ---------------------------------------------------------------------------
# generator tokens


@dataclass(frozen=True)
class Shift:
    axis: int
    direction: int


@dataclass(frozen=True)
class CellSwap:
    axis: int


@dataclass(frozen=True)
class WindowPerm:
    """A permutation of ``Sigma^E0 x Q`` given on table indices."""

    perm: tuple[int, ...]


@dataclass(frozen=True)
class Rewire:
    """A cell permutation spelled out as shifts and cell swaps."""

    tokens: tuple


Token = Union[Shift, CellSwap, WindowPerm, Rewire]


@dataclass(frozen=True)
class GeneratorWord:
    dims: MachineDims
    tokens: tuple

    def __len__(self) -> int:
        return len(self.tokens)


def flatten(tokens: Iterable[Token]) -> list[Token]:
    out = []
    for t in tokens:
        if isinstance(t, Rewire):
            out.extend(flatten(t.tokens))
        else:
            out.append(t)
    return out


def in_generating_set(token: Token, dims: MachineDims) -> bool:
    """Membership in A1 (unit shifts), A2 (window permutations) or A3 (cell swaps)."""
    if isinstance(token, Shift):
        return 1 <= token.axis <= dims.d and token.direction in (1, -1)
    if isinstance(token, CellSwap):
        return 1 <= token.axis <= dims.d
    if isinstance(token, WindowPerm):
        size = dims.n ** 4 * dims.k
        return len(token.perm) == size and sorted(token.perm) == list(range(size))
    return False


def token_machine(token: Token, dims: MachineDims) -> Machine:
    if isinstance(token, Shift):
        return shift_machine(dims, unit(dims.d, token.axis, token.direction))
    if isinstance(token, CellSwap):
        return cell_swap(dims, token.axis)
    if isinstance(token, WindowPerm):
        return local_permutation_from_array(dims, window_e0(dims.d), np.array(token.perm))
    if isinstance(token, Rewire):
        return eval_word_by_composition(GeneratorWord(dims, token.tokens))
    raise TypeError(f"unknown token {token!r}")


def _support(token: Token, d: int) -> list[Vec]:
    if isinstance(token, CellSwap):
        return [zero(d), unit(d, token.axis)]
    if isinstance(token, WindowPerm):
        return list(window_e0(d))
    return []


def eval_word(word: GeneratorWord) -> Machine:
    """The machine of ``word`` (first token acts first).

    Every token is oblivious, so the head path does not depend on the tape.
    The word is run once on all contents of the cells it ever touches, all
    at once with numpy, and the result tabulated.
    """
    dims = word.dims
    d, n, k = dims.d, dims.n, dims.k
    tokens = flatten(word.tokens)
    pos = zero(d)
    cells = set()
    for t in tokens:
        cells.update(add(pos, c) for c in _support(t, d))
        if isinstance(t, Shift):
            pos = add(pos, unit(d, t.axis, t.direction))
    R = sorted(cells)
    col = {c: j for j, c in enumerate(R)}
    P, S = all_lhs(n, len(R), k)
    e0 = window_e0(d)
    pos = zero(d)
    for t in tokens:
        if isinstance(t, Shift):
            pos = add(pos, unit(d, t.axis, t.direction))
        elif isinstance(t, CellSwap):
            a, b = col[pos], col[add(pos, unit(d, t.axis))]
            P[:, [a, b]] = P[:, [b, a]]
        elif isinstance(t, WindowPerm):
            cols = [col[add(pos, c)] for c in e0]
            img = np.asarray(t.perm, dtype=np.int64)[lhs_index(P[:, cols], S, n, k)]
            P[:, cols] = digits(img // k, n, 4)
            S = img % k + 1
        else:
            raise TypeError(f"unknown token {t!r}")
    move = np.tile(np.array(pos, dtype=np.int64), (P.shape[0], 1))
    return Machine(LocalRule(dims, R, R, P, S, move))


def eval_word_by_composition(word: GeneratorWord) -> Machine:
    """Reference evaluator: compose the token machines one by one."""
    result = identity(word.dims)
    for t in word.tokens:
        result = compose(token_machine(t, word.dims), result)
    return result


# ---------------------------------------------------------------------------
# cell permutations as shifts and swaps


def _walk(frm: Vec, to: Vec) -> list[Token]:
    out = []
    for axis in range(1, len(frm) + 1):
        delta = to[axis - 1] - frm[axis - 1]
        out.extend([Shift(axis, 1 if delta > 0 else -1)] * abs(delta))
    return out


def _adjacent_swap(base: Vec, axis: int) -> list[Token]:
    """Exchange the cells ``base`` and ``base + e_axis`` (head returns home)."""
    o = zero(len(base))
    return _walk(o, base) + [CellSwap(axis)] + _walk(base, o)


def _lattice_path(a: Vec, b: Vec) -> list[Vec]:
    path = [a]
    cur = list(a)
    for i in range(len(a)):
        while cur[i] != b[i]:
            cur[i] += 1 if b[i] > cur[i] else -1
            path.append(tuple(cur))
    return path


def _swap_cells(a: Vec, b: Vec) -> list[Token]:
    """Exchange the contents of cells ``a`` and ``b`` with adjacent swaps."""
    path = _lattice_path(a, b)
    steps = []
    for x, y in zip(path, path[1:]):
        (axis,) = [i + 1 for i in range(len(x)) if x[i] != y[i]]
        steps.append(_adjacent_swap(min(x, y), axis))
    out = []
    for s in steps + steps[-2::-1]:
        out.extend(s)
    return out


def cell_permutation_word(alpha: dict[Vec, Vec]) -> list[Token]:
    """Tokens realising ``C_alpha``: afterwards cell ``u`` holds what ``alpha(u)`` held."""
    holds = {u: u for u in alpha}
    where = {u: u for u in alpha}
    out: list[Token] = []
    for u in sorted(alpha):
        want = alpha[u]
        if holds[u] == want:
            continue
        x = where[want]
        out.extend(_swap_cells(x, u))
        holds[x], holds[u] = holds[u], holds[x]
        where[holds[x]], where[holds[u]] = x, u
    return out


def simplify(tokens: Iterable[Token], size: int) -> list[Token]:
    """Peephole pass: cancel inverse neighbours and merge window permutations."""
    out: list[Token] = []
    for t in tokens:
        if out:
            last = out[-1]
            if isinstance(t, Shift) and isinstance(last, Shift) and last.axis == t.axis \
                    and last.direction == -t.direction:
                out.pop()
                continue
            if isinstance(t, CellSwap) and last == t:
                out.pop()
                continue
            if isinstance(t, WindowPerm) and isinstance(last, WindowPerm):
                merged = np.asarray(t.perm)[np.asarray(last.perm)]
                out.pop()
                if not np.array_equal(merged, np.arange(size)):
                    out.append(WindowPerm(tuple(int(x) for x in merged)))
                continue
        if isinstance(t, WindowPerm) and list(t.perm) == list(range(size)):
            continue
        out.append(t)
    return out


# ---------------------------------------------------------------------------
# the compiler


def _choose_cells(support: Sequence[Vec], d: int, ancilla: bool) -> tuple[list[Vec], Optional[Vec]]:
    """Support cells padded to at least five, plus the ancilla cell if wanted."""
    cells = list(support)
    taken = set(cells)
    lattice = enumerate_lattice(d)
    spare = None
    if ancilla:
        spare = next(c for c in lattice if c not in taken)
        taken.add(spare)
    target = 5 if ancilla else 6
    for c in lattice:
        if len(cells) >= target:
            break
        if c not in taken:
            cells.append(c)
            taken.add(c)
    if spare is not None:
        cells.append(spare)
    return sorted(cells), spare


def _conjugator(cells: Sequence[Vec], e0: Sequence[Vec]) -> dict[Vec, Vec]:
    """``alpha`` with ``alpha(E0[i]) = cells[i]``, completed to a permutation."""
    alpha = dict(zip(e0, cells))
    domain_rest = sorted(set(cells) - set(e0))
    range_rest = sorted(set(e0) - set(cells))
    alpha.update(zip(domain_rest, range_rest))
    return {u: v for u, v in alpha.items() if u != v}


def _invert_map(alpha: dict[Vec, Vec]) -> dict[Vec, Vec]:
    return {v: u for u, v in alpha.items()}


def as_cell_permutation(machine: Machine) -> Optional[dict[Vec, Vec]]:
    """``alpha`` when ``machine`` is the non-moving cell permutation ``C_alpha``, else None."""
    rule = machine.rule
    k = machine.dims.k
    if machine.moves() != [zero(machine.dims.d)] or rule.read != rule.write:
        return None
    P, S = all_lhs(machine.dims.n, len(rule.read), k)
    if not np.array_equal(rule.state, S):
        return None
    alpha = {}
    for j, c in enumerate(rule.write):
        src = [i for i in range(len(rule.read)) if np.array_equal(rule.out[:, j], P[:, i])]
        if not src:
            return None
        alpha[c] = rule.read[src[0]]
    if len(set(alpha.values())) != len(alpha):
        return None
    return alpha


def synthesize_ob(machine: Machine, ancilla: bool = True) -> GeneratorWord:
    """A word over shifts, cell swaps and window permutations equal to ``machine``.

    The machine is split as a shift after a local permutation.  A local
    permutation that only rearranges cells is spelled with cell swaps
    directly; any other is reduced to width-4 gates on a padded set of cells, each
    gate is moved onto ``E0`` by a cell permutation, and the shift comes last.
    """
    dims = machine.dims
    d, n, k = dims.d, dims.n, dims.k
    moves = machine.moves()
    if len(moves) != 1 or not is_reversible(machine):
        raise NotOblivious("machine's movement depends on the tape or it is not reversible")
    v = moves[0]
    local = compose(shift_machine(dims, neg(v)), machine)
    support = sorted(set(local.rule.read) | set(local.rule.write))
    tokens: list[Token] = []
    alpha = as_cell_permutation(local)
    if alpha is not None:
        tokens.extend(cell_permutation_word(alpha))
    elif support or not local.is_identity():
        cells, _ = _choose_cells(support, d, ancilla)
        _, written, state, _ = _expand(local.rule, cells)
        target = Permutation(lhs_index(written, state, n, k))
        m = len(cells)
        reduction = reduce_to_width4(target, n, k, m, allow_ancilla=False)
        e0 = window_e0(d)
        for g in reduction.gates:
            alpha = _conjugator([cells[j] for j in g.wires], e0)
            there = cell_permutation_word(alpha)
            back = cell_permutation_word(_invert_map(alpha))
            tokens.extend(there)
            tokens.append(WindowPerm(tuple(int(x) for x in g.perm.images)))
            tokens.extend(back)
    tokens.extend(_walk(zero(d), v))
    tokens = simplify(tokens, n ** 4 * k)
    word = GeneratorWord(dims, tuple(tokens))
    if eval_word(word) != machine:
        raise AssertionError("synthesised word does not evaluate to the machine")
    return word


__all__ = [
    "Gate", "gate_action", "gate_action_by_rewiring", "word_action", "hamming_transpositions",
    "three_cycle_from_swaps", "controlled_three_cycles", "reduce_to_width4", "Reduction",
    "Shift", "CellSwap", "WindowPerm", "Rewire", "GeneratorWord", "Token", "eval_word",
    "eval_word_by_composition", "in_generating_set", "synthesize_ob", "cell_permutation_word",
    "simplify", "token_machine", "point_index", "point_coords", "hamming_distance",
]
