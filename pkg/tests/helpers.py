"""Random machine generators and brute-force oracles shared by the tests.

The oracles only use the raw rule table and plain Python loops; they never
call the reversibility, composition or canonicalisation code they check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from rtmgroups.core import LocalRule, Machine, MachineDims, compose, identity
from rtmgroups.zoo import (
    involution_walker,
    local_permutation_from_array,
    shift_machine,
    state_cycler,
)


def random_rule_machine(rng: random.Random, dims: MachineDims, radius: int = 1) -> Machine:
    """A uniformly random table on a random sub-window of [-radius, radius]."""
    cells = [(i,) for i in range(-radius, radius + 1)]
    F = sorted(rng.sample(cells, rng.randrange(0, len(cells) + 1)))
    G = sorted(rng.sample(F, rng.randrange(0, len(F) + 1))) if F else []
    size = dims.n ** len(F) * dims.k
    out = np.array([[rng.randrange(dims.n) for _ in G] for _ in range(size)]).reshape(size, len(G))
    state = np.array([rng.randrange(1, dims.k + 1) for _ in range(size)])
    move = np.array([[rng.randrange(-radius, radius + 1)] for _ in range(size)])
    return Machine(LocalRule(dims, F, G, out, state, move))


def random_local_permutation(rng: random.Random, dims: MachineDims, F) -> Machine:
    size = dims.n ** len(F) * dims.k
    return local_permutation_from_array(dims, F, np.array(rng.sample(range(size), size)))


def random_radius1_reversible(rng: random.Random, dims: MachineDims) -> Machine:
    """``shift o P`` with ``P`` a random local permutation on two cells of [-1, 1]."""
    F = sorted(rng.sample([(-1,), (0,), (1,)], 2))
    return shift_machine(dims, (rng.choice([-1, 0, 1]),)) @ random_local_permutation(rng, dims, F)


def random_reversible(rng: random.Random, dims: MachineDims, depth: int = 3) -> Machine:
    """A product of random reversible generators (d = 1)."""
    result = identity(dims)
    for _ in range(depth):
        c = rng.randrange(4)
        if c == 0:
            g = shift_machine(dims, (rng.choice([-1, 1]),))
        elif c == 1:
            F = sorted({(0,), (rng.choice([-1, 1]),)})
            g = random_local_permutation(rng, dims, F)
        elif c == 2:
            g = involution_walker(dims, rng.randrange(dims.n))
        else:
            g = state_cycler(dims)
        result = g @ result
    return result


def random_rfa(rng: random.Random, dims: MachineDims, depth: int = 3) -> Machine:
    """A product of shifts, walkers and state cyclers (never writes)."""
    result = identity(dims)
    for _ in range(depth):
        c = rng.randrange(3)
        if c == 0:
            g = shift_machine(dims, (rng.choice([-1, 1]),))
        elif c == 1:
            g = involution_walker(dims, rng.randrange(dims.n))
        else:
            g = state_cycler(dims)
        result = g @ result
    return result


def random_radius1_rfa_by_rejection(rng: random.Random, dims: MachineDims) -> Machine:
    """Rejection-sample a radius-1 table that never writes until it is reversible."""
    from rtmgroups.reversibility import is_reversible

    while True:
        F = sorted(rng.sample([(-1,), (0,), (1,)], rng.randrange(0, 4)))
        size = dims.n ** len(F) * dims.k
        state = np.array([rng.randrange(1, dims.k + 1) for _ in range(size)])
        move = np.array([[rng.choice([-1, 0, 1])] for _ in range(size)])
        m = Machine(LocalRule(dims, F, (), np.zeros((size, 0)), state, move))
        if m.radius == 1 and is_reversible(m):
            return m


# ---------------------------------------------------------------------------
# brute-force oracles (d = 1)


def _step(rule: LocalRule, tape: list, head: int, q: int, lo: int):
    """One moving-head step on a finite tape indexed from ``lo``."""
    pattern = tuple(tape[head + c[0] - lo] for c in rule.read)
    i = rule.index(pattern, q)
    new = list(tape)
    for c, s in zip(rule.write, rule.out[i]):
        new[head + c[0] - lo] = int(s)
    return tuple(new), head + int(rule.move[i][0]), int(rule.state[i])


def _radius(rule: LocalRule) -> int:
    cells = [abs(c[0]) for c in rule.read + rule.write]
    moves = [abs(int(v)) for v in rule.move[:, 0]] if rule.move.size else [0]
    return max(cells + moves + [0])


def brute_injective(machine: Machine) -> bool:
    """No two configurations share an image.

    By translation one head sits at 0 and the other within ``2r``; the two
    inputs can only differ where they are written, inside ``[-3r, 3r]``.
    """
    rule = machine.rule
    r = max(_radius(rule), 1)
    lo, hi = -3 * r, 3 * r
    n, k = machine.dims.n, machine.dims.k
    seen = set()
    for tape in itertools.product(range(n), repeat=hi - lo + 1):
        for head in range(-2 * r, 2 * r + 1):
            for q in range(1, k + 1):
                image = _step(rule, list(tape), head, q, lo)
                if image in seen:
                    return False
                seen.add(image)
    return True


def brute_covered(machine: Machine) -> tuple[int, int]:
    """(covered, total) patterns on ``[-2r, 2r]`` with the head at 0 after one step."""
    rule = machine.rule
    r = max(_radius(rule), 1)
    lo, hi = -2 * r, 2 * r
    n, k = machine.dims.n, machine.dims.k
    covered = set()
    for tape in itertools.product(range(n), repeat=hi - lo + 1):
        for head in range(-r, r + 1):
            for q in range(1, k + 1):
                new, h2, q2 = _step(rule, list(tape), head, q, lo)
                if h2 == 0:
                    covered.add((new, q2))
    return len(covered), n ** (hi - lo + 1) * k


def brute_surjective(machine: Machine) -> bool:
    covered, total = brute_covered(machine)
    return covered == total


def brute_defect(machine: Machine) -> Fraction:
    covered, total = brute_covered(machine)
    return 1 - Fraction(covered, total)


def run_moving_head(machine: Machine, tape: dict, head: tuple, q: int):
    """One step on a dict tape (background 0); returns (tape, head, state)."""
    rule = machine.rule
    pattern = tuple(tape.get(tuple(a + b for a, b in zip(head, c)), 0) for c in rule.read)
    i = rule.index(pattern, q)
    new = dict(tape)
    for c, s in zip(rule.write, rule.out[i]):
        new[tuple(a + b for a, b in zip(head, c))] = int(s)
    new = {c: s for c, s in new.items() if s}
    return new, tuple(a + int(b) for a, b in zip(head, rule.move[i])), int(rule.state[i])


def behaves_alike(a: Machine, b: Machine, rng: random.Random, trials: int = 50, span: int = 6) -> bool:
    """Same one-step action on random finite configurations."""
    d, n, k = a.dims.d, a.dims.n, a.dims.k
    for _ in range(trials):
        tape = {c: rng.randrange(n) for c in itertools.product(range(-span, span + 1), repeat=d)}
        tape = {c: s for c, s in tape.items() if s}
        q = rng.randrange(1, k + 1)
        if run_moving_head(a, tape, (0,) * d, q) != run_moving_head(b, tape, (0,) * d, q):
            return False
    return True


def iterative_drop(rule: LocalRule) -> tuple[tuple, tuple]:
    """Canonical supports by removing, one at a time in random order, cells that are
    never changed by writes and that no output depends on."""
    rng = random.Random(len(rule.read) * 7919 + rule.size)
    dims = rule.dims
    n, k = dims.n, dims.k
    cells = sorted(set(rule.read) | set(rule.write))

    def table(U):
        out = {}
        for pattern in itertools.product(range(n), repeat=len(U)):
            env = dict(zip(U, pattern))
            for q in range(1, k + 1):
                written, q2, mv = rule.lookup(tuple(env.get(c, 0) for c in rule.read), q)
                tape = dict(env)
                tape.update(zip(rule.write, written))
                out[(pattern, q)] = (tuple(tape[c] for c in U), q2, mv)
        return out

    full = table(cells)
    U = list(cells)
    G = [c for j, c in enumerate(U) if any(v[0][j] != p[j] for (p, _), v in full.items())]
    changed = True
    while changed:
        changed = False
        order = list(U)
        rng.shuffle(order)
        for c in order:
            if c in G:
                continue
            j = U.index(c)
            # c is never written; drop it if no output depends on it
            ok = True
            by_rest = {}
            for (p, q), (w, q2, mv) in table(U).items():
                key = (p[:j] + p[j + 1:], q)
                val = (w[:j] + w[j + 1:], q2, mv)
                if by_rest.setdefault(key, val) != val:
                    ok = False
                    break
            if ok:
                U.remove(c)
                changed = True
                break
    # reads: cells of U on which something depends
    t = table(U)
    F = []
    for j, c in enumerate(U):
        by_rest = {}
        for (p, q), (w, q2, mv) in t.items():
            key = (p[:j] + p[j + 1:], q)
            val = (tuple(w[U.index(g)] for g in G), q2, mv)
            if by_rest.setdefault(key, val) != val:
                F.append(c)
                break
    return tuple(F), tuple(G)


def all_classical_rules(dims: MachineDims):
    """Every classical table: symbol and state at the head to (symbol, state, step)."""
    keys = [((a,), q) for a in range(dims.n) for q in range(1, dims.k + 1)]
    values = [((b,), r, (v,)) for b in range(dims.n) for r in range(1, dims.k + 1) for v in (-1, 0, 1)]
    for choice in itertools.product(values, repeat=len(keys)):
        yield dict(zip(keys, choice))
