"""Orders of machines and the torsion decision for one-dimensional automata.

For a reversible automaton on the line that never writes, either some power
is the identity or the head escapes to infinity along a periodic tape.  The
decision procedure searches for both at once with growing budgets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .core import HeadConfiguration, Machine, apply_moving_head, compose
from .errors import NotOneDimensional, NotRFA
from .lattice import add
from .quotients import phi
from .reversibility import is_reversible


@dataclass(frozen=True)
class EscapeCertificate:
    """Run on the periodic tape ``word^Z`` from head phase ``start_phase``.

    After ``cycle_length`` steps the pair (phase, state) is back where it
    started and the head has moved by ``displacement != 0``.
    """

    word: tuple[int, ...]
    start_state: int
    start_phase: int
    cycle_length: int
    displacement: int


@dataclass(frozen=True)
class Finite:
    order: int


@dataclass(frozen=True)
class Infinite:
    certificate: EscapeCertificate


@dataclass(frozen=True)
class Unknown:
    budget: int


TorsionVerdict = Union[Finite, Infinite, Unknown]


def _require_rfa1(machine: Machine) -> None:
    if machine.dims.d != 1:
        raise NotOneDimensional(f"machine lives in dimension {machine.dims.d}")
    if machine.rule.write or not is_reversible(machine):
        raise NotRFA("expected a reversible machine that never writes")


# ---------------------------------------------------------------------------
# power identity by lazy simulation


def power_is_identity_by_simulation(machine: Machine, e: int) -> bool:
    """Decide ``machine^e = id`` by running ``e`` steps from the origin.

    Cells are given a value only when first read (or written), branching over
    every symbol, so each branch stands for the cylinder of tapes agreeing
    with it.  The power is the identity iff every branch ends with head and
    state back in place and every touched cell holding its original symbol.
    """
    rule = machine.rule
    dims = machine.dims
    origin = (0,) * dims.d
    touched = sorted(set(rule.read) | set(rule.write))
    for q0 in range(1, dims.k + 1):
        # a branch: (step, head, state, original symbols, current symbols)
        stack = [(0, origin, q0, {}, {})]
        while stack:
            step, head, q, orig, cur = stack.pop()
            if step == e:
                if head != origin or q != q0 or cur != orig:
                    return False
                continue
            unknown = next((add(head, c) for c in touched if add(head, c) not in cur), None)
            if unknown is not None:
                for s in range(dims.n):
                    stack.append((step, head, q, {**orig, unknown: s}, {**cur, unknown: s}))
                continue
            i = rule.index(tuple(cur[add(head, c)] for c in rule.read), q)
            cur = dict(cur)
            for c, s in zip(rule.write, rule.out[i]):
                cur[add(head, c)] = int(s)
            move = tuple(int(a) for a in rule.move[i])
            stack.append((step + 1, add(head, move), int(rule.state[i]), orig, cur))
    return True


def order_upto(machine: Machine, bound: int) -> TorsionVerdict:
    """Least ``o <= bound`` with ``machine^o = id``, else ``Unknown(bound)``."""
    p = machine
    for o in range(1, bound + 1):
        if p.is_identity():
            if not power_is_identity_by_simulation(machine, o):
                raise AssertionError(f"power {o}: composition and simulation disagree")
            return Finite(o)
        if o < bound:
            p = compose(machine, p)
    return Unknown(bound)


# ---------------------------------------------------------------------------
# escape witnesses


def _escapes_for_length(machine: Machine, length: int, max_steps: Optional[int]) -> Iterator[EscapeCertificate]:
    rule = machine.rule
    n, k = machine.dims.n, machine.dims.k
    for word in itertools.product(range(n), repeat=length):
        for q in range(1, k + 1):
            for phase in range(length):
                cert = _cycle_from(rule, word, q, phase, max_steps)
                if cert is not None:
                    yield cert


def _cycle_from(rule, word, q, phase, max_steps) -> Optional[EscapeCertificate]:
    L = len(word)
    limit = len(word) * rule.dims.k if max_steps is None else max_steps
    pos, state = phase, q
    for step in range(1, limit + 1):
        pattern = tuple(word[(pos + c[0]) % L] for c in rule.read)
        i = rule.index(pattern, state)
        pos += int(rule.move[i][0])
        state = int(rule.state[i])
        if pos % L == phase and state == q:
            if pos != phase:
                return EscapeCertificate(tuple(word), q, phase, step, pos - phase)
            return None
    return None


def find_escape_witness(machine: Machine, max_period: int,
                        max_steps: Optional[int] = None) -> Optional[EscapeCertificate]:
    """First escape certificate with period at most ``max_period``.

    Words are tried by length, then lexicographically, then by start state
    and phase.  ``max_steps`` caps the cycle search (default ``k * |w|``,
    which always suffices because the run on ``Z / |w|`` is a permutation).
    """
    _require_rfa1(machine)
    for length in range(1, max_period + 1):
        for cert in _escapes_for_length(machine, length, max_steps):
            return cert
    return None


def verify_certificate(machine: Machine, cert: EscapeCertificate) -> bool:
    """Replay the certificate on a finite stretch of ``word^Z`` with the moving-head step."""
    dims = machine.dims
    if dims.d != 1 or machine.rule.write:
        return False
    L = len(cert.word)
    if (L == 0 or cert.cycle_length < 1 or not 0 <= cert.start_phase < L
            or not 1 <= cert.start_state <= dims.k
            or any(not 0 <= s < dims.n for s in cert.word) or cert.displacement == 0):
        return False
    reach = cert.cycle_length * machine.move_radius + max(machine.in_radius, 0) + 1
    lo, hi = cert.start_phase - reach, cert.start_phase + reach
    tape = {(x,): cert.word[x % L] for x in range(lo, hi + 1)}
    config = HeadConfiguration.make(dims, tape, (cert.start_phase,), cert.start_state)
    for _ in range(cert.cycle_length):
        config = apply_moving_head(machine, config)
    (pos,), state = config.head
    return (state == cert.start_state and pos - cert.start_phase == cert.displacement
            and cert.displacement % L == 0)


def decide_torsion_rfa1(machine: Machine) -> TorsionVerdict:
    """Finite or infinite order of a one-dimensional reversible automaton.

    Budget ``B`` examines escape words of length ``B`` and the power ``B``;
    the first definitive answer is returned.  Termination rests on the fact
    that one of the two searches always succeeds.
    """
    _require_rfa1(machine)
    p = machine
    budget = 1
    while True:
        if p.is_identity():
            if not power_is_identity_by_simulation(machine, budget):
                raise AssertionError(f"power {budget}: composition and simulation disagree")
            return Finite(budget)
        for cert in _escapes_for_length(machine, budget, None):
            return Infinite(cert)
        p = compose(machine, p)
        budget += 1


def quotient_order_lcm(machine: Machine, ms: Sequence[int]) -> int:
    """lcm of the orders of the finite quotient actions; divides any finite order."""
    return math.lcm(1, *(phi(machine, m).order() for m in ms))


__all__ = [
    "EscapeCertificate", "Finite", "Infinite", "Unknown", "TorsionVerdict",
    "order_upto", "find_escape_witness", "verify_certificate", "decide_torsion_rfa1",
    "quotient_order_lcm", "power_is_identity_by_simulation",
]
