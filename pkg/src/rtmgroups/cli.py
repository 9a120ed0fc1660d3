"""The ``rtm`` command line tool.

Exit status: 0 on success, 1 on a definitive negative answer (machines
differ, not reversible, infinite order, invalid certificate), 2 on usage,
parse or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Optional, Sequence, TextIO

from . import quotients, reversibility, synthesis, textformat, torsion, zoo
from .core import Machine, MachineDims, apply_moving_head, compose, identity
from .errors import NotReversible, RTMError
from .lattice import fmt_vec, unit


class _Negative(Exception):
    """A definitive negative answer; its message goes to stdout, exit 1."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _machine(path: str) -> Machine:
    return textformat.parse_rule(_read(path))


def _frac(x: Fraction) -> str:
    return str(x)


def _vector_of_fractions(v: Sequence[Fraction]) -> str:
    if len(v) == 1:
        return _frac(v[0])
    return "(" + ",".join(_frac(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# subcommands; each writes to ``out`` and returns an exit status


def cmd_compose(args, out: TextIO) -> int:
    machines = [_machine(p) for p in args.machines]
    result = machines[-1]
    for m in reversed(machines[:-1]):
        result = compose(m, result)
    out.write(textformat.serialize_rule(result))
    return 0


def cmd_eq(args, out: TextIO) -> int:
    a, b = _machine(args.a), _machine(args.b)
    if a.dims == b.dims and a == b:
        out.write("equal\n")
        return 0
    raise _Negative("different")


def _collision_text(machine: Machine) -> str:
    hit = reversibility.find_collision(machine)
    cells = ",".join(fmt_vec(c) for c in sorted(set(machine.rule.read) | set(machine.rule.write)))
    (p1, q1), (p2, q2) = hit
    return (f"not reversible\nwindow= {cells}\n"
            f"collision= {' '.join(map(str, p1))} | {q1} ; {' '.join(map(str, p2))} | {q2}")


def cmd_invert(args, out: TextIO) -> int:
    m = _machine(args.machine)
    try:
        inv = reversibility.invert(m)
    except NotReversible:
        raise _Negative(_collision_text(m)) from None
    out.write(textformat.serialize_rule(inv))
    return 0


def cmd_check(args, out: TextIO) -> int:
    m = _machine(args.machine)
    if reversibility.is_reversible(m):
        out.write("reversible\n")
        return 0
    raise _Negative(_collision_text(m))


def cmd_alpha(args, out: TextIO) -> int:
    m = _machine(args.machine)
    out.write(_vector_of_fractions(reversibility.average_movement(m)) + "\n")
    return 0


def cmd_defect(args, out: TextIO) -> int:
    m = _machine(args.machine)
    out.write(_frac(reversibility.measure_defect(m)) + "\n")
    return 0


def cmd_classify(args, out: TextIO) -> int:
    flags = zoo.classify(_machine(args.machine))
    for name, value in vars(flags).items():
        out.write(f"{name}={'true' if value else 'false'}\n")
    return 0


def cmd_decompose_classical(args, out: TextIO) -> int:
    m = _machine(args.machine)
    try:
        t1, t0 = zoo.classical_decompose(m)
    except NotReversible as e:
        c1, c2 = e.witness
        raise _Negative("not reversible\n# first configuration\n" + textformat.serialize_config(c1)
                        + "# second configuration\n" + textformat.serialize_config(c2).rstrip()) from None
    out.write("# T1: state-dependent shift\n" + textformat.serialize_rule(t1))
    out.write("# T0: symbol and state permutation\n" + textformat.serialize_rule(t0))
    return 0


def cmd_simulate(args, out: TextIO) -> int:
    m = _machine(args.machine)
    config = textformat.parse_config(_read(args.config))
    for step in range(1, args.steps + 1):
        config = apply_moving_head(m, config)
        if config.head is None:
            out.write(f"step {step}: no head\n")
        else:
            out.write(f"step {step}: head={fmt_vec(config.head[0])} state={config.head[1]}\n")
    out.write(textformat.serialize_config(config))
    return 0


def cmd_quotient(args, out: TextIO) -> int:
    m = _machine(args.machine)
    perm = quotients.phi(m, args.m)
    lengths = perm.cycle_lengths()
    hist = {}
    for length in lengths:
        hist[length] = hist.get(length, 0) + 1
    out.write(f"m={args.m} size={len(perm)} order={perm.order()} sign={perm.sign():+d}\n")
    out.write("cycles= " + " ".join(f"{l}^{c}" for l, c in sorted(hist.items())) + "\n")
    return 0


def cmd_sign(args, out: TextIO) -> int:
    m = _machine(args.machine)
    for period, s in zip(args.m, quotients.sign_vector(m, args.m)):
        out.write(f"m={period} sign={s:+d}\n")
    return 0


def cmd_order(args, out: TextIO) -> int:
    m = _machine(args.machine)
    verdict = torsion.order_upto(m, args.bound)
    if isinstance(verdict, torsion.Finite):
        out.write(f"finite order={verdict.order}\n")
    else:
        out.write(f"unknown bound={verdict.budget} (semi-decision; torsion is undecidable in general)\n")
    return 0


def cmd_torsion_rfa1(args, out: TextIO) -> int:
    m = _machine(args.machine)
    verdict = torsion.decide_torsion_rfa1(m)
    if isinstance(verdict, torsion.Finite):
        out.write(f"finite order={verdict.order}\n")
        return 0
    text = textformat.serialize_certificate(verdict.certificate)
    if args.cert_out:
        with open(args.cert_out, "w", encoding="ascii") as fh:
            fh.write(text)
    raise _Negative("infinite\n" + text.rstrip())


def cmd_verify_cert(args, out: TextIO) -> int:
    m = _machine(args.machine)
    cert = textformat.parse_certificate(_read(args.certificate))
    if torsion.verify_certificate(m, cert):
        out.write("valid\n")
        return 0
    raise _Negative("invalid")


def cmd_synth(args, out: TextIO) -> int:
    m = _machine(args.machine)
    word = synthesis.synthesize_ob(m, ancilla=not args.no_ancilla)
    out.write(textformat.serialize_word(word))
    return 0


def cmd_eval_word(args, out: TextIO) -> int:
    word = textformat.parse_word(_read(args.word))
    out.write(textformat.serialize_rule(synthesis.eval_word(word)))
    return 0


_MAKERS: dict[str, Callable] = {
    "identity": lambda dims, a: identity(dims),
    "shift": lambda dims, a: zoo.shift_machine(dims, tuple(a.v or unit(dims.d, 1))),
    "surf": lambda dims, a: zoo.surf_machine(dims, a.m),
    "walker": lambda dims, a: zoo.involution_walker(dims, a.a),
    "cycler": lambda dims, a: zoo.state_cycler(dims, a.axis),
    "swap": lambda dims, a: zoo.cell_swap(dims, a.axis),
}


def cmd_make(args, out: TextIO) -> int:
    dims = MachineDims(args.d, args.n, args.k)
    out.write(textformat.serialize_rule(_MAKERS[args.kind](dims, args)))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rtm", description="Exact computations with reversible Turing machines.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, *positional):
        sp = sub.add_parser(name, help=help_text)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    sp = sub.add_parser("compose", help="compose machines; the last one acts first")
    sp.add_argument("machines", nargs="+")
    sp.set_defaults(func=cmd_compose)
    add("eq", cmd_eq, "canonical equality of two machines", "a", "b")
    add("invert", cmd_invert, "inverse of a reversible machine", "machine")
    add("check", cmd_check, "decide reversibility", "machine")
    add("alpha", cmd_alpha, "average movement", "machine")
    add("defect", cmd_defect, "measure of the complement of the image", "machine")
    add("classify", cmd_classify, "subgroup membership flags", "machine")
    add("decompose-classical", cmd_decompose_classical, "split a classical machine", "machine")
    sp = add("simulate", cmd_simulate, "run on a head configuration", "machine", "config")
    sp.add_argument("--steps", type=int, default=1)
    sp = add("quotient", cmd_quotient, "action on periodic configurations", "machine")
    sp.add_argument("--m", type=int, required=True)
    sp = add("sign", cmd_sign, "signs of the periodic actions", "machine")
    sp.add_argument("--m", type=int, nargs="+", required=True)
    sp = add("order", cmd_order, "bounded order search", "machine")
    sp.add_argument("--bound", type=int, default=16)
    sp = add("torsion-rfa1", cmd_torsion_rfa1, "decide finite order (d=1, no writes)", "machine")
    sp.add_argument("--cert-out")
    add("verify-cert", cmd_verify_cert, "replay an escape certificate", "machine", "certificate")
    sp = add("synth", cmd_synth, "word over the finite generators", "machine")
    sp.add_argument("--no-ancilla", action="store_true")
    add("eval-word", cmd_eval_word, "machine of a generator word", "word")
    sp = add("make", cmd_make, "print a named machine", "kind")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--v", type=int, nargs="+")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--axis", type=int, default=1)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
         err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "make" and args.kind not in _MAKERS:
        err.write(f"rtm make: unknown kind {args.kind!r}; choose from {', '.join(sorted(_MAKERS))}\n")
        return 2
    try:
        return args.func(args, out)
    except _Negative as e:
        out.write(str(e) + "\n")
        return 1
    except (RTMError, OSError, ValueError) as e:
        err.write(f"rtm {args.command}: {type(e).__name__}: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
