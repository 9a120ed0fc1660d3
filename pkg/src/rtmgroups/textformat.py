"""Line-based text documents for machines, configurations, certificates and words.

Machines (``RTM1``)::

    RTM1
    d=1 n=2 k=1
    F= (0),(1)
    G= (0)
    0 0 | 1 -> 1 | 1 | (0)
    ...

One table line per left-hand side, in table order: read symbols in sorted
support order, the state, then the written symbols, the new state and the
move.  ``#`` starts a comment.  Other documents start with ``RTMCONF1``,
``RTMCERT1`` or ``RTMWORD1`` and are described at their parsers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .core import HeadConfiguration, Machine, MachineDims, make_rule
from .errors import RTMSyntaxError
from .lattice import Vec, fmt_vec
from .synthesis import CellSwap, GeneratorWord, Shift, WindowPerm, flatten
from .torsion import EscapeCertificate

_TOKEN = re.compile(r"\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)|->|\||[+-]?\d+|\S+")
_VECTOR = re.compile(r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)")


@dataclass
class _Line:
    number: int
    text: str

    def tokens(self) -> list[tuple[str, int]]:
        """(token, 1-based column) pairs."""
        return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(self.text)]

    def error(self, message: str, col: int = 1) -> RTMSyntaxError:
        return RTMSyntaxError(message, self.number, col)


def _lines(text: str) -> list[_Line]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            out.append(_Line(i, body))
    return out


def _expect_magic(lines: list[_Line], magic: str) -> None:
    if not lines:
        raise RTMSyntaxError(f"empty document, expected {magic}", 1, 1)
    if lines[0].text.strip() != magic:
        raise lines[0].error(f"expected {magic!r}")


def _parse_int(tok: str, col: int, line: _Line) -> int:
    try:
        return int(tok)
    except ValueError:
        raise line.error(f"expected an integer, found {tok!r}", col) from None


def _parse_vector(tok: str, col: int, line: _Line, d: int | None = None) -> Vec:
    m = _VECTOR.fullmatch(tok)
    if not m:
        raise line.error(f"expected a vector like (1,0), found {tok!r}", col)
    v = tuple(int(x) for x in m.group(1).split(","))
    if d is not None and len(v) != d:
        raise line.error(f"vector {tok} does not have {d} components", col)
    return v


def _parse_dims(line: _Line) -> MachineDims:
    values = {}
    for tok, col in line.tokens():
        key, sep, val = tok.partition("=")
        if not sep or key not in ("d", "n", "k") or key in values:
            raise line.error(f"expected d=, n= and k=, found {tok!r}", col)
        values[key] = _parse_int(val, col + 2, line)
    if set(values) != {"d", "n", "k"}:
        raise line.error("dimension line needs d=, n= and k=")
    try:
        return MachineDims(values["d"], values["n"], values["k"])
    except ValueError as e:
        raise line.error(str(e)) from None


def _parse_keyed(line: _Line, key: str) -> tuple[str, int]:
    """The text after ``key=`` and its column."""
    stripped = line.text.lstrip()
    start = len(line.text) - len(stripped)
    if not stripped.startswith(key + "="):
        raise line.error(f"expected {key}=", start + 1)
    offset = start + len(key) + 1
    return line.text[offset:], offset + 1


def _parse_support(line: _Line, key: str, d: int) -> list[Vec]:
    """A comma-separated list of vectors after ``key=`` (possibly empty)."""
    body, col = _parse_keyed(line, key)
    cells: list[Vec] = []
    want_vector = True
    i = 0
    while i < len(body):
        if body[i].isspace():
            i += 1
        elif want_vector:
            m = _VECTOR.match(body, i)
            if not m:
                raise line.error("expected a vector like (1,0)", col + i)
            cells.append(_parse_vector(m.group(0), col + i, line, d))
            i, want_vector = m.end(), False
        elif body[i] == ",":
            i, want_vector = i + 1, True
        else:
            raise line.error("expected ','", col + i)
    if cells and want_vector:
        raise line.error("trailing ','", col + len(body))
    return cells


# ---------------------------------------------------------------------------
# machines


def serialize_rule(machine: Machine) -> str:
    rule = machine.rule
    out = ["RTM1", str(machine.dims),
           ("F= " + ",".join(fmt_vec(c) for c in rule.read)).rstrip(),
           ("G= " + ",".join(fmt_vec(c) for c in rule.write)).rstrip()]
    for pattern, q, written, q2, move in rule.entries():
        parts = [str(s) for s in pattern] + ["|", str(q), "->"]
        parts += [str(s) for s in written] + ["|", str(q2), "|", fmt_vec(move)]
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def _parse_table_line(line: _Line, nf: int, ng: int, d: int):
    toks = line.tokens()
    words = [t for t, _ in toks]
    try:
        arrow = words.index("->")
    except ValueError:
        raise line.error("table line needs '->'") from None
    left, right = toks[:arrow], toks[arrow + 1:]
    if len(left) != nf + 2 or left[nf][0] != "|":
        raise line.error(f"left side needs {nf} symbols, '|' and a state", left[0][1] if left else 1)
    pattern = tuple(_parse_int(t, c, line) for t, c in left[:nf])
    q = _parse_int(*left[nf + 1], line)
    if len(right) != ng + 4 or right[ng][0] != "|" or right[ng + 2][0] != "|":
        col = right[0][1] if right else toks[arrow][1]
        raise line.error(f"right side needs {ng} symbols, '|', a state, '|' and a move", col)
    written = tuple(_parse_int(t, c, line) for t, c in right[:ng])
    q2 = _parse_int(*right[ng + 1], line)
    move = _parse_vector(*right[ng + 3], line, d)
    return (pattern, q), (written, q2, move)


def parse_rule(text: str) -> Machine:
    lines = _lines(text)
    _expect_magic(lines, "RTM1")
    if len(lines) < 4:
        last = lines[-1].number if lines else 1
        raise RTMSyntaxError("document ends before the F= and G= lines", last, 1)
    dims = _parse_dims(lines[1])
    F = _parse_support(lines[2], "F", dims.d)
    G = _parse_support(lines[3], "G", dims.d)
    pairs = [_parse_table_line(line, len(F), len(G), dims.d) for line in lines[4:]]
    return Machine(make_rule(dims, F, G, pairs))


# ---------------------------------------------------------------------------
# head configurations


def serialize_config(config: HeadConfiguration) -> str:
    """``RTMCONF1``, dims, ``head= (v) q`` or ``head= none``, then ``(v) s`` per nonzero cell."""
    head = "none" if config.head is None else f"{fmt_vec(config.head[0])} {config.head[1]}"
    out = ["RTMCONF1", str(config.dims), f"head= {head}"]
    out += [f"{fmt_vec(c)} {s}" for c, s in config.tape]
    return "\n".join(out) + "\n"


def parse_config(text: str) -> HeadConfiguration:
    lines = _lines(text)
    _expect_magic(lines, "RTMCONF1")
    if len(lines) < 3:
        raise RTMSyntaxError("configuration needs dims and head lines", lines[-1].number, 1)
    dims = _parse_dims(lines[1])
    rest, col = _parse_keyed(lines[2], "head")
    parts = [(m.group(0), col + m.start()) for m in _TOKEN.finditer(rest)]
    if [t for t, _ in parts] == ["none"]:
        head, state = None, 1
    elif len(parts) == 2:
        head = _parse_vector(*parts[0], lines[2], dims.d)
        state = _parse_int(*parts[1], lines[2])
    else:
        raise lines[2].error("expected 'head= (v) q' or 'head= none'", col)
    tape = {}
    for line in lines[3:]:
        toks = line.tokens()
        if len(toks) != 2:
            raise line.error("expected '(v) symbol'")
        cell = _parse_vector(*toks[0], line, dims.d)
        if cell in tape:
            raise line.error(f"cell {toks[0][0]} listed twice", toks[0][1])
        tape[cell] = _parse_int(*toks[1], line)
    return HeadConfiguration.make(dims, tape, head, state)


# ---------------------------------------------------------------------------
# certificates

_CERT_KEYS = ("word", "state", "phase", "cycle", "displacement")


def serialize_certificate(cert: EscapeCertificate) -> str:
    return "\n".join([
        "RTMCERT1",
        "word= " + " ".join(str(s) for s in cert.word),
        f"state= {cert.start_state}",
        f"phase= {cert.start_phase}",
        f"cycle= {cert.cycle_length}",
        f"displacement= {cert.displacement}",
    ]) + "\n"


def parse_certificate(text: str) -> EscapeCertificate:
    lines = _lines(text)
    _expect_magic(lines, "RTMCERT1")
    if len(lines) != 1 + len(_CERT_KEYS):
        raise RTMSyntaxError("certificate needs word, state, phase, cycle and displacement",
                             lines[-1].number, 1)
    values = {}
    for key, line in zip(_CERT_KEYS, lines[1:]):
        rest, col = _parse_keyed(line, key)
        nums = [_parse_int(t, col, line) for t in rest.split()]
        if key != "word" and len(nums) != 1:
            raise line.error(f"{key}= takes one integer", col)
        values[key] = tuple(nums) if key == "word" else nums[0]
    return EscapeCertificate(values["word"], values["state"], values["phase"],
                             values["cycle"], values["displacement"])


# ---------------------------------------------------------------------------
# generator words


def serialize_word(word: GeneratorWord) -> str:
    """``RTMWORD1``, dims, then ``S axis +1|-1``, ``C axis`` or ``W images...`` per token."""
    out = ["RTMWORD1", str(word.dims)]
    for t in flatten(word.tokens):
        if isinstance(t, Shift):
            out.append(f"S {t.axis} {'+1' if t.direction > 0 else '-1'}")
        elif isinstance(t, CellSwap):
            out.append(f"C {t.axis}")
        else:
            out.append("W " + " ".join(str(x) for x in t.perm))
    return "\n".join(out) + "\n"


def parse_word(text: str) -> GeneratorWord:
    lines = _lines(text)
    _expect_magic(lines, "RTMWORD1")
    if len(lines) < 2:
        raise RTMSyntaxError("word needs a dimension line", lines[0].number, 1)
    dims = _parse_dims(lines[1])
    tokens = []
    size = dims.n ** 4 * dims.k
    for line in lines[2:]:
        toks = line.tokens()
        kind, col = toks[0]
        args = [_parse_int(t, c, line) for t, c in toks[1:]]
        if kind == "S" and len(args) == 2 and args[1] in (1, -1) and 1 <= args[0] <= dims.d:
            tokens.append(Shift(args[0], args[1]))
        elif kind == "C" and len(args) == 1 and 1 <= args[0] <= dims.d:
            tokens.append(CellSwap(args[0]))
        elif kind == "W" and sorted(args) == list(range(size)):
            tokens.append(WindowPerm(tuple(args)))
        else:
            raise line.error(f"bad token line for {dims}", col)
    return GeneratorWord(dims, tuple(tokens))


def iter_documents(text: str) -> Iterator[str]:
    """Split a stream holding several documents at their magic lines."""
    chunk: list[str] = []
    for raw in text.splitlines(keepends=True):
        if raw.strip() in ("RTM1", "RTMCONF1", "RTMCERT1", "RTMWORD1") and any(
                c.split("#", 1)[0].strip() for c in chunk):
            yield "".join(chunk)
            chunk = []
        chunk.append(raw)
    if chunk:
        yield "".join(chunk)


__all__ = [
    "serialize_rule", "parse_rule", "serialize_config", "parse_config",
    "serialize_certificate", "parse_certificate", "serialize_word", "parse_word",
    "iter_documents",
]
