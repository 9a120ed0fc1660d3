import io
import os

import pytest

from golden_cases import CASES, HERE, golden_path, run_case
from rtmgroups import textformat
from rtmgroups.cli import main
from rtmgroups.reversibility import invert


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv):
    text = run_case(argv)
    path = golden_path(name)
    if os.environ.get("RTM_UPDATE_GOLDEN"):
        path.write_text(text, encoding="ascii")
    assert text == path.read_text(encoding="ascii")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_exit_codes():
    fix = HERE / "fixtures"
    assert run(["check", fix / "swap.rtm"])[0] == 0
    assert run(["check", fix / "write0.rtm"])[0] == 1
    code, out, err = run(["check", fix / "duplicate.rtm"])
    assert code == 2 and out == "" and err.startswith("rtm check: DuplicateEntry")
    assert run(["make", "teleporter"])[0] == 2
    assert run(["no-such-command"])[0] == 2


def test_invert_output_parses_back():
    fix = HERE / "fixtures"
    code, out, _ = run(["invert", fix / "classical.rtm"])
    assert code == 0
    machine = textformat.parse_rule((fix / "classical.rtm").read_text())
    assert textformat.parse_rule(out) == invert(machine)


def test_synth_then_eval_round_trip(tmp_path):
    fix = HERE / "fixtures"
    code, word, _ = run(["synth", fix / "swap.rtm"])
    assert code == 0
    path = tmp_path / "w.rtmw"
    path.write_text(word)
    code, rule, _ = run(["eval-word", path])
    assert code == 0
    assert textformat.parse_rule(rule) == textformat.parse_rule((fix / "swap.rtm").read_text())


def test_torsion_cert_out(tmp_path):
    fix = HERE / "fixtures"
    cert = tmp_path / "c.cert"
    code, out, _ = run(["torsion-rfa1", fix / "shift.rtm", "--cert-out", cert])
    assert code == 1 and out.startswith("infinite")
    assert run(["verify-cert", fix / "shift.rtm", cert])[0] == 0
