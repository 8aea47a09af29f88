import json

import pytest

from artinpump import (DimensionError, FormatError, SemiringError, dumps, evaluate, load, loads,
                       maxtimes_chain, pump_verify, save)
from artinpump.cli import main

MINIMAL = '{"semiring": {"kind": "boolean"}, "states": ["q"], "in": ["1"], "out": ["1"], "letters": {}}'


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_round_trip_is_byte_identical(automata_dir, tmp_path):
    files = sorted(automata_dir.glob("*.json"))
    assert len(files) >= 6
    for f in files:
        text = f.read_text(encoding="utf-8")
        assert dumps(load(f)) == text
        save(load(f), tmp_path / f.name)
        assert (tmp_path / f.name).read_bytes() == f.read_bytes()


def test_minimal_file():
    rep = loads(MINIMAL)
    assert evaluate(rep, "") == 1
    assert loads(dumps(rep)) == rep


def test_residues_canonicalize():
    text = MINIMAL.replace('"boolean"}', '"modular-int", "n": 4}').replace('"in": ["1"]', '"in": ["5"]')
    rep = loads(text)
    assert '"in": ["1"]' in dumps(rep)


def test_bad_json_reports_position():
    with pytest.raises(FormatError, match="line 2, column"):
        loads('{"semiring":\n  oops}')


def test_matrix_shape_error():
    text = MINIMAL.replace('"states": ["q"]', '"states": ["p", "q"]').replace(
        '"in": ["1"], "out": ["1"]', '"in": ["1", "0"], "out": ["1", "0"]').replace(
        '"letters": {}', '"letters": {"a": [["1", "0", "1"], ["0", "1", "0"]]}')
    with pytest.raises(DimensionError):
        loads(text)


def test_unknown_semiring_and_bad_literal():
    with pytest.raises(SemiringError):
        loads(MINIMAL.replace('"boolean"', '"octonions"'))
    with pytest.raises(SemiringError, match="in\\[0\\]"):
        loads(MINIMAL.replace('"in": ["1"]', '"in": ["2"]'))
    with pytest.raises(FormatError):
        loads(MINIMAL.replace('"in": ["1"]', '"in": [1]'))
    with pytest.raises(FormatError):
        loads(MINIMAL.replace('"letters": {}', '"letters": {}, "extra": 1'))


def test_pump_json_matches_library(capsys, automata_dir, even_rep):
    code, out, err = run(capsys, "pump", automata_dir / "even_length.json", "aaaaaa", "--k", "40", "--json")
    assert code == 0 and err == ""
    assert json.loads(out) == pump_verify(even_rep, "aaaaaa", 40).to_dict(even_rep.semiring)


def test_pump_table(capsys, automata_dir):
    code, out, _ = run(capsys, "pump", automata_dir / "even_length.json", "aaaaaa", "--k", "4")
    assert code == 0
    assert "x = a" in out and "bound 2): ok" in out


def test_eval(capsys, automata_dir):
    assert run(capsys, "eval", automata_dir / "z4_double.json", "ab") == (0, "3\n", "")


def test_demo_chain(capsys):
    code, out, _ = run(capsys, "demo", "maxtimes-chain", "--steps", "25", "--json")
    data = json.loads(out)
    assert code == 0 and data["all_strict"] and len(data["steps"]) == 25
    assert data["all_strict"] == maxtimes_chain(25).all_strict


@pytest.mark.parametrize("argv", [
    ["support", "{f}", "--max-len", "3"],
    ["mu", "{f}", "ab"],
    ["pseudoregular", "{f}", "ab"],
    ["witness", "{f}", "abab"],
    ["gap", "{f}", "ab", "--k", "8"],
    ["length", "{f}"],
    ["length", "--semiring", "Z4", "--dim", "2", "--exact"],
    ["lattice", "--semiring", "F2", "--dim", "2"],
    ["injsurj", "{f}", "b"],
    ["constant", "--r", "2", "--sigma", "2"],
    ["quasipower", "aaaa", "--r", "2"],
    ["reduce-alphabet", "{f}", "--check", "10"],
    ["refute", "{f}", "--claim", "equal-counts", "--max-len", "4"],
    ["axioms", "--semiring", "Z6"],
    ["axioms", "{f}"],
])
def test_every_command_runs(capsys, automata_dir, argv):
    argv = [a.format(f=automata_dir / "z4_double.json") for a in argv]
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    json.loads(out)
    code2, text, _ = run(capsys, *argv)
    assert code2 == 0 and text.strip()
    # deterministic output
    assert run(capsys, *argv) == (0, text, "")


def test_domain_error_exit_code(capsys, automata_dir):
    code, out, err = run(capsys, "eval", automata_dir / "even_length.json", "ab")
    assert code == 1 and out == "" and "unknown letter" in err
    code, out, err = run(capsys, "pump", automata_dir / "even_length.json", "aaa")
    assert code == 1 and out == "" and "not in the support" in err
    code, out, err = run(capsys, "length", "--semiring", "maxtimes", "--bound")
    assert code == 1 and out == "" and "no finite bound" in err


def test_missing_file_exit_code(capsys, tmp_path):
    code, out, err = run(capsys, "eval", tmp_path / "nope.json", "a")
    assert code == 1 and out == ""


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["constant", "--r", "2"])
    assert exc.value.code == 2
    code, out, err = run(capsys, "length")
    assert code == 2 and out == "" and "usage" in err


def test_reduce_alphabet_output(capsys, tmp_path, automata_dir):
    target = tmp_path / "reduced.json"
    code, _, _ = run(capsys, "reduce-alphabet", automata_dir / "z4_double.json", "-o", target)
    assert code == 0
    assert load(target).alphabet == ("a", "b")


def test_module_entry_point(automata_dir):
    import subprocess
    import sys
    ok = subprocess.run([sys.executable, "-m", "artinpump", "eval", str(automata_dir / "even_length.json"), "aa"],
                        capture_output=True, text=True)
    assert (ok.returncode, ok.stdout, ok.stderr) == (0, "1\n", "")
    bad = subprocess.run([sys.executable, "-m", "artinpump", "eval", str(automata_dir / "even_length.json"), "b"],
                         capture_output=True, text=True)
    assert bad.returncode == 1 and bad.stdout == "" and bad.stderr.startswith("error:")
