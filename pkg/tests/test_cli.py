import io
import json
import re
import shutil
import subprocess
import sys

import pytest

from purelint.cli import main

from conftest import CORPUS, corpus_files

EX2 = str(CORPUS / "pass" / "example2_twin_primes.py")
IF_FIXTURE = str(CORPUS / "fail" / "fp003_if_statement.py")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_clean_file(capsys):
    code, out, _ = run(capsys, "check", "--format", "json", EX2)
    assert code == 0
    report = json.loads(out)
    assert report == {"files": [{"path": EX2, "diagnostics": []}], "verdict": "pass"}


def test_check_if_statement(capsys):
    code, out, _ = run(capsys, "check", "--format", "json", IF_FIXTURE)
    assert code == 1
    diags = json.loads(out)["files"][0]["diagnostics"]
    assert [d["rule"] for d in diags] == ["FP003"]
    assert list(diags[0]) == ["rule", "severity", "file", "line", "col", "end_line", "end_col", "message"]


def test_check_tab_indentation(capsys, tmp_path):
    path = tmp_path / "tabs.py"
    path.write_text("def f(n):\n\treturn n\n")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2
    assert "lex error" in err and "tab" in err


def test_check_syntax_error(capsys, tmp_path):
    path = tmp_path / "bad.py"
    path.write_text("async def f(): pass\n")
    code, out, err = run(capsys, "check", "--format", "json", str(path))
    assert code == 2
    assert json.loads(out)["files"][0]["error"]["kind"] == "syntax"


def test_check_missing_and_unreadable(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "absent.py"))[0] == 2
    path = tmp_path / "latin1.py"
    path.write_bytes(b"x = '\xff'\n")
    assert run(capsys, "check", str(path))[0] == 2


def test_check_directory_is_expanded_and_sorted(capsys):
    code, out, _ = run(capsys, "check", "--format", "json", str(CORPUS / "pass"))
    assert code == 0
    paths = [f["path"] for f in json.loads(out)["files"]]
    assert paths == sorted(paths) == [str(p) for p in corpus_files("pass")]


def test_human_and_json_agree(capsys):
    files = [str(p) for p in corpus_files("fail")]
    _, human, _ = run(capsys, "check", *files)
    _, raw, _ = run(capsys, "check", "--format", "json", *files)
    from_json = {(d["file"], d["line"], d["col"], d["rule"])
                 for f in json.loads(raw)["files"] for d in f["diagnostics"]}
    pattern = re.compile(r"^(.+):(\d+):(\d+): (FP\d{3}) \[", re.M)
    from_human = {(m[0], int(m[1]), int(m[2]), m[3]) for m in pattern.findall(human)}
    assert from_human == from_json and from_json


def test_config_and_mode_flags(capsys, tmp_path):
    src = tmp_path / "m.py"
    src.write_text("def f(x):\n    return mystery(x)\n")
    assert run(capsys, "check", str(src))[0] == 1
    # lenient mode turns the unknown callee into a warning, which passes
    code, out, _ = run(capsys, "check", "--lenient", "--format", "json", str(src))
    assert code == 0 and json.loads(out)["files"][0]["diagnostics"][0]["severity"] == "warning"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "lenient"}))
    assert run(capsys, "check", "--config", str(cfg), str(src))[0] == 0
    assert run(capsys, "check", "--config", str(cfg), "--strict", str(src))[0] == 1
    cfg.write_text(json.dumps({"enabled": []}))
    code, _, err = run(capsys, "check", "--config", str(cfg), str(src))
    assert code == 2 and "unknown config keys" in err


def test_datalog2ra(capsys, monkeypatch):
    code, out, _ = run(capsys, "datalog2ra", 'p(x,20,x,y,"john",x,y)')
    assert code == 0 and out.startswith("rename[x,y](project[x_0,x_3](") and out.count("\n") == 1
    code, out, _ = run(capsys, "datalog2ra", "r(x)", "--steps")
    assert out.splitlines() == ["step1: rename[x_0](r)", "step3: project[x_0](rename[x_0](r))",
                                "step4: rename[x](project[x_0](rename[x_0](r)))"]
    code, _, err = run(capsys, "datalog2ra", "p(")
    assert code == 2 and "unexpected end of input" in err
    monkeypatch.setattr("sys.stdin", io.StringIO("q(x, 3)\n"))
    code, out, _ = run(capsys, "datalog2ra")
    assert out == "rename[x](project[x_0](select[x_1=3](rename[x_0,x_1](q))))\n"


def test_oracle_commands(capsys):
    assert run(capsys, "oracle", "caesar", "3", "abc")[1] == "def\n"
    code, out, _ = run(capsys, "oracle", "twins", "20")
    assert code == 0 and out.splitlines() == ["3 5", "5 7", "11 13", "17 19"]
    assert run(capsys, "oracle", "twins", "-5")[0] == 2
    assert run(capsys, "oracle", "twins", "ten")[0] == 2
    assert run(capsys, "oracle", "caesar", "3")[0] == 2


@pytest.mark.parametrize("argv", [[], ["bogus"], ["check"], ["check", "--format", "xml", EX2],
                                  ["check", "--strict", "--lenient", EX2], ["--version"]])
def test_exit_codes_are_total(capsys, argv):
    assert main(argv) in (0, 1, 2)
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "purelint", "oracle", "caesar", "2", "yz!"],
                          capture_output=True, text=True)
    assert (proc.returncode, proc.stdout) == (0, "ab!\n")


@pytest.mark.skipif(shutil.which("purelint") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["purelint", "corpus", str(CORPUS)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("fixtures OK\n")
