"""Acceptance criteria, one test each; the terminal summary prints PASS/FAIL per line."""
import json
import random
import re
import subprocess
import sys

import pytest

from purelint.cli import main
from purelint.conformance import Purity, RuleConfig, analyze_purity, check_module
from purelint.corpus import run_corpus
from purelint.datalog import build_ra, parse_atom, render_ra
from purelint.frontend import lex, parse, parse_module
from purelint.oracles import TwinPair, caesar_encode, is_prime_trial, sieve, twin_primes

from conftest import CORPUS, corpus_files
from datalog_oracle import atom_text, convert, random_atom

# The four published intermediate strings, laid out as printed (wrapped
# to page width); whitespace runs at line breaks are layout, not content.
GOLDEN_STEPS = [
    """rename[x_0,x_1,x_2,x_3,x_4,x_5,x_6](p)""",
    """select[x_1=20 and x_4="john" and x_0=x_2 and x_2=x_5 and x_3=x_6]
  (rename[x_0,x_1,x_2,x_3,x_4,x_5,x_6](p))""",
    """project[x_0,x_3](
  select[x_1=20 and x_4="john" and x_0=x_2 and x_2=x_5 and x_3=x_6]
    (rename[x_0,x_1,x_2,x_3,x_4,x_5,x_6](p)))""",
    """rename[x,y](project[x_0,x_3](
  select[x_1=20 and x_4="john" and x_0=x_2 and x_2=x_5 and x_3=x_6]
    (rename[x_0,x_1,x_2,x_3,x_4,x_5,x_6](p))))""",
]


def one_line(figure):
    return re.sub(r"\n\s*", "", figure)


@pytest.mark.acceptance("1. datalog2ra --steps reproduces the four golden strings byte for byte")
def test_golden_steps(capsys):
    assert main(["datalog2ra", 'p(x,20,x,y,"john",x,y)', "--steps"]) == 0
    lines = capsys.readouterr().out.splitlines()
    expected = [f"step{i}: {one_line(fig)}" for i, fig in enumerate(GOLDEN_STEPS, 1)]
    assert lines == expected
    assert [line.encode() for line in lines] == [e.encode() for e in expected]


@pytest.mark.acceptance("2. both worked example programs produce zero diagnostics (strict)")
def test_worked_examples_conform():
    config = RuleConfig()
    assert config.strict
    for name in ("example1_caesar.py", "example2_twin_primes.py"):
        path = CORPUS / "pass" / name
        assert check_module(parse(path.read_text(), str(path)), config) == [], name
    assert "from functools import reduce" in (CORPUS / "pass" / "example1_caesar.py").read_text()


@pytest.mark.acceptance("3. violation corpus: >= 12 fixtures, every rule covered, corpus exits 0")
def test_violation_corpus(capsys):
    fails = corpus_files("fail")
    assert len(fails) >= 12
    covered = set()
    for path in fails:
        source = path.read_text()
        result = lex(source, str(path))
        diags = check_module(parse_module(result.tokens, source=source))
        expected = {(e.line, e.rule) for e in result.expectations}
        assert expected, path.name
        assert {(d.span.line, d.rule_id) for d in diags} == expected, path.name
        covered |= {rule for _, rule in expected}
    assert covered == {f"FP{i:03d}" for i in range(1, 11)}
    assert run_corpus(CORPUS).ok
    assert main(["corpus", str(CORPUS)]) == 0
    assert capsys.readouterr().out.strip().endswith("fixtures OK")


@pytest.mark.acceptance("4. sieve equals trial division for n <= 1000; twin pairs are valid")
def test_sieve_oracle():
    for n in range(0, 1001):
        primes = sieve(list(range(2, n + 1)))
        assert primes == [k for k in range(2, n + 1) if is_prime_trial(k)], n
        if n >= 2:
            for p in twin_primes(n):
                assert isinstance(p, TwinPair)
                assert p.second == p.first + 2 <= n
                assert is_prime_trial(p.first) and is_prime_trial(p.second)
                assert not is_prime_trial(p.first + 1)
    assert twin_primes(20) == [(3, 5), (5, 7), (11, 13), (17, 19)]


@pytest.mark.acceptance("5. Caesar inverse, periodicity and preservation hold on 200 random cases")
def test_caesar_properties():
    rng = random.Random(20)
    alphabet = "abcdefghijklmnopqrstuvwxyzABCXYZ 0123!?.,éß"
    for _ in range(200):
        n = rng.randint(-200, 200)
        s = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        enc = caesar_encode(n, s)
        assert caesar_encode((26 - n) % 26, enc) == s
        assert caesar_encode(n + 26, s) == enc
        assert len(enc) == len(s)
        assert all(a == b for a, b in zip(s, enc) if not "a" <= a <= "z")
    assert caesar_encode(3, "abc") == "def"


@pytest.mark.acceptance("6. 500 random atoms: translator equals the independent oracle; counts hold")
def test_datalog_oracle_equivalence():
    rng = random.Random(500)
    for _ in range(500):
        pred, args = random_atom(rng, max_arity=6, var_names=("x", "y", "z"))
        text = atom_text(pred, args)
        q = build_ra(parse_atom(text))
        assert render_ra(q) == convert(pred, args), text
        occurrences = {}
        for i, (tag, value) in enumerate(args):
            if tag == "var":
                occurrences.setdefault(value, []).append(i)
        constants = sum(tag != "var" for tag, _ in args)
        assert len(q.inner_rename) == len(args)
        assert len(q.project_positions) == len(occurrences) == len(q.outer_rename)
        assert len(q.select_conditions) == constants + sum(len(v) - 1 for v in occurrences.values())


@pytest.mark.acceptance("7. purity fixpoint: mutual recursion Pure, call path to print Impure")
def test_purity_fixpoint():
    mutual = analyze_purity(parse((CORPUS / "pass" / "mutual_recursion.py").read_text()))
    assert mutual.status("isEven") is Purity.PURE and mutual.status("isOdd") is Purity.PURE
    assert mutual.iterations <= len(mutual.functions)

    transitive = analyze_purity(parse((CORPUS / "fail" / "fp004_transitive.py").read_text()))
    for name in ("caller", "helper", "shout"):
        assert transitive.status(name) is Purity.IMPURE, name
    assert transitive.status("innocent") is Purity.PURE
    assert transitive.iterations <= len(transitive.functions)


@pytest.mark.acceptance("8. two check runs over the corpus give byte-identical JSON")
def test_deterministic_json():
    cmd = [sys.executable, "-m", "purelint", "check", "--format", "json", str(CORPUS)]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == second.returncode == 1
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    assert len(report["files"]) == len(corpus_files("pass")) + len(corpus_files("fail"))
