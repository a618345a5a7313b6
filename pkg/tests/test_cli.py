"""End-to-end runs through the command line, including the golden JSON files."""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from helpers import DATA

from exrules.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("kb1_tree", 0, ["run", "--rules", "kb1.rls", "--data", "kb1.fct", "--variant", "restricted", "--mode", "tree"]),
    ("kb1_branch_d1", 0, ["run", "--rules", "kb1.rls", "--data", "kb1.fct", "--variant", "restricted", "--select", "fixed:1"]),
    ("kb3_skolem_3", 0, ["run", "--rules", "kb3.rls", "--data", "kb3.fct", "--variant", "skolem", "--max-steps", "3"]),
    ("kb1_rmfa", 0, ["analyze", "--rules", "kb1.rls", "--notion", "rmfa"]),
    ("kb1_dmfa", 1, ["analyze", "--rules", "kb1.rls", "--notion", "dmfa"]),
    ("kb1_mfa", 1, ["analyze", "--rules", "kb1.rls", "--notion", "mfa"]),
    ("kb3_rmfa", 1, ["analyze", "--rules", "kb3.rls", "--notion", "rmfa"]),
    ("kb2_alt", 1, ["alt-matches", "--rules", "kb2.rls", "--data", "kb2.fct", "--max-steps", "1"]),
    ("kb1_hom", 0, ["check-hom", "--from", "kb1_leaf.fct", "--to", "model_bb.fct"]),
]


def _abs(argv):
    return [str(DATA / a) if a.endswith((".rls", ".fct")) else a for a in argv]


def run_cli(argv, capsys):
    code = main(_abs(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name, code, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_json(name, code, argv, capsys):
    got_code, out, _ = run_cli(argv + ["--out", "json"], capsys)
    assert got_code == code
    assert out == (GOLDEN / f"{name}.json").read_text()


@pytest.mark.parametrize("name, code, argv", CASES[:4], ids=[c[0] for c in CASES[:4]])
def test_json_is_byte_identical_across_processes(name, code, argv):
    runs = [
        subprocess.run([sys.executable, "-m", "exrules", *_abs(argv), "--out", "json"], capture_output=True, text=True)
        for _ in range(2)
    ]
    assert runs[0].returncode == runs[1].returncode == code
    assert runs[0].stdout == runs[1].stdout


def test_tree_text(capsys):
    code, out, _ = run_cli(CASES[0][2], capsys)
    assert code == 0
    assert out.splitlines() == [
        "saturated: {P(a,b), S(b)}",
        "saturated: {P(a,b), P(b,f[1,1,z](b)), P(f[1,1,z](b),b)}",
    ]


def test_tree_json_leaves(capsys):
    _, out, _ = run_cli(CASES[0][2] + ["--out", "json"], capsys)
    doc = json.loads(out)
    assert doc["schema"] == "chase-report/1"
    assert [r["facts"] for r in doc["results"]] == [
        ["P(a,b)", "S(b)"],
        ["P(a,b)", "P(b,f[1,1,z](b))", "P(f[1,1,z](b),b)"],
    ]


def test_branch_json_first_disjunct(capsys):
    _, out, _ = run_cli(["run", "--rules", "kb1.rls", "--data", "kb1.fct", "--select", "fixed:0", "--out", "json"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "saturated" and len(doc["nodes"]) == 2


def test_analyze_text(capsys):
    code, out, _ = run_cli(["analyze", "--rules", "kb1.rls", "--notion", "rmfa"], capsys)
    assert code == 0 and "acyclic" in out


@pytest.mark.parametrize(
    "argv, code, text",
    [
        (["check-core", "--facts", "core_ab.fct", "--strong"], 0, "strong core: yes"),
        (["check-core", "--facts", "core_ab.fct", "--weak"], 0, "weak core: yes"),
        (["check-core", "--facts", "noncore.fct"], 1, "strong core: no"),
        (["models", "--facts", "model_s.fct", "--rules", "kb1.rls", "--data", "kb1.fct"], 0, "models: yes"),
        (["models", "--facts", "kb1.fct", "--rules", "kb1.rls", "--data", "kb1.fct"], 1, "models: no"),
        (["check-hom", "--from", "kb1.fct", "--to", "model_s.fct"], 0, "homomorphism"),
        (["check-hom", "--from", "core_ab.fct", "--to", "kb1.fct"], 1, "no homomorphism"),
        (["alt-matches", "--rules", "kb1.rls", "--data", "kb1.fct", "--select", "fixed:1"], 0, "0 alternative match"),
    ],
)
def test_verdict_commands(argv, code, text, capsys):
    got, out, _ = run_cli(argv, capsys)
    assert got == code and text in out


@pytest.mark.parametrize(
    "argv, message",
    [
        (["run", "--rules", "bad.rls", "--data", "kb1.fct"], "line 1, column 5"),
        (["run", "--rules", "kb1.rls", "--data", "skolem_db.fct"], "Skolem terms are not allowed"),
        (["run", "--rules", "missing.rls", "--data", "kb1.fct"], "No such file"),
        (["run", "--rules", "kb1.rls", "--data", "kb1.fct", "--select", "sideways"], "bad selector"),
        (["run", "--rules", "kb1.rls", "--data", "kb1.fct", "--max-steps", "0"], "max_steps"),
    ],
)
def test_errors_exit_2(argv, message, capsys):
    code, _, err = run_cli(argv, capsys)
    assert code == 2 and message in err


def test_usage_error_exit_2(capsys):
    assert main(["analyze", "--rules", str(DATA / "kb1.rls"), "--notion", "xyz"]) == 2
    assert main([]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "exrules", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "check-core" in proc.stdout
