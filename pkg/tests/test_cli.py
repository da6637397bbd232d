import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from villainy import harness
from villainy.canonical import enumerate_nonisomorphic
from villainy.characterize import ClassLabel
from villainy.cli import main
from villainy.families import diamond
from villainy.graph6 import emit_graph6
from villainy.harness import HarnessConfig, cmd_parity, render_csv

from .conftest import naive_villainy


def code_of(expr):
    from villainy.canonical import canonical_graph
    from villainy.families import build_family, parse_family

    return emit_graph6(canonical_graph(build_family(parse_family(expr))))

SCHEMA = json.loads(resources.files("villainy").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_inspect_cycle(capsys):
    code, doc = run_json(capsys, "inspect", "cycle(5)")
    assert code == 0
    assert (doc["chi"], doc["B"], doc["Bw"], doc["label"]) == (3, 2, 2, "Case5")
    assert doc["consistency"]["certificates_valid"]


def test_inspect_complete(capsys):
    _, doc = run_json(capsys, "inspect", "complete(4)")
    assert (doc["chi"], doc["B"], doc["Bw"], doc["label"]) == (4, 0, 0, None)
    assert doc["known"]["B"]["value"] == 0


def test_inspect_diamond_graph6(capsys):
    _, doc = run_json(capsys, "inspect", emit_graph6(diamond()))
    assert doc["B"] == 4
    assert len(doc["B_certificate"]["changed"]) == 4


@pytest.mark.parametrize("argv, code", [
    (["inspect", "A"], 64),
    (["inspect", "cycle(0)"], 64),
    (["inspect", "nonsense("], 64),
    (["inspect", "cycle(12)"], 65),
    (["sweep-theorem5", "--max-n", "9"], 65),
    (["sweep-theorem5", "--max-n", "8"], 65),
    (["sweep-theorem5", "--workers", "0"], 64),
    (["sweep-theorem5", "--time-budget", "-1"], 64),
    (["sweep-theorem5", "--bogus"], 64),
    (["frobnicate"], 64),
    (["cycles", "--max-k", "6"], 65),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_max_n_environment_override(capsys, monkeypatch):
    monkeypatch.setenv("VILLAINY_MAX_N", "3")
    _, doc = run_json(capsys, "sweep-theorem5")
    assert doc["parameters"]["max_n"] == 3
    assert doc["summary"]["graphs"] == 1 + 2 + 4


def test_theorem5_up_to_four_matches_brute_force(capsys):
    code, doc = run_json(capsys, "sweep-theorem5", "--max-n", "4")
    assert code == 0
    expected = {emit_graph6(g) for n in range(1, 5) for g in enumerate_nonisomorphic(n) if naive_villainy(g) == 2}
    got = {r["graph6"] for r in doc["rows"] if r["B"] == 2}
    assert got == expected
    assert all(r["label"] for r in doc["rows"] if r["B"] == 2)
    assert doc["summary"]["B2_unclassified"] == []


def test_theorem5_up_to_five_members(capsys):
    _, doc = run_json(capsys, "sweep-theorem5", "--max-n", "5", "--mode", "strong")
    b2 = {r["graph6"] for r in doc["rows"] if r["B"] == 2}
    for expr in ["cycle(5)", "complete(3)+complete(2)", "path(4)+empty(1)", "cycle(4)+empty(1)",
                 "complete(2)+complete(2)+empty(1)", "complete(2)+empty(3)", "path(3)+empty(2)",
                 "star(4)", "star(3)", "complete(4)+empty(1)"]:
        assert code_of(expr) in b2, expr


def test_single_vertex_sweep(capsys):
    code, doc = run_json(capsys, "sweep-theorem5", "--max-n", "1")
    assert code == 0
    assert len(doc["rows"]) == 1 and doc["rows"][0]["B"] == 0 and doc["rows"][0]["flags"] == ""


def test_summary_counts_equal_row_tallies(capsys):
    _, doc = run_json(capsys, "sweep-theorem5", "--max-n", "5")
    rows, summary = doc["rows"], doc["summary"]
    assert summary["graphs"] == len(rows)
    assert summary["B2"] == sum(r["B"] == 2 for r in rows)
    assert summary["classified"] == sum(bool(r["label"]) for r in rows)
    assert sum(summary["label_counts"].values()) == summary["classified"]
    assert rows == sorted(rows, key=lambda r: (r["n"], r["graph6"]))


def test_bipartite_sweep(capsys):
    code, doc = run_json(capsys, "sweep-bipartite", "--max-n", "6")
    assert code == 0
    rows = {r["graph6"]: r for r in doc["rows"]}
    p4, k14, c6 = rows[code_of("path(4)")], rows[code_of("star(4)")], rows[code_of("cycle(6)")]
    assert (p4["formula_B"], p4["B"]) == (2, 2)
    assert (k14["formula_B"], k14["B"]) == (2, 2)
    assert c6["adjudicated"] and c6["Bw"] == c6["formula_Bw"] == 2
    assert doc["summary"]["mismatches"] == []
    assert len(doc["summary"]["adjudicated"]) == 10


def test_bipartite_sweep_flags_adjudication_drift(capsys, monkeypatch):
    real = harness.Adjudication.load()
    tampered = {k: dict(v, B=4) for k, v in real.values.items()}
    monkeypatch.setattr(harness.Adjudication, "load",
                        classmethod(lambda cls: cls(tampered, real.known_value_mismatches)))
    code, doc = run_json(capsys, "sweep-bipartite", "--max-n", "6")
    assert code == 2
    assert len(doc["summary"]["adjudication_drift"]) == 10


def test_theorem5_counterexample_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(harness, "classify_theorem5", lambda g: ClassLabel.NONE)
    code, doc = run_json(capsys, "sweep-theorem5", "--max-n", "4")
    assert code == 2
    assert doc["summary"]["verdict"] == "counterexample"


def test_lemma_sweep(capsys, tmp_path):
    code, doc = run_json(capsys, "sweep-lemmas", "--max-n", "5")
    assert code == 0 and doc["summary"]["counterexamples"] == []
    src = tmp_path / "g.g6"
    c7, k33 = code_of("cycle(7)"), code_of("complete(3)+complete(3)")
    src.write_text(f"# seven-cycle and two triangles\n{c7}\n\n{k33}\n")
    _, doc = run_json(capsys, "sweep-lemmas", "--input", str(src))
    rows = {r["graph6"]: r for r in doc["rows"]}
    assert "order-7>=3" in rows[c7]["fired"] and rows[c7]["B"] >= 3
    assert rows[k33]["exceptions"] == "order-6:2K_3" and rows[k33]["fired"] == ""


def test_input_file_bound(capsys, tmp_path):
    src = tmp_path / "big.g6"
    src.write_text("HhCGGE@\n")
    assert run(capsys, "parity", "--input", str(src))[0] == 65
    assert run(capsys, "parity", "--input", str(src), "--exact-bound", "9")[0] == 0
    bad = tmp_path / "bad.g6"
    bad.write_text("A_\nB\n")
    assert run(capsys, "parity", "--input", str(bad))[0] == 64


def test_cycles(capsys):
    code, doc = run_json(capsys, "cycles", "--max-k", "3")
    assert code == 0
    rows = {r["k"]: r for r in doc["rows"]}
    assert rows[2]["Bw"] == 2 and rows[3]["Bw"] == 3
    assert rows[2]["B"] == 2
    assert all(r["certificates_ok"] for r in rows.values())


def test_parity_small(capsys):
    _, doc = run_json(capsys, "parity", "--max-n", "4")
    assert set(int(v) for v in doc["summary"]["B_histogram"]) <= {0, 2, 4}
    assert doc["summary"]["evenness_claim"] == "confirmed"
    k3 = next(r for r in doc["rows"] if r["graph6"] == code_of("complete(3)"))
    assert (k3["B"], k3["B_parity"]) == (0, "even")


def test_parity_empty_filter_is_valid():
    report, code = cmd_parity(HarnessConfig(max_n=3), predicate=lambda g: False)
    assert code == 0 and report["rows"] == []
    jsonschema.validate(json.loads(json.dumps(report)), SCHEMA)
    assert render_csv(report["rows"]) == ""


@pytest.mark.parametrize("command", ["sweep-theorem5", "sweep-bipartite", "sweep-lemmas", "parity"])
def test_csv_and_json_rows_agree(capsys, command):
    _, doc = run_json(capsys, command, "--max-n", "5")
    _, text, _ = run(capsys, command, "--max-n", "5", "--format", "csv")
    csv_rows = sorted(tuple(r.items()) for r in csv.DictReader(io.StringIO(text)))
    cell = lambda v: "" if v is None else ("true" if v is True else "false" if v is False else str(v))
    json_rows = sorted(tuple((k, cell(v)) for k, v in r.items()) for r in doc["rows"])
    assert csv_rows == json_rows


def test_workers_do_not_change_output(capsys):
    _, one, _ = run(capsys, "sweep-lemmas", "--max-n", "5", "--workers", "1")
    _, many, _ = run(capsys, "sweep-lemmas", "--max-n", "5", "--workers", "8")
    assert one == many


def test_time_budget_reports_partial_coverage(capsys):
    code, doc = run_json(capsys, "parity", "--max-n", "6", "--time-budget", "0.05")
    cov = doc["coverage"]
    assert cov["graphs_total"] == 1 + 2 + 4 + 11 + 34 + 156
    assert cov["graphs_processed"] == len(doc["rows"])
    assert cov["complete"] == (cov["graphs_processed"] == cov["graphs_total"])


def test_timings_flag_and_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert run(capsys, "parity", "--max-n", "3", "--timings", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["duration_seconds"] >= 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "villainy", "inspect", "path(3)"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["Bw"] == 1
