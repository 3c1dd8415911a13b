import csv
import io
import json
import re
import subprocess
import sys

import pytest

from dusub.cli import EXIT_DISCREPANCY, EXIT_INPUT, EXIT_OK, run_cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_duas(max_json_path):
    code, out, _ = run("duas", max_json_path)
    assert code == EXIT_OK
    assert out.rstrip().endswith("24 DUAs")
    assert "(0, (3,5), array)" in out


def test_analyze_text(max_json_path):
    code, out, _ = run("analyze", max_json_path)
    assert code == EXIT_OK
    assert "unconstrained nodes: 5" in out
    assert "8/24 (33%)" in out
    assert "+ " not in out
    _, with_global, _ = run("analyze", "--global", max_json_path)
    assert "node 5: local 6, global 8" in with_global
    assert "  + (0, 4, i)" in with_global


def test_analyze_json(max_json_path):
    code, out, _ = run("analyze", "--format", "json", max_json_path)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["coverage"] == {"covered": 8, "total": 24, "ratio": "8/24", "percent": 33, "no_requirements": False}
    assert doc["unconstrained"] == [5]
    assert doc["stats"]["iterations"] == 3
    assert len(doc["global"]["5"]) == 8


def test_analyze_csv_and_figure(max_cfg_path, tmp_path):
    fig = tmp_path / "out" / "max.png"
    code, out, err = run("analyze", "--format", "csv", "--figure", str(fig), max_cfg_path)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["node"] for r in rows] == [str(n) for n in range(7)]
    assert rows[5]["local"] == "6" and rows[5]["global"] == "8"
    assert rows[5]["global_duas"].count(";") == 7
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert str(fig) in err


def test_check(max_json_path):
    code, out, _ = run("check", max_json_path)
    assert code == EXIT_OK
    assert "agrees" in out and "edge bound 2" in out
    code, out, _ = run("check", "--path-bound", "3", max_json_path)
    assert code == EXIT_OK and "edge bound 3" in out


def test_check_discrepancy(max_json_path, monkeypatch):
    from dusub.oracle import mop_covered_all

    def skewed(g, universe, bound):
        sets = mop_covered_all(g, universe, bound)
        sets[5] = universe.empty()
        return sets

    monkeypatch.setattr("dusub.oracle.mop_covered_all", skewed)
    code, out, _ = run("check", max_json_path)
    assert code == EXIT_DISCREPANCY
    assert out.startswith("1 node(s) disagree")
    assert "solver only: (3, 5, rogue)" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--path-bound", "0", "X"],
        ["analyze", "--format", "xml", "X"],
        ["frobnicate", "X"],
        [],
    ],
)
def test_bad_arguments(argv, max_json_path):
    argv = [max_json_path if a == "X" else a for a in argv]
    code, _, err = run(*argv)
    assert code == EXIT_INPUT
    assert "usage:" in err or err == ""


def test_missing_file(tmp_path):
    code, out, err = run("analyze", str(tmp_path / "nope.json"))
    assert code == EXIT_INPUT and out == ""
    assert "file not found" in err


def test_bad_input_file(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("graph g\nstart 0\nexit 1\nedge 0 1 puse 2x\n")
    code, _, err = run("duas", str(p))
    assert code == EXIT_INPUT
    assert "line 4" in err


def test_warning_is_reported(tmp_path):
    p = tmp_path / "w.cfg"
    p.write_text("graph w\nstart 0\nexit 1\nnode 1 use ghost\nedge 0 1\n")
    code, _, err = run("duas", str(p))
    assert code == EXIT_OK
    assert err.startswith("dusub: warning:") and "ghost" in err


_DOT_LINE = [
    re.compile(r'^digraph "[^"\\]*(\\.[^"\\]*)*" \{$'),
    re.compile(r'^  node \[shape=box, fontname="monospace"\];$'),
]
_DOT_NODE = re.compile(r'^  n(\d+) \[label="((?:[^"\\]|\\.)*)"(, peripheries=2)?(, style=bold)?\];$')
_DOT_EDGE = re.compile(r"^  n(\d+) -> n(\d+);$")


def check_dot(text):
    """Line-level grammar for the DOT subset the exporter writes."""
    lines = text.splitlines()
    assert _DOT_LINE[0].match(lines[0]), lines[0]
    assert _DOT_LINE[1].match(lines[1])
    assert lines[-1] == "}"
    nodes, edges = {}, []
    for line in lines[2:-1]:
        if m := _DOT_NODE.match(line):
            nodes[int(m.group(1))] = m
        elif m := _DOT_EDGE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
        else:
            raise AssertionError(f"not DOT: {line!r}")
    assert all(p in nodes and s in nodes for p, s in edges)
    return nodes, edges


@pytest.mark.parametrize("labels,count5", [("local", 6), ("global", 8)])
def test_export_dot(max_json_path, labels, count5):
    code, out, _ = run("export", "--labels", labels, max_json_path)
    assert code == EXIT_OK
    nodes, edges = check_dot(out)
    assert sorted(nodes) == list(range(7))
    assert len(edges) == 8
    assert nodes[6].group(3) and nodes[0].group(4)
    assert nodes[5].group(2).count("\\l") == count5 + 1


def test_reports_deterministic(max_json_path, max_cfg_path):
    outs = {run("analyze", "--format", "json", p)[1] for p in (max_json_path, max_cfg_path) for _ in range(2)}
    assert len(outs) == 1


def test_module_entry_point(max_cfg_path):
    proc = subprocess.run(
        [sys.executable, "-m", "dusub", "analyze", "--format", "csv", max_cfg_path],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("node,local,global,local_duas,global_duas")
    version = subprocess.run([sys.executable, "-m", "dusub", "--version"], capture_output=True, text=True)
    assert version.stdout.strip() == "dusub 0.1.0"
