import json
from fractions import Fraction
import subprocess
import sys

import pytest

from ksplicer import formats
from ksplicer.cli import main
from ksplicer.connectivity import ConnectivityCertificate
from ksplicer.disjointify import RepairLog
from ksplicer.formats import FormatError
from ksplicer.splicer_stats import StatReport
from conftest import complete_graph, cycle_graph, path_graph


@pytest.mark.parametrize("fmt", formats.FORMATS)
def test_format_round_trip(fmt):
    g = cycle_graph(7).with_edge(next(iter(complete_graph(7).edge_set() - cycle_graph(7).edge_set())))
    text = formats.dumps(g, fmt)
    assert formats.loads(text) == g


def test_edgelist_layout():
    text = formats.write_edgelist(path_graph(3))
    assert text == "# n=3 m=2\n1 2\n2 3\n"


def test_edgelist_parse_errors():
    with pytest.raises(FormatError):
        formats.read_edgelist("1 2\n")
    with pytest.raises(FormatError):
        formats.read_edgelist("# n=3 m=2\n1 2\n")
    with pytest.raises(FormatError):
        formats.read_edgelist("# n=3 m=1\n1 4\n")
    with pytest.raises(FormatError):
        formats.read_edgelist("# n=3 m=1\n1 x\n")


def test_dot_is_undirected_and_one_based():
    text = formats.write_dot(complete_graph(3))
    assert text.startswith("graph G {") and "->" not in text
    assert "1 -- 2;" in text and "0 --" not in text


def _write(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(formats.write_edgelist(g))
    return p


def test_verify_examples(tmp_path, capsys):
    assert main(["verify", str(_write(tmp_path, "c5.txt", cycle_graph(5))), "--k", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["lambda"] == 2
    assert main(["verify", str(_write(tmp_path, "p4.txt", path_graph(4))), "--k", "2"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["lambda"] == 1 and len(out["witness_cut"]) == 1
    cert = ConnectivityCertificate.from_dict(out)
    assert cert.lam == 1
    assert main(["verify", str(_write(tmp_path, "k4.txt", complete_graph(4))), "--k", "3"]) == 0


def test_verify_parse_error(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a graph\n")
    assert main(["verify", str(bad), "--k", "1"]) == 2
    assert main(["verify", str(tmp_path / "missing.txt"), "--k", "1"]) == 2


def test_gen_writes_graph_and_sidecar(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--n", "10", "--k", "3", "--seed", "7", "--out", str(out)]) == 0
    meta = json.loads((tmp_path / "g.txt.meta.json").read_text())
    assert meta["seed"] == 7 and meta["lambda"] >= 3 and meta["edges"] <= 27
    assert {"n", "k", "edges", "fallbacks", "lambda", "ratio_bound"} <= set(meta)
    assert RepairLog.from_dict(meta["repair_log"]).fallbacks == meta["fallbacks"]
    g = formats.loads(out.read_text())
    assert g.edge_count == meta["edges"]
    # independent verification agrees with the generator's exit status
    assert main(["verify", str(out), "--k", "3"]) == 0


def test_gen_dot_k4(tmp_path):
    out = tmp_path / "g.dot"
    assert main(["gen", "--n", "4", "--k", "2", "--seed", "1", "--format", "dot", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("graph") and text.count("--") == 6


def test_gen_two_vertices_fails(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["gen", "--n", "2", "--k", "5", "--seed", "1", "--format", "json", "--out", str(out)]) == 1
    meta = json.loads((tmp_path / "g.json.meta.json").read_text())
    assert meta["edges"] == 1 and meta["lambda"] == 1 and meta["fallbacks"] == 4
    assert "fallback" in capsys.readouterr().err
    assert main(["verify", str(out), "--k", "5"]) == 1


def test_gen_is_byte_identical(tmp_path):
    paths = []
    for name in ("a", "b"):
        p = tmp_path / name
        main(["gen", "--n", "30", "--k", "4", "--seed", "99", "--sampler", "wilson", "--out", str(p)])
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert (tmp_path / "a.meta.json").read_bytes() == (tmp_path / "b.meta.json").read_bytes()


def test_default_seed_is_echoed(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen", "--n", "8", "--k", "2", "--out", str(out)]) == 0
    meta = json.loads((tmp_path / "g.txt.meta.json").read_text())
    assert isinstance(meta["seed"], int) and 0 <= meta["seed"] < 2 ** 64


@pytest.mark.parametrize("argv", [
    ["gen", "--n", "1", "--k", "2"],
    ["gen", "--n", "5", "--k", "0"],
    ["gen", "--n", "5"],
    ["gen", "--n", "5", "--k", "2", "--sampler", "kruskal"],
    ["gen", "--n", "5", "--k", "2", "--seed", "-3"],
    ["stats", "--n", "5", "--k", "2", "--trials", "50"],
    ["stats", "--n", "6", "--k", "2", "--oracle", "--trials", "100"],
    ["approx", "--n", "2", "--k", "1"],
    ["bogus"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_stats_hundred_vertices(capsys):
    assert main(["stats", "--n", "100", "--k", "3", "--trials", "10000", "--seed", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rows = {r["quantity"]: StatReport.from_dict(r) for r in doc["reports"]}
    assert rows["s_k"].to_dict()["exact"] == pytest.approx(291.0996)
    assert rows["s_k"].passed and rows["m"].passed and rows["var_m"].passed
    assert doc["seed"] == 3 and doc["pass"] is True


def test_stats_edge_probability_row(capsys):
    assert main(["stats", "--n", "10", "--k", "2", "--trials", "50000", "--seed", "1", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("quantity,")
    edge = next(ln for ln in lines if ln.startswith("edge_prob,"))
    assert edge.split(",")[3] == "0.2"


def test_stats_oracle(capsys):
    assert main(["stats", "--n", "4", "--k", "2", "--oracle", "--seed", "5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["oracle"] and all(o["exact"] == o["oracle"] for o in doc["oracle"])
    names = {o["quantity"] for o in doc["oracle"]}
    assert {"var_m", "cov_adjacent", "cov_nonadjacent", "common_1", "common_2"} <= names


def test_stats_table(capsys):
    assert main(["stats", "--n", "6", "--k", "2", "--trials", "500", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert "seed=2" in out and "tail_m(s=1)" in out


def test_approx_examples(capsys):
    assert main(["approx", "--n", "10", "--k", "3", "--seed", "4"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ratio_bound"] == pytest.approx(1.8) and rep["ratio"] <= 1.8
    assert main(["approx", "--n", "4", "--k", "2", "--seed", "1"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert (rep["edges"], rep["lower_bound"], rep["ratio_fraction"]) == (6, 4, "3/2")
    assert rep["ratio"] == rep["ratio_bound"] == 1.5


def test_approx_large_n_meets_cap_when_repairs_succeed(capsys):
    # S = k(n-1) and the lower bound is kn/2, so the ratio sits exactly on 2(n-1)/n
    assert main(["approx", "--n", "400", "--k", "2", "--seed", "8"]) == 0
    rep = json.loads(capsys.readouterr().out)
    n = 400
    assert rep["fallbacks"] == 0 and rep["edges"] == 2 * (n - 1)
    assert rep["ratio_fraction"] == str(Fraction(2 * (n - 1), n))


def test_module_entry_point(tmp_path):
    out = tmp_path / "g.txt"
    proc = subprocess.run([sys.executable, "-m", "ksplicer", "gen", "--n", "6", "--k", "2", "--seed", "3",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith("# n=6")
