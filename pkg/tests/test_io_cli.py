import json
import subprocess
import sys

import pytest

from degree2 import io
from degree2.claims import CLAIMS, cyclic_ones, small2_generators
from degree2.cli import corpus_dir, main
from degree2.errors import InvalidInput
from degree2.gain import graham_houghton
from degree2.graphs import complete, cycle

CORPUS = corpus_dir()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- file formats ---------------------------------------------------------------

def test_graph_json_round_trip_is_bit_identical(tmp_path):
    src = (CORPUS / "k3.json").read_text()
    g = io.load_graph(CORPUS / "k3.json")
    assert g == complete(3)
    out = tmp_path / "k3.json"
    io.save_graph(g, out)
    assert out.read_text() == src


def test_edge_list_format(tmp_path):
    p = tmp_path / "c4.txt"
    p.write_text("# a 4-cycle\n4\n0 1\n1 2\n2 3\n3 0\n")
    assert io.load_graph(p) == cycle(4)
    io.save_graph(cycle(4), tmp_path / "again.txt")
    assert io.load_graph(tmp_path / "again.txt") == cycle(4)


def test_malformed_edge_names_the_edge(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 3, "edges": [[0, 5]]}')
    with pytest.raises(InvalidInput, match=r"\[0, 5\]"):
        io.load_graph(p)


def test_parse_errors_report_position(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"n": 3,\n "edges": [[0, 1],]}')
    with pytest.raises(InvalidInput, match="line 2"):
        io.load_graph(p)
    q = tmp_path / "broken.txt"
    q.write_text("3\n0 x\n")
    with pytest.raises(InvalidInput, match="line 2"):
        io.load_graph(q)


def test_twisted_matrix_file():
    S = io.load_rees(CORPUS / "cyclic_twist.json")
    assert S.group.label == "Z2"
    names = [x for row in S.entry_names() for x in row]
    assert names.count("-1") == 1
    assert S == cyclic_ones(True)


def test_gain_round_trip():
    gg = io.load_gain(CORPUS / "gh_cyclic_twist.json")
    assert gg == graham_houghton(cyclic_ones(True))
    assert io.gain_from_json(io.gain_to_json(gg)) == gg
    assert "color=red" in io.gain_to_dot(gg)


def test_gain_labels_must_name_edges():
    doc = {"group": "Z2", "n": 2, "edges": [[0, 1]], "labels": {"7": "-1"}}
    with pytest.raises(InvalidInput, match="unknown edge"):
        io.gain_from_json(doc)


def test_maps_file_accepts_strings_and_tables(tmp_path):
    p = tmp_path / "gens.json"
    p.write_text(json.dumps({"n": 3, "maps": ["1>2,2>2", [0, None, 1]]}))
    n, maps = io.load_maps(p)
    assert n == 3 and maps[0].table == (1, 1, -1) and maps[1].table == (0, -1, 1)
    assert io.load_maps(CORPUS / "small2.json")[1] == small2_generators()


def test_dot_export():
    dot = io.to_dot(cycle(4))
    assert dot.startswith("graph G {") and "0 -- 1;" in dot


# -- commands -----------------------------------------------------------------

def test_enumerate_count(capsys):
    code, out, _ = run(capsys, "enumerate", "--graph", str(CORPUS / "k3.json"), "--mode", "continuous", "--out", "count")
    assert code == 0 and out.strip() == "43"


def test_enumerate_strict_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--graph", str(CORPUS / "k22.json"), "--mode", "strict", "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 33 and data["schema"] == "degree2.report/1"


def test_check_collapse_map(capsys):
    code, out, _ = run(capsys, "check", "--graph", str(CORPUS / "p3.json"), "--map", "1>1,2>1,3>3")
    assert code == 0 and out.strip() == "continuous=true strict=false"


def test_check_across_graphs(capsys):
    code, out, _ = run(capsys, "check", "--graph", str(CORPUS / "p3.json"), "--target", str(CORPUS / "k2.json"),
                       "--map", "1>1,2>2,3>1", "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["continuous"] is False and data["witness"] == [[0, 1], [0, 1, 2]]


def test_closure_report(capsys):
    code, out, _ = run(capsys, "closure", "--gens", str(CORPUS / "small2.json"), "--report", "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 10 and data["aperiodic"] is False
    assert len(data["elements"]) == 10


def test_hull_and_rlm(capsys):
    assert run(capsys, "hull", "--rees", str(CORPUS / "z2_square.json"), "--out", "count")[1].strip() == "17"
    assert run(capsys, "hull", "--graph", str(CORPUS / "k3.json"), "--mode", "strict", "--out", "count")[1].strip() == "16"
    code, out, _ = run(capsys, "rlm", "--rees", str(CORPUS / "z2_square.json"), "--out", "json")
    assert code == 0 and json.loads(out)["order"] == 2


def test_cover_derive(capsys):
    code, out, _ = run(capsys, "cover", "--gain", str(CORPUS / "fibers_cyclic_twist.json"), "--derive", "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["connected"] and data["vertices"] == 8 and not data["g_acyclic"]


def test_trivcov_command(capsys):
    code, out, _ = run(capsys, "trivcov", "--rees", str(CORPUS / "cyclic_ones.json"), "--out", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"] and data["trivial_cover"]


def test_certify_and_check(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "--graph", str(CORPUS / "c4.json"))
    assert code == 0
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    assert json.loads(out)["all_injective"]
    code, out, _ = run(capsys, "certify", "--check", str(cert))
    assert code == 0 and "verified" in out
    code, out, _ = run(capsys, "certify", "--graph", str(CORPUS / "c4.json"), "--singular-only")
    assert json.loads(out)["bound"] == 1


def test_json_output_is_byte_identical(capsys):
    argv = ["enumerate", "--graph", str(CORPUS / "c4.json"), "--out", "json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["enumerate", "--graph", "x.json", "--bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    code, _, err = run(capsys, "hull", "--out", "count")
    assert code == 2 and "required" in err
    code, _, err = run(capsys, "enumerate", "--graph", "/does/not/exist.json")
    assert code == 2


def test_resource_limit_exits_two(capsys):
    code, _, err = run(capsys, "enumerate", "--graph", str(CORPUS / "c5.json"), "--bound", "4")
    assert code == 2 and ("bound" in err or "exceed" in err)


def test_claim_registry_covers_each_criterion_once():
    assert sorted(c.criterion for c in CLAIMS) == list(range(1, 11))
    assert len({c.id for c in CLAIMS}) == len(CLAIMS)


def test_verify_paper_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "small2.order", "--only", "3", "--out", "json")
    data = json.loads(out)
    assert code == 0
    assert [c["id"] for c in data["claims"]] == ["kbip22.strict", "small2.order"]
    assert data["corpus_mismatches"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "degree2", "enumerate", "--graph", str(CORPUS / "k2.json"),
                           "--out", "count"], capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "9"
