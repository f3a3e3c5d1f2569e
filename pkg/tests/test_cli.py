import json

import pytest

from splitdecomp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def edge_file(tmp_path):
    def write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_decompose_p4(capsys, edge_file):
    code, out, _ = run(capsys, "decompose", edge_file("4 3\n0 1\n1 2\n2 3\n"))
    assert code == 0
    doc = json.loads(out)
    assert sorted(node["kind"] for node in doc["nodes"]) == ["star", "star"]


def test_decompose_k4(capsys, edge_file):
    text = "4 6\n" + "".join(f"{i} {j}\n" for i in range(4) for j in range(i + 1, 4))
    code, out, _ = run(capsys, "decompose", edge_file(text))
    assert code == 0
    assert [node["kind"] for node in json.loads(out)["nodes"]] == ["clique"]


def test_disconnected_exits_2(capsys, edge_file):
    code, _, err = run(capsys, "decompose", edge_file("4 2\n0 1\n2 3\n"))
    assert code == 2 and "disconnected" in err


def test_parse_errors_exit_1(capsys, edge_file):
    assert run(capsys, "decompose", edge_file("3 1\n0 7\n"))[0] == 1
    assert run(capsys, "decompose", edge_file("3 1\n0 0\n"))[0] == 1
    assert run(capsys, "decompose", edge_file("3 2\n0 1\n0 1\n"))[0] == 1
    assert run(capsys, "decompose", edge_file("oops\n"))[0] == 1
    assert run(capsys, "decompose", "/nonexistent/file")[0] == 1
    assert run(capsys, "decompose", edge_file("3 2\n0 1\n1 2\n"), "--start", "9")[0] == 1


def test_per_component(capsys, edge_file):
    code, out, _ = run(capsys, "decompose", edge_file("5 3\n0 1\n2 3\n3 4\n"), "--per-component")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 2
    assert sorted(len(d["leaves"]) for d in docs) == [2, 3]


def test_stats_and_out(capsys, edge_file, tmp_path):
    path = edge_file("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
    out_file = tmp_path / "tree.json"
    code, out, _ = run(capsys, "decompose", path, "--stats", "--out", str(out_file))
    assert code == 0 and out == ""
    doc = json.loads(out_file.read_text())
    assert doc["stats"]["n"] == 5 and doc["stats"]["m"] == 5


def test_dot(capsys, edge_file):
    code, out, _ = run(capsys, "decompose", edge_file("3 2\n0 1\n1 2\n"), "--format", "dot", "--stats")
    assert code == 0
    assert out.startswith("graph") and "// stats" in out


def test_byte_identical_reruns(capsys, edge_file):
    path = edge_file("6 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n1 4\n")
    for fmt in ("json", "dot"):
        first = run(capsys, "decompose", path, "--format", fmt)[1]
        assert run(capsys, "decompose", path, "--format", fmt)[1] == first


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("2 1\n0 1\n"))
    code, out, _ = run(capsys, "decompose", "-")
    assert code == 0 and json.loads(out)["leaves"]


def test_validate_small(capsys):
    code, out, _ = run(capsys, "validate", "--exhaustive-n", "4", "--random", "20", "--seed", "3")
    assert code == 0
    assert "splits" in out and "FAIL" not in out


def test_validate_catches_mutation(capsys):
    code, out, _ = run(capsys, "validate", "--exhaustive-n", "3", "--random", "150", "--seed", "1", "--mutate", "skip-cleaning")
    assert code == 3
    assert "minimal counterexample" in out


def test_validate_rejects_large_exhaustive(capsys):
    assert run(capsys, "validate", "--exhaustive-n", "7")[0] == 1


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "1,50,200", "--json")
    assert code == 0
    rows = json.loads(out[out.index("["):])
    assert [r["n"] for r in rows] == [1, 50, 200]
    code, out, _ = run(capsys, "bench", "--sizes", "30", "--family", "path-chord")
    assert code == 0 and "joins=27" in out
    assert run(capsys, "bench", "--sizes", "x")[0] == 1
    assert run(capsys, "bench", "--sizes", "0")[0] == 1
