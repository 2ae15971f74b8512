"""End-to-end CLI behaviour: exit codes, formats, golden outputs."""

import json

import numpy as np
import pytest

from ashmlab.cli import main
from ashmlab.construct import fixture
from ashmlab.core import dumps_ashm_txt, loads_ashm_txt
from ashmlab.latinlike import ashl_of


@pytest.fixture
def ashm_file(tmp_path):
    def write(tensor, name="t.txt"):
        path = tmp_path / name
        path.write_text(dumps_ashm_txt(tensor))
        return str(path)

    return write


def test_validate_valid_fixture(ashm_file, capsys):
    a, _ = fixture("2ashm")
    assert main(["validate", ashm_file(a)]) == 0
    assert capsys.readouterr().out.strip() == "valid ASHM, 68 non-zero entries"


def test_validate_invalid_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2\n\n1 0\n0 1\n\n1 0\n0 1\n")
    assert main(["validate", str(path)]) == 1
    err = capsys.readouterr().err
    assert "vertical" in err


def test_validate_json(ashm_file, capsys):
    a, _ = fixture("2ashm")
    assert main(["--json", "validate", ashm_file(a)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["valid"] is True and payload["nonzeros"] == 68


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["validate", "--no-such-flag", "x"])
    assert exc.value.code == 2


def test_malformed_input_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("1\n\n2\n")
    assert main(["validate", str(path)]) == 1
    assert "line 3" in capsys.readouterr().err


def test_missing_file_is_an_io_error(capsys):
    assert main(["validate", "/nonexistent/file.txt"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_ashl_prints_worked_square(ashm_file, capsys):
    t = fixture("three_by_three_neg")[0]
    assert main(["ashl", ashm_file(t)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "3"
    assert out[1:4] == ["3 2 1", "2 2 2", "1 2 3"]


def test_ashl_histogram(ashm_file, capsys):
    t = fixture("three_by_three_neg")[0]
    assert main(["ashl", "--histogram", ashm_file(t)]) == 0
    out = capsys.readouterr().out
    assert "# 2: 5" in out  # the square holds five 2s


def test_ashl_reads_stdin(monkeypatch, capsys):
    import io

    t = fixture("three_by_three_neg")[0]
    monkeypatch.setattr("sys.stdin", io.StringIO(dumps_ashm_txt(t)))
    assert main(["ashl", "-"]) == 0
    assert capsys.readouterr().out.startswith("3\n3 2 1")


def test_decompose_latin_round_trip(tmp_path, capsys):
    path = tmp_path / "latin.txt"
    path.write_text("3\n1 2 3\n2 3 1\n3 1 2\n")
    assert main(["decompose-latin", str(path)]) == 0
    t = loads_ashm_txt(capsys.readouterr().out)
    assert np.array_equal(ashl_of(t), [[1, 2, 3], [2, 3, 1], [3, 1, 2]])


def test_construct_diamond(capsys):
    assert main(["construct", "diamond", "--n", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == ["0 1 0", "1 -1 1", "0 1 0"]
    assert main(["construct", "diamond", "--n", "4", "--flipped"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "0 0 1 0"


def test_construct_max_entry_roundtrips(capsys):
    assert main(["construct", "max-entry", "--n", "7"]) == 0
    t = loads_ashm_txt(capsys.readouterr().out)
    assert t.n == 7


def test_fixture_emits_both_members(capsys):
    assert main(["fixture", "--name", "four_by_four_pair"]) == 0
    out = capsys.readouterr().out
    assert out.count("# fixture four_by_four_pair") == 2


def test_fixture_unknown_name_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fixture", "--name", "bogus"])
    assert exc.value.code == 2


def test_diff_and_pair_decompose(ashm_file, capsys):
    a, b = fixture("uneven_distance")
    fa, fb = ashm_file(a, "a.txt"), ashm_file(b, "b.txt")
    assert main(["diff-decompose", fa, fb]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["blocks"]
    assert "4,4" in payload["depth_ledger"]
    assert main(["pair-decompose", fa, fb]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert all(len(pr) == 2 for pr in payload["pairs"])
    ledger = payload["depth_ledger"]
    assert all(sum(ds) == 0 for ds in ledger.values())


def test_certify_equal_and_unequal(ashm_file, capsys):
    a, b = fixture("uneven_distance")
    assert main(["certify", ashm_file(a, "a.txt"), ashm_file(b, "b.txt")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["equal_ashl"] and payload["depth_sums_all_zero"] and payload["theorem_consistent"]
    x, y = fixture("three_by_three_neg")
    assert main(["certify", ashm_file(x, "x.txt"), ashm_file(y, "y.txt")]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert not payload["equal_ashl"] and payload["theorem_consistent"]


def test_enumerate_counts(capsys):
    assert main(["enumerate", "--kind", "asm", "--n", "4", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "42"
    assert main(["enumerate", "--kind", "ashm", "--n", "3", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "14"


def test_enumerate_stream_parses(capsys):
    assert main(["enumerate", "--kind", "ashm", "--n", "2"]) == 0
    blocks = capsys.readouterr().out.strip().split("\n\n")
    # 2 tensors x (order line + 2 planes)
    assert blocks[0].startswith("2")


def test_enumerate_cap_exceeded(capsys):
    assert main(["enumerate", "--kind", "ashm", "--n", "5", "--count-only"]) == 1
    assert "huge" in capsys.readouterr().err


def test_collide_finds_proof_pair(capsys):
    assert main(["collide", "--n", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 4
    target = [[4, 3, 2, 1], [3, 2, 3, 2], [2, 3, 2, 3], [1, 2, 3, 4]]
    assert any(g["ashl"] == target for g in payload["groups"])


def test_collide_sharded_matches_serial(capsys):
    assert main(["collide", "--n", "3"]) == 0
    serial = json.loads(capsys.readouterr().out)
    assert main(["collide", "--n", "3", "--jobs", "2"]) == 0
    sharded = json.loads(capsys.readouterr().out)
    assert serial == sharded


def test_search_replays_known_improvement(capsys):
    assert main(["search", "--from", "construct:11", "--budget", "1", "--seed", "9"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["baseline"] == [6, 73]
    assert payload["improvements"] == [{"value": 6, "count": 77}]


def test_reproduce_filtered(capsys):
    assert main(["reproduce", "--only", "s1_worked_example"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "s1_worked_example" in out


def test_reproduce_json(capsys):
    assert main(["--json", "reproduce", "--only", "latin_decomposition"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload and payload[0]["ok"] is True
