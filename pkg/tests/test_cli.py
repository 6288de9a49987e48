import json

import pytest

import isopair.classify as classify
from isopair.classify import MultiplicityVector, pair_from_multiplicities
from isopair.cli import main
from isopair.instances import InstanceDocument


def write_model(tmp_path, name, type_index):
    pair = pair_from_multiplicities(MultiplicityVector.unit(type_index))
    path = tmp_path / name
    path.write_text(InstanceDocument.from_pair(pair).to_json_text(), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- invariants ------------------------------------------------------------------

def test_invariants_of_type5_fixture(tmp_path, capsys):
    path = write_model(tmp_path, "t5.json", 5)
    code, out, _ = run(capsys, "invariants", path)
    assert code == 0
    assert "k = (1, 1, 1, 1, 0, 0, 0, 0, 1, 1)" in out


def test_invariants_of_empty_instance(tmp_path, capsys):
    pair = pair_from_multiplicities(MultiplicityVector.zero())
    path = tmp_path / "zero.json"
    path.write_text(InstanceDocument.from_pair(pair).to_json_text(), encoding="utf-8")
    code, out, _ = run(capsys, "invariants", str(path))
    assert code == 0
    assert "k = (0, 0, 0, 0, 0, 0, 0, 0, 0, 0)" in out


def test_invariants_of_two_block_instance(tmp_path, capsys):
    pair = pair_from_multiplicities(MultiplicityVector((0, 1, 0, 0, 0, 0, 0, 0, 1, 0)))
    path = tmp_path / "two.json"
    path.write_text(InstanceDocument.from_pair(pair).to_json_text(), encoding="utf-8")
    code, out, _ = run(capsys, "invariants", str(path), "--format", "structured")
    assert code == 0
    assert json.loads(out)["k"] == [1, 1, 2, 2, 1, 1, 1, 1, 1, 1]


# -- classify ---------------------------------------------------------------------

def test_classify_every_canonical_model(tmp_path, capsys):
    for t in range(1, 11):
        path = write_model(tmp_path, f"m{t}.json", t)
        code, out, _ = run(capsys, "classify", path, "--format", "structured")
        assert code == 0
        assert json.loads(out)["n"] == list(MultiplicityVector.unit(t).entries)


def test_classify_conjugated_model_with_witness(tmp_path, capsys):
    n = MultiplicityVector((0, 1, 0, 0, 1, 0, 0, 0, 1, 0))
    pair = classify.conjugated_model(n, seed="cli")
    path = tmp_path / "conj.json"
    path.write_text(InstanceDocument.from_pair(pair).to_json_text(), encoding="utf-8")
    code, out, _ = run(capsys, "classify", str(path), "--witness", "--format", "structured")
    assert code == 0
    raw = json.loads(out)
    assert raw["n"] == list(n.entries)
    assert all(c["passed"] for c in raw["verification"])
    assert len(raw["witness"]["matrix"]) == pair.dim


def test_classify_rejects_non_isotropic(tmp_path, capsys):
    doc = {
        "mode": "presymplectic", "dim": 2,
        "form": [["0", "1"], ["-1", "0"]],
        "a": [["1", "0"], ["0", "1"]],
        "b": [],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _, err = run(capsys, "classify", str(path))
    assert code == 2
    assert "isotropic" in err


def test_malformed_json_exits_two(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"mode": ', encoding="utf-8")
    code, _, err = run(capsys, "classify", str(path))
    assert code == 2
    assert "line" in err


def test_mode_flag_mismatch_is_input_error(tmp_path, capsys):
    path = write_model(tmp_path, "t1.json", 1)
    code, _, err = run(capsys, "classify", str(path), "--mode", "poisson")
    assert code == 2
    assert "mode" in err


# -- decompose ---------------------------------------------------------------------

def test_decompose_type5_prints_whole_space(tmp_path, capsys):
    path = write_model(tmp_path, "t5.json", 5)
    code, out, _ = run(capsys, "decompose", path, "--format", "structured")
    assert code == 0
    raw = json.loads(out)
    assert raw["summand_dims"] == [0, 0, 0, 0, 3, 0, 0, 0, 0, 0]
    assert len(raw["summands"][4]) == 3
    assert all(c["passed"] for c in raw["verification"])
    assert "trace" not in raw


def test_decompose_trace_labels(tmp_path, capsys):
    path = write_model(tmp_path, "t9.json", 9)
    code, out, _ = run(capsys, "decompose", path, "--trace", "--format", "structured")
    assert code == 0
    raw = json.loads(out)
    labels = [t["label"] for t in raw["trace"]]
    assert labels[:4] == ["V1", "C1", "V2", "C2"]
    assert "Q_R" in labels and "A'" in labels and "P" in labels


def test_decompose_empty_instance(tmp_path, capsys):
    pair = pair_from_multiplicities(MultiplicityVector.zero())
    path = tmp_path / "zero.json"
    path.write_text(InstanceDocument.from_pair(pair).to_json_text(), encoding="utf-8")
    code, out, _ = run(capsys, "decompose", str(path), "--format", "structured")
    assert code == 0
    assert json.loads(out)["summand_dims"] == [0] * 10


def test_decompose_seeded_instance_self_verifies(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--dim", "7", "--rank", "4", "--seed", "7")
    assert code == 0
    path = tmp_path / "seed7.json"
    path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "decompose", str(path), "--format", "structured")
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["verification"])


# -- equivalent ---------------------------------------------------------------------

def test_file_is_equivalent_to_itself(tmp_path, capsys):
    path = write_model(tmp_path, "t6.json", 6)
    code, out, _ = run(capsys, "equivalent", path, path)
    assert code == 0
    assert "equivalent" in out


def test_swapped_pair_files_are_equivalent(tmp_path, capsys):
    pair = classify.conjugated_model(MultiplicityVector.unit(9), seed="sw")
    p1 = tmp_path / "p1.json"
    p2 = tmp_path / "p2.json"
    p1.write_text(InstanceDocument.from_pair(pair).to_json_text(), encoding="utf-8")
    p2.write_text(InstanceDocument.from_pair(pair.swapped()).to_json_text(),
                  encoding="utf-8")
    code, out, _ = run(capsys, "equivalent", str(p1), str(p2))
    assert code == 0


def test_one_sided_types_are_not_equivalent(tmp_path, capsys):
    p3 = write_model(tmp_path, "t3.json", 3)
    p4 = write_model(tmp_path, "t4.json", 4)
    code, out, _ = run(capsys, "equivalent", p3, p4)
    assert code == 1
    assert "not equivalent" in out
    assert "n1 = (0, 0, 1" in out


def test_equivalent_with_bad_input_exits_two(tmp_path, capsys):
    good = write_model(tmp_path, "t1.json", 1)
    bad = tmp_path / "bad.json"
    bad.write_text("[]", encoding="utf-8")
    code, _, err = run(capsys, "equivalent", good, str(bad))
    assert code == 2


# -- gen ---------------------------------------------------------------------------

def test_gen_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "gen", "--dim", "8", "--rank", "4", "--seed", "13")
    code2, out2, _ = run(capsys, "gen", "--dim", "8", "--rank", "4", "--seed", "13")
    assert code1 == code2 == 0
    assert out1 == out2


def test_gen_dim_zero(capsys):
    code, out, _ = run(capsys, "gen", "--dim", "0")
    assert code == 0
    raw = json.loads(out)
    assert raw["dim"] == 0 and raw["form"] == [] and raw["a"] == []


def test_gen_multiplicities_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--multiplicities", "0,0,0,0,1,0,0,0,0,0",
                       "--seed", "1")
    assert code == 0
    path = tmp_path / "e5.json"
    path.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "classify", str(path), "--format", "structured")
    assert code == 0
    assert json.loads(out)["n"] == [0, 0, 0, 0, 1, 0, 0, 0, 0, 0]


def test_gen_validates_flag_consistency(capsys):
    code, _, err = run(capsys, "gen", "--multiplicities", "1,0,0,0,0,0,0,0,0,0",
                       "--dim", "5")
    assert code == 2 and "does not match" in err
    code, _, err = run(capsys, "gen", "--dim", "4", "--rank", "3")
    assert code == 2
    code, _, err = run(capsys, "gen")
    assert code == 2


def test_gen_poisson_mode_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--dim", "5", "--rank", "2", "--seed", "2",
                       "--mode", "poisson")
    assert code == 0
    raw = json.loads(out)
    assert raw["mode"] == "poisson" and "c1" in raw and "c2" in raw
    path = tmp_path / "pois.json"
    path.write_text(out, encoding="utf-8")
    code_p, out_p, _ = run(capsys, "classify", str(path), "--format", "structured")
    assert code_p == 0
    code_s, out_s, _ = run(capsys, "gen", "--dim", "5", "--rank", "2", "--seed", "2")
    path2 = tmp_path / "pres.json"
    path2.write_text(out_s, encoding="utf-8")
    code_q, out_q, _ = run(capsys, "classify", str(path2), "--format", "structured")
    assert json.loads(out_p)["n"] == json.loads(out_q)["n"]


# -- batch mode ---------------------------------------------------------------------

def test_multiple_inputs_write_report_files(tmp_path, capsys):
    paths = [write_model(tmp_path, f"m{t}.json", t) for t in (2, 7)]
    code, out, _ = run(capsys, "classify", *paths, "--format", "structured")
    assert code == 0
    for t, path in zip((2, 7), paths):
        report = json.loads((tmp_path / f"m{t}.json.report.json").read_text())
        assert report["n"] == list(MultiplicityVector.unit(t).entries)


def test_batch_mode_with_jobs_flag(tmp_path, capsys):
    paths = [write_model(tmp_path, f"j{t}.json", t) for t in (1, 8, 10)]
    code, out, _ = run(capsys, "invariants", *paths, "--jobs", "2")
    assert code == 0
    for t in (1, 8, 10):
        assert (tmp_path / f"j{t}.json.report.txt").exists()


# -- selfcheck ----------------------------------------------------------------------

def test_selfcheck_passes(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    assert out.count("ok") == 5 and "FAIL" not in out


def test_selfcheck_detects_perturbed_matrix(capsys, monkeypatch):
    rows = [list(r) for r in classify._M_ROWS]
    rows[0][0] += 1
    monkeypatch.setattr(classify, "_M_ROWS", tuple(tuple(r) for r in rows))
    code, out, _ = run(capsys, "selfcheck")
    assert code == 1
    assert "FAIL matrix M column check" in out
