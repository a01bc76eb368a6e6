import json

from htlogic import (
    algebra_from_dict,
    algebra_to_dict,
    check_isomorphic,
    find_frame_isomorphism,
    frame_from_dict,
    frame_to_dict,
    make_b,
    make_bt,
    make_k0,
    model_from_dict,
    model_to_dict,
    model_truth,
    parse_formula,
)
from htlogic.cli import run
from htlogic.frame import HTModel


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_decide_valid(capsys):
    code, out, _ = invoke(capsys, "decide", "S1 p | ~S1 p")
    assert code == 0
    assert out.strip() == "valid"


def test_decide_refuted_prints_evidence(capsys):
    code, out, _ = invoke(capsys, "decide", "p | ~p")
    assert code == 1
    assert "counter-assignment: p=mid" in out
    assert "countermodel:" in out


def test_decide_json_round_trips(capsys):
    code, out, _ = invoke(capsys, "decide", "p | ~p", "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["holds"] is False
    assert data["counter_assignment"] == {"p": "mid"}
    model = model_from_dict(data["countermodel"])
    assert not model_truth(model, parse_formula(data["conclusion"])).holds


def test_decide_with_assumptions(capsys):
    code, out, _ = invoke(capsys, "decide", "p", "--assume", "S1 p")
    assert code == 0
    assert out.strip() == "holds"
    code, _, _ = invoke(capsys, "decide", "p", "--assume", "S2 p")
    assert code == 1


def test_decide_bad_formula_is_usage_error(capsys):
    code, _, err = invoke(capsys, "decide", "p -> ")
    assert code == 2
    assert "error" in err


def test_gen_outputs_reparse(capsys):
    code, out, _ = invoke(capsys, "gen", "bt")
    assert code == 0
    assert algebra_from_dict(json.loads(out)) == make_bt()
    code, out, _ = invoke(capsys, "gen", "b")
    assert algebra_from_dict(json.loads(out)) == make_b()
    code, out, _ = invoke(capsys, "gen", "k0")
    assert frame_from_dict(json.loads(out)) == make_k0()


def test_dualize_to_frame_matches_gen_k0(capsys):
    code, out, _ = invoke(capsys, "dualize", "--to-frame", "bt")
    assert code == 0
    frame = frame_from_dict(json.loads(out))
    assert find_frame_isomorphism(frame, make_k0()) is not None


def test_dualize_to_algebra(capsys):
    code, out, _ = invoke(capsys, "dualize", "--to-algebra", "k0")
    assert code == 0
    algebra = algebra_from_dict(json.loads(out))
    assert check_isomorphic(algebra, make_bt()) is not None


def test_check_algebra_passes_and_fails(tmp_path, capsys):
    good = write_json(tmp_path / "bt.json", algebra_to_dict(make_bt()))
    code, out, _ = invoke(capsys, "check-algebra", good)
    assert code == 0
    assert "t_structure: passed" in out

    tampered = algebra_to_dict(make_bt())
    tampered["s2"] = dict(tampered["s1"])
    bad = write_json(tmp_path / "bad.json", tampered)
    code, out, _ = invoke(capsys, "check-algebra", bad)
    assert code == 1
    assert "T6" in out


def test_check_algebra_schema_error(tmp_path, capsys):
    data = algebra_to_dict(make_bt())
    data["surprise"] = True
    path = write_json(tmp_path / "weird.json", data)
    code, _, err = invoke(capsys, "check-algebra", path)
    assert code == 2
    assert "unknown algebra fields" in err


def test_check_algebra_missing_file(capsys):
    code, _, err = invoke(capsys, "check-algebra", "/nonexistent.json")
    assert code == 2


def test_check_frame_close_flag(tmp_path, capsys):
    data = frame_to_dict(make_k0())
    data["R"] = [["t1", "t2"]]  # not reflexive as given
    path = write_json(tmp_path / "open.json", data)
    code, out, _ = invoke(capsys, "check-frame", path)
    assert code == 1
    assert "K1" in out
    code, out, _ = invoke(capsys, "check-frame", path, "--close")
    assert code == 0
    assert "fixed-point: true" in out


def test_check_model(tmp_path, capsys):
    model = HTModel(make_k0(), {"p": ["t2"]})
    path = write_json(tmp_path / "model.json", model_to_dict(model))
    code, out, _ = invoke(capsys, "check-model", path)
    assert code == 0

    bad = HTModel(make_k0(), {"p": ["t1"]})
    path = write_json(tmp_path / "bad.json", model_to_dict(bad))
    code, out, _ = invoke(capsys, "check-model", path)
    assert code == 1
    assert "her-at" in out


def test_check_model_with_frame_reference(tmp_path, capsys):
    write_json(tmp_path / "frame.json", frame_to_dict(make_k0()))
    path = write_json(tmp_path / "model.json", {"frame": "frame.json", "m": {"p": ["t2"]}})
    code, _, _ = invoke(capsys, "check-model", path)
    assert code == 0


def test_eval_builtin_algebra(capsys):
    code, out, _ = invoke(capsys, "eval", "S2 p", "--algebra", "bt", "--assign", "p=mid")
    assert code == 0
    assert out.strip() == "top"


def test_eval_file_algebra(tmp_path, capsys):
    path = write_json(tmp_path / "b.json", algebra_to_dict(make_b()))
    code, out, _ = invoke(
        capsys, "eval", "p -> q", "--algebra", path, "--assign", "p=top,q=bot"
    )
    assert code == 0
    assert out.strip() == "bot"


def test_eval_bad_assignment(capsys):
    code, _, err = invoke(capsys, "eval", "p", "--algebra", "bt", "--assign", "p")
    assert code == 2


def test_sat_exit_codes(tmp_path, capsys):
    model = HTModel(make_k0(), {"p": ["t2"]})
    path = write_json(tmp_path / "model.json", model_to_dict(model))
    code, out, _ = invoke(capsys, "sat", "S2 p", "--model", path, "--state", "t1")
    assert code == 0
    assert out.strip() == "true"
    code, out, _ = invoke(capsys, "sat", "p", "--model", path, "--state", "t1")
    assert code == 1
    assert out.strip() == "false"
    code, _, _ = invoke(capsys, "sat", "p", "--model", path, "--state", "t9")
    assert code == 2


def test_harness(capsys):
    code, out, _ = invoke(
        capsys, "harness", "--depth", "2", "--vars", "1", "--frames", "2"
    )
    assert code == 0
    assert "discrepancies: 0" in out


def test_harness_json(capsys):
    code, out, _ = invoke(
        capsys,
        "harness", "--depth", "1", "--vars", "1", "--frames", "2", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["formulas"] == 7
    assert data["discrepancies"] == []


def test_usage_error(capsys):
    assert run(["no-such-command"]) == 2
    assert run([]) == 2
