import json

import pytest

from orbit_frames.cli.commands import COMMANDS, CommandResult
from orbit_frames.cli.main import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main

DUPLICATED = json.dumps({"dim": 3, "vectors": [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]})
ONB = json.dumps({"dim": 2, "label": "onb", "vectors": [[1, 0], [0, 1]]})


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    return json.loads(out)


def test_analyze_orthonormal_basis(capsys):
    payload = run_json(capsys, "analyze", "--input", ONB)
    assert payload["label"] == "onb"
    assert payload["lower_bound_A"] == pytest.approx(1.0)
    assert payload["upper_bound_B"] == pytest.approx(1.0)
    assert payload["is_riesz_basis"] and payload["is_tight"]


def test_represent_duplicated_family(capsys):
    payload = run_json(capsys, "represent", "--input", DUPLICATED)
    assert payload["representable"] is False
    assert payload["kernel_invariance_residual"] == pytest.approx(1.0)
    assert "sandwich" in payload
    code, _, err = run(capsys, "represent", "--input", DUPLICATED, "--strict")
    assert code == EXIT_NEGATIVE


def test_represent_with_two_duals(capsys, tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    first.write_text(json.dumps({"dim": 3, "vectors": [[0.5, 0, 0], [0.5, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    second.write_text(json.dumps({"dim": 3, "vectors": [[1, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    payload = run_json(capsys, "represent", "--input", DUPLICATED, "--dual", str(first), "--dual", str(second))
    assert payload["dual_gap"] > 0.5


def test_carleson_of_the_dyadic_model(capsys):
    payload = run_json(capsys, "carleson", "--alpha", "2", "--dim", "12")
    assert payload["infimum"] == pytest.approx(1.688683266648814e-02, rel=1e-10)
    assert payload["minimizer"] == 7
    assert payload["satisfied"] is True


def test_carleson_csv(capsys):
    code, out, _ = run(capsys, "carleson", "--dim", "3", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "k,product"
    assert len(lines) == 4
    assert lines[1].startswith("1,")


def test_carleson_needs_a_model(capsys):
    code, _, err = run(capsys, "carleson")
    assert code == EXIT_ERROR
    assert "InvalidParams" in err


def test_malformed_document(capsys):
    code, out, err = run(capsys, "analyze", "--input", '{"dim": }')
    assert code == EXIT_ERROR
    assert out == ""
    assert err.strip() == "<inline>:1:9: Expecting value"


def test_model_outside_the_disc(capsys):
    code, _, err = run(capsys, "carleson", "--input", '{"lambdas": [[1.5, 0.0]]}')
    assert code == EXIT_ERROR
    assert "ModulusOutOfRange" in err


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", "--input", str(tmp_path / "missing.json"))
    assert code == EXIT_ERROR
    assert "IOError" in err


def test_usage_errors_exit_with_one():
    with pytest.raises(SystemExit) as excinfo:
        main(["analyze", "--format", "xml"])
    assert excinfo.value.code == EXIT_ERROR
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == EXIT_ERROR


def test_option_ranges_are_checked(capsys):
    for argv in (["--depth", "0"], ["--tail", "0"], ["--workers", "0"], ["--seed", "-1"], ["--tol-rank", "2"]):
        code, _, _ = run(capsys, "carleson", "--dim", "2", *argv)
        assert code == EXIT_ERROR


@pytest.mark.parametrize("kind", ["onb", "riesz_random", "duplicated_first", "spectral_orbit", "direct_sum"])
def test_generate_kinds(capsys, kind):
    payload = run_json(capsys, "generate", "--kind", kind, "--dim", "3")
    assert set(payload) == {"dim", "label", "vectors", "metadata"}
    assert len(payload["vectors"]) >= 3


def test_generate_is_deterministic(capsys):
    first = run(capsys, "generate", "--kind", "riesz_random", "--dim", "4", "--seed", "5")
    second = run(capsys, "generate", "--kind", "riesz_random", "--dim", "4", "--seed", "5")
    other = run(capsys, "generate", "--kind", "riesz_random", "--dim", "4", "--seed", "6")
    assert first == second
    assert first[1] != other[1]


def test_generate_rejects_csv(capsys):
    code, _, _ = run(capsys, "generate", "--format", "csv")
    assert code == EXIT_ERROR


def test_out_creates_directories(capsys, tmp_path):
    target = tmp_path / "reports" / "nested" / "onb.json"
    code, out, _ = run(capsys, "analyze", "--input", ONB, "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text())["upper_bound_B"] == pytest.approx(1.0)


def test_generate_then_represent(capsys, tmp_path):
    family = tmp_path / "orbit.json"
    assert main(["generate", "--kind", "spectral_orbit", "--dim", "2", "--out", str(family)]) == EXIT_OK
    capsys.readouterr()
    payload = run_json(capsys, "represent", "--input", str(family), "--strict")
    assert payload["representable"] is True
    assert payload["sandwich"]["hi_ok"] is True


def test_spectral_with_rotation(capsys):
    payload = run_json(capsys, "spectral", "--dim", "3", "--rotate", "--strict")
    assert payload["representable"] is True
    assert payload["closed_form_gap"] <= 1e-8
    assert payload["tight_operator_norm"] == pytest.approx(1.0, abs=1e-6)
    assert payload["rotated"]["lower_bound_A"] == pytest.approx(payload["truncated"]["lower_bound_A"], rel=1e-8)


def test_structure_of_a_model_document(capsys):
    payload = run_json(capsys, "structure", "--input", '{"lambdas": [[0.5, 0.0], [0.75, 0.0]]}', "--strict")
    assert payload["chains"]["q_T"] == 0
    assert payload["tail_stabilization_index"] == 0
    assert payload["orbit_length"] == 8


def test_structure_of_a_jordan_block(capsys):
    document = json.dumps({
        "operator": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
        "generator": [[0, 0], [1, 0]],
        "depth": 6,
    })
    payload = run_json(capsys, "structure", "--input", document)
    assert payload["chains"]["q_T"] == 2
    assert payload["tail_stabilization_index"] == 2


def test_structure_schema_errors(capsys):
    code, _, err = run(capsys, "structure", "--input", '{"operator": [[[1, 0]]]}')
    assert code == EXIT_ERROR
    assert "generator" in err


def test_swap_in_the_tail(capsys, tmp_path):
    family = tmp_path / "orbit.json"
    assert main(["generate", "--kind", "spectral_orbit", "--dim", "2", "--out", str(family)]) == EXIT_OK
    capsys.readouterr()
    payload = run_json(capsys, "swap", "--input", str(family), "--first", "5", "--second", "9")
    assert payload["span_condition"] is True
    assert payload["representable"] is False


def test_swap_needs_positions(capsys):
    code, _, _ = run(capsys, "swap", "--input", DUPLICATED, "--first", "1")
    assert code == EXIT_ERROR


def test_perturb_inside_the_radius(capsys):
    payload = run_json(capsys, "perturb", "--dim", "6", "--block", "2", "--strict")
    assert payload["mu"] == pytest.approx(0.75)
    assert payload["is_frame"] is True
    assert payload["norm_phi_tilde"] == pytest.approx(0.5 * payload["radius"])
    assert payload["energy"] <= payload["energy_bound"] + 1e-8


def test_trend_csv(capsys):
    code, out, _ = run(capsys, "trend", "--dims", "2", "4", "--format", "csv", "--seed", "3")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "d,J,depth,lower_bound,upper_bound"
    assert [line.split(",")[0] for line in lines[1:]] == ["2", "4"]


def test_trend_json(capsys):
    payload = run_json(capsys, "trend", "--dims", "2", "4", "8", "--generators", "basis")
    assert payload["non_increasing"] is True
    assert [p["J"] for p in payload["points"]] == [2, 4, 8]


def test_trend_is_strictly_decreasing(capsys):
    payload = run_json(capsys, "trend", "--seed", "3", "--strict")
    assert [p["d"] for p in payload["points"]] == [4, 8, 16, 32]
    assert payload["decreasing"] is True
    assert payload["points"][-1]["lower_bound"] > 0.0


def test_trend_basis_generators_reject_a_generator_count(capsys):
    code, out, err = run(capsys, "trend", "--generators", "basis", "--J", "2")
    assert code == EXIT_ERROR
    assert out == ""
    assert "InvalidParams" in err


MODEL = '{"lambdas": [[0.5, 0.0], [0.75, 0.0]]}'


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--input", "{family}"],
        ["analyze", "--input", "{family}", "--format", "csv"],
        ["represent", "--input", "{family}"],
        ["represent", "--input", "{family}", "--format", "csv"],
        ["carleson", "--dim", "6"],
        ["carleson", "--dim", "6", "--format", "csv"],
        ["spectral", "--dim", "3", "--rotate"],
        ["spectral", "--dim", "3", "--rotate", "--format", "csv"],
        ["structure", "--input", MODEL],
        ["structure", "--input", MODEL, "--format", "csv"],
        ["swap", "--input", "{family}", "--first", "5", "--second", "9"],
        ["swap", "--input", "{family}", "--first", "5", "--second", "9", "--format", "csv"],
        ["perturb", "--dim", "6", "--block", "2"],
        ["perturb", "--dim", "6", "--block", "2", "--format", "csv"],
        ["trend", "--dims", "4", "8", "16"],
        ["trend", "--dims", "4", "8", "16", "--workers", "2"],
        ["trend", "--dims", "4", "8", "16", "--workers", "2", "--format", "csv"],
        ["generate", "--kind", "riesz_random", "--dim", "4"],
        ["generate", "--kind", "spectral_orbit", "--dim", "3", "--seed", "9"],
    ],
)
def test_reports_are_deterministic(capsys, tmp_path, argv):
    family = tmp_path / "orbit.json"
    assert main(["generate", "--kind", "spectral_orbit", "--dim", "2", "--out", str(family)]) == EXIT_OK
    capsys.readouterr()
    argv = [arg.replace("{family}", str(family)) for arg in argv]
    first_code, first_out, _ = run(capsys, *argv)
    second_code, second_out, _ = run(capsys, *argv)
    assert first_code == second_code == EXIT_OK
    assert first_out and first_out == second_out


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_trend_threads_do_not_change_the_report(capsys, fmt):
    argv = ["trend", "--dims", "4", "8", "16", "--J", "2", "--format", fmt]
    code, single, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert run(capsys, *argv, "--workers", "2")[1] == single


def test_input_that_is_not_utf8(capsys, tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"dim": 2,\n "label": "\xff"}')
    code, out, err = run(capsys, "analyze", "--input", str(path))
    assert code == EXIT_ERROR
    assert out == ""
    assert err.strip() == f"{path}:2:12: Invalid UTF-8 (invalid start byte)"


def test_unserializable_report(capsys, monkeypatch):
    monkeypatch.setitem(COMMANDS, "analyze", lambda config: CommandResult({"value": object()}))
    code, out, err = run(capsys, "analyze", "--input", ONB)
    assert code == EXIT_ERROR
    assert out == ""
    assert err.startswith("ValueError: ")


def test_represent_reports_the_tight_orbit_check(capsys):
    document = json.dumps({"dim": 2, "vectors": [[1, 0], [0, 1], [1, 0], [0, 1]]})
    payload = run_json(capsys, "represent", "--input", document)
    assert payload["representable"] is True
    assert payload["tight_orbit"]["is_tight"] is True
    assert payload["tight_orbit"]["unit_norm"] is True
    assert payload["tight_orbit"]["isometry_scale"] == pytest.approx(1.0)
