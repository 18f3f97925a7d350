import json

import numpy as np
import pytest

from tritangle import PureState, state_from_amplitudes
from tritangle.cli import main
from tritangle.stateio import load_state, save_state, state_from_dict

from conftest import R2


@pytest.fixture
def ghz_file(tmp_path):
    path = tmp_path / "ghz.json"
    save_state(str(path), state_from_amplitudes([R2, 0, 0, 0, 0, 0, 0, R2]), label="ghz")
    return str(path)


def test_state_io_round_trip(tmp_path, rng):
    amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    path = tmp_path / "state.json"
    save_state(str(path), PureState(amps), label="random")
    state, label = load_state(str(path))
    assert label == "random"
    assert np.max(np.abs(state.amplitudes - amps)) <= 1e-16


def test_state_io_validation():
    from tritangle.errors import InvalidStateError

    with pytest.raises(InvalidStateError):
        state_from_dict({"amplitudes": [[0, 0]] * 7})
    with pytest.raises(InvalidStateError):
        state_from_dict({"amplitudes": [[0, 0]] * 7 + [[1]]})
    with pytest.raises(InvalidStateError):
        state_from_dict({"amplitudes": [["x", 0]] + [[0, 0]] * 7})
    with pytest.raises(InvalidStateError):
        state_from_dict([1, 2, 3])


def test_cli_analyze(ghz_file, capsys):
    assert main(["analyze", ghz_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["tau_abc"] == pytest.approx(1.0, abs=1e-12)
    assert payload["sigma"] == pytest.approx(0.0, abs=1e-12)
    assert payload["hyperdet"][0] == pytest.approx(0.25, abs=1e-12)
    assert payload["sigma_comparison"]["sigma_direction_norms"] == pytest.approx(
        0.5, abs=1e-12
    )
    assert payload["diagnostics"] == []


def test_cli_classify(ghz_file, capsys):
    assert main(["classify", ghz_file, "--tol", "1e-8"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["label"] == "GHZClass"
    assert payload["witnesses"]["tau_abc"] == pytest.approx(1.0, abs=1e-12)


def test_cli_canonical(ghz_file, capsys):
    assert main(["canonical", ghz_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["forms"]) == 2
    assert payload["forms"][0]["lambdas"][0] == pytest.approx(R2, abs=1e-12)
    assert "op_a" in payload["forms"][0]["transform"]
    assert payload["discriminant_phase"] == pytest.approx(0.0, abs=1e-12)


def test_cli_sweep(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code = main([
        "sweep", "--ensemble", "gaussian", "--count", "400", "--seed", "9",
        "--checks", "kempe,ckw,monogamy,plucker,paths,sigma",
        "--out", str(out),
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["violations"] == {k: 0 for k in payload["violations"]}
    assert out.exists()


def test_cli_selftest(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_cli_missing_file_is_input_error(capsys):
    assert main(["analyze", "/no/such/file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_malformed_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["analyze", str(path)]) == 2
    path.write_text('{"amplitudes": [[0, 0]]}')
    assert main(["analyze", str(path)]) == 2
