import io
import json

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from app.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main, parse_n_list
from app.params import CONVENTIONS, OUTPUT_DIR_ENV, VERSION


@pytest.fixture(autouse=True)
def _no_output_dir(monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)


def _run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


# ANALYSE DES ARGUMENTS
def test_parse_n_list():
    assert parse_n_list("32,64, 128") == (32, 64, 128)
    args = build_parser().parse_args(["limit", "--n-list", "8,16"])
    assert args.n_list == (8, 16)


def test_unknown_command_exits_with_usage_code():
    with pytest.raises(SystemExit) as error:
        main(["train"])
    assert error.value.code == EXIT_USAGE


def test_version(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert VERSION in capsys.readouterr().out


# VERIFY
def test_verify_passes(capsys):
    code, document = _run_json(capsys, ["verify", "--n", "4"])
    assert code == EXIT_OK
    assert document["metadata"]["command"] == "verify"
    assert document["metadata"]["n"] == 4
    assert document["metadata"]["conventions"] == CONVENTIONS
    assert document["report"]["all_passed"]
    assert document["report"]["failed"] == []


def test_verify_rejects_small_order(capsys):
    assert main(["verify", "--n", "1"]) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_verify_csv(capsys):
    assert main(["verify", "--n", "12", "--output-format", "csv"]) == EXIT_OK
    text = capsys.readouterr().out
    assert text.startswith("# command=verify\n")
    frame = pd.read_csv(io.StringIO(text), comment="#")
    assert list(frame.columns) == ["identity", "group", "max_deviation", "tolerance", "passed", "mode"]
    assert frame["passed"].all()


# COMMUTATOR ET UNCERTAINTY
def test_commutator(capsys):
    code, document = _run_json(capsys, ["commutator", "--n", "2"])
    assert code == EXIT_OK
    matrix = np.array(document["report"]["matrix"])
    assert_allclose(matrix[..., 0], [[0, 0.5], [-0.5, 0]], atol=1e-12)
    assert_allclose(matrix[..., 1], np.zeros((2, 2)), atol=1e-12)
    assert document["report"]["passed"]


def test_uncertainty(capsys):
    code, document = _run_json(capsys, ["uncertainty", "--n", "2", "--trials", "100", "--seed", "3"])
    assert code == EXIT_OK
    assert document["report"]["found"]
    assert document["report"]["robertson_violations"] == 0
    assert document["report"]["witness"]["n"] == 2


def test_uncertainty_needs_trials():
    assert main(["uncertainty", "--n", "2", "--trials", "0"]) == EXIT_USAGE


# LIMIT
def test_limit(capsys):
    code, document = _run_json(capsys, ["limit", "--n-list", "32,64"])
    assert code == EXIT_OK
    assert document["metadata"]["n_list"] == [32, 64]
    assert document["report"]["monotone_flag"]
    assert document["report"]["final_error"] < 1e-6


@pytest.mark.parametrize("n_list", ["64,32", "4,32"])
def test_limit_rejects_bad_lists(n_list):
    assert main(["limit", "--n-list", n_list]) == EXIT_USAGE


# EXPLODE
def test_explode_is_reproducible(capsys):
    assert main(["explode", "--n", "16", "--seed", "7"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["explode", "--n", "16", "--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out == first
    report = json.loads(first)["report"]
    assert report["canonical"]["band_energy"] == pytest.approx(1.0)
    assert report["exploded"]["delocalization_index"] > 0.3
    assert report["recovery_residual"] < 1e-8
    assert not report["degenerate_thresholds"]


def test_explode_small_order_is_report_only(capsys):
    code, document = _run_json(capsys, ["explode", "--n", "2"])
    assert code == EXIT_OK
    assert document["report"]["degenerate_thresholds"]


# WAVE
def test_wave(capsys):
    code, document = _run_json(capsys, ["wave", "--n", "32", "--steps", "1000", "--mode", "2"])
    assert code == EXIT_OK
    report = document["report"]
    assert report["mode"] == 2
    assert report["energy_drift"] < 1e-6
    assert report["dispersion_relative_error"] < 1e-4


def test_wave_unstable_step():
    assert main(["wave", "--n", "32", "--steps", "10", "--dt", "1.0"]) == EXIT_FAILURE


def test_wave_zero_mode():
    assert main(["wave", "--n", "8", "--steps", "10", "--mode", "8"]) == EXIT_USAGE


# DUALITY AUDIT
def test_duality_audit(capsys):
    code, document = _run_json(capsys, ["duality-audit", "--n", "5"])
    assert code == EXIT_OK
    assert document["report"]["audit"]["matches_dft"]
    assert document["report"]["exp_forms"]["consistent"]


# FICHIERS DE SORTIE
def test_output_path(tmp_path, capsys):
    path = tmp_path / "commutator.csv"
    assert main(["commutator", "--n", "3", "--output-format", "csv", "--output-path", str(path)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    frame = pd.read_csv(path, comment="#")
    assert list(frame.columns) == ["i", "j", "re", "im"]
    assert len(frame) == 9


def test_output_dir_from_environment(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert main(["duality-audit", "--n", "3"]) == EXIT_OK
    assert capsys.readouterr().out == ""
    document = json.loads((tmp_path / "duality-audit.json").read_text(encoding="utf-8"))
    assert document["metadata"]["command"] == "duality-audit"
