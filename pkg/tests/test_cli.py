"""Unit tests for sboxlab/cli.py."""

import json
import logging
import math

import pytest
import yaml

from sboxlab.chaos.chaos_core import seed_from_key
from sboxlab.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main, run
from sboxlab.sbox.codec import read_sbox, write_sbox
from sboxlab.sbox.construction import ConstructionTrace
from sboxlab.sbox.tables import BuiltinSBox, builtin_sbox

FIPS_KEY = "2b7e151628aed2a6abf7158809cf4f3c"
SM4_KEY = "0123456789abcdeffedcba9876543210"


class TestUsage:
    def test_help(self, capsys):
        assert run(["--help"]) == EXIT_OK
        assert "sboxlab" in capsys.readouterr().out

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == EXIT_USAGE
        assert "invalid choice" in capsys.readouterr().err

    def test_missing_required_flag(self, capsys):
        assert run(["dyn", "bits", "--output", "x.bin"]) == EXIT_USAGE
        assert "--n-bytes" in capsys.readouterr().err

    def test_main_loads_dotenv_and_exits(self, mocker, capsys):
        load = mocker.patch("sboxlab.cli.load_dotenv")
        mocker.patch("sys.argv", ["sboxlab", "count", "d3", "4"])
        with pytest.raises(SystemExit) as exc:
            main()
        assert exc.value.code == EXIT_OK
        load.assert_called_once()
        assert capsys.readouterr().out.startswith("2\n")


class TestCount:
    def test_d3(self, capsys):
        assert run(["count", "d3", "9"]) == EXIT_OK
        assert capsys.readouterr().out == "13824\n1.3824e4\n"

    def test_json(self, capsys):
        assert run(["--format", "json", "count", "d2", "8"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data == {"which": "d2", "n": 8, "value": "4752", "scientific": "4.7520e3"}

    def test_oracle(self, capsys):
        assert run(["count", "oracle", "6", "--no-fixed", "--no-reverse"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "80"

    def test_zero_is_usage_error(self, capsys):
        assert run(["count", "d1", "0"]) == EXIT_USAGE
        assert "n must be >= 1" in capsys.readouterr().err

    def test_oracle_above_limit(self, capsys):
        assert run(["count", "oracle", "11", "--no-fixed"]) == EXIT_USAGE

    def test_counts_past_the_int_digit_limit(self, capsys):
        assert run(["count", "d1", "2000"]) == EXIT_OK
        exact, sci = capsys.readouterr().out.splitlines()
        assert len(exact) == 5736
        assert exact.startswith("12199894")
        assert sci == "1.2200e5735"

    def test_ratio(self, capsys):
        assert run(["count", "ratio", "4"]) == EXIT_OK
        assert capsys.readouterr().out == "8.333333e-02\n8.33333%\n"

    def test_ratio_at_256_json(self, capsys):
        assert run(["--format", "json", "count", "ratio", "256"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["value"] == pytest.approx(0.0014286, rel=1e-3)
        assert data["percent"] == pytest.approx(0.14286, rel=1e-3)


class TestSBoxCommands:
    def test_analyze_builtin(self, capsys):
        assert run(["sbox", "analyze", "builtin:aes"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "fixed points: none" in out
        assert "cycle lengths: 2, 27, 59, 81, 87" in out
        assert "ring: 73 → 8F → 73" in out
        assert "112.00" in out

    def test_analyze_file(self, capsys, tmp_path, sm4_sbox):
        path = write_sbox(tmp_path / "sm4.txt", sm4_sbox)
        assert run(["sbox", "analyze", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "fixed points: AB" in out
        assert "ring: AB → AB" in out

    def test_analyze_yaml(self, capsys):
        assert run(["--format", "yaml", "sbox", "analyze", "builtin:zuc_s0"]) == EXIT_OK
        data = yaml.safe_load(capsys.readouterr().out)
        assert data["structure"]["reverse_fixed_points"] == ["26"]
        assert data["metrics"]["nl_min"] == 96

    def test_analyze_unknown_builtin(self, capsys):
        assert run(["sbox", "analyze", "builtin:des"]) == EXIT_USAGE
        assert "unknown builtin" in capsys.readouterr().err

    def test_analyze_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("00 01 02\n", encoding="utf-8")
        assert run(["sbox", "analyze", str(path)]) == EXIT_USAGE

    def test_analyze_missing_file(self, capsys, tmp_path):
        assert run(["sbox", "analyze", str(tmp_path / "none.txt")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err

    def test_analyze_non_utf8_file(self, capsys, tmp_path):
        path = tmp_path / "latin.txt"
        path.write_bytes(b"\xff\xfe\x00 01 02")
        assert run(["sbox", "analyze", str(path)]) == EXIT_USAGE
        assert "not UTF-8" in capsys.readouterr().err

    def test_gen_output_under_a_file(self, capsys, tmp_path, mocker, ecm_strong_sbox, ecm_seed):
        trace = ConstructionTrace(0, 560, 0, 0, ecm_seed)
        mocker.patch("sboxlab.cli.construct_sbox", return_value=(ecm_strong_sbox, trace))
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        assert run(["sbox", "gen", "-o", str(blocker / "box.txt")]) == EXIT_FAILURE
        assert "blocker" in capsys.readouterr().err

    def test_gen_with_key_writes_file(self, mocker, capsys, tmp_path, sample_ik, ecm_strong_sbox):
        params, s0 = seed_from_key(sample_ik)
        trace = ConstructionTrace(3, 860, 2, 1, s0)
        construct = mocker.patch(
            "sboxlab.cli.construct_sbox", return_value=(ecm_strong_sbox, trace)
        )
        out_path = tmp_path / "box.json"
        argv = ["sbox", "gen", "--key", sample_ik.hex(), "-o", str(out_path)]
        argv += ["--out-format", "json"]
        assert run(argv) == EXIT_OK
        construct.assert_called_once_with(params, s0)
        assert read_sbox(out_path).table == ecm_strong_sbox.table
        assert "# ctr=3 N=860 restarts=2" in capsys.readouterr().out

    def test_gen_restart_cap_exhausted(self, capsys):
        assert run(["sbox", "gen", "--restart-cap", "0"]) == EXIT_FAILURE
        assert "no strong S-Box within 0 restarts" in capsys.readouterr().err

    def test_gen_collapsed_orbit_fails(self, capsys):
        argv = ["sbox", "gen", "--x0", "0.5", "--y0", "0.5", "--gamma", "1", "--k", "3"]
        assert run(argv + ["--restart-cap", "2"]) == EXIT_FAILURE
        assert "no strong S-Box within 2 restarts" in capsys.readouterr().err

    def test_gen_rejects_bad_gamma(self, capsys):
        assert run(["sbox", "gen", "--gamma", "19"]) == EXIT_USAGE

    def test_batch_json(self, capsys):
        assert run(["--format", "json", "sbox", "batch", "--count", "2", "--rng-seed", "4"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["count"] == 2
        assert sum(b[2] for b in data["histogram"]) == 2


class TestKeyexp:
    def test_text(self, capsys, sample_ik):
        assert run(["keyexp", sample_ik.hex(), "--rounds", "4"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4
        assert all(len(line.split()[1]) == 64 for line in lines)

    def test_json_with_output(self, capsys, tmp_path, sample_ik):
        out_path = tmp_path / "keys.txt"
        argv = ["--format", "json", "keyexp", sample_ik.hex(), "--rounds", "3", "-o", str(out_path)]
        assert run(argv) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert len(data["round_keys"]) == 3
        assert len(data["hamming_to_ik"]) == 3
        assert "pairwise_hamming_mean" in data
        assert len(out_path.read_text(encoding="utf-8").splitlines()) == 3

    def test_wide_keys_skip_distance_to_ik(self, capsys, sample_ik):
        argv = ["--format", "json", "keyexp", sample_ik.hex(), "--rounds", "2", "--width", "64"]
        assert run(argv) == EXIT_OK
        assert "hamming_to_ik" not in json.loads(capsys.readouterr().out)

    def test_bad_key(self, capsys):
        assert run(["keyexp", "abcd"]) == EXIT_USAGE
        assert "64 hex digits" in capsys.readouterr().err


class TestCrypt:
    def test_aes_expand(self, capsys):
        assert run(["crypt", "aes", "expand", FIPS_KEY]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 11
        assert lines[1] == " 1  A0FAFE1788542CB123A339392A6C7605"

    def test_aes_recover(self, capsys):
        argv = ["crypt", "aes", "recover", "d014f9a8c9ee2589e13f0cc8b6630ca6", "--index", "10"]
        assert run(argv) == EXIT_OK
        assert capsys.readouterr().out == FIPS_KEY.upper() + "\n"

    def test_sm4_round_trip(self, capsys):
        assert run(["--format", "json", "crypt", "sm4", "expand", SM4_KEY]) == EXIT_OK
        round_keys = json.loads(capsys.readouterr().out)["round_keys"]
        assert round_keys[0] == "F12186F9"
        argv = ["crypt", "sm4", "recover", *round_keys[28:32], "--index", "28"]
        assert run(argv) == EXIT_OK
        assert capsys.readouterr().out == SM4_KEY.upper() + "\n"

    def test_recover_needs_index(self, capsys):
        assert run(["crypt", "aes", "recover", FIPS_KEY]) == EXIT_USAGE
        assert "--index" in capsys.readouterr().err

    def test_expand_takes_one_key(self, capsys):
        assert run(["crypt", "sm4", "expand", SM4_KEY, SM4_KEY]) == EXIT_USAGE


class TestDyn:
    def test_lyapunov_scan_csv(self, capsys):
        argv = ["dyn", "lyapunov", "--steps", "2", "--n", "200"]
        argv += ["--gamma-min", "1", "--gamma-max", "2"]
        assert run(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "gamma,lambda1,lambda2"
        assert [line.split(",")[0] for line in lines[1:]] == ["1.0", "2.0"]

    def test_lyapunov_scan_to_file(self, capsys, tmp_path):
        path = tmp_path / "scan.csv"
        argv = ["dyn", "lyapunov", "--steps", "3", "--n", "100", "-o", str(path)]
        assert run(argv) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert len(path.read_text(encoding="utf-8").splitlines()) == 4

    def test_logistic_lyapunov(self, capsys):
        assert run(["dyn", "lyapunov", "--map", "logistic", "--n", "20000"]) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(math.log(2.0), abs=0.03)

    def test_sample_entropy_json(self, capsys):
        assert run(["--format", "json", "dyn", "se", "--n", "400"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["sample_entropy"] > 1.0
        assert data["k2_entropy"] is None

    def test_k2_periodic_logistic(self, capsys):
        argv = ["dyn", "k2", "--map", "logistic", "--mu", "3.2", "--x0", "0.3", "--n", "400"]
        assert run(argv) == EXIT_OK
        assert abs(float(capsys.readouterr().out)) < 1e-2

    def test_correlation_dimension(self, capsys):
        assert run(["dyn", "cd", "--n", "3000"]) == EXIT_OK
        assert 1.5 < float(capsys.readouterr().out) < 2.3

    def test_bifurcation(self, capsys):
        argv = ["dyn", "bifurcation", "--min", "3.2", "--max", "4"]
        argv += ["--steps", "2", "--samples", "3"]
        assert run(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "param,x"
        assert len(lines) == 7

    def test_bits(self, capsys, tmp_path):
        path = tmp_path / "stream.bin"
        argv = ["--format", "json", "dyn", "bits", "--n-bytes", "500", "--gain", "15"]
        assert run([*argv, "-o", str(path)]) == EXIT_OK
        assert len(path.read_bytes()) == 500
        data = json.loads(capsys.readouterr().out)
        assert data["bytes"] == 500
        assert len(data["per_bit"]) == 8

    def test_bits_rejects_unknown_gain(self, capsys, tmp_path):
        argv = ["dyn", "bits", "--n-bytes", "5", "--gain", "12", "-o", str(tmp_path / "b")]
        assert run(argv) == EXIT_USAGE


def test_builtin_fixture_matches_cli_lookup(capsys):
    assert run(["--format", "json", "sbox", "analyze", "builtin:strong"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["name"] == builtin_sbox(BuiltinSBox.ECM_STRONG).name
    assert data["structure"]["cycle_lengths"] == [256]


@pytest.fixture
def unconfigured_logger():
    logger = logging.getLogger("sboxlab")
    saved = list(logger.handlers)
    for handler in saved:
        logger.removeHandler(handler)
    yield logger
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
    for handler in saved:
        logger.addHandler(handler)


def test_unwritable_log_file(capsys, tmp_path, unconfigured_logger):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    argv = ["--log-file", str(blocker / "run.log"), "count", "d3", "4"]
    assert run(argv) == EXIT_FAILURE
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "blocker" in captured.err
