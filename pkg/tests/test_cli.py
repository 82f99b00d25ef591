import json
import math

import pytest

from lzsm.analysis import SCHEMA_VERSION
from lzsm.cli import (
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    _parse_delta_range,
    _parse_init,
    _parse_methods,
    run_cli,
)
from lzsm.core import Method


class TestParsers:
    def test_init_real_pair(self):
        s = _parse_init("0.6,0.8")
        assert s.alpha == 0.6 and s.beta == 0.8

    def test_init_complex_quad(self):
        s = _parse_init("0.1,-0.2,0.3,0.4")
        assert s.alpha == 0.1 - 0.2j and s.beta == 0.3 + 0.4j

    def test_init_rejects(self):
        with pytest.raises(UsageError):
            _parse_init("1,2,3")
        with pytest.raises(UsageError):
            _parse_init("a,b")

    def test_delta_range(self):
        vals = _parse_delta_range("0.1:0.5:5")
        assert vals == pytest.approx([0.1, 0.2, 0.3, 0.4, 0.5])

    def test_delta_range_rejects(self):
        with pytest.raises(UsageError):
            _parse_delta_range("0.1:0.5")
        with pytest.raises(UsageError):
            _parse_delta_range("0.1:0.5:0")

    def test_methods(self):
        assert _parse_methods("ode,zener") == [Method.ODE, Method.ZENER]
        with pytest.raises(UsageError):
            _parse_methods("runge")


class TestProbe:
    def test_lzsm_prob_value(self, capsys):
        code = run_cli(["probe", "--what", "lzsm-prob", "--delta", "0.1"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == SCHEMA_VERSION
        assert payload["value"] == pytest.approx(
            math.exp(-0.2 * math.pi), rel=1e-15
        )

    def test_zeta_probe_uses_tau_a(self, capsys):
        code = run_cli(
            ["probe", "--what", "zeta", "--delta", "0.0", "--tau-a", "4.0"]
        )
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["value"] == 8.0

    def test_missing_delta(self, capsys):
        assert run_cli(["probe", "--what", "jump-time"]) == EXIT_USAGE


class TestSimulate:
    def test_csv_to_stdout(self, capsys):
        code = run_cli(
            ["simulate", "--delta", "0.2", "--method", "zener",
             "--tau-start", "-8", "--tau-end", "8", "--tau-count", "5"]
        )
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == f"# schema={SCHEMA_VERSION} table=compare"
        assert len(lines) == 2 + 5
        assert all(line.split(",")[1] == "zener" for line in lines[2:])

    def test_requires_single_method(self, capsys):
        code = run_cli(
            ["simulate", "--delta", "0.2", "--method", "ode,zener",
             "--tau-start", "-8", "--tau-end", "8", "--tau-count", "3"]
        )
        assert code == EXIT_USAGE

    def test_unknown_method(self, capsys):
        code = run_cli(
            ["simulate", "--delta", "0.2", "--method", "euler",
             "--tau-start", "-8", "--tau-end", "8", "--tau-count", "3"]
        )
        assert code == EXIT_USAGE

    def test_missing_delta(self, capsys):
        code = run_cli(["simulate", "--method", "zener"])
        assert code == EXIT_USAGE


class TestCompare:
    ARGS = ["compare", "--delta", "0.15", "--methods", "zener,majorana",
            "--tau-start", "-10", "--tau-end", "10", "--tau-count", "7"]

    def test_byte_identical_reruns(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(self.ARGS + ["--out", str(p1)]) == EXIT_OK
        assert run_cli(self.ARGS + ["--out", str(p2)]) == EXIT_OK
        assert p1.read_bytes() == p2.read_bytes()

    def test_json_format(self, capsys):
        assert run_cli(self.ARGS + ["--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == SCHEMA_VERSION
        assert payload["table"] == "compare"
        assert len(payload["rows"]) == 7 * 2
        # guarded cells are JSON null, not bare nan
        mid = [r for r in payload["rows"]
               if r["tau"] == 0.0 and r["method"] == "majorana"]
        assert mid[0]["re_alpha"] is None

    def test_out_to_unwritable_path(self, capsys, tmp_path):
        bad = tmp_path / "no" / "such" / "dir" / "x.csv"
        assert run_cli(self.ARGS + ["--out", str(bad)]) == EXIT_IO


class TestSweep:
    def test_deviation_csv(self, capsys):
        code = run_cli(
            ["sweep", "--delta-range", "0.05:0.2:3",
             "--tau-start", "-8", "--tau-end", "8", "--tau-count", "9"]
        )
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == f"# schema={SCHEMA_VERSION} table=deviation"
        assert lines[1] == "tau,delta,p_zener,p_majorana,abs_diff,tau_jump"
        assert len(lines) == 2 + 3 * 9
        # delta-major row order with deterministic 17-digit floats
        first = lines[2].split(",")
        assert first[0] == "-8" and float(first[1]) == 0.05

    def test_single_delta_flag(self, capsys):
        code = run_cli(
            ["sweep", "--delta", "0.1",
             "--tau-start", "-6", "--tau-end", "6", "--tau-count", "5"]
        )
        assert code == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 2 + 5


class TestConfigFile:
    def _write(self, tmp_path, data):
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(data), encoding="utf-8")
        return str(p)

    def test_config_drives_compare(self, tmp_path, capsys):
        path = self._write(tmp_path, {
            "delta_values": [0.1],
            "tau_start": -8.0,
            "tau_end": 8.0,
            "tau_count": 5,
            "methods": ["zener"],
            "init": [0.0, 1.0],
        })
        assert run_cli(["compare", "--config", path]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2 + 5

    def test_flags_override_config(self, tmp_path, capsys):
        path = self._write(tmp_path, {
            "delta_values": [0.1], "tau_count": 5,
            "tau_start": -8.0, "tau_end": 8.0, "methods": ["zener"],
        })
        assert run_cli(
            ["compare", "--config", path, "--tau-count", "3"]
        ) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 2 + 3

    def test_unknown_key_rejected(self, tmp_path, capsys):
        path = self._write(tmp_path, {"delta_values": [0.1], "tau_cnt": 5})
        assert run_cli(["compare", "--config", path]) == EXIT_USAGE
        assert "tau_cnt" in capsys.readouterr().err

    def test_invalid_json_rejected(self, tmp_path, capsys):
        p = tmp_path / "cfg.json"
        p.write_text("{not json", encoding="utf-8")
        assert run_cli(["compare", "--config", str(p)]) == EXIT_USAGE

    def test_missing_config_file_is_io_error(self, capsys, tmp_path):
        missing = str(tmp_path / "nope.json")
        assert run_cli(["compare", "--config", missing]) == EXIT_IO


class TestUsage:
    def test_no_command(self, capsys):
        assert run_cli([]) == EXIT_USAGE

    def test_unknown_command(self, capsys):
        assert run_cli(["frobnicate"]) == EXIT_USAGE
