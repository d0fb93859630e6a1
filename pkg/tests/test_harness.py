"""Run configs, scans, emission formats, determinism and the CLI."""

import json
import math

import pytest

from tbcond.cli import main as cli_main
from tbcond.harness import (
    CSV_HEADER,
    ConductanceReport,
    RunConfig,
    Row,
    compute_row,
    emit,
    parse_report,
    report_csv,
    report_json,
    resolve_lengths,
    scaling_scan,
    verify_suite,
)
from tbcond.numerics import ValidationError


def _cfg(**overrides):
    base = {
        "potential": {"kind": "zero"},
        "kappa": 1.0,
        "reservoirs": {"left": {"model": "free_lead"}, "right": {"model": "free_lead"}},
        "interval": [-1.0, 1.0],
        "lengths": {"kind": "list", "values": [1, 2]},
        "tol": 1e-5,
        "seed": 1,
    }
    base.update(overrides)
    return RunConfig.from_dict(base)


class TestRunConfig:
    def test_roundtrip(self):
        cfg = _cfg()
        again = RunConfig.from_dict(cfg.to_dict())
        assert again == cfg

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(_cfg().to_dict()), encoding="utf-8")
        assert RunConfig.load(path) == _cfg()

    def test_validation(self):
        with pytest.raises(ValidationError):
            _cfg(interval=[1.0, -1.0])
        with pytest.raises(ValidationError):
            _cfg(tol=0.0)

    def test_lengths_list(self):
        assert resolve_lengths(_cfg()) == [1, 2]

    def test_lengths_geometric(self):
        cfg = _cfg(lengths={"kind": "geometric", "start": 2, "factor": 2.0, "count": 4})
        assert resolve_lengths(cfg) == [2, 4, 8, 16]

    def test_lengths_period_multiples(self):
        cfg = _cfg(
            potential={"kind": "periodic", "pattern": [0, 2]},
            lengths={"kind": "period_multiples", "count": 3},
        )
        assert resolve_lengths(cfg) == [2, 4, 6]

    def test_lengths_must_increase(self):
        with pytest.raises(ValidationError):
            resolve_lengths(_cfg(lengths={"kind": "list", "values": [4, 4]}))

    def test_anderson_seed_defaults_to_config_seed(self):
        cfg = _cfg(potential={"kind": "anderson", "W": 1.0}, seed=9)
        row_a = compute_row(cfg, 4)
        row_b = compute_row(_cfg(potential={"kind": "anderson", "W": 1.0, "seed": 9}), 4)
        assert row_a.g_th == row_b.g_th


class TestScan:
    def test_perfect_chain_rows(self):
        report = scaling_scan(_cfg(lengths={"kind": "list", "values": [1, 2, 4]}))
        assert [r.L for r in report.rows] == [1, 2, 4]
        for row in report.rows:
            assert row.error is None
            for g in (row.g_lb, row.g_clb, row.g_th):
                assert g == pytest.approx(1.0 / (2.0 * math.pi), abs=1e-5)
            assert row.delta == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-12)
            assert row.m_bound == pytest.approx(1.0, abs=1e-12)
            assert row.wall_ms == 0

    def test_row_error_recorded_and_scan_continues(self, tmp_path):
        path = tmp_path / "pot.txt"
        path.write_text("0.0\n0.0\n", encoding="utf-8")
        cfg = _cfg(
            potential={"kind": "file", "path": str(path)},
            lengths={"kind": "list", "values": [2, 3]},
        )
        report = scaling_scan(cfg)
        assert report.rows[0].error is None
        assert report.rows[1].error is not None
        assert math.isnan(report.rows[1].g_lb)
        assert not report.ok

    def test_conductance_range_invariant(self):
        cfg = _cfg(potential={"kind": "anderson", "W": 1.5}, lengths={"kind": "list", "values": [3, 6]})
        for row in scaling_scan(cfg).rows:
            for g in (row.g_lb, row.g_clb, row.g_th):
                assert 0.0 <= g <= 1.0 / (2.0 * math.pi) + cfg.tol


class TestEmission:
    def test_csv_header_and_shape(self, tmp_path):
        report = scaling_scan(_cfg())
        out = tmp_path / "r.csv"
        emit(report, "csv", out)
        lines = out.read_text(encoding="utf-8").split("\n")
        assert lines[0] == CSV_HEADER
        assert lines[0] == "L,G_LB,G_CLB,G_Th,bands,sp_measure,delta,M,wall_ms"
        assert len(lines) == 4 and lines[-1] == ""  # header + 2 rows + trailing newline
        assert all(len(line.split(",")) == 9 for line in lines[1:3])

    def test_empty_report_is_header_only(self, tmp_path):
        report = ConductanceReport(_cfg(), ())
        out = tmp_path / "empty.csv"
        emit(report, "csv", out)
        assert out.read_text(encoding="utf-8") == CSV_HEADER + "\n"

    def test_json_roundtrip(self, tmp_path):
        report = scaling_scan(_cfg())
        out = tmp_path / "r.json"
        emit(report, "json", out)
        parsed = parse_report(out.read_text(encoding="utf-8"))
        assert parsed.config == report.config
        assert parsed.rows == report.rows

    def test_unknown_format_rejected(self, tmp_path):
        with pytest.raises(ValidationError):
            emit(ConductanceReport(_cfg(), ()), "xml", tmp_path / "x")

    def test_unwritable_path_surfaces_context(self, tmp_path):
        with pytest.raises(ValidationError, match="no/such"):
            emit(ConductanceReport(_cfg(), ()), "csv", tmp_path / "no" / "such" / "file.csv")


class TestDeterminism:
    def test_repeated_scan_byte_identical(self):
        cfg = _cfg(potential={"kind": "anderson", "W": 1.0}, lengths={"kind": "list", "values": [3, 5]})
        a = report_csv(scaling_scan(cfg))
        b = report_csv(scaling_scan(cfg))
        assert a == b

    def test_parallel_matches_serial(self):
        serial = _cfg(
            potential={"kind": "anderson", "W": 1.0},
            lengths={"kind": "list", "values": [2, 3, 4, 5]},
        )
        parallel = RunConfig.from_dict({**serial.to_dict(), "jobs": 3})
        assert report_csv(scaling_scan(serial)) == report_csv(scaling_scan(parallel))
        assert scaling_scan(serial).rows == scaling_scan(parallel).rows


class TestVerifySuite:
    def test_trivial_scope_exact(self):
        results = verify_suite(scope="trivial-only", seed=3)
        assert len(results) == 1
        assert results[0].passed
        assert results[0].worst == 0.0

    def test_named_scopes(self):
        results = verify_suite(scope="lemma-theta,herglotz", seed=2)
        assert [r.name for r in results] == ["lemma-theta", "herglotz"]
        assert all(r.passed for r in results)

    def test_unknown_scope_rejected(self):
        with pytest.raises(ValidationError):
            verify_suite(scope="not-a-check")


class TestCli:
    def _write_cfg(self, tmp_path, **overrides):
        payload = _cfg(**overrides).to_dict()
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    def test_scan_writes_csv(self, tmp_path):
        cfg = self._write_cfg(tmp_path)
        out = tmp_path / "scan.csv"
        code = cli_main(["scan", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        assert out.read_text(encoding="utf-8").startswith(CSV_HEADER)

    def test_scan_json_format(self, tmp_path):
        cfg = self._write_cfg(tmp_path)
        out = tmp_path / "scan.json"
        code = cli_main(["scan", "--config", str(cfg), "--out", str(out), "--format", "json"])
        assert code == 0
        assert parse_report(out.read_text(encoding="utf-8")).rows

    def test_bands_json_schema(self, tmp_path):
        cfg = self._write_cfg(
            tmp_path, potential={"kind": "periodic", "pattern": [0, 2], "L": 2}, lengths=None
        )
        out = tmp_path / "bands.json"
        code = cli_main(["bands", "--config", str(cfg), "--out", str(out), "--format", "json"])
        assert code == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert "bands" in payload and len(payload["bands"]) == 2
        assert all(len(pair) == 2 for pair in payload["bands"])

    def test_transmission_csv(self, tmp_path):
        cfg = self._write_cfg(tmp_path, potential={"kind": "zero", "L": 2}, lengths=None)
        out = tmp_path / "t.csv"
        code = cli_main(
            ["transmission", "--config", str(cfg), "--out", str(out), "--grid", "11"]
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "E,T_LB,T_CLB"
        assert len(lines) == 12

    def test_conductance_single_row(self, tmp_path):
        cfg = self._write_cfg(tmp_path, potential={"kind": "zero", "L": 3}, lengths=None)
        out = tmp_path / "c.csv"
        code = cli_main(["conductance", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        assert len(out.read_text(encoding="utf-8").strip().split("\n")) == 2

    def test_repeat_columns(self, tmp_path):
        cfg = self._write_cfg(
            tmp_path,
            potential={"kind": "periodic", "pattern": [0, 2], "L": 2},
            interval=[-1.0, -0.2],
            lengths=None,
        )
        out = tmp_path / "rep.csv"
        code = cli_main(
            ["repeat", "--config", str(cfg), "--out", str(out), "--n-min", "1", "--n-max", "4"]
        )
        assert code == 0
        lines = out.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "N,G_LB_N,running_mean,G_CLB"
        assert len(lines) == 5

    def test_verify_exit_code_and_output(self, tmp_path, capsys):
        code = cli_main(["verify", "--scope", "trivial-only,herglotz", "--seed", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "trivial-only" in out and "PASS" in out and "overall" in out

    def test_bad_config_exit_code(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"potential": {"kind": "zero"}, "interval": [2, 1]}))
        assert cli_main(["scan", "--config", str(path)]) == 2
