import csv
import io
import json
import math
import time

import numpy as np
import pytest

from qmidconv import cli
from qmidconv.catalog.registry import SUITES, suite_ids
from qmidconv.errors import ConfigError

BROKEN_DEG3 = {"h": [0.5, 0.4, 0.3], "l": [0.1, 0.05, 0.05], "t": [0.6, 1.1, 1.9], "alpha_exp": 0.3}


def _write(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def _verify(tmp_path, data, *extra):
    out = tmp_path / "out"
    code = cli.main(["verify", "--config", _write(tmp_path, data), "--out", str(out), *extra])
    return code, out


class TestJson:
    def test_complex_encoding(self):
        assert cli.to_jsonable(1.5 + 0j) == 1.5
        assert cli.to_jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}
        assert cli.from_jsonable({"re": 1.0, "im": 2.0}) == 1 + 2j

    def test_special_floats(self):
        assert cli.to_jsonable([math.nan, math.inf, -math.inf]) == [None, "inf", "-inf"]
        assert json.loads(cli.dumps({"a": math.inf})) == {"a": "inf"}

    def test_numpy(self):
        assert cli.to_jsonable(np.array([[1, 2j]])) == [[1.0, {"re": 0.0, "im": 2.0}]]
        assert cli.to_jsonable(np.bool_(True)) is True


class TestListSuites:
    def test_ids(self, capsys):
        assert cli.main(["list-suites"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert [line.split("\t")[0] for line in lines] == suite_ids()

    def test_records(self, capsys):
        assert cli.main(["list-suites", "--records"]) == 0
        recs = json.loads(capsys.readouterr().out)
        assert len(recs) == sum(len(c) for _, c in SUITES.values())


class TestConfig:
    @pytest.mark.parametrize("data,match", [
        ({"suites": []}, "version"),
        ({"version": 2}, "version"),
        ({"version": 1, "suites": ["nope"]}, "unknown suites"),
        ({"version": 1, "colour": 1}, "unknown keys"),
        ({"version": 1, "context": {"eps": 1}}, "unknown keys"),
        ({"version": 1, "q": [1.5]}, "bad context"),
        ({"version": 1, "q": []}, "empty"),
        ({"version": 1, "draws": {"count": -1}}, "count"),
        ({"version": 1, "seed": -3}, "seed"),
        ({"version": 1, "params": {"qhg": [{"alpha": 1}]}}, "qhg"),
        ({"version": 1, "params": {"zzz": []}}, "family"),
        ({"version": 1, "grid": {"points": 0}}, "grid"),
        ({"version": 1, "format": "xml"}, "format"),
    ])
    def test_rejected(self, tmp_path, capsys, data, match):
        assert cli.main(["verify", "--config", _write(tmp_path, data)]) == 2
        assert match in capsys.readouterr().err

    def test_unreadable(self, tmp_path, capsys):
        assert cli.main(["verify", "--config", str(tmp_path / "missing.json")]) == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert cli.main(["verify", "--config", str(bad)]) == 2

    def test_command_line_wins(self):
        cfg = cli.verify_config({"version": 1, "suites": ["qhg-core"], "seed": 4, "format": "json"},
                                suites=["convolution"], seed=9, fmt="csv")
        assert cfg.suites == ("convolution",) and cfg.seed == 9 and cfg.fmt == "csv"

    def test_defaults(self):
        cfg = cli.verify_config({"version": 1})
        assert cfg.suites == tuple(sorted(suite_ids()))
        assert cfg.count == 5 and cfg.seed == 0
        assert [c.q for c in cfg.contexts] == [0.3, 0.5]

    def test_load_config_error_type(self, tmp_path):
        with pytest.raises(ConfigError):
            cli.load_config(_write(tmp_path, [1, 2]))


class TestVerify:
    def test_empty_suite_list(self, tmp_path):
        code, out = _verify(tmp_path, {"version": 1, "suites": []})
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["entries"] == [] and report["summary"]["total"]["fail"] == 0

    def test_qhg_core_defaults(self, tmp_path, capsys):
        start = time.perf_counter()
        code, out = _verify(tmp_path, {"version": 1, "suites": ["qhg-core"]})
        assert time.perf_counter() - start < 10
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        total = report["summary"]["total"]
        assert total["pass"] == len(SUITES["qhg-core"][1]) * 5 * 2
        assert total["fail"] == total["skip"] == total["error"] == 0
        assert report["seed"] == 0 and report["schema"] == cli.REPORT_SCHEMA
        assert "pass=" in capsys.readouterr().err

    def test_broken_gate_skips(self, tmp_path):
        data = {"version": 1, "suites": ["deg3-nonhom"], "q": [0.5], "params": {"deg3": [BROKEN_DEG3]}}
        code, out = _verify(tmp_path, data)
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        total = report["summary"]["total"]
        assert total["skip"] > 0 and total["fail"] == 0 and total["error"] == 0
        skipped = [e for e in report["entries"] if e["status"] == "skip"]
        assert all(any(not g["satisfied"] for g in e["gates"]) for e in skipped)
        assert all(e["source"] == "explicit" for e in report["entries"])

    def test_failure_exit(self, tmp_path):
        # no residual can meet this tolerance, so the residual checks fail
        data = {"version": 1, "suites": ["qhg-core"], "q": [0.5], "draws": {"count": 1},
                "context": {"residual_tol": 1e-300}}
        code, _ = _verify(tmp_path, data)
        assert code == 1

    def test_csv(self, tmp_path):
        data = {"version": 1, "suites": ["convolution"], "q": [0.5], "draws": {"count": 1}}
        code, out = _verify(tmp_path, data, "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO((out / "report.csv").read_text())))
        assert rows and set(rows[0]) == {"suite", "check", "q", "draw", "status", "label", "value", "tol", "pass"}
        assert all(r["status"] == "pass" and r["pass"] == "1" for r in rows)

    def test_stdout(self, tmp_path, capsys):
        path = _write(tmp_path, {"version": 1, "suites": ["convolution"], "q": [0.5], "draws": {"count": 1}})
        assert cli.main(["verify", "--config", path]) == 0
        assert json.loads(capsys.readouterr().out)["schema"] == cli.REPORT_SCHEMA

    def test_deterministic(self, tmp_path):
        data = {"version": 1, "suites": ["qhg-core", "convolution"], "draws": {"count": 2}, "seed": 11}
        reports = []
        for name in ("a", "b"):
            (tmp_path / name).mkdir()
            _, out = _verify(tmp_path / name, data)
            reports.append((out / "report.json").read_bytes())
        assert reports[0] == reports[1]

    def test_seed_changes_draws(self):
        base = {"version": 1, "suites": ["qhg-core"], "q": [0.5], "draws": {"count": 1}}
        a = cli.run_verify(cli.verify_config(base, seed=1))
        b = cli.run_verify(cli.verify_config(base, seed=2))
        assert a["entries"][0]["params"] != b["entries"][0]["params"]


class TestConvolve:
    def _run(self, tmp_path, capsys, data):
        code = cli.main(["convolve", "--config", _write(tmp_path, {"version": 1, **data})])
        captured = capsys.readouterr()
        return code, (json.loads(captured.out) if code == 0 else captured.err)

    def test_single_pole(self, tmp_path, capsys):
        code, out = self._run(tmp_path, capsys, {"q": 0.5, "lam": 0.35,
                                                  "system": {"kind": "jp", "mu": 0.6, "alphas": [0.7], "betas": [1.9]}})
        assert code == 0
        assert np.array(out["F_inf"]).shape == (2, 2) and len(out["F"]) == 1
        assert out["K_dim"] == out["L_dim"] == 0 and out["quotient_dim"] == 2

    def test_mu0(self, tmp_path, capsys):
        code, out = self._run(tmp_path, capsys, {"q": 0.5, "lam": 0.35, "middle": True,
                                                  "system": {"kind": "jp", "mu": 0, "alphas": [0.8, 1.7],
                                                             "betas": [1.3, 2.45]}})
        assert code == 0
        assert out["K_dim"] == 1 and out["L_dim"] == 0 and out["quotient_dim"] == 2
        assert np.array(out["middle"]["F_inf"]).shape == (2, 2)

    def test_generic_matrices(self, tmp_path, capsys):
        system = {"kind": "matrices", "B_inf": [[0.4, 0.1], [0.0, 0.7]],
                  "B": [[[0.2, 0.3], [0.1, 0.5]]], "poles": [1.5]}
        code, out = self._run(tmp_path, capsys, {"q": 0.5, "lam": 0.35, "system": system})
        assert code == 0 and out["K_dim"] == out["L_dim"] == 0

    @pytest.mark.parametrize("data", [
        {"q": 0.5, "system": {"kind": "jp", "mu": 0.6, "alphas": [0.7], "betas": [1.9]}},
        {"q": [0.5], "lam": 0.3, "system": {"kind": "jp", "mu": 0.6, "alphas": [0.7], "betas": [1.9]}},
        {"q": 0.5, "lam": 0.3, "system": {"kind": "other"}},
        {"q": 0.5, "lam": 0.3, "system": {"kind": "jp", "mu": 0.6, "alphas": [0.7]}},
        {"q": 0.5, "lam": 0.3, "system": {"kind": "jp", "mu": 0.6, "alphas": [0.7], "betas": [0.7]}},
        {"q": 0.5, "lam": 0.3, "system": {"kind": "matrices", "B_inf": [[1]], "B": [[[1]]], "poles": [0]}},
    ], ids=["no-lam", "q-list", "kind", "missing", "degenerate", "zero-pole"])
    def test_config_errors(self, tmp_path, capsys, data):
        code, err = self._run(tmp_path, capsys, data)
        assert code == 2 and "config error" in err
