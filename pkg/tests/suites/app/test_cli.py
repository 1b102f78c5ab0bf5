"""
命令行
======

每个测试写自己的临时配置与输出目录，耗时的子命令用小网格。
"""

import json
import shutil
import tempfile
from pathlib import Path

import yaml

from minnaert_app.cli import EXIT_ERROR, EXIT_OK, EXIT_ORACLE_FAILED, main
from minnaert_app.config import get_config, get_config_value
from minnaert_app.emit import NOT_APPLICABLE, read_csv, read_metadata
from tests.core import BaseTest

SMALL = {
    "medium": {"mu": 0.2, "delta": 1e-3, "tau": 1.0, "gamma": 0.5},
    "scene": {"epsilon": 0.05, "n_trunc": 0, "points": [[0.0, 3.0, 0.0]]},
    "sweep": {"n_max": 2, "k_values": [0.1, 0.5], "omega_points": 5,
              "symbol": "first_order", "t_start": 0.0, "t_stop": 22.0, "t_points": 12, "panels": 2},
    "oracle": {"n_values": [0], "k_values": [0.3], "k_complex": [], "torsional": False},
}


class TestCli(BaseTest):

    def setup(self):
        self.tmp = Path(tempfile.mkdtemp(prefix="minnaert-cli-"))

    def teardown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def _config(self, **sections) -> str:
        data = {name: dict(body) for name, body in SMALL.items()}
        for name, body in sections.items():
            data.setdefault(name, {}).update(body)
        path = self.tmp / "config.yaml"
        path.write_text(yaml.safe_dump(data), encoding="utf-8")
        return str(path)

    def _run(self, command: str, config: str, out: str = "out", *extra: str) -> int:
        return main([command, "--config", config, "--out", str(self.tmp / out), *extra])

    def test_spectra_deterministic(self):
        config = self._config()
        self.assert_equal(self._run("spectra", config, "a"), EXIT_OK)
        self.assert_equal(self._run("spectra", config, "b"), EXIT_OK)
        for name in ("spectra_helmholtz.csv", "spectra_elastic.csv", "spectra_static.csv"):
            first = (self.tmp / "a" / name).read_bytes()
            self.assert_equal(first, (self.tmp / "b" / name).read_bytes(), f"{name} 两次输出不一致")
        rows = read_csv(self.tmp / "a" / "spectra_helmholtz.csv")
        self.assert_equal(len(rows), 3 * 2)
        self.assert_equal([(r["n"], float(r["k"])) for r in rows[:2]], [("0", 0.1), ("0", 0.5)])
        static = read_csv(self.tmp / "a" / "spectra_static.csv")
        self.assert_equal(len(static), 7)
        self.assert_equal(float(static[0]["lambda_0"]), 0.0)
        meta = read_metadata(self.tmp / "a" / "spectra_elastic.csv")
        self.assert_equal(meta["traction_variant"], "printed")

    def test_resonance(self):
        self.assert_equal(self._run("resonance", self._config()), EXIT_OK)
        report = json.loads((self.tmp / "out" / "resonance.json").read_text(encoding="utf-8"))
        self.assert_equal(report["winding_number"], 1)
        self.assert_less(report["root_vs_closed_form"], 1e-10)
        self.assert_less(report["residual"], 1e-12)
        self.assert_close(report["closed_form"]["im_omega"], report["im_omega0"], rtol=1e-15)
        curve = read_csv(self.tmp / "out" / "resonance_curve.csv")
        self.assert_equal(len(curve), 3 * 5)

    def test_oracle_detects_perturbation(self):
        code = self._run("oracle", self._config(oracle={"perturb_eta0": 0.01}))
        self.assert_equal(code, EXIT_ORACLE_FAILED)
        report = json.loads((self.tmp / "out" / "oracle_report.json").read_text(encoding="utf-8"))
        self.assert_false(report["passed"])
        self.assert_false(report["families"]["eta"]["passed"])
        self.assert_true(report["families"]["xi"]["passed"])

    def test_field_snapshot(self):
        self.assert_equal(self._run("field", self._config()), EXIT_OK)
        rows = read_csv(self.tmp / "out" / "field_snapshot.csv")
        self.assert_equal(len(rows), 1)
        self.assert_has_fields(rows[0], ["x", "y", "z", "u_in_x_re", "u_sca_z_im"])
        modes = read_csv(self.tmp / "out" / "field_modes.csv")
        self.assert_equal([m["n"] for m in modes], ["0"])

    def test_timedomain_marks_pre_arrival(self):
        self.assert_equal(self._run("timedomain", self._config()), EXIT_OK)
        path = self.tmp / "out" / "timedomain_point0.csv"
        t_plus = float(read_metadata(path)["t0_plus"])
        rows = read_csv(path)
        self.assert_equal(len(rows), 12)
        for row in rows:
            if float(row["t"]) < t_plus:
                self.assert_equal(row["residue_x_re"], NOT_APPLICABLE)
                self.assert_equal(row["diff_z_im"], NOT_APPLICABLE)
            else:
                self.assert_true(row["residue_z_re"] != NOT_APPLICABLE)
        self.assert_true((self.tmp / "out" / "timedomain_report.json").exists())

    def test_strict_band_limit(self):
        config = self._config(sweep={"rho": 0.5})
        self.assert_equal(self._run("timedomain", config, "out", "--strict"), EXIT_ERROR)

    def test_configuration_errors(self):
        self.assert_equal(self._run("spectra", self._config(sweep={"k_values": [0.0]})), EXIT_ERROR)
        self.assert_equal(self._run("spectra", str(self.tmp / "missing.yaml")), EXIT_ERROR)
        self.assert_equal(self._run("spectra", self._config(), "out", "--tol", "-1"), EXIT_ERROR)
        self.assert_raises(SystemExit, main, ["bogus"])

    def test_commands_read_shared_config(self):
        config = self._config()
        self.assert_equal(self._run("resonance", config, "shared", "--strict"), EXIT_OK)
        shared = get_config()
        self.assert_equal(get_config_value(shared, "output", "directory"), str(self.tmp / "shared"))
        self.assert_true(get_config_value(shared, "output", "strict"))
        self.assert_true((self.tmp / "shared" / "resonance.json").exists())
