"""
直接求积对照
============

单位球北极处的面积分 / Y_n^0(e₃) 与谱公式比较，容差见 FAMILY_TOL。
"""

import numpy as np

from minnaert_core.errors import DomainError
from minnaert_core.quad_oracle import (
    BLOCK_FAMILIES,
    FAMILY_TOL,
    POLE_THETA,
    OracleJob,
    build_jobs,
    convergence_study,
    oracle_elastic_layers,
    oracle_elastic_block,
    oracle_torsional_single_layer,
    pole_gradient,
    pole_value,
    richardson,
    run_job,
    run_oracle_suite,
    summarize,
    _split_block,
)
from minnaert_core.spectra import elastic_spectrum
from minnaert_core.sphere import vector_harmonic
from tests.config import FIXTURES
from tests.core import BaseTest


class TestQuadratureOracle(BaseTest):

    def setup_class(self):
        self.nd = FIXTURES.medium("reference")
        self.reports = run_oracle_suite(self.nd, [0, 1, 2], [0.3, 0.5 + 0.1j], torsional=False)

    def test_helmholtz_families(self):
        for rep in self.reports:
            if rep.family in ("xi", "zeta", "zeta_jump"):
                self.assert_less(rep.rel_err, FAMILY_TOL[rep.family],
                                 f"{rep.family}_{rep.n}({rep.k}) {rep.variant or ''}: {rep.rel_err:.3e}")

    def test_elastic_families(self):
        summary = summarize(self.reports)
        for family in ("eta", "rho", "rho_jump"):
            self.assert_true(summary[family]["passed"], f"{family}: {summary[family]}")
        self.assert_in(summary["rho"]["best_variant"], ("printed", "mirrored"))
        self.assert_has_fields(summary["rho"], ["variants", "best_variant", "max_rel_err", "tolerance", "count"])

    def test_block_coefficients(self):
        summary = summarize(self.reports)
        for family in BLOCK_FAMILIES:
            self.assert_true(summary[family]["passed"], f"{family}: {summary[family]}")
            self.assert_equal(summary[family]["count"], 4 if family != "fc2" else 8)
        self.assert_in(summary["fc2"]["best_variant"], ("printed", "mirrored"))

    def test_block_split_recovers_pair(self):
        # 北极处 c ℐ_{n-1} + d 𝒩_{n+1} 的法向、切向分量
        for n in (1, 3):
            c, d = 0.7 - 0.2j, -1.3 + 0.4j
            normal = (n * c + (n + 1) * d) * pole_value(n)
            tangential = (c - d) * pole_gradient(n)
            got = _split_block(normal, tangential, n)
            self.assert_close(got[0], c, rtol=1e-13)
            self.assert_close(got[1], d, rtol=1e-13)

    def test_pole_values_of_block_harmonics(self):
        # 北极处 ℐ_{n-1}^1 = ∇Y_n^1，𝒩_{n+1}^0 = (n+1)Y_n^0 ν
        n = 2
        i_pole = vector_harmonic("I", n - 1, 1, np.array(POLE_THETA), np.array(0.0))
        n_pole = vector_harmonic("N", n + 1, 0, np.array(POLE_THETA), np.array(0.0))
        self.assert_close(i_pole[0], pole_gradient(n), rtol=1e-10)
        self.assert_close(n_pole[2], (n + 1) * pole_value(n), rtol=1e-10)

    def test_reports_sorted(self):
        keys = [(rep.family, rep.n, rep.k.real, rep.k.imag) for rep in self.reports]
        families = [k[0] for k in keys]
        self.assert_equal(families[0], "xi")
        self.assert_true(families.index("eta") < families.index("rho") < families.index("rho_jump"))
        self.assert_has_fields(self.reports[0].as_dict(), ["family", "n", "rel_err", "passed"])

    def test_perturbed_eta_detected(self):
        reports = run_job(OracleJob(0, 0.3, "elastic"), self.nd, perturb_eta0=0.05)
        summary = summarize(reports)
        self.assert_false(summary["eta"]["passed"])
        self.assert_true(summary["eta"]["max_rel_err"] > 0.04)

    def test_torsional_smoke(self):
        value = oracle_torsional_single_layer(1, 0.3, self.nd)
        expected = elastic_spectrum(1, 0.3, self.nd).b
        self.assert_close(value, expected, rtol=FAMILY_TOL["b"])

    def test_richardson_removes_quadratic_error(self):
        exact = 0.25 - 0.5j
        f = lambda h: exact + 3.0 * h - 7.0 * h * h
        self.assert_close(richardson([f(0.1), f(0.05), f(0.025)]), exact, rtol=1e-13)
        self.assert_raises(DomainError, richardson, [1.0, 2.0])

    def test_job_grid(self):
        jobs = build_jobs([1, 0], [0.3, 1.5])
        kinds = [(j.n, j.k.real, j.kind) for j in jobs]
        self.assert_equal(kinds, [(0, 0.3, "helmholtz"), (0, 0.3, "elastic"), (0, 1.5, "helmholtz"),
                                  (1, 0.3, "helmholtz"), (1, 0.3, "elastic"), (1, 0.3, "torsional"),
                                  (1, 1.5, "helmholtz")])

    def test_convergence_study(self):
        errs = convergence_study("xi", 1, 0.5, node_counts=(24, 96))
        self.assert_true(errs[-1] <= errs[0], f"误差序列 {errs}")
        self.assert_less(errs[-1], FAMILY_TOL["xi"])

    def test_out_of_range(self):
        self.assert_raises(DomainError, oracle_elastic_layers, 5, 0.3, self.nd)
        self.assert_raises(DomainError, oracle_elastic_layers, 1, 1.5, self.nd)
        self.assert_raises(DomainError, oracle_torsional_single_layer, 0, 0.3, self.nd)
        self.assert_raises(DomainError, oracle_elastic_block, 0, 0.3, self.nd)
        self.assert_raises(DomainError, convergence_study, "eta", 0, 0.3)
