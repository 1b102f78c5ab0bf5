"""
真实场景的振铃
==============

软介质（μ = 0.05, δ = 0.5, τ = 1, γ = 0.3）：c(Ω₀) = -3δτ²/(4μ) = -7.5，留数不被 δ 压低，
Ω₀'' ≈ -0.0353，t₀⁺ ≈ 37。只保留 n = 0 模态并用一阶截断符号，P_ρ 的被积函数在 |ω| ≤ ρ
内只有 Ω₀ 一个极点。

单独的 P_ρ 与留数近似不可直接比较：参考介质下频带边缘的 O(1/t) 项比留数大六个量级以上。
这里把 P_ρ 与 |ω| = ρ 的半圆弧拼成闭合回路后比较。
"""

import numpy as np

from minnaert_core.errors import DomainError
from minnaert_core.resonance import closed_form_resonance, resonance_radius
from minnaert_core.timedomain import (
    BandLimit,
    band_edge_arc,
    structure_report,
    time_trace,
    time_windows,
    truncated_inverse_ft,
)
from tests.config import FIXTURES
from tests.core import BaseTest

RHO = 2.5
LATE = (20.0, 40.0)
EARLY = (1.0, 10.0)


class TestRingdown(BaseTest):

    def setup_class(self):
        self.nd = FIXTURES.medium("soft")
        self.scene = FIXTURES.scene(n_trunc=0)
        self.pulse = FIXTURES.reference_scene.pulse()
        self.x = np.array(FIXTURES.reference_scene.observation)
        self.band = BandLimit(RHO)
        self.windows = time_windows(self.scene, self.nd, self.x, self.pulse)
        t_plus = self.windows.t_plus
        self.times = np.concatenate([np.linspace(0.0, self.windows.t_minus, 21),
                                     np.linspace(t_plus, t_plus + LATE[1], 401)])
        self.trace = time_trace(self.scene, self.nd, self.pulse, self.band, self.x, self.times,
                                symbol="first_order", with_arc=True)

    def test_scene_parameters(self):
        self.assert_true(self.band.covers_resonance(self.nd), f"ρ 应不小于 {resonance_radius(self.nd).value}")
        self.assert_close(self.windows.t_plus, 8.05 / np.sqrt(0.05) + 1.0, rtol=1e-12)
        self.assert_less(closed_form_resonance(self.nd).imag, 0.0)

    def test_closed_contour_matches_residue(self):
        after = self.trace.times >= self.windows.t_plus
        closed = self.trace.closed[after]
        residue = self.trace.residue[after]
        scale = float(np.max(np.abs(residue)))
        self.assert_true(scale > 1e-3 * float(np.max(np.abs(self.trace.p_rho))),
                         "留数相对 P_ρ 过小，比较没有意义")
        self.assert_allclose(closed, residue, rtol=1e-5, atol=1e-6 * scale)

    def test_ringdown_slope_after_closing(self):
        t_plus = self.windows.t_plus
        ring = (self.trace.times >= t_plus + 2) & (self.trace.times <= t_plus + 30)
        mag = np.linalg.norm(self.trace.closed[ring], axis=-1)
        slope = float(np.polyfit(self.trace.times[ring], np.log(mag), 1)[0])
        self.assert_close(slope, closed_form_resonance(self.nd).imag, rtol=1e-3)

    def test_arc_is_band_edge_tail(self):
        # 频带边缘项 ~ |g(±ρ)|/t：t·|弧| 在晚期不增长
        t_plus = self.windows.t_plus
        mag = np.linalg.norm(self.trace.arc, axis=-1) * self.trace.times

        def window(lo, hi):
            mask = (self.trace.times >= t_plus + lo) & (self.trace.times <= t_plus + hi)
            return float(np.max(mag[mask]))

        self.assert_less(window(*LATE), 1.5 * window(*EARLY))

    def test_pre_arrival_is_band_edge_leakage(self):
        # 上半平面无极点：t ≤ t₀⁻ 时 P_ρ 与上半圆弧相消
        before = np.linspace(0.0, self.windows.t_minus, 7)
        p_rho = truncated_inverse_ft(self.scene, self.nd, self.band, self.x, before, self.pulse,
                                     symbol="first_order")
        arc = band_edge_arc(self.scene, self.nd, self.pulse, self.band, self.x, before, half="upper")
        peak = float(np.max(np.abs(self.trace.p_rho)))
        self.assert_allclose(p_rho + arc, np.zeros_like(p_rho), atol=1e-8 * peak)

    def test_structure_report_with_arc(self):
        report = structure_report(self.trace, self.nd)
        self.assert_has_fields(report, ["closed_contour_rel_err", "arc_scaled_max", "ringdown_slope",
                                        "pre_arrival_ratio"])
        self.assert_less(report["closed_contour_rel_err"], 1e-5)
        self.assert_true(np.isfinite(report["arc_scaled_max"]))
        self.assert_true(np.all(np.isnan(self.trace.arc[self.trace.times < self.windows.t_plus])))

    def test_arc_arguments(self):
        self.assert_raises(DomainError, band_edge_arc, self.scene, self.nd, self.pulse, self.band, self.x,
                           0.0, half="left")
        narrow = BandLimit(0.5 * resonance_radius(self.nd).value)
        self.assert_raises(DomainError, band_edge_arc, self.scene, self.nd, self.pulse, narrow, self.x, 50.0)
