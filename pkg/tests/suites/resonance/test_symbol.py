"""
模态符号
========

λ_n(k) = (-1/2 + ζ_n(k₁)) ξ_n(k₁)⁻¹ ρ_n(kτ) + δτ²k² η_n(kτ)
"""

import math

import numpy as np

from minnaert_core.errors import DomainError
from minnaert_core.medium import frequency_state
from minnaert_core.resonance import (
    lambda_exact,
    lambda_expansion,
    lambda_first_order,
    lambda_first_order_printed,
    lambda_static,
    lambda_truncated,
    modal_symbol,
    symbol_sweep,
)
from minnaert_core.spectra import elastic_spectrum, elastic_static_limits, helmholtz_spectrum
from tests.config import FIXTURES
from tests.core import BaseTest

EPS_GRID = (4e-2, 2e-2, 1e-2, 5e-3)


class TestModalSymbol(BaseTest):

    def setup(self):
        self.nd = FIXTURES.medium("reference")

    def test_exact_matches_layer_definition(self):
        for name in FIXTURES.media:
            nd = FIXTURES.medium(name)
            for n in range(0, 4):
                for omega in (0.4, 1.3, -0.8):
                    eps = 0.2
                    fs = frequency_state(nd, omega, eps)
                    helm = helmholtz_spectrum(n, fs.k1)
                    elastic = elastic_spectrum(n, fs.k * nd.tau, nd)
                    expected = (-0.5 + helm.zeta) / helm.xi * elastic.rho + nd.delta * nd.tau ** 2 * fs.k ** 2 * elastic.eta
                    self.assert_close(lambda_exact(n, omega, nd, eps).value, expected, rtol=1e-10,
                                      message=f"{name} λ_{n}({omega})")

    def test_static_symbol(self):
        for name in FIXTURES.media:
            nd = FIXTURES.medium(name)
            self.assert_equal(lambda_static(0, nd), 0.0)
            for n in range(1, 7):
                value = lambda_static(n, nd)
                self.assert_true(value > 0, f"{name}: λ_{n} = {value} 应为正")
                self.assert_close(value, n * elastic_static_limits(n, nd)[1], rtol=1e-15)

    def test_zero_mode_first_order(self):
        nd = self.nd
        for omega in (0.3, 2.0, -0.4j):
            c = 1 + 1j * nd.gamma / omega
            expected = -4 * nd.mu * c / (9 * nd.lam_2mu) - nd.delta * nd.tau ** 2 / (3 * nd.lam_2mu)
            self.assert_close(lambda_first_order(0, omega, nd), expected, rtol=1e-14)

    def test_printed_first_order_agrees_at_low_orders(self):
        for name in FIXTURES.media:
            nd = FIXTURES.medium(name)
            for n in (0, 1):
                self.assert_close(lambda_first_order_printed(n, 0.7, nd), lambda_first_order(n, 0.7, nd),
                                  rtol=1e-12, message=f"{name} λ_{{{n},1}}")
            diff = abs(lambda_first_order_printed(2, 0.7, nd) - lambda_first_order(2, 0.7, nd))
            self.assert_true(diff > 1e-8, f"{name}: n = 2 时 η 项（4n⁴ 与 4n²）应造成差异")

    def test_expansion_remainder_order(self):
        # 固定 ω，按 ε 减半使 k 减半；余项 λ_n - λ_n(0) - k²λ_{n,1} 至少三阶
        for name in ("reference", "soft"):
            nd = FIXTURES.medium(name)
            for n in range(0, 6):
                for omega in (0.9, 0.5 - 0.3j):
                    values = [abs(lambda_exact(n, omega, nd, eps).value - lambda_truncated(n, omega, nd, eps))
                              for eps in EPS_GRID]
                    for big, small in zip(values, values[1:]):
                        order = math.log2(big / small)
                        self.assert_true(order >= 2.7, f"{name} n={n} ω={omega}: 阶数 {order:.2f}，余项 {values}")

    def test_higher_modes_bounded_below_on_real_axis(self):
        # n ≥ 1：实轴上 |λ_n(ω)| 不低于静态值的一半，只有 n = 0 会产生共振
        omegas = np.concatenate([np.linspace(0.05, 3.0, 30), -np.linspace(0.05, 3.0, 30)])
        for name in FIXTURES.media:
            nd = FIXTURES.medium(name)
            for n in range(1, 5):
                floor = 0.5 * lambda_static(n, nd)
                smallest = min(abs(lambda_exact(n, omega, nd, 0.05).value) for omega in omegas)
                self.assert_true(smallest >= floor, f"{name} n={n}: min|λ| = {smallest:.3e} < {floor:.3e}")

    def test_expansion_dataclass(self):
        exp = lambda_expansion(2, 0.5, self.nd)
        self.assert_equal(exp.n, 2)
        self.assert_equal(exp.lambda_static, lambda_static(2, self.nd))
        self.assert_close(exp.lambda_1, lambda_first_order(2, 0.5, self.nd), rtol=1e-15)

    def test_modal_symbol_dispatch(self):
        nd = self.nd
        self.assert_close(modal_symbol(1, 0.6, nd, 0.05), lambda_exact(1, 0.6, nd, 0.05).value, rtol=1e-15)
        self.assert_close(modal_symbol(1, 0.6, nd, 0.05, symbol="first_order"),
                          lambda_truncated(1, 0.6, nd, 0.05), rtol=1e-15)
        self.assert_raises(DomainError, modal_symbol, 1, 0.6, nd, 0.05, symbol="other")

    def test_zero_frequency_rejected(self):
        self.assert_raises(DomainError, lambda_exact, 0, 0.0, self.nd, 0.05)

    def test_symbol_sweep_ordering(self):
        rows = symbol_sweep([2, 0, 1], [0.9, 0.1, 0.5], self.nd, 0.05)
        keys = [(r["n"], r["omega"].real) for r in rows]
        self.assert_equal(keys, sorted(keys))
        self.assert_equal(len(rows), 9)
        self.assert_has_fields(rows[0], ["n", "omega", "k", "value", "truncated"])
