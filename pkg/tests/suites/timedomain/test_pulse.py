"""
脉冲
====
"""

import math

import numpy as np
from scipy.special import roots_legendre

from minnaert_core.errors import DomainError
from minnaert_core.timedomain import Pulse, energy_outside_band, pulse_ft, pulse_hat
from tests.core import BaseTest


def reference_ft(omega: complex, pulse: Pulse, nodes: int = 400) -> complex:
    """高阶 Gauss–Legendre 直接求和"""
    x, w = roots_legendre(nodes)
    t = 0.5 * pulse.c1 * (x + 1)
    return complex(np.sum(0.5 * pulse.c1 * w * pulse_hat(t, pulse) * np.exp(1j * omega * t)) / (2 * math.pi))


class TestPulse(BaseTest):

    def setup(self):
        self.pulse = Pulse(c1=1.0)

    def test_bump_shape(self):
        self.assert_close(pulse_hat(0.5, self.pulse), 1.0, rtol=1e-15)
        self.assert_allclose(pulse_hat(np.array([-0.3, 0.0, 1.0, 1.7]), self.pulse), np.zeros(4))
        t = np.linspace(0.01, 0.99, 99)
        self.assert_allclose(pulse_hat(t, self.pulse), pulse_hat(1.0 - t, self.pulse), rtol=1e-10)
        self.assert_type(pulse_hat(0.2, self.pulse), float)

    def test_invalid_support(self):
        self.assert_raises(DomainError, Pulse, c1=0.0)

    def test_transform_matches_direct_sum(self):
        for pulse in (self.pulse, Pulse(c1=2.5)):
            for omega in (0.0, 0.7, -3.0, 12.0, 0.5 - 0.3j, -1.0 + 0.2j):
                self.assert_close(pulse_ft(omega, pulse), reference_ft(omega, pulse), rtol=1e-9,
                                  atol=1e-14, message=f"C1={pulse.c1} ω={omega}")

    def test_transform_hermitian(self):
        for omega in (0.3, 2.0, 9.0):
            self.assert_close(pulse_ft(-omega, self.pulse), pulse_ft(omega, self.pulse).conjugate(), rtol=1e-12)
        self.assert_true(pulse_ft(0.0, self.pulse).real > 0)

    def test_energy_decreases_with_band(self):
        energies = [energy_outside_band(self.pulse, rho) for rho in (2.0, 8.0, 32.0)]
        self.assert_true(energies[0] > energies[1] > energies[2] >= 0, f"能量序列 {energies}")
        self.assert_equal(energy_outside_band(self.pulse, 5.0, omega_max=4.0), 0.0)
