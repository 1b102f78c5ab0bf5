"""
介质参数与无量纲化
==================

物理参数 (ρ_b, ρ_e, κ, γ, λ̃, μ̃) → 无量纲参数 (δ, τ, λ, μ, c_s, c_p)，
以及与频率相关的 c(ω)、k、k₁。

无量纲化后 c_s + c_p = 1 恒成立。
"""
import cmath
import math
from dataclasses import dataclass, field

from minnaert_core.errors import DomainError, MediumError
from minnaert_core.minnaert_logging import get_logger

logger = get_logger(__name__)

SPEED_SUM_TOL = 1e-10


@dataclass(frozen=True)
class PhysicalMedium:
    """SI 单位的物理参数"""
    rho_b: float
    rho_e: float
    kappa: float
    gamma: float
    lame_lambda_tilde: float
    lame_mu_tilde: float

    def __post_init__(self):
        for name in ("rho_b", "rho_e", "kappa", "gamma"):
            value = getattr(self, name)
            if not value > 0:
                raise MediumError(f"{name} must be positive, got {value!r}")
        if not self.lame_mu_tilde > 0:
            raise MediumError(f"mu_tilde must be positive, got {self.lame_mu_tilde!r}")
        if not 3 * self.lame_lambda_tilde + 2 * self.lame_mu_tilde > 0:
            raise MediumError(
                f"3*lambda_tilde + 2*mu_tilde must be positive, got "
                f"{3 * self.lame_lambda_tilde + 2 * self.lame_mu_tilde!r}")


@dataclass(frozen=True)
class NondimMedium:
    """
    无量纲介质

    lam, mu 为无量纲 Lamé 常数，c_b 保留量纲 (m/s)，gamma 保留量纲 (1/s)。
    """
    delta: float
    tau: float
    lam: float
    mu: float
    c_b: float
    gamma: float
    c_s: float = field(init=False)
    c_p: float = field(init=False)

    def __post_init__(self):
        if not self.mu > 0:
            raise MediumError(f"mu must be positive, got {self.mu!r}")
        if not 3 * self.lam + 2 * self.mu > 0:
            raise MediumError(f"3*lambda + 2*mu must be positive, got {3 * self.lam + 2 * self.mu!r}")
        for name in ("delta", "tau", "c_b", "gamma"):
            if not getattr(self, name) > 0:
                raise MediumError(f"{name} must be positive, got {getattr(self, name)!r}")
        c_s = math.sqrt(self.mu)
        c_p = math.sqrt(self.lam + 2 * self.mu)
        if abs(c_s + c_p - 1.0) > SPEED_SUM_TOL:
            raise MediumError(f"nondimensional speeds must satisfy c_s + c_p = 1, got {c_s + c_p!r}")
        object.__setattr__(self, "c_s", c_s)
        object.__setattr__(self, "c_p", c_p)

    @property
    def lam_2mu(self) -> float:
        """λ + 2μ"""
        return self.lam + 2 * self.mu

    @classmethod
    def from_contrasts(cls, mu: float, delta: float, tau: float, gamma: float,
                       c_b: float = 1.0) -> "NondimMedium":
        """由 μ 直接构造（λ 由 c_s + c_p = 1 决定），测试与参数扫描使用"""
        if not 0 < mu <= 0.25:
            raise MediumError(f"nondimensional mu must lie in (0, 1/4], got {mu!r}")
        c_p = 1.0 - math.sqrt(mu)
        lam = c_p * c_p - 2 * mu
        return cls(delta=delta, tau=tau, lam=lam, mu=mu, c_b=c_b, gamma=gamma)


@dataclass(frozen=True)
class FrequencyState:
    """某一频率 ω 处的派生量"""
    omega: complex
    epsilon: float
    k: complex
    k1: complex
    c_of_omega: complex


def nondimensionalize(m: PhysicalMedium) -> NondimMedium:
    """物理参数 → 无量纲参数"""
    scale = (math.sqrt(m.lame_mu_tilde) + math.sqrt(m.lame_lambda_tilde + 2 * m.lame_mu_tilde)) ** 2
    mu = m.lame_mu_tilde / scale
    lam = m.lame_lambda_tilde / scale
    c_b = math.sqrt(m.kappa / m.rho_b)
    c_s_tilde = math.sqrt(m.lame_mu_tilde / m.rho_e)
    c_p_tilde = math.sqrt((m.lame_lambda_tilde + 2 * m.lame_mu_tilde) / m.rho_e)
    nd = NondimMedium(
        delta=m.rho_b / m.rho_e,
        tau=c_b / (c_s_tilde + c_p_tilde),
        lam=lam,
        mu=mu,
        c_b=c_b,
        gamma=m.gamma,
    )
    logger.debug(f"无量纲化: delta={nd.delta:.6e}, tau={nd.tau:.6e}, lambda={nd.lam:.6e}, mu={nd.mu:.6e}")
    return nd


def polarization_scale(m: PhysicalMedium) -> float:
    """p = p̃ / (√μ̃ + √(λ̃+2μ̃))² 中的分母"""
    return (math.sqrt(m.lame_mu_tilde) + math.sqrt(m.lame_lambda_tilde + 2 * m.lame_mu_tilde)) ** 2


def c_of_omega(nd: NondimMedium, omega: complex) -> complex:
    """c(ω) = 1 + iγ/ω"""
    omega = complex(omega)
    if omega == 0:
        raise DomainError("c(omega) has a pole at omega = 0")
    return 1.0 + 1j * nd.gamma / omega


def wavenumber(nd: NondimMedium, omega: complex, epsilon: float) -> complex:
    """k = ωε/c_b"""
    return complex(omega) * epsilon / nd.c_b


def frequency_state(nd: NondimMedium, omega: complex, epsilon: float) -> FrequencyState:
    """计算 k、c(ω) 与 k₁ = k√c(ω)（主值分支，Re √c ≥ 0）"""
    if not epsilon > 0:
        raise DomainError(f"bubble radius must be positive, got {epsilon!r}")
    c = c_of_omega(nd, omega)
    k = wavenumber(nd, omega, epsilon)
    return FrequencyState(omega=complex(omega), epsilon=epsilon, k=k, k1=k * cmath.sqrt(c), c_of_omega=c)
