"""
模态符号与 Minnaert 共振
========================

λ_n(k) = (-1/2 + ζ_n(k₁)) ξ_n(k₁)⁻¹ ρ_n(kτ) + δτ²k² η_n(kτ)

小 k 展开 λ_n(k) = λ_n + k²λ_{n,1} + O(k³)；一阶修正共振是
λ₀ + (Ωε/c_b)²λ_{0,1}(Ω) = 0 的非零根，闭式为 Ω₀ = iΩ₀''，
Ω₀'' = -4μγ/(4μ+3δτ²)。
"""
import cmath
from dataclasses import dataclass
from typing import Callable, Iterable, List

import numpy as np
from scipy.optimize import newton

from minnaert_core.errors import ConvergenceError, DomainError
from minnaert_core.medium import NondimMedium, c_of_omega, frequency_state, wavenumber
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.specfun import check_order
from minnaert_core.spectra import (
    dirichlet_neumann_ratio,
    elastic_static_limits,
    elastic_symbol_factors,
    rho_second_order,
)

logger = get_logger(__name__)

NEWTON_MAXITER = 50
NEWTON_TOL = 1e-14
RESIDUAL_TOL = 1e-12
SYMBOLS = ("exact", "first_order")


@dataclass(frozen=True)
class ModalSymbol:
    n: int
    omega: complex
    k: complex
    value: complex


@dataclass(frozen=True)
class SymbolExpansion:
    n: int
    lambda_static: float
    lambda_1: complex  # 依赖 c(ω)


@dataclass(frozen=True)
class MinnaertResonance:
    omega: complex
    kind: str  # "static" | "first_order_corrected"
    mode_n: int
    removable: bool = False
    residual: float = 0.0
    iterations: int = 0

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.mode_n,
            "re_omega": self.omega.real,
            "im_omega": self.omega.imag,
            "removable": self.removable,
            "residual": self.residual,
            "iterations": self.iterations,
        }


@dataclass(frozen=True)
class ResonanceRadius:
    value: float


# ========== 模态符号 ==========

def lambda_exact(n: int, omega: complex, nd: NondimMedium, epsilon: float,
                 traction_variant: str = "printed") -> ModalSymbol:
    """
    精确模态符号

    Helmholtz 部分用 k₁ j_n'(k₁)/j_n(k₁)，它与 (-1/2+ζ_n)/ξ_n 恒等。
    """
    n = check_order(n)
    fs = frequency_state(nd, omega, epsilon)
    if fs.k == 0:
        raise DomainError("k = 0 hits the Hankel pole")
    ratio = dirichlet_neumann_ratio(n, fs.k1)
    eta, rho = elastic_symbol_factors(n, fs.k * nd.tau, nd, traction_variant=traction_variant)
    value = ratio * rho + nd.delta * nd.tau ** 2 * fs.k ** 2 * eta
    return ModalSymbol(n=n, omega=fs.omega, k=fs.k, value=value)


def lambda_static(n: int, nd: NondimMedium) -> float:
    """λ_n = n·ρ_n(0)，λ₀ = 0"""
    n = check_order(n)
    if n == 0:
        return 0.0
    return n * elastic_static_limits(n, nd)[1]


def lambda_first_order(n: int, omega: complex, nd: NondimMedium) -> complex:
    """
    λ_{n,1}，由各因子的展开组合得到:

        n·(ρ_n 的 k² 项，k_s² = k²τ²/μ, k_p² = k²τ²/(λ+2μ))
        - c(ω)·ρ_n(0)/(2n+3) + δτ²η_n(0)

    n = 0 时化为 -4μc(ω)/(9(λ+2μ)) - δτ²/(3(λ+2μ))。
    """
    n = check_order(n)
    c = c_of_omega(nd, omega)
    eta0, rho0 = elastic_static_limits(n, nd)
    value = -c * rho0 / (2 * n + 3) + nd.delta * nd.tau ** 2 * eta0
    if n >= 1:
        a_s, a_p = rho_second_order(n, nd)
        value += n * (a_s * nd.tau ** 2 / nd.mu + a_p * nd.tau ** 2 / nd.lam_2mu)
    return value


def lambda_first_order_printed(n: int, omega: complex, nd: NondimMedium) -> complex:
    """印刷形式的 λ_{n,1}（η 项含 4n⁴，c(ω) 乘整个分子），仅作对照"""
    n = check_order(n)
    c = c_of_omega(nd, omega)
    lam, mu, l2m = nd.lam, nd.mu, nd.lam_2mu
    delta, tau2 = nd.delta, nd.tau ** 2
    if n == 0:
        return -4 * mu * c / (9 * l2m) - delta * tau2 / (3 * l2m)
    common = (2 * n + 5) * (2 * n + 3) * (2 * n + 1) ** 3 * (2 * n - 1) * (2 * n - 3)
    term_s = -2 * n ** 2 * (n + 1) * (4 * n ** 2 + 4 * n + 33) / common * tau2 / mu
    term_p = (-2 * mu * n * (2 * n + 1) * (10 * n ** 3 + 15 * n ** 2 - 19 * n - 12)
              + l2m * n * (2 * n + 5) * (2 * n - 3)) / (l2m * common) * tau2 / l2m
    term_c = -c * ((lam + mu) * n * (8 * n ** 3 + 16 * n ** 2 + 4 * n - 1)
                   + mu * (2 * n + 1) * (4 * n ** 3 + 12 * n ** 2 + 5 * n - 4)) / (
        l2m * (2 * n + 3) ** 2 * (2 * n + 1) ** 2 * (2 * n - 1))
    term_eta = -delta * (2 * (lam + mu) * n * (n + 1) + mu * (4 * n ** 4 + 4 * n - 1)) / (
        l2m * (2 * n + 3) * (2 * n + 1) * (2 * n - 1)) * tau2 / mu
    return term_s + term_p + term_c + term_eta


def lambda_expansion(n: int, omega: complex, nd: NondimMedium) -> SymbolExpansion:
    """(λ_n, λ_{n,1})，ω = 0 时 c(ω) 无定义"""
    return SymbolExpansion(n=check_order(n), lambda_static=lambda_static(n, nd),
                           lambda_1=lambda_first_order(n, omega, nd))


def lambda_truncated(n: int, omega: complex, nd: NondimMedium, epsilon: float) -> complex:
    """λ_n + k²λ_{n,1}"""
    k = wavenumber(nd, omega, epsilon)
    return lambda_static(n, nd) + k * k * lambda_first_order(n, omega, nd)


def modal_symbol(n: int, omega: complex, nd: NondimMedium, epsilon: float,
                 symbol: str = "exact", traction_variant: str = "printed") -> complex:
    """按 symbol 选择精确符号或一阶截断符号"""
    if symbol == "exact":
        return lambda_exact(n, omega, nd, epsilon, traction_variant=traction_variant).value
    if symbol == "first_order":
        return lambda_truncated(n, omega, nd, epsilon)
    raise DomainError(f"unknown symbol {symbol!r}, expected one of {SYMBOLS}")


# ========== 共振 ==========

def closed_form_resonance(nd: NondimMedium) -> complex:
    """Ω₀ = iΩ₀''，Ω₀'' = -4μγ/(4μ+3δτ²)"""
    return 1j * (-4 * nd.mu * nd.gamma / (4 * nd.mu + 3 * nd.delta * nd.tau ** 2))


def resonance_radius(nd: NondimMedium) -> ResonanceRadius:
    """ℛ = 4μγ/(4μ+3δτ²) + 1"""
    return ResonanceRadius(4 * nd.mu * nd.gamma / (4 * nd.mu + 3 * nd.delta * nd.tau ** 2) + 1.0)


def static_resonances(nd: NondimMedium, n_max: int = 6) -> List[MinnaertResonance]:
    """
    静态 Minnaert 共振 |λ_n| = 0

    只有 n = 0 满足（λ₀ 恒为 0），按 ω = 0 的可去点报告；n ≥ 1 时 λ_n > 0。
    """
    found = []
    for n in range(check_order(n_max) + 1):
        if lambda_static(n, nd) == 0.0:
            found.append(MinnaertResonance(omega=0j, kind="static", mode_n=n, removable=True))
    return found


def solve_first_order_resonance(nd: NondimMedium, epsilon: float) -> List[MinnaertResonance]:
    """
    一阶修正 Minnaert 共振

    Ω₀₀ = 0 是可去奇点，只报告不参与留数求和；Ω₀ 以闭式为初值，
    对约去 k² 因子后的 λ_{0,1}(Ω) 做 Newton 迭代。
    """
    if not nd.gamma > 0:
        raise DomainError("damping gamma must be positive")
    guess = closed_form_resonance(nd)

    def deflated(omega):
        return lambda_first_order(0, omega, nd)

    def derivative(omega):
        step = 1e-7 * (1 + abs(omega))
        return (deflated(omega + step) - deflated(omega - step)) / (2 * step)

    try:
        root, info = newton(deflated, guess, fprime=derivative, tol=NEWTON_TOL,
                            maxiter=NEWTON_MAXITER, full_output=True)
    except RuntimeError as e:
        raise ConvergenceError(f"Newton iteration for the resonance did not converge: {e}") from e
    root = complex(root)
    deflated_residual = abs(deflated(root))
    residual = abs(lambda_truncated(0, root, nd, epsilon))
    if deflated_residual > RESIDUAL_TOL:
        raise ConvergenceError("resonance root does not annihilate the truncated symbol", deflated_residual)
    logger.debug(f"共振 Newton 迭代 {info.iterations} 次, Ω₀ = {root:.15g}, 残差 {deflated_residual:.3e}")
    return [
        MinnaertResonance(omega=0j, kind="first_order_corrected", mode_n=0, removable=True),
        MinnaertResonance(omega=root, kind="first_order_corrected", mode_n=0,
                          residual=residual,
                          iterations=int(info.iterations)),
    ]


def winding_number(func: Callable[[complex], complex], center: complex, radius: float,
                   nodes: int = 512) -> int:
    """辐角原理：func 在圆周上的辐角增量 / 2π"""
    theta = np.linspace(0.0, 2 * np.pi, nodes + 1)
    values = np.array([func(center + radius * cmath.exp(1j * t)) for t in theta])
    phase = np.unwrap(np.angle(values))
    return int(round((phase[-1] - phase[0]) / (2 * np.pi)))


def resonance_winding(nd: NondimMedium, epsilon: float) -> int:
    """截断符号在 Ω₀ 周围的零点个数"""
    omega0 = closed_form_resonance(nd)
    radius = min(0.1, abs(omega0.imag) / 4)
    return winding_number(lambda w: lambda_truncated(0, w, nd, epsilon), omega0, radius)


def symbol_sweep(n_values: Iterable[int], omegas: Iterable[complex], nd: NondimMedium,
                 epsilon: float, traction_variant: str = "printed") -> List[dict]:
    """共振曲线：按 n 升序、ω 升序排列的 |λ_n(ω)|"""
    rows = []
    omegas = sorted((complex(w) for w in omegas), key=lambda w: (w.real, w.imag))
    for n in sorted(n_values):
        for omega in omegas:
            sym = lambda_exact(n, omega, nd, epsilon, traction_variant=traction_variant)
            rows.append({"n": n, "omega": omega, "k": sym.k, "value": sym.value,
                         "truncated": lambda_truncated(n, omega, nd, epsilon)})
    return rows
