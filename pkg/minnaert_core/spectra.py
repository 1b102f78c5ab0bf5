"""
单位球面上层势算子的谱
======================

Helmholtz 单层势 / Neumann–Poincaré 算子的特征值 ξ_n、ζ_n，
以及弹性单层势 (b, c1, d1, c2, d2) 与其牵引力 (𝔟, 𝔠1, 𝔡1, 𝔠2, 𝔡2) 的系数，
径向组合 η_n、ρ_n，和它们的小 k 展开。

k = 0 不代入 Bessel 乘积，一律走 *_static_limits。
"""
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import mpmath as mp

from minnaert_core.errors import DomainError
from minnaert_core.medium import NondimMedium
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.specfun import (
    check_order,
    sph_bessel_dj,
    sph_bessel_j,
    sph_bessel_mp,
    sph_hankel_dh1,
    sph_hankel_dmp,
    sph_hankel_h1,
    sph_hankel_mp,
)

logger = get_logger(__name__)

TRACTION_VARIANTS = ("printed", "mirrored")

# η_n、ρ_n (n ≥ 1) 的各项为 O(k_s⁻²) 并相消到 O(1)：
# |k_s| < ELASTIC_PRECISE_SWITCH 时在 PRECISE_DPS 位下组合，|k_s| < ELASTIC_SERIES_SWITCH 时直接用展开式
ELASTIC_PRECISE_SWITCH = 1.0
ELASTIC_SERIES_SWITCH = 1e-7
PRECISE_DPS = 32


@dataclass(frozen=True)
class HelmholtzSpectrum:
    n: int
    k: complex
    xi: complex
    zeta: complex
    zeta_alt: complex  # -1/2 - i k² j_n h_n'


@dataclass(frozen=True)
class ElasticSpectrum:
    n: int
    k: complex
    k_s: complex
    k_p: complex
    b: complex
    c1: complex
    d1: complex
    c2: complex
    d2: complex
    fb: complex
    fc1: complex
    fd1: complex
    fc2: complex
    fd2: complex
    eta: complex
    rho: complex
    traction_variant: str = "printed"

    def as_dict(self) -> Dict[str, complex]:
        return {name: getattr(self, name) for name in
                ("b", "c1", "d1", "c2", "d2", "fb", "fc1", "fd1", "fc2", "fd2", "eta", "rho")}


# ========== Helmholtz ==========

def _nonzero(k) -> complex:
    k = complex(k)
    if k == 0:
        raise DomainError("k = 0 hits the Hankel pole; use the static limits instead")
    return k


def helmholtz_spectrum(n: int, k: complex) -> HelmholtzSpectrum:
    """ξ_n(k) = -i k j_n h_n，ζ_n(k) = 1/2 - i k² j_n' h_n"""
    n = check_order(n)
    k = _nonzero(k)
    j, h = sph_bessel_j(n, k), sph_hankel_h1(n, k)
    dj, dh = sph_bessel_dj(n, k), sph_hankel_dh1(n, k)
    return HelmholtzSpectrum(
        n=n,
        k=k,
        xi=-1j * k * j * h,
        zeta=0.5 - 1j * k * k * dj * h,
        zeta_alt=-0.5 - 1j * k * k * j * dh,
    )


def helmholtz_static_limits(n: int) -> Tuple[float, float]:
    """k → 0⁺ 时的 (ξ_n, ζ_n)"""
    n = check_order(n)
    if n == 0:
        return -1.0, 0.5
    return -1.0 / (2 * n + 1), 1.0 / (2 * (2 * n + 1))


def helmholtz_second_order(n: int) -> Dict[str, Dict[int, complex]]:
    """
    ξ_n、ζ_n 小 k 展开的各阶系数 {阶数: 系数}

    n = 0: ξ₀ = -1 - ik + 2k²/3，ζ₀ = 1/2 + k²/3
    n ≥ 1: ξ_n = -1/(2n+1) - 2k²/((2n+3)(2n+1)(2n-1))，
           ζ_n = 1/(2(2n+1)) - k²/((2n+3)(2n+1)(2n-1))
    """
    n = check_order(n)
    xi0, zeta0 = helmholtz_static_limits(n)
    if n == 0:
        return {"xi": {0: xi0, 1: -1j, 2: 2.0 / 3.0}, "zeta": {0: zeta0, 2: 1.0 / 3.0}}
    denom = (2 * n + 3) * (2 * n + 1) * (2 * n - 1)
    return {"xi": {0: xi0, 2: -2.0 / denom}, "zeta": {0: zeta0, 2: -1.0 / denom}}


def dirichlet_neumann_ratio(n: int, k1: complex) -> complex:
    """
    (-1/2 + ζ_n(k₁)) / ξ_n(k₁) = k₁ j_n'(k₁) / j_n(k₁)

    右端只含 j_n，k₁ = 0 处取极限 n；它是 k₁² 的亚纯函数，与 √c 的分支无关。
    """
    n = check_order(n)
    k1 = complex(k1)
    if k1 == 0:
        return complex(n)
    j = sph_bessel_j(n, k1)
    if j == 0:
        raise DomainError(f"j_{n}(k1) vanishes at k1 = {k1!r}")
    return k1 * sph_bessel_dj(n, k1) / j


# ========== 弹性 ==========

def _jh(a: int, b: int, z: complex) -> complex:
    return sph_bessel_j(a, z) * sph_hankel_h1(b, z)


def _eta0(kp: complex, l2m: float) -> complex:
    return -1j * _jh(1, 1, kp) * kp / l2m


def _rho0(kp: complex, mu: float, l2m: float) -> complex:
    return 1j * (4 * _jh(1, 1, kp) * kp * mu / l2m - _jh(1, 0, kp) * kp * kp)


def _coefficients(n: int, ks, kp, mu: float, l2m: float, traction_variant: str,
                  j: Callable, h: Callable, dh: Callable) -> Dict[str, Any]:
    """
    按给定的 j_n、h_n、h_n' 组合全部弹性系数

    j/h/dh 可以是双精度实现，也可以是 mpmath 实现（此时结果为 mpmath 数）。
    """
    def jh(a, b, z):
        return j(a, z) * h(b, z)

    q = 2 * n + 1
    out = {
        "b": -1j * ks * jh(n, n, ks) / mu,
        "fb": -1j * ks * j(n, ks) * (ks * dh(n, ks) - h(n, ks)),
        "d2": -1j * (jh(n + 1, n + 1, ks) * ks * n / (mu * q) + jh(n + 1, n + 1, kp) * kp * (n + 1) / (l2m * q)),
        "fd2": (2 * (n + 2) * 1j * (jh(n + 1, n + 1, ks) * ks * n / q
                                    + jh(n + 1, n + 1, kp) * kp * mu * (n + 1) / (l2m * q))
                - 1j * (jh(n + 1, n, ks) * ks ** 2 * n + jh(n + 1, n, kp) * kp ** 2 * (n + 1)) / q),
    }
    if n == 0:
        out.update(c1=0, d1=0, c2=0, fc1=0, fd1=0, fc2=0,
                   eta=-1j * jh(1, 1, kp) * kp / l2m,
                   rho=1j * (4 * jh(1, 1, kp) * kp * mu / l2m - jh(1, 0, kp) * kp * kp))
        return out

    out["c1"] = -1j * (jh(n - 1, n - 1, ks) * ks * (n + 1) / (mu * q) + jh(n - 1, n - 1, kp) * kp * n / (l2m * q))
    out["d1"] = -1j * (jh(n - 1, n + 1, ks) * ks * n / (mu * q) - jh(n - 1, n + 1, kp) * kp * n / (l2m * q))
    out["c2"] = -1j * (jh(n + 1, n - 1, ks) * ks * (n + 1) / (mu * q)
                       - jh(n + 1, n - 1, kp) * kp * (n + 1) / (l2m * q))
    out["fc1"] = (-2 * (n - 1) * 1j * (jh(n - 1, n - 1, ks) * ks * (n + 1) / q
                                       + jh(n - 1, n - 1, kp) * kp * mu * n / (l2m * q))
                  + 1j * (jh(n - 1, n, ks) * ks ** 2 * (n + 1) + jh(n - 1, n, kp) * kp ** 2 * n) / q)
    out["fd1"] = (2 * n * (n + 2) * 1j * (jh(n - 1, n + 1, ks) * ks / q - jh(n - 1, n + 1, kp) * kp * mu / (l2m * q))
                  + n * 1j * (-jh(n - 1, n, ks) * ks ** 2 + jh(n - 1, n, kp) * kp ** 2) / q)
    idx = n - 1 if traction_variant == "printed" else n + 1
    out["fc2"] = (-2 * (n * n - 1) * 1j * (jh(n + 1, n - 1, ks) * ks / q - jh(n + 1, n - 1, kp) * kp * mu / (l2m * q))
                  - (n + 1) * 1j * (-jh(idx, n, ks) * ks ** 2 + jh(idx, n, kp) * kp ** 2) / q)
    out["eta"] = (n * (out["c1"] + out["c2"]) + (n + 1) * (out["d1"] + out["d2"])) / q
    out["rho"] = (n * (out["fc1"] + out["fc2"]) + (n + 1) * (out["fd1"] + out["fd2"])) / q
    return out


def elastic_spectrum(n: int, k: complex, nd: NondimMedium,
                     traction_variant: str = "printed", dps: Optional[int] = None) -> ElasticSpectrum:
    """
    弹性单层势及牵引力的全部系数

    k_s = k/√μ, k_p = k/√(λ+2μ)。n = 0 时只保留不含 n-1 阶的项，
    η₀、ρ₀ 用显式化简式。traction_variant="mirrored" 时 𝔠_{2n} 第二个括号里的
    j_{n-1} 换成 j_{n+1}。

    dps 给定时整条组合在 mpmath 的 dps 位精度下计算（c_s、c_p 也在该精度下由 μ、λ+2μ 开方），
    小 |k_s| 时 O(k_s⁻²) 量级的各项相消不再损失有效位。
    """
    n = check_order(n)
    k = _nonzero(k)
    if traction_variant not in TRACTION_VARIANTS:
        raise DomainError(f"unknown traction variant {traction_variant!r}")
    mu, l2m = nd.mu, nd.lam_2mu
    if dps is None:
        ks, kp = k / nd.c_s, k / nd.c_p
        values = _coefficients(n, ks, kp, mu, l2m, traction_variant,
                               sph_bessel_j, sph_hankel_h1, sph_hankel_dh1)
    else:
        with mp.workdps(dps):
            kk = mp.mpc(k)
            ks_mp, kp_mp = kk / mp.sqrt(mu), kk / mp.sqrt(l2m)
            values = _coefficients(n, ks_mp, kp_mp, mu, l2m, traction_variant,
                                   sph_bessel_mp, sph_hankel_mp, sph_hankel_dmp)
            ks, kp = complex(ks_mp), complex(kp_mp)
    values = {name: complex(value) for name, value in values.items()}
    return ElasticSpectrum(n=n, k=k, k_s=ks, k_p=kp, traction_variant=traction_variant, **values)


def eta_recurrence(n: int, k: complex, nd: NondimMedium) -> complex:
    """用递推关系化简后的 η_n (n ≥ 1)，与 elastic_spectrum 的直接组合互为校验"""
    n = check_order(n)
    k = _nonzero(k)
    if n == 0:
        return _eta0(k / nd.c_p, nd.lam_2mu)
    ks, kp = k / nd.c_s, k / nd.c_p
    l2m, q = nd.lam_2mu, 2 * n + 1
    return -1j * (n * (n + 1) * _jh(n, n, ks) / (nd.mu * ks)
                  - n * (n + 1) * _jh(n, n, kp) / (l2m * kp)
                  + n * _jh(n - 1, n - 1, kp) * kp / (l2m * q)
                  + (n + 1) * _jh(n + 1, n + 1, kp) * kp / (l2m * q))


def elastic_static_limits(n: int, nd: NondimMedium) -> Tuple[float, float]:
    """
    (η_n(0), ρ_n(0))

    η_n(0) = -[2(λ+μ)n(n+1) + μ(4n²+4n-1)] / [μ(λ+2μ)(2n+3)(2n+1)(2n-1)]
    """
    n = check_order(n)
    lam, mu, l2m = nd.lam, nd.mu, nd.lam_2mu
    if n == 0:
        return -1.0 / (3 * l2m), 4 * mu / (3 * l2m)
    eta = -(2 * (lam + mu) * n * (n + 1) + mu * (4 * n ** 2 + 4 * n - 1)) / (
        mu * l2m * (2 * n + 3) * (2 * n + 1) * (2 * n - 1))
    rho = ((lam + mu) * n * (8 * n ** 3 + 16 * n ** 2 + 4 * n - 1)
           + mu * (2 * n + 1) * (4 * n ** 3 + 12 * n ** 2 + 5 * n - 4)) / (
        l2m * (2 * n + 3) * (2 * n + 1) ** 2 * (2 * n - 1))
    return eta, rho


def eta_static_printed(n: int, nd: NondimMedium) -> float:
    """η_n(0) 的印刷形式（含 4n⁴ 项），仅作对照；n = 1 时与 elastic_static_limits 相同"""
    n = check_order(n)
    if n == 0:
        return -1.0 / (3 * nd.lam_2mu)
    return -(2 * (nd.lam + nd.mu) * n * (n + 1) + nd.mu * (4 * n ** 4 + 4 * n - 1)) / (
        nd.mu * nd.lam_2mu * (2 * n + 3) * (2 * n + 1) * (2 * n - 1))


def rho_second_order(n: int, nd: NondimMedium) -> Tuple[float, float]:
    """ρ_n 展开中 k_s² 与 k_p² 的系数 (n ≥ 1)"""
    n = check_order(n)
    if n == 0:
        raise DomainError("use rho0_second_order for n = 0")
    mu, l2m = nd.mu, nd.lam_2mu
    common = (2 * n + 5) * (2 * n + 3) * (2 * n + 1) ** 3 * (2 * n - 1) * (2 * n - 3)
    coef_ks2 = -2 * n * (n + 1) * (4 * n ** 2 + 4 * n + 33) / common
    coef_kp2 = (-2 * mu * (2 * n + 1) * (10 * n ** 3 + 15 * n ** 2 - 19 * n - 12)
                + l2m * (2 * n + 5) * (2 * n - 3)) / (l2m * common)
    return coef_ks2, coef_kp2


def eta0_second_order(nd: NondimMedium) -> float:
    """η₀ = -1/(3(λ+2μ)) + (此系数)·k_p²"""
    return -2.0 / (15 * nd.lam_2mu)


def rho0_second_order(nd: NondimMedium) -> float:
    """ρ₀ = 4μ/(3(λ+2μ)) + (此系数)·k_p²"""
    return -(5 * nd.lam + 2 * nd.mu) / (15 * nd.lam_2mu)


def elastic_symbol_factors(n: int, k: complex, nd: NondimMedium,
                           traction_variant: str = "printed") -> Tuple[complex, complex]:
    """
    模态符号需要的 (η_n(k), ρ_n(k))

    n ≥ 1 时按 |k_s| 分三段：
        |k_s| < ELASTIC_SERIES_SWITCH   静态值 + k² 修正（η_n 只取静态项，在符号中再乘 k²）
        |k_s| < ELASTIC_PRECISE_SWITCH  elastic_spectrum(dps=PRECISE_DPS)
        其余                            双精度 elastic_spectrum
    """
    n = check_order(n)
    k = complex(k)
    if n == 0:
        if k == 0:
            return elastic_static_limits(0, nd)
        kp = k / nd.c_p
        return _eta0(kp, nd.lam_2mu), _rho0(kp, nd.mu, nd.lam_2mu)
    ks_abs = abs(k / nd.c_s)
    if ks_abs < ELASTIC_SERIES_SWITCH:
        eta0, rho0 = elastic_static_limits(n, nd)
        a_s, a_p = rho_second_order(n, nd)
        rho = rho0 + a_s * (k / nd.c_s) ** 2 + a_p * (k / nd.c_p) ** 2
        return complex(eta0), complex(rho)
    dps = PRECISE_DPS if ks_abs < ELASTIC_PRECISE_SWITCH else None
    spectrum = elastic_spectrum(n, k, nd, traction_variant=traction_variant, dps=dps)
    return spectrum.eta, spectrum.rho
