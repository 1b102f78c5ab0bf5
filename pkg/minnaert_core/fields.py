"""
基本解、入射场、强迫项与模态散射场
==================================

Kupradze 矩阵写成径向形式 Γ^k(x) = φ₁(r)I + φ₂(r)x̂x̂ᵀ，φ₁、φ₂ 取自
Γ^k = -e^{iκ_s r}/(4πμr) I + (1/4πk²)∇∇(e^{iκ_p r} - e^{iκ_s r})/r
（κ_s = k/c_s, κ_p = k/c_p）的逐项展开，不做数值微分。|κ_s r| 较小时改用幂级数，
k = 0 即 Kelvin 矩阵。

坐标约定：场点、声源、气泡中心都用 m，波数用 k̃τ = ωτ/c_b (1/m)。
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import factorial

from minnaert_core.errors import DomainError
from minnaert_core.medium import NondimMedium, c_of_omega, wavenumber
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.resonance import lambda_first_order, modal_symbol
from minnaert_core.sphere import SphereQuadrature, get_quadrature, harmonic_table, modes

logger = get_logger(__name__)

SERIES_SWITCH = 0.5
SERIES_TERMS = 25
DEFAULT_N_TRUNC = 4

_M = np.arange(2, SERIES_TERMS + 1)
_EYE = np.eye(3)


# ========== 基本解 ==========

def _as_points(x) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(..., 3) → (x, r, x̂)，零向量报错"""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 3:
        raise DomainError(f"expected vectors with 3 components, got shape {x.shape}")
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0):
        raise DomainError("fundamental solution evaluated at zero argument")
    return x, r, x / r[..., None]


def _kelvin_constants(nd: NondimMedium) -> Tuple[float, float]:
    """κ₁ = (1/c_s² + 1/c_p²)/2，κ₂ = (1/c_s² - 1/c_p²)/2"""
    return 0.5 * (1 / nd.mu + 1 / nd.lam_2mu), 0.5 * (1 / nd.mu - 1 / nd.lam_2mu)


def _wave_terms(a: complex, c1: complex, c2: complex, c3: complex, r: np.ndarray):
    """e^{iar}(c₁/r + c₂/r² + c₃/r³) 及其径向导数"""
    e = np.exp(1j * a * r)
    value = e * (c1 / r + c2 / r ** 2 + c3 / r ** 3)
    deriv = e * (1j * a * c1 / r + (1j * a * c2 - c1) / r ** 2
                 + (1j * a * c3 - 2 * c2) / r ** 3 - 3 * c3 / r ** 4)
    return value, deriv


def radial_profiles(r: np.ndarray, k: complex, nd: NondimMedium):
    """(φ₁, φ₂, φ₁', φ₂')，r 为正数组"""
    r = np.asarray(r, dtype=float)
    shape = r.shape
    r = np.atleast_1d(r)
    k = complex(k)
    if k == 0:
        kappa1, kappa2 = _kelvin_constants(nd)
        out = (-kappa1 / (4 * np.pi * r), -kappa2 / (4 * np.pi * r),
               kappa1 / (4 * np.pi * r ** 2), kappa2 / (4 * np.pi * r ** 2))
        return tuple((v + 0j).reshape(shape) for v in out)

    ks, kp = k / nd.c_s, k / nd.c_p
    phi1 = np.empty(r.shape, dtype=complex)
    phi2 = np.empty(r.shape, dtype=complex)
    dphi1 = np.empty(r.shape, dtype=complex)
    dphi2 = np.empty(r.shape, dtype=complex)
    small = np.abs(ks) * r < SERIES_SWITCH

    big = ~small
    if np.any(big):
        rb = r[big]
        pre = 1 / (4 * np.pi * k * k)
        s1, ds1 = _wave_terms(ks, -ks * ks, -1j * ks, 1.0, rb)
        p1, dp1 = _wave_terms(kp, 0.0, 1j * kp, -1.0, rb)
        s2, ds2 = _wave_terms(ks, ks * ks, 3j * ks, -3.0, rb)
        p2, dp2 = _wave_terms(kp, -kp * kp, -3j * kp, 3.0, rb)
        phi1[big] = pre * (s1 + p1)
        phi2[big] = pre * (s2 + p2)
        dphi1[big] = pre * (ds1 + dp1)
        dphi2[big] = pre * (ds2 + dp2)

    if np.any(small):
        rs = r[small]
        # a_m = i^m (c_p^{-m} - c_s^{-m}) / m!
        a = (1j ** _M) * (nd.c_p ** (-_M.astype(float)) - nd.c_s ** (-_M.astype(float))) / factorial(_M)
        powers = (k * rs[:, None]) ** (_M - 2)
        series = powers * a
        m = _M
        s_phi1 = series @ (m - 1)
        s_phi2 = series @ ((m - 1) * (m - 3))
        s_dphi2 = series @ ((m - 1) * (m - 3) ** 2)
        e = np.exp(1j * ks * rs)
        phi1[small] = -e / (4 * np.pi * nd.mu * rs) + s_phi1 / (4 * np.pi * rs)
        phi2[small] = s_phi2 / (4 * np.pi * rs)
        dphi1[small] = (-e * (1j * ks / rs - 1 / rs ** 2) / (4 * np.pi * nd.mu)
                        + s_phi2 / (4 * np.pi * rs ** 2))
        dphi2[small] = s_dphi2 / (4 * np.pi * rs ** 2)
    return tuple(v.reshape(shape) for v in (phi1, phi2, dphi1, dphi2))


def kupradze(x_minus_y, k: complex, nd: NondimMedium) -> np.ndarray:
    """Γ^k(x-y)，输入 (..., 3)，输出 (..., 3, 3)；k = 0 即 Kelvin 矩阵"""
    _, r, xh = _as_points(x_minus_y)
    phi1, phi2, _, _ = radial_profiles(r, k, nd)
    return phi1[..., None, None] * _EYE + phi2[..., None, None] * xh[..., :, None] * xh[..., None, :]


def kelvin(x_minus_y, nd: NondimMedium) -> np.ndarray:
    """Γ⁰(x) = -κ₁/(4π|x|) I - κ₂/(4π) x xᵀ/|x|³"""
    return kupradze(x_minus_y, 0.0, nd)


def kupradze_jacobian(x_minus_y, k: complex, nd: NondimMedium) -> np.ndarray:
    """
    全部一阶导数 J[..., ℓ, i, j] = ∂_ℓΓ_ij

    ∂_ℓΓ_ij = φ₁'x̂_ℓδ_ij + φ₂'x̂_ℓx̂_ix̂_j + (φ₂/r)(δ_iℓx̂_j + δ_jℓx̂_i - 2x̂_ix̂_jx̂_ℓ)
    """
    _, r, xh = _as_points(x_minus_y)
    _, phi2, dphi1, dphi2 = radial_profiles(r, k, nd)
    xl = xh[..., :, None, None]
    xi = xh[..., None, :, None]
    xj = xh[..., None, None, :]
    d_li = _EYE[:, :, None]
    d_lj = _EYE[:, None, :]
    d_ij = _EYE[None, :, :]
    w = (phi2 / r)[..., None, None, None]
    return (dphi1[..., None, None, None] * xl * d_ij
            + dphi2[..., None, None, None] * xl * xi * xj
            + w * (d_li * xj + d_lj * xi - 2 * xi * xj * xl))


def kupradze_grad(ell: int, x_minus_y, k: complex, nd: NondimMedium) -> np.ndarray:
    """∂_ℓΓ^k，ℓ ∈ {0, 1, 2}"""
    if ell not in (0, 1, 2):
        raise DomainError(f"axis must be 0, 1 or 2, got {ell!r}")
    return kupradze_jacobian(x_minus_y, k, nd)[..., ell, :, :]


def kupradze_divergence(x_minus_y, k: complex, nd: NondimMedium) -> np.ndarray:
    """Σ_i ∂_iΓ_ij = (φ₁' + φ₂' + 2φ₂/r) x̂_j"""
    _, r, xh = _as_points(x_minus_y)
    _, phi2, dphi1, dphi2 = radial_profiles(r, k, nd)
    return (dphi1 + dphi2 + 2 * phi2 / r)[..., None] * xh


# ========== 场景 ==========

@dataclass(frozen=True)
class ScatterScene:
    """气泡中心 z、半径 epsilon、声源 s 与无量纲极化 p_vec（长度单位 m）"""
    z: Tuple[float, float, float]
    epsilon: float
    s: Tuple[float, float, float]
    p_vec: Tuple[float, float, float]
    n_trunc: int = DEFAULT_N_TRUNC

    def __post_init__(self):
        for name in ("z", "s", "p_vec"):
            value = tuple(float(v) for v in getattr(self, name))
            if len(value) != 3:
                raise DomainError(f"{name} must have 3 components")
            object.__setattr__(self, name, value)
        if not self.epsilon > 0:
            raise DomainError(f"bubble radius must be positive, got {self.epsilon!r}")
        if self.n_trunc < 0:
            raise DomainError(f"modal truncation must be non-negative, got {self.n_trunc!r}")
        if self.source_distance <= self.epsilon:
            raise DomainError("source must lie outside the bubble")

    @property
    def center(self) -> np.ndarray:
        return np.array(self.z)

    @property
    def source(self) -> np.ndarray:
        return np.array(self.s)

    @property
    def polarization(self) -> np.ndarray:
        return np.array(self.p_vec)

    @property
    def source_distance(self) -> float:
        return float(np.linalg.norm(np.subtract(self.z, self.s)))

    def check_exterior(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any(np.linalg.norm(x - self.center, axis=-1) <= self.epsilon):
            raise DomainError("evaluation point lies inside the closed bubble")
        return x


def source_wavenumber(nd: NondimMedium, omega: complex) -> complex:
    """k̃τ = ωτ/c_b"""
    return complex(omega) * nd.tau / nd.c_b


def incident_field(scene: ScatterScene, omega: complex, f_omega: complex, x, nd: NondimMedium) -> np.ndarray:
    """ŭ^in(x) = -ω² f(ω) Γ^{k̃τ}(x - s) p"""
    x = np.asarray(x, dtype=float)
    if np.any(np.linalg.norm(x - scene.source, axis=-1) == 0):
        raise DomainError("incident field is singular at the source")
    gamma = kupradze(x - scene.source, source_wavenumber(nd, omega), nd)
    return -complex(omega) ** 2 * f_omega * (gamma @ scene.polarization)


# ========== 强迫项 ==========

@dataclass(frozen=True)
class SourceData:
    """z 处的 Γp、𝒟 与 tr𝒟"""
    gamma_p: np.ndarray
    d_matrix: np.ndarray
    trace: complex


def source_data(scene: ScatterScene, omega: complex, nd: NondimMedium) -> SourceData:
    """𝒟_ij = Σ_l ∂_jΓ_il(z, s) p_l"""
    kt = source_wavenumber(nd, omega)
    arg = scene.center - scene.source
    p = scene.polarization
    jac = kupradze_jacobian(arg, kt, nd)
    d_matrix = np.einsum("jil,l->ij", jac, p)
    return SourceData(gamma_p=kupradze(arg, kt, nd) @ p, d_matrix=d_matrix, trace=complex(np.trace(d_matrix)))


def forcing_coefficients(scene: ScatterScene, omega: complex, nd: NondimMedium, f_omega: complex,
                         rule: Optional[SphereQuadrature] = None) -> Dict[Tuple[int, int], complex]:
    """
    截断强迫项 F̆ 在 Y̆_n^m 上的系数 ⟨F̆, Y̆_n^m⟩_{L²(∂D)}

    ⟨g, Y̆⟩_{L²(∂D)} = ε⟨g, Y⟩_{L²(∂B)}，故每项多乘一个 ε：
        ε·[δτ²k²ω²f⟨ν·Γp, Y⟩ + εδτ²k²ω²f⟨ν·𝒟ν, Y⟩
           + ελω²f(n - k²c/(2n+3))⟨tr𝒟, Y⟩ + εμω²f(n - k²c/(2n+3))⟨2ν·𝒟ν, Y⟩]
    """
    rule = rule or get_quadrature()
    eps = scene.epsilon
    omega = complex(omega)
    k = wavenumber(nd, omega, eps)
    c = c_of_omega(nd, omega)
    src = source_data(scene, omega, nd)
    nu = rule.points
    w2f = omega * omega * f_omega
    nu_gp = nu @ src.gamma_p
    nu_d_nu = np.einsum("qi,ij,qj->q", nu, src.d_matrix, nu)
    table = harmonic_table(rule, scene.n_trunc)
    proj_gp = table @ (rule.weights * nu_gp)
    proj_dnu = table @ (rule.weights * nu_d_nu)
    proj_one = table @ rule.weights
    coeffs = {}
    for idx, (n, m) in enumerate(modes(scene.n_trunc)):
        factor = n - k * k * c / (2 * n + 3)
        coeffs[(n, m)] = eps * w2f * (
            nd.delta * nd.tau ** 2 * k * k * (proj_gp[idx] + eps * proj_dnu[idx])
            + eps * factor * (nd.lam * src.trace * proj_one[idx] + 2 * nd.mu * proj_dnu[idx]))
    return coeffs


# ========== 单层势 ==========

def single_layer_unit_sphere(density: np.ndarray, x, k: complex, nd: NondimMedium,
                             rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """S^k_{∂B}[φ](x) = Σ_q w_q Γ^k(x - y_q)φ(y_q)，density 形状 (Q, 3)，x 在 ∂B 之外"""
    rule = rule or get_quadrature()
    x = np.asarray(x, dtype=float)
    gamma = kupradze(x[..., None, :] - rule.points, k, nd)
    return np.einsum("...qij,qj,q->...i", gamma, density, rule.weights)


def single_layer_bubble(density: np.ndarray, x, k_tilde: complex, scene: ScatterScene,
                        nd: NondimMedium, rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """S^{k̃}_{∂D}[φ̆](x̃)，φ̆(x̃) = φ((x̃-z)/ε)；等于 ε S^{k̃ε}_{∂B}[φ]((x̃-z)/ε)"""
    rule = rule or get_quadrature()
    x = scene.check_exterior(x)
    eps = scene.epsilon
    gamma = kupradze(x[..., None, :] - (scene.center + eps * rule.points), k_tilde, nd)
    return eps * eps * np.einsum("...qij,qj,q->...i", gamma, density, rule.weights)


def modal_layers(scene: ScatterScene, x, k_tilde: complex, nd: NondimMedium,
                 rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """S^{k̃}_{∂D}[Y̆_n^m ν](x) 对所有模态，返回 (..., modes, 3)；Y̆ = ε⁻¹Y((x̃-z)/ε)"""
    rule = rule or get_quadrature()
    x = scene.check_exterior(x)
    eps = scene.epsilon
    table = harmonic_table(rule, scene.n_trunc)
    gamma = kupradze(x[..., None, :] - (scene.center + eps * rule.points), k_tilde, nd)
    weighted = table * rule.weights
    return eps * np.einsum("...qij,qj,pq->...pi", gamma, rule.points, weighted)


# ========== 模态散射场 ==========

@dataclass
class ModalField:
    """各模态系数与对应的单层势，场 = Σ (1/ε)(1/λ_n)⟨F̆,Y̆⟩ S̆"""
    omega: complex
    coefficients: Dict[Tuple[int, int], complex]
    symbols: Dict[int, complex]
    layers: np.ndarray  # (..., modes, 3)
    epsilon: float
    mode_index: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    zero_mode: Optional[complex] = None  # 约去 k² 后的 ⟨F̆,Y̆⁰₀⟩/λ₀

    def weight(self, nm: Tuple[int, int]) -> complex:
        if nm == (0, 0) and self.zero_mode is not None:
            return self.zero_mode
        return self.coefficients[nm] / self.symbols[nm[0]]

    def terms(self) -> np.ndarray:
        """每个 (n, m) 的贡献，(..., modes, 3)"""
        weights = np.array([self.weight(nm) for nm in self.mode_index])
        return weights[:, None] * self.layers / self.epsilon

    def total(self) -> np.ndarray:
        return self.terms().sum(axis=-2)

    def by_order(self) -> Dict[int, np.ndarray]:
        terms = self.terms()
        out: Dict[int, np.ndarray] = {}
        for idx, (n, _) in enumerate(self.mode_index):
            out[n] = out.get(n, 0) + terms[..., idx, :]
        return out


def modal_field(scene: ScatterScene, omega: complex, nd: NondimMedium, x, f_omega: complex,
                symbol: str = "exact", traction_variant: str = "printed",
                rule: Optional[SphereQuadrature] = None) -> ModalField:
    omega = complex(omega)
    if omega == 0:
        raise DomainError("modal field at omega = 0 is a removable point; use the zero-frequency limit")
    rule = rule or get_quadrature()
    coeffs = forcing_coefficients(scene, omega, nd, f_omega, rule=rule)
    symbols = {n: modal_symbol(n, omega, nd, scene.epsilon, symbol=symbol, traction_variant=traction_variant)
               for n in range(scene.n_trunc + 1)}
    layers = modal_layers(scene, x, source_wavenumber(nd, omega), nd, rule=rule)
    # 一阶截断时 λ₀ = k²λ_{0,1}，n = 0 项用约去 k² 的形式
    zero_mode = zero_mode_deflated(scene, omega, nd, f_omega, rule=rule) if symbol == "first_order" else None
    return ModalField(omega=omega, coefficients=coeffs, symbols=symbols, layers=layers,
                      epsilon=scene.epsilon, mode_index=tuple(modes(scene.n_trunc)), zero_mode=zero_mode)


def modal_scattered_field(scene: ScatterScene, omega: complex, nd: NondimMedium, x, f_omega: complex,
                          symbol: str = "exact", traction_variant: str = "printed",
                          rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """ŭ^sca(x, ω)，x 形状 (3,) 或 (P, 3)"""
    return modal_field(scene, omega, nd, x, f_omega, symbol=symbol,
                       traction_variant=traction_variant, rule=rule).total()


def mode_contributions(scene: ScatterScene, omega: complex, nd: NondimMedium, x, f_omega: complex,
                       symbol: str = "exact", rule: Optional[SphereQuadrature] = None) -> Dict[int, float]:
    """每个阶数 n 的贡献的模 |Σ_m ...|，x 为单点"""
    parts = modal_field(scene, omega, nd, x, f_omega, symbol=symbol, rule=rule).by_order()
    return {n: float(np.linalg.norm(v)) for n, v in sorted(parts.items())}


def zero_mode_deflated(scene: ScatterScene, omega: complex, nd: NondimMedium, f_omega: complex,
                       rule: Optional[SphereQuadrature] = None) -> complex:
    """
    n = 0 模态的 ⟨F̆,Y̆⁰₀⟩/λ₀(k)，分子分母先约去 k²

    分子只剩 ε²ω²f[δτ²⟨ν·𝒟ν,Y⟩ - (c/3)(λ tr𝒟⟨1,Y⟩ + 2μ⟨ν·𝒟ν,Y⟩)]，分母取 λ_{0,1}(ω)；
    ω → 0 时整体趋于 0。
    """
    rule = rule or get_quadrature()
    omega = complex(omega)
    eps = scene.epsilon
    c = c_of_omega(nd, omega)
    src = source_data(scene, omega, nd)
    y00 = harmonic_table(rule, 0)[0]
    nu_d_nu = np.einsum("qi,ij,qj->q", rule.points, src.d_matrix, rule.points)
    proj_dnu = complex(y00 @ (rule.weights * nu_d_nu))
    proj_one = complex(y00 @ rule.weights)
    num = eps * eps * omega * omega * f_omega * (
        nd.delta * nd.tau ** 2 * proj_dnu
        - c / 3 * (nd.lam * src.trace * proj_one + 2 * nd.mu * proj_dnu))
    return num / lambda_first_order(0, omega, nd)
