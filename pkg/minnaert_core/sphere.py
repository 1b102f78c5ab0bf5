"""
单位球面上的调和函数与求积
==========================

- 实正交归一球谐 Y_n^m（不含 Condon–Shortley 相位）
- 面梯度 ∇_{∂B}Y 与向量球谐 ℐ_n^m, 𝒯_n^m, 𝒩_n^m
- cosθ 方向 Gauss–Legendre × φ 方向梯形的张量积求积
"""
import threading
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy.special import gammaln, lpmv, roots_legendre

from minnaert_core.errors import DomainError
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.specfun import check_order

logger = get_logger(__name__)

DEFAULT_N_THETA = 48
DEFAULT_N_PHI = 96
POLE_GUARD = 1e-12
VECTOR_FAMILIES = ("I", "T", "N")

_rule_cache: Dict[Tuple[int, int], "SphereQuadrature"] = {}
_rule_lock = threading.Lock()


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """张量积求积规则，节点与权重构造后只读"""
    n_theta: int
    n_phi: int
    theta: np.ndarray
    phi: np.ndarray
    points: np.ndarray   # (Q, 3)，同时是外法向 ν
    weights: np.ndarray  # (Q,)

    @classmethod
    def build(cls, n_theta: int = DEFAULT_N_THETA, n_phi: int = DEFAULT_N_PHI) -> "SphereQuadrature":
        if n_theta < 1 or n_phi < 1:
            raise DomainError(f"quadrature sizes must be positive, got ({n_theta}, {n_phi})")
        x, w = roots_legendre(n_theta)
        phi = 2 * np.pi * np.arange(n_phi) / n_phi
        theta_grid, phi_grid = np.meshgrid(np.arccos(x), phi, indexing="ij")
        weights = np.outer(w, np.full(n_phi, 2 * np.pi / n_phi))
        theta = theta_grid.ravel()
        phi_flat = phi_grid.ravel()
        points = spherical_to_cartesian(theta, phi_flat)
        for arr in (theta, phi_flat, points):
            arr.setflags(write=False)
        weights = weights.ravel()
        weights.setflags(write=False)
        return cls(n_theta=n_theta, n_phi=n_phi, theta=theta, phi=phi_flat, points=points, weights=weights)

    @property
    def size(self) -> int:
        return self.weights.size

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """∫_{∂B} values dσ，最后一维对应节点"""
        return np.asarray(values) @ self.weights

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        """⟨f, g⟩_{L²(∂B)}，g 取共轭"""
        return self.integrate(np.asarray(f) * np.conj(g))


def get_quadrature(n_theta: int = DEFAULT_N_THETA, n_phi: int = DEFAULT_N_PHI) -> SphereQuadrature:
    """按尺寸缓存的求积规则"""
    key = (int(n_theta), int(n_phi))
    with _rule_lock:
        rule = _rule_cache.get(key)
        if rule is None:
            rule = SphereQuadrature.build(*key)
            _rule_cache[key] = rule
            logger.debug(f"构造球面求积规则 {key[0]}x{key[1]}，共 {rule.size} 个节点")
        return rule


def spherical_to_cartesian(theta, phi) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def cartesian_to_spherical(points) -> Tuple[np.ndarray, np.ndarray]:
    """单位向量 → (θ, φ)"""
    p = np.asarray(points, dtype=float)
    theta = np.arctan2(np.hypot(p[..., 0], p[..., 1]), p[..., 2])
    phi = np.arctan2(p[..., 1], p[..., 0])
    return theta, phi


def _check_degree(n: int, m: int) -> Tuple[int, int]:
    n = check_order(n)
    if abs(m) > n:
        raise DomainError(f"|m| must not exceed n, got n={n}, m={m}")
    return n, int(m)


def _norm(n: int, m: int) -> float:
    """√((2n+1)/4π · (n-m)!/(n+m)!)"""
    return float(np.sqrt((2 * n + 1) / (4 * np.pi) * np.exp(gammaln(n - m + 1) - gammaln(n + m + 1))))


def _legendre(n: int, m: int, x) -> np.ndarray:
    """P_n^m(x)，去掉 scipy 自带的 (-1)^m"""
    if m > n:
        return np.zeros_like(np.asarray(x, dtype=float))
    return (-1) ** m * lpmv(m, n, x)


def _azimuthal(m: int, phi) -> Tuple[np.ndarray, np.ndarray]:
    """(角向因子, 对 φ 的导数)"""
    if m > 0:
        return np.sqrt(2) * np.cos(m * phi), -np.sqrt(2) * m * np.sin(m * phi)
    if m < 0:
        a = -m
        return np.sqrt(2) * np.sin(a * phi), np.sqrt(2) * a * np.cos(a * phi)
    return np.ones_like(phi), np.zeros_like(phi)


def real_sph_harm(n: int, m: int, theta, phi) -> np.ndarray:
    """实正交归一球谐 Y_n^m(θ, φ)"""
    n, m = _check_degree(n, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    a = abs(m)
    ang, _ = _azimuthal(m, phi)
    return _norm(n, a) * _legendre(n, a, np.cos(theta)) * ang


def real_sph_harm_at(n: int, m: int, points) -> np.ndarray:
    """在单位向量处求值"""
    theta, phi = cartesian_to_spherical(points)
    return real_sph_harm(n, m, theta, phi)


def sph_harm_surface_grad(n: int, m: int, theta, phi) -> np.ndarray:
    """
    面梯度 ∇_{∂B}Y_n^m = ∂_θY θ̂ + (1/sinθ)∂_φY φ̂，返回 (..., 3)

    dP_n^m/dθ 用 (x²-1)P' = n x P_n^m - (n+m)P_{n-1}^m；极点处 sinθ 截断到 POLE_GUARD。
    """
    n, m = _check_degree(n, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    a = abs(m)
    x = np.cos(theta)
    s = np.maximum(np.sin(theta), POLE_GUARD)
    p = _legendre(n, a, x)
    p_lower = _legendre(n - 1, a, x) if n >= 1 else np.zeros_like(x)
    dp_dtheta = (n * x * p - (n + a) * p_lower) / s
    ang, dang = _azimuthal(m, phi)
    c = _norm(n, a)
    d_theta = c * dp_dtheta * ang
    d_phi_over_sin = c * p * dang / s
    e_theta = np.stack([x * np.cos(phi), x * np.sin(phi), -np.sin(theta)], axis=-1)
    e_phi = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
    return d_theta[..., None] * e_theta + d_phi_over_sin[..., None] * e_phi


def vector_harmonic(family: str, n: int, m: int, theta, phi) -> np.ndarray:
    """
    向量球谐，返回 (..., 3)

    ℐ_n^m = ∇Y_{n+1}^m + (n+1)Y_{n+1}^m ν,   n ≥ 0
    𝒯_n^m = ∇Y_n^m × ν,                       n ≥ 1
    𝒩_n^m = -∇Y_{n-1}^m + nY_{n-1}^m ν,       n ≥ 1
    """
    n = check_order(n)
    nu = spherical_to_cartesian(theta, phi)
    if family == "I":
        return sph_harm_surface_grad(n + 1, m, theta, phi) + \
            (n + 1) * real_sph_harm(n + 1, m, theta, phi)[..., None] * nu
    if family == "T":
        if n < 1:
            raise DomainError("T family starts at n = 1")
        return np.cross(sph_harm_surface_grad(n, m, theta, phi), nu)
    if family == "N":
        if n < 1:
            raise DomainError("N family starts at n = 1")
        return -sph_harm_surface_grad(n - 1, m, theta, phi) + \
            n * real_sph_harm(n - 1, m, theta, phi)[..., None] * nu
    raise DomainError(f"unknown vector harmonic family {family!r}, expected one of {VECTOR_FAMILIES}")


def modes(n_max: int):
    """(n, m) 按 n 升序、m 升序"""
    for n in range(check_order(n_max) + 1):
        for m in range(-n, n + 1):
            yield n, m


_table_cache: Dict[Tuple[int, int, int], np.ndarray] = {}


def harmonic_table(rule: SphereQuadrature, n_max: int) -> np.ndarray:
    """所有 n ≤ n_max 的 Y_n^m 在求积节点上的取值，形状 ((n_max+1)², Q)，按 modes() 顺序"""
    key = (rule.n_theta, rule.n_phi, check_order(n_max))
    with _rule_lock:
        table = _table_cache.get(key)
        if table is None:
            table = np.array([real_sph_harm(n, m, rule.theta, rule.phi) for n, m in modes(n_max)])
            table.setflags(write=False)
            _table_cache[key] = table
        return table
