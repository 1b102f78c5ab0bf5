"""
时域：脉冲、截断逆 Fourier 变换与留数近似
==========================================

P_ρ[ŭ^sca](x, t) = ∫_{-ρ}^{ρ} ŭ^sca(x, ω) e^{-iωt} dω

t ≥ t₀⁺ 时由 iΩ₀'' 处单极点的留数给出单个衰减模态 𝒞₀ E₀(x) e^{Ω₀''(t-t₀⁺)}。
下半平面闭合是顺时针方向，residue_approximation 默认带 -1 的方向符号；
orientation="printed" 时与闭式的符号一致。

P_ρ 加上 |ω| = ρ 的下半圆弧即闭合回路，t ≥ t₀⁺ 时与留数近似逐点可比；
单独的 P_ρ 在留数很小时由 O(1/(t-t₀⁺)) 的频带边缘项主导。
"""
import functools
import math
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_legendre

from minnaert_core.errors import ConvergenceError, DomainError
from minnaert_core.fields import (
    ScatterScene,
    modal_field,
    modal_layers,
    source_data,
    source_wavenumber,
)
from minnaert_core.medium import NondimMedium, c_of_omega
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.parallel import map_ordered
from minnaert_core.resonance import closed_form_resonance, resonance_radius
from minnaert_core.sphere import SphereQuadrature, get_quadrature, harmonic_table

logger = get_logger(__name__)

PULSE_EPSABS = 1e-14
PULSE_EPSREL = 1e-11
PULSE_LIMIT = 200
SWEEP_PANELS = 24
SWEEP_ORDER = 16
SWEEP_TOL = 1e-7
SWEEP_MAX_DOUBLINGS = 3
FIELD_RULE = (24, 48)
CONTOUR_NODES = 256
ARC_NODES = 512
# 半圆弧 ω = ρe^{iθ} 的走向：lower 从 ρ 经 -iρ 到 -ρ，upper 经 +iρ
ARC_HALVES = {"lower": -1.0, "upper": 1.0}
ORIENTATIONS = {"clockwise": -1.0, "printed": 1.0}


# ========== 脉冲 ==========

@dataclass(frozen=True)
class Pulse:
    """[0, C₁] 上的光滑 bump，峰值归一到 1"""
    c1: float = 1.0

    def __post_init__(self):
        if not self.c1 > 0:
            raise DomainError(f"pulse support C1 must be positive, got {self.c1!r}")


def pulse_hat(t, pulse: Pulse):
    """f̂(t) = exp(-1/(t(C₁-t))) / exp(-4/C₁²)，支撑外为 0"""
    t = np.asarray(t, dtype=float)
    c1 = pulse.c1
    inside = (t > 0) & (t < c1)
    safe = np.where(inside, t, 0.5 * c1)
    out = np.where(inside, np.exp(-1.0 / (safe * (c1 - safe)) + 4.0 / (c1 * c1)), 0.0)
    return out if out.ndim else float(out)


@functools.lru_cache(maxsize=65536)
def pulse_ft(omega: complex, pulse: Pulse) -> complex:
    """
    f(ω) = (1/2π)∫₀^{C₁} f̂(t)e^{iωt}dt

    e^{-Im(ω)t} 并入被积函数，振荡部分交给 quad 的 cos/sin 权重。
    """
    omega = complex(omega)
    a, b = omega.real, omega.imag

    def g(t):
        return pulse_hat(t, pulse) * math.exp(-b * t)

    opts = dict(limit=PULSE_LIMIT, epsabs=PULSE_EPSABS, epsrel=PULSE_EPSREL)
    re, err_re = quad(g, 0.0, pulse.c1, weight="cos", wvar=a, **opts)
    im, err_im = quad(g, 0.0, pulse.c1, weight="sin", wvar=a, **opts)
    scale = max(abs(re) + abs(im), 1e-300)
    err = max(err_re, err_im)
    if err > 1e-8 * scale and err > 1e-13:
        raise ConvergenceError(f"pulse transform quadrature unmet at omega={omega}", err / scale)
    return complex(re, im) / (2 * math.pi)


def energy_outside_band(pulse: Pulse, rho: float, omega_max: Optional[float] = None) -> float:
    """∫_{|ω|>ρ} ω⁴|f(ω)|² dω，上限截断到 omega_max"""
    omega_max = omega_max or max(4 * rho, 400.0 / pulse.c1)
    if omega_max <= rho:
        return 0.0
    value, _ = quad(lambda w: w ** 4 * abs(pulse_ft(w, pulse)) ** 2, rho, omega_max, limit=PULSE_LIMIT)
    return 2 * value


# ========== 时间窗 ==========

@dataclass(frozen=True)
class BandLimit:
    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"band limit must be positive, got {self.rho!r}")

    def covers_resonance(self, nd: NondimMedium) -> bool:
        return self.rho >= resonance_radius(nd).value


@dataclass(frozen=True)
class TimeWindows:
    t_minus: float
    t_plus: float


def time_windows(scene: ScatterScene, nd: NondimMedium, x, pulse: Pulse) -> TimeWindows:
    """
    t₀⁻ = τ(|z-s| + |x-z|)/(c_b c_p) - τε/(c_b c_s) - C₁
    t₀⁺ = τ(|z-s| + |x-z|)/(c_b c_s) + τε/(c_b c_s) + C₁
    """
    x = scene.check_exterior(x)
    path = scene.source_distance + float(np.linalg.norm(x - scene.center))
    scale = nd.tau / nd.c_b
    inner = scale * scene.epsilon / nd.c_s
    return TimeWindows(t_minus=scale * path / nd.c_p - inner - pulse.c1,
                       t_plus=scale * path / nd.c_s + inner + pulse.c1)


# ========== 频率扫描 ==========

def _composite_nodes(rho: float, panels: int, order: int):
    """[-ρ, 0] 与 [0, ρ] 各 panels 段 Gauss，节点关于 0 对称"""
    x, w = roots_legendre(order)
    edges = np.linspace(0.0, rho, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pos = (mid[:, None] + half[:, None] * x).ravel()
    wpos = (half[:, None] * w).ravel()
    return np.concatenate([-pos[::-1], pos]), np.concatenate([wpos[::-1], wpos])


@dataclass
class FrequencySweep:
    """单个观测点 x 在求积节点上的 ŭ^sca，构造后只读"""
    scene: ScatterScene
    nd: NondimMedium
    pulse: Pulse
    x: np.ndarray
    rho: float
    panels: int = SWEEP_PANELS
    order: int = SWEEP_ORDER
    symbol: str = "exact"
    rule: Optional[SphereQuadrature] = None
    omegas: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.x = self.scene.check_exterior(self.x)
        self.rule = self.rule or get_quadrature(*FIELD_RULE)
        self.omegas, self.weights = _composite_nodes(self.rho, self.panels, self.order)
        values = map_ordered(self._evaluate, list(self.omegas))
        self.values = np.array(values)
        self.values.setflags(write=False)
        logger.debug(f"频率扫描完成: {self.omegas.size} 个节点, rho={self.rho}")

    def _evaluate(self, omega: float) -> np.ndarray:
        f = pulse_ft(omega, self.pulse)
        return modal_field(self.scene, omega, self.nd, self.x, f, symbol=self.symbol, rule=self.rule).total()

    def integrate(self, t) -> np.ndarray:
        """P_ρ(t)，t 标量返回 (3,)，数组返回 (T, 3)"""
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        phase = np.exp(-1j * np.outer(t_arr, self.omegas)) * self.weights
        out = phase @ self.values
        return out[0] if np.ndim(t) == 0 else out


_sweep_cache: Dict[tuple, FrequencySweep] = {}
_sweep_lock = threading.Lock()


def get_sweep(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, x, rho: float,
              panels: int = SWEEP_PANELS, symbol: str = "exact") -> FrequencySweep:
    key = (scene, nd, pulse, tuple(np.asarray(x, dtype=float)), float(rho), panels, symbol)
    with _sweep_lock:
        sweep = _sweep_cache.get(key)
    if sweep is None:
        sweep = FrequencySweep(scene, nd, pulse, np.asarray(x, dtype=float), rho, panels=panels, symbol=symbol)
        with _sweep_lock:
            sweep = _sweep_cache.setdefault(key, sweep)
    return sweep


def truncated_inverse_ft(scene: ScatterScene, nd: NondimMedium, band: BandLimit, x, t, pulse: Pulse,
                         panels: int = SWEEP_PANELS, tol: float = SWEEP_TOL,
                         max_doublings: int = SWEEP_MAX_DOUBLINGS, symbol: str = "exact") -> np.ndarray:
    """
    P_ρ[ŭ^sca](x, t)

    ω = 0 不在 Gauss 节点上；n = 0 项在 ω → 0 时的极限为 0（见 fields.zero_mode_deflated）。
    面板数逐次加倍，直到相邻两次的最大相对差 < tol。
    """
    previous = get_sweep(scene, nd, pulse, x, band.rho, panels, symbol).integrate(t)
    diff = float("inf")
    for _ in range(max_doublings):
        panels *= 2
        current = get_sweep(scene, nd, pulse, x, band.rho, panels, symbol).integrate(t)
        diff = np.max(np.abs(current - previous)) / max(np.max(np.abs(current)), 1e-300)
        if diff < tol:
            logger.debug(f"P_rho 收敛: panels={panels}, 相对差 {diff:.2e}")
            return current
        previous = current
    raise ConvergenceError(f"truncated inverse transform not converged after {max_doublings} doublings", diff)


# ========== 留数 ==========

def resonance_bracket(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, omega: complex,
                      rule: Optional[SphereQuadrature] = None) -> complex:
    """
    留数闭式中括号内四项之和（内积在 ∂D 上）

    δτ²f⟨ν·Γp, Y̆⟩ + εδτ²f⟨ν·𝒟ν, Y̆⟩ - (ε/3)λfc⟨tr𝒟, Y̆⟩ - (ε/3)μfc⟨ν·(𝒟+𝒟ᵀ)ν, Y̆⟩
    """
    rule = rule or get_quadrature(*FIELD_RULE)
    eps = scene.epsilon
    f = pulse_ft(omega, pulse)
    c = c_of_omega(nd, omega)
    src = source_data(scene, omega, nd)
    y00 = harmonic_table(rule, 0)[0] * rule.weights
    nu = rule.points
    proj_gp = complex(y00 @ (nu @ src.gamma_p))
    proj_dnu = complex(y00 @ np.einsum("qi,ij,qj->q", nu, src.d_matrix, nu))
    proj_one = complex(y00.sum())
    bracket = (nd.delta * nd.tau ** 2 * f * (proj_gp + eps * proj_dnu)
               - eps / 3 * f * c * (nd.lam * src.trace * proj_one + 2 * nd.mu * proj_dnu))
    return eps * bracket


def residue_prefactor(nd: NondimMedium, epsilon: float) -> float:
    """1152π(μγ)³(λ+2μ) / (ε(4μ+3δτ²)⁴)"""
    denom = 4 * nd.mu + 3 * nd.delta * nd.tau ** 2
    return 1152 * math.pi * (nd.mu * nd.gamma) ** 3 * nd.lam_2mu / (epsilon * denom ** 4)


def resonance_profile(scene: ScatterScene, nd: NondimMedium, x,
                      rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """e₀(x) = S^{iΩ₀''τ/c_b}_{∂D}[Y̆⁰₀ν](x)"""
    rule = rule or get_quadrature(*FIELD_RULE)
    omega0 = closed_form_resonance(nd)
    zero_scene = ScatterScene(z=scene.z, epsilon=scene.epsilon, s=scene.s, p_vec=scene.p_vec, n_trunc=0)
    return modal_layers(zero_scene, x, source_wavenumber(nd, omega0), nd, rule=rule)[..., 0, :]


def residue_term(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, x, t,
                 rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """闭式 prefactor·bracket·e₀(x)·e^{Ω₀''t}，等于逆时针方向的 2πi·Res"""
    omega0 = closed_form_resonance(nd)
    amp = residue_prefactor(nd, scene.epsilon) * resonance_bracket(scene, nd, pulse, omega0, rule=rule)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = amp * np.exp(omega0.imag * t_arr)[:, None] * resonance_profile(scene, nd, x, rule=rule)
    return out[0] if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class ResidueMode:
    """𝒞₀ E₀(x) e^{Ω₀''(t-t₀⁺)}"""
    amplitude: complex
    shape: np.ndarray
    decay: float
    t_plus: float
    orientation: float

    def at(self, t) -> np.ndarray:
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t_arr < self.t_plus):
            raise DomainError("residue form applies only for t >= t0+")
        out = self.orientation * self.amplitude * np.exp(self.decay * (t_arr - self.t_plus))[:, None] * self.shape
        return out[0] if np.ndim(t) == 0 else out


def residue_mode(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, x,
                 orientation: str = "clockwise", rule: Optional[SphereQuadrature] = None) -> ResidueMode:
    """
    不发散的形式：𝒞₀ = prefactor·C_ε·bracket，E₀ = e₀·e^{Ω₀''τ|x-z|/(c_b c_s)}，
    C_ε = e^{Ω₀''(τ|z-s|/(c_b c_s) + τε/(c_b c_s) + C₁)}
    """
    if orientation not in ORIENTATIONS:
        raise DomainError(f"unknown orientation {orientation!r}, expected one of {tuple(ORIENTATIONS)}")
    x = scene.check_exterior(x)
    omega0 = closed_form_resonance(nd)
    decay = omega0.imag
    scale = nd.tau / (nd.c_b * nd.c_s)
    c_eps = math.exp(decay * (scale * scene.source_distance + scale * scene.epsilon + pulse.c1))
    amplitude = residue_prefactor(nd, scene.epsilon) * c_eps * resonance_bracket(scene, nd, pulse, omega0, rule=rule)
    shape = resonance_profile(scene, nd, x, rule=rule) * math.exp(
        decay * scale * float(np.linalg.norm(x - scene.center)))
    windows = time_windows(scene, nd, x, pulse)
    return ResidueMode(amplitude=complex(amplitude), shape=shape, decay=decay,
                       t_plus=windows.t_plus, orientation=ORIENTATIONS[orientation])


def residue_approximation(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, x, t,
                          orientation: str = "clockwise", rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """t ≥ t₀⁺ 时 P_ρ 的单模态近似"""
    return residue_mode(scene, nd, pulse, x, orientation=orientation, rule=rule).at(t)


def residue_oracle(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, x, t: float,
                   radius: Optional[float] = None, nodes: int = CONTOUR_NODES, mode=(0, 0),
                   rule: Optional[SphereQuadrature] = None) -> Dict[str, object]:
    """
    ∮ Ξ_n^m(x, Ω)e^{-iΩt}dΩ，逆时针绕 iΩ₀''，梯形规则

    Ξ 用一阶截断符号；n = 0 时与 residue_term 比较，n ≥ 1 时积分应为 0。
    """
    rule = rule or get_quadrature(*FIELD_RULE)
    omega0 = closed_form_resonance(nd)
    radius = radius or min(0.1, abs(omega0.imag) / 4)
    if radius >= abs(omega0):
        raise DomainError("contour around the resonance would enclose omega = 0")
    n_max = mode[0]
    mode_scene = ScatterScene(z=scene.z, epsilon=scene.epsilon, s=scene.s, p_vec=scene.p_vec, n_trunc=n_max)
    theta = 2 * np.pi * np.arange(nodes) / nodes
    points = omega0 + radius * np.exp(1j * theta)

    def integrand(omega):
        mf = modal_field(mode_scene, omega, nd, x, pulse_ft(omega, pulse), symbol="first_order", rule=rule)
        idx = mf.mode_index.index(tuple(mode))
        return mf.terms()[idx] * np.exp(-1j * omega * t)

    values = np.array(map_ordered(integrand, list(points)))
    dz = 1j * radius * np.exp(1j * theta) * (2 * np.pi / nodes)
    contour = dz @ values
    result = {"contour": contour, "radius": radius, "nodes": nodes}
    if tuple(mode) == (0, 0):
        closed = residue_term(scene, nd, pulse, x, t, rule=rule)
        result["closed_form"] = closed
        result["rel_err"] = float(np.max(np.abs(contour - closed)) / max(np.max(np.abs(closed)), 1e-300))
    return result


# ========== 频带边缘 ==========

def band_edge_arc(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, band: BandLimit, x, t,
                   half: str = "lower", nodes: int = ARC_NODES, symbol: str = "first_order",
                   rule: Optional[SphereQuadrature] = None) -> np.ndarray:
    """
    半圆弧 |ω| = ρ 上的 ∫ ŭ^sca(x, ω)e^{-iωt}dω，方向从 ρ 到 -ρ

    与 P_ρ 拼成闭合回路：lower 为顺时针，P_ρ + 弧 = -2πi·Res（即 clockwise 的留数近似）；
    upper 为逆时针，P_ρ + 弧 = 0。lower 只在 t ≥ t₀⁺ 使用，upper 只在 t ≤ t₀⁻ 使用，
    其余时刻弧上的被积函数指数增长。
    """
    if half not in ARC_HALVES:
        raise DomainError(f"unknown arc half {half!r}, expected one of {tuple(ARC_HALVES)}")
    if not band.covers_resonance(nd):
        raise DomainError("arc would cut through the resonance disc; raise the band limit")
    x = scene.check_exterior(x)
    rule = rule or get_quadrature(*FIELD_RULE)
    s, w = roots_legendre(nodes)
    sign = ARC_HALVES[half]
    points = band.rho * np.exp(1j * sign * 0.5 * math.pi * (s + 1))
    # dω = iω dθ
    dz = 1j * points * (sign * 0.5 * math.pi * w)

    def evaluate(omega):
        return modal_field(scene, omega, nd, x, pulse_ft(omega, pulse), symbol=symbol, rule=rule).total()

    values = np.array(map_ordered(evaluate, list(points)))
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = (np.exp(-1j * np.outer(t_arr, points)) * dz) @ values
    return out[0] if np.ndim(t) == 0 else out


# ========== 时间序列 ==========

@dataclass
class TimeTrace:
    times: np.ndarray
    p_rho: np.ndarray
    residue: np.ndarray  # t < t₀⁺ 处为 nan
    windows: TimeWindows
    x: np.ndarray
    arc: Optional[np.ndarray] = None  # 下半圆弧，t < t₀⁺ 处为 nan

    @property
    def difference(self) -> np.ndarray:
        return self.p_rho - self.residue

    @property
    def closed(self) -> Optional[np.ndarray]:
        """P_ρ + 下半圆弧，t ≥ t₀⁺ 时应等于 clockwise 的留数近似"""
        return None if self.arc is None else self.p_rho + self.arc


def time_trace(scene: ScatterScene, nd: NondimMedium, pulse: Pulse, band: BandLimit, x,
               times: Sequence[float], orientation: str = "clockwise", symbol: str = "exact",
               panels: int = SWEEP_PANELS, with_arc: bool = False) -> TimeTrace:
    x = scene.check_exterior(x)
    times = np.asarray(sorted(times), dtype=float)
    windows = time_windows(scene, nd, x, pulse)
    p_rho = np.atleast_2d(truncated_inverse_ft(scene, nd, band, x, times, pulse, panels=panels, symbol=symbol))
    residue = np.full(p_rho.shape, np.nan, dtype=complex)
    arc = np.full(p_rho.shape, np.nan, dtype=complex) if with_arc else None
    after = times >= windows.t_plus
    if np.any(after):
        residue[after] = residue_approximation(scene, nd, pulse, x, times[after], orientation=orientation)
        if with_arc:
            arc[after] = band_edge_arc(scene, nd, pulse, band, x, times[after], symbol=symbol)
    return TimeTrace(times=times, p_rho=p_rho, residue=residue, windows=windows, x=x, arc=arc)


def structure_report(trace: TimeTrace, nd: NondimMedium) -> Dict[str, float]:
    """
    结构指标：到达前的相对幅度、t₀⁺ 之后 log|P_ρ| 的斜率、(t-t₀⁺)|P_ρ - 留数| 的最大值

    带下半圆弧时另报告闭合回路与留数近似的相对差，以及 (t-t₀⁺)|弧| 的最大值。
    只报告，不判定。
    """
    mag = np.linalg.norm(trace.p_rho, axis=-1)
    peak = float(mag.max()) if mag.size else 0.0
    report: Dict[str, float] = {"peak": peak, "decay_rate": closed_form_resonance(nd).imag}
    before = trace.times <= trace.windows.t_minus
    report["pre_arrival_ratio"] = float(mag[before].max() / peak) if np.any(before) and peak > 0 else float("nan")
    t_plus = trace.windows.t_plus
    ring = (trace.times >= t_plus + 2) & (trace.times <= t_plus + 10) & (mag > 0)
    if np.count_nonzero(ring) >= 2:
        report["ringdown_slope"] = float(np.polyfit(trace.times[ring], np.log(mag[ring]), 1)[0])
    else:
        report["ringdown_slope"] = float("nan")
    tail = (trace.times >= t_plus + 1) & (trace.times <= t_plus + 10)
    if np.any(tail):
        rem = np.linalg.norm(trace.difference[tail], axis=-1) * (trace.times[tail] - t_plus)
        report["scaled_remainder_max"] = float(rem.max())
    else:
        report["scaled_remainder_max"] = float("nan")
    if trace.arc is not None:
        after = trace.times >= t_plus
        res = np.linalg.norm(trace.residue[after], axis=-1)
        if np.any(after) and res.max() > 0:
            err = np.linalg.norm(trace.closed[after] - trace.residue[after], axis=-1)
            report["closed_contour_rel_err"] = float(err.max() / res.max())
            arc_scaled = np.linalg.norm(trace.arc[tail], axis=-1) * (trace.times[tail] - t_plus)
            report["arc_scaled_max"] = float(arc_scaled.max()) if arc_scaled.size else float("nan")
    return report


def band_diagnostics(nd: NondimMedium, pulse: Pulse, band: BandLimit, gamma1: Optional[float] = None) -> List[str]:
    """ρ 与能量条件的检查结果，返回警告列表（不抛异常）"""
    warnings = []
    radius = resonance_radius(nd).value
    if band.rho < radius:
        warnings.append(f"band limit rho={band.rho:g} is below the resonance radius {radius:g}")
    if gamma1 is not None:
        energy = energy_outside_band(pulse, band.rho)
        if energy > gamma1:
            warnings.append(f"energy outside the band {energy:.3e} exceeds gamma1={gamma1:g}")
    return warnings
