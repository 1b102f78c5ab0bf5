"""
直接求积校验
============

在单位球北极 e₃ 处用面积分直接计算单层势与牵引力，再除以 Y_n^0(e₃)，
与 spectra 中的谱公式逐项比对。

极坐标约化：u = sin(θ/2)，dσ = 4u du dφ，cosθ = 1 - 2u²，弦长 |e₃ - y| = 2u，
1/|x-y| 奇性被 4u 吸收。m = 0 时被积函数与 φ 无关，方位积分等于 2π 倍。
法向导数取在偏移点 (1±h)e₃，对 h ∈ {h₀, h₀/2, h₀/4} 做二次 Richardson 外推。

耦合块 (ℐ_{n-1}, 𝒩_{n+1}) 的系数用 m = 0 与 m = 1 两个密度在北极的法向、切向分量分离。
"""
import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import eval_legendre, roots_legendre

from minnaert_core.errors import ConvergenceError, DomainError
from minnaert_core.fields import kupradze, kupradze_divergence, kupradze_jacobian, radial_profiles
from minnaert_core.medium import NondimMedium
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.parallel import map_ordered
from minnaert_core.specfun import check_order
from minnaert_core.spectra import TRACTION_VARIANTS, elastic_spectrum, helmholtz_spectrum
from minnaert_core.sphere import sph_harm_surface_grad, spherical_to_cartesian, vector_harmonic

logger = get_logger(__name__)

U_NODES = 192
PHI_NODES = 256
PANEL_NODES = 32
OFFSETS = (1e-2, 5e-3, 2.5e-3)
QUADRATURE_TOL = 1e-9

BLOCK_NODES = 96
BLOCK_PHI_NODES = 16
POLE = np.array([0.0, 0.0, 1.0])
POLE_THETA = 1e-7

BLOCK_FAMILIES = ("c1", "d1", "c2", "d2", "fc1", "fd1", "fc2", "fd2")
# 带 traction 变体的族，汇总时取表现更好的变体
VARIANT_FAMILIES = ("rho", "fc2")
FAMILIES = ("xi", "zeta", "zeta_jump", "eta", "rho", "rho_jump", "b") + BLOCK_FAMILIES
FAMILY_TOL = {
    "xi": 1e-6, "zeta": 1e-6, "zeta_jump": 1e-4,
    "eta": 1e-4, "rho": 1e-4, "rho_jump": 1e-4, "b": 1e-3,
    "c1": 1e-6, "d1": 1e-6, "c2": 1e-6, "d2": 1e-6,
    "fc1": 1e-4, "fd1": 1e-4, "fc2": 1e-4, "fd2": 1e-4,
}
HELMHOLTZ_MAX_N, HELMHOLTZ_MAX_K = 6, 2.0
ELASTIC_MAX_N, ELASTIC_MAX_K = 4, 1.0


@dataclass
class OracleReport:
    family: str
    n: int
    k: complex
    spectral_value: complex
    quadrature_value: complex
    rel_err: float
    variant: Optional[str] = None

    @property
    def tolerance(self) -> float:
        return FAMILY_TOL[self.family]

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tolerance

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in ("k", "spectral_value", "quadrature_value"):
            d[key] = {"re": complex(d[key]).real, "im": complex(d[key]).imag}
        d["tolerance"] = self.tolerance
        d["passed"] = self.passed
        return d


def relative_error(spectral: complex, quadrature: complex) -> float:
    return abs(spectral - quadrature) / max(abs(spectral), 1e-30)


def make_report(family: str, n: int, k: complex, spectral: complex, quadrature: complex,
                variant: Optional[str] = None) -> OracleReport:
    return OracleReport(family=family, n=n, k=complex(k), spectral_value=complex(spectral),
                        quadrature_value=complex(quadrature),
                        rel_err=relative_error(spectral, quadrature), variant=variant)


# ========== 极坐标约化 ==========

@dataclass(frozen=True)
class PolarReduction:
    """目标点 e₃ 附近的 u 节点与权重（已含 4u 与方位 2π）"""
    u: np.ndarray
    weights: np.ndarray

    @property
    def cos_theta(self) -> np.ndarray:
        return 1 - 2 * self.u ** 2

    @property
    def sin_theta(self) -> np.ndarray:
        return 2 * self.u * np.sqrt(1 - self.u ** 2)

    @property
    def points(self) -> np.ndarray:
        """φ = 0 截面上的 y"""
        return np.stack([self.sin_theta, np.zeros_like(self.u), self.cos_theta], axis=-1)

    def integrate(self, values) -> complex:
        return complex(np.asarray(values) @ self.weights)


def _gauss(a: float, b: float, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(nodes)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def polar_reduction(nodes: int = U_NODES, offset: float = 0.0,
                    panel_nodes: int = PANEL_NODES) -> PolarReduction:
    """
    offset = 0：[0, 1] 上一段 Gauss；offset > 0：按 h/2, h, 2h, ... 的几何分段，
    每段 panel_nodes 个节点
    """
    if offset == 0:
        u, w = _gauss(0.0, 1.0, nodes)
    else:
        edges = [0.0, offset / 2]
        while edges[-1] * 2 < 1.0:
            edges.append(edges[-1] * 2)
        edges.append(1.0)
        parts = [_gauss(a, b, panel_nodes) for a, b in zip(edges[:-1], edges[1:])]
        u = np.concatenate([p[0] for p in parts])
        w = np.concatenate([p[1] for p in parts])
    return PolarReduction(u=u, weights=2 * np.pi * 4 * u * w)


def zonal_harmonic(n: int, cos_theta) -> np.ndarray:
    """Y_n^0 = √((2n+1)/4π) P_n(cosθ)"""
    return math.sqrt((2 * n + 1) / (4 * math.pi)) * eval_legendre(n, cos_theta)


def pole_value(n: int) -> float:
    """Y_n^0(e₃)"""
    return math.sqrt((2 * n + 1) / (4 * math.pi))


def richardson(values: Sequence[complex]) -> complex:
    """步长 h, h/2, h/4 的二次外推：f(h)/3 - 2f(h/2) + 8f(h/4)/3"""
    if len(values) != 3:
        raise DomainError("quadratic extrapolation needs exactly three offsets")
    f1, f2, f4 = values
    return f1 / 3 - 2 * f2 + 8 * f4 / 3


def _converged(compute: Callable[[int], complex], nodes: int, label: str) -> complex:
    """nodes 与 2·nodes 两次求积之差作为误差估计"""
    coarse, fine = compute(nodes), compute(2 * nodes)
    err = abs(fine - coarse) / max(abs(fine), 1e-30)
    if err > QUADRATURE_TOL:
        raise ConvergenceError(f"{label} quadrature not converged at {nodes} nodes", err)
    return fine


def _check_helmholtz(n: int, k: complex) -> int:
    n = check_order(n)
    if n > HELMHOLTZ_MAX_N or abs(k) > HELMHOLTZ_MAX_K:
        raise DomainError(f"Helmholtz oracle covers n <= {HELMHOLTZ_MAX_N}, |k| <= {HELMHOLTZ_MAX_K}")
    return n


def _check_elastic(n: int, k: complex) -> int:
    n = check_order(n)
    if n > ELASTIC_MAX_N or abs(k) > ELASTIC_MAX_K:
        raise DomainError(f"elastic oracle covers n <= {ELASTIC_MAX_N}, |k| <= {ELASTIC_MAX_K}")
    if k == 0:
        raise DomainError("k = 0 hits the Hankel pole")
    return n


# ========== Helmholtz ==========

def _helmholtz_green_radial(r: np.ndarray, k: complex) -> Tuple[np.ndarray, np.ndarray]:
    """G(r) = -e^{ikr}/(4πr) 与 G'(r)"""
    e = np.exp(1j * k * r)
    return -e / (4 * np.pi * r), e * (1 - 1j * k * r) / (4 * np.pi * r ** 2)


def helmholtz_single_layer_pole(n: int, k: complex, nodes: int = U_NODES,
                                phi_nodes: Optional[int] = None) -> complex:
    """
    𝒮^k[Y_n^0](e₃)

    phi_nodes 为 None 时走轴对称快速路径；给定时做完整的 (u, φ) 二维求积。
    """
    k = complex(k)
    pr = polar_reduction(nodes)
    r = 2 * pr.u
    g, _ = _helmholtz_green_radial(r, k)
    values = g * zonal_harmonic(n, pr.cos_theta)
    if phi_nodes is None:
        return pr.integrate(values)
    # 二维：被积函数显式地在每个 φ 上求值
    phi = 2 * np.pi * np.arange(phi_nodes) / phi_nodes
    sin_t, cos_t = pr.sin_theta, pr.cos_theta
    y = np.stack([np.outer(sin_t, np.cos(phi)), np.outer(sin_t, np.sin(phi)),
                  np.broadcast_to(cos_t[:, None], (cos_t.size, phi_nodes))], axis=-1)
    dist = np.linalg.norm(np.array([0.0, 0.0, 1.0]) - y, axis=-1)
    g2, _ = _helmholtz_green_radial(dist, k)
    w_u = pr.weights / (2 * np.pi)
    total = (g2 * zonal_harmonic(n, cos_t)[:, None]).sum(axis=1) * (2 * np.pi / phi_nodes)
    return complex(total @ w_u)


def oracle_helmholtz_single_layer(n: int, k: complex, nodes: int = U_NODES) -> complex:
    """ξ_n(k) = 𝒮^k[Y_n^0](e₃) / Y_n^0(e₃)"""
    n = _check_helmholtz(n, k)
    value = _converged(lambda q: helmholtz_single_layer_pole(n, k, q), nodes, f"xi_{n}")
    return value / pole_value(n)


def _np_direct(n: int, k: complex, nodes: int) -> complex:
    """𝒦^{k,*}[Y_n^0](e₃)，核 e^{ikr}(1-ikr)/(8πr) 在球面上有界"""
    pr = polar_reduction(nodes)
    r = 2 * pr.u
    kernel = np.exp(1j * k * r) * (1 - 1j * k * r) / (8 * np.pi * r)
    return pr.integrate(kernel * zonal_harmonic(n, pr.cos_theta))


def _normal_derivative_offset(n: int, k: complex, h: float, side: int) -> complex:
    """∂_ν𝒮^k[Y_n^0] 在 (1 + side·h)e₃ 处"""
    pr = polar_reduction(offset=h)
    a = 1 + side * h
    ct = pr.cos_theta
    r = np.sqrt(a * a - 2 * a * ct + 1)
    _, dg = _helmholtz_green_radial(r, k)
    return pr.integrate(dg * (a - ct) / r * zonal_harmonic(n, ct))


def neumann_poincare_limits(n: int, k: complex, offsets: Sequence[float] = OFFSETS) -> Dict[str, complex]:
    """外侧与内侧法向导数的外推极限（已除以 Y_n^0(e₃)）"""
    k = complex(k)
    ext = richardson([_normal_derivative_offset(n, k, h, +1) for h in offsets]) / pole_value(n)
    inn = richardson([_normal_derivative_offset(n, k, h, -1) for h in offsets]) / pole_value(n)
    return {"exterior": ext, "interior": inn, "jump": ext - inn}


def oracle_neumann_poincare(n: int, k: complex, nodes: int = U_NODES) -> Dict[str, complex]:
    """
    ζ_n(k) 两种算法

    direct: 直接核求积；exterior/interior: 偏移极限减去 ±1/2；jump: 外侧减内侧，应为 1
    """
    n = _check_helmholtz(n, k)
    k = complex(k)
    direct = _converged(lambda q: _np_direct(n, k, q), nodes, f"zeta_{n}") / pole_value(n)
    limits = neumann_poincare_limits(n, k)
    return {
        "direct": direct,
        "exterior": limits["exterior"] - 0.5,
        "interior": limits["interior"] + 0.5,
        "jump": limits["jump"],
    }


# ========== 弹性 ==========

def _elastic_single_layer_pole(n: int, k: complex, nd: NondimMedium, nodes: int) -> complex:
    """ν·S^k[Y_n^0 ν](e₃) = ∫ [φ₁(2u)(1-2u²) - φ₂(2u)u²] Y dσ"""
    pr = polar_reduction(nodes)
    phi1, phi2, _, _ = radial_profiles(2 * pr.u, k, nd)
    integrand = phi1 * pr.cos_theta - phi2 * pr.u ** 2
    return pr.integrate(integrand * zonal_harmonic(n, pr.cos_theta))


def _elastic_traction_offset(n: int, k: complex, nd: NondimMedium, h: float, side: int) -> complex:
    """ν·t[S^k[Y_n^0 ν]] 在 (1 + side·h)e₃ 处，ν·t = λ div u + 2μ ∂₃u₃"""
    pr = polar_reduction(offset=h)
    y = pr.points
    x = np.array([0.0, 0.0, 1 + side * h])
    diff = x - y
    div = np.einsum("qj,qj->q", kupradze_divergence(diff, k, nd), y)
    d3u3 = np.einsum("qj,qj->q", kupradze_jacobian(diff, k, nd)[:, 2, 2, :], y)
    return pr.integrate((nd.lam * div + 2 * nd.mu * d3u3) * zonal_harmonic(n, pr.cos_theta))


def elastic_traction_limits(n: int, k: complex, nd: NondimMedium,
                            offsets: Sequence[float] = OFFSETS) -> Dict[str, complex]:
    """外侧极限 = ν·(I/2 + K*)，内侧极限 = ν·(-I/2 + K*)，均已除以 Y_n^0(e₃)"""
    k = complex(k)
    ext = richardson([_elastic_traction_offset(n, k, nd, h, +1) for h in offsets]) / pole_value(n)
    inn = richardson([_elastic_traction_offset(n, k, nd, h, -1) for h in offsets]) / pole_value(n)
    return {"exterior": ext, "interior": inn, "jump": ext - inn}


def oracle_elastic_layers(n: int, k: complex, nd: NondimMedium, nodes: int = U_NODES,
                          variants: Iterable[str] = TRACTION_VARIANTS) -> List[OracleReport]:
    """η_n、ρ_n 与弹性跳跃关系；ρ_n 对每种 traction 变体各报告一次"""
    n = _check_elastic(n, k)
    k = complex(k)
    eta_q = _converged(lambda q: _elastic_single_layer_pole(n, k, nd, q), nodes, f"eta_{n}") / pole_value(n)
    limits = elastic_traction_limits(n, k, nd)
    reports = []
    for variant in variants:
        spectrum = elastic_spectrum(n, k, nd, traction_variant=variant)
        reports.append(make_report("rho", n, k, spectrum.rho, limits["exterior"], variant=variant))
    spectrum = elastic_spectrum(n, k, nd)
    reports.insert(0, make_report("eta", n, k, spectrum.eta, eta_q))
    reports.append(make_report("rho_jump", n, k, 1.0, limits["jump"]))
    return reports


def elastic_layer_at(x, family: str, degree: int, m: int, k: complex, nd: NondimMedium,
                     pr: PolarReduction, phi_nodes: int = BLOCK_PHI_NODES,
                     traction: bool = False) -> np.ndarray:
    """
    S^k[density](x) 或其牵引力（法向取 e₃），density = vector_harmonic(family, degree, m)

    x 在 z 轴上时被积函数在 φ 方向是低阶三角多项式，phi_nodes 点梯形公式即精确。
    """
    theta = 2 * np.arcsin(pr.u)
    phi = 2 * np.pi * np.arange(phi_nodes) / phi_nodes
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    density = vector_harmonic(family, degree, m, th, ph)
    diff = np.asarray(x, dtype=float) - spherical_to_cartesian(th, ph)
    w = np.outer(pr.weights, np.full(phi_nodes, 1.0 / phi_nodes))
    if not traction:
        return np.einsum("up,upij,upj->i", w, kupradze(diff, k, nd), density)
    grad = np.einsum("up,upaij,upj->ai", w, kupradze_jacobian(diff, k, nd), density)
    div = np.einsum("up,upj,upj->", w, kupradze_divergence(diff, k, nd), density)
    # t = λ div u ν + μ(∇u + ∇uᵀ)ν, ν = e₃
    t = nd.mu * (grad[:, 2] + grad[2, :])
    t[2] += nd.lam * div
    return t


def oracle_torsional_single_layer(n: int, k: complex, nd: NondimMedium,
                                  nodes: int = 96, phi_nodes: int = BLOCK_PHI_NODES) -> complex:
    """
    b_n 的冒烟校验：S^k[𝒯_n^1](e₃) 投影到 𝒯_n^1(e₃) 方向

    𝒯_n^1 在北极非零且不满足轴对称，走完整二维求积。
    """
    n = _check_elastic(n, k)
    if n < 1:
        raise DomainError("torsional modes start at n = 1")
    value = elastic_layer_at(POLE, "T", n, 1, k, nd, polar_reduction(nodes), phi_nodes)
    t_pole = vector_harmonic("T", n, 1, np.array(POLE_THETA), np.array(0.0))
    return complex(value @ t_pole / (t_pole @ t_pole))


def pole_gradient(n: int) -> float:
    """∇Y_n^1(e₃) 的 x 分量（φ = 0 方向）"""
    return float(sph_harm_surface_grad(n, 1, POLE_THETA, 0.0)[0])


def _split_block(normal: complex, tangential: complex, n: int) -> Tuple[complex, complex]:
    """
    由北极处的法向、切向分量解出 (c, d)

    c ℐ_{n-1} + d 𝒩_{n+1} = (c - d)∇Y_n + (nc + (n+1)d) Y_n ν：
    m = 0 密度给出 A = nc + (n+1)d，m = 1 密度给出 B = c - d。
    """
    a = normal / pole_value(n)
    b = tangential / pole_gradient(n)
    q = 2 * n + 1
    return (a + (n + 1) * b) / q, (a - n * b) / q


def elastic_block_coefficients(n: int, k: complex, nd: NondimMedium, nodes: int = BLOCK_NODES,
                               offsets: Sequence[float] = OFFSETS) -> Dict[str, complex]:
    """
    ℐ_{n-1}、𝒩_{n+1} 耦合块的八个系数 (n ≥ 1)

    S[ℐ_{n-1}] = c1 ℐ_{n-1} + d1 𝒩_{n+1}，S[𝒩_{n+1}] = c2 ℐ_{n-1} + d2 𝒩_{n+1}；
    牵引力取外侧偏移极限，系数记为 fc1、fd1、fc2、fd2。
    """
    n = _check_elastic(n, k)
    if n < 1:
        raise DomainError("the coupled block starts at n = 1")
    k = complex(k)
    out: Dict[str, complex] = {}
    for suffix, family, degree in (("1", "I", n - 1), ("2", "N", n + 1)):
        def on_surface(q: int, m: int, axis: int) -> complex:
            return complex(elastic_layer_at(POLE, family, degree, m, k, nd, polar_reduction(q))[axis])

        def traction(m: int, axis: int) -> complex:
            return richardson([
                complex(elastic_layer_at(np.array([0.0, 0.0, 1 + h]), family, degree, m, k, nd,
                                         polar_reduction(offset=h), traction=True)[axis])
                for h in offsets])

        label = f"block{suffix}_{n}"
        normal = _converged(lambda q: on_surface(q, 0, 2), nodes, label)
        tangential = _converged(lambda q: on_surface(q, 1, 0), nodes, label)
        out["c" + suffix], out["d" + suffix] = _split_block(normal, tangential, n)
        out["fc" + suffix], out["fd" + suffix] = _split_block(traction(0, 2), traction(1, 0), n)
    return out


def oracle_elastic_block(n: int, k: complex, nd: NondimMedium, nodes: int = BLOCK_NODES,
                         variants: Iterable[str] = TRACTION_VARIANTS) -> List[OracleReport]:
    """逐个系数比对；fc2 对每种 traction 变体各报告一次"""
    quad = elastic_block_coefficients(n, k, nd, nodes)
    spectra = {v: elastic_spectrum(n, k, nd, traction_variant=v) for v in variants}
    printed = elastic_spectrum(n, k, nd)
    reports = []
    for family in BLOCK_FAMILIES:
        if family == "fc2":
            for variant, spectrum in spectra.items():
                reports.append(make_report(family, n, k, spectrum.fc2, quad[family], variant=variant))
        else:
            reports.append(make_report(family, n, k, getattr(printed, family), quad[family]))
    return reports


# ========== 套件 ==========

@dataclass(frozen=True)
class OracleJob:
    n: int
    k: complex
    kind: str  # "helmholtz" | "elastic" | "torsional"


def run_job(job: OracleJob, nd: NondimMedium, perturb_eta0: float = 0.0) -> List[OracleReport]:
    """单个 (族, n, k) 任务；perturb_eta0 只用于检验套件能否发现 η₀ 的错误"""
    n, k = job.n, complex(job.k)
    if job.kind == "helmholtz":
        spectrum = helmholtz_spectrum(n, k)
        zeta = oracle_neumann_poincare(n, k)
        return [
            make_report("xi", n, k, spectrum.xi, oracle_helmholtz_single_layer(n, k)),
            make_report("zeta", n, k, spectrum.zeta, zeta["direct"]),
            make_report("zeta", n, k, spectrum.zeta, zeta["exterior"], variant="exterior"),
            make_report("zeta_jump", n, k, 1.0, zeta["jump"]),
        ]
    if job.kind == "elastic":
        reports = oracle_elastic_layers(n, k, nd)
        if n >= 1:
            reports.extend(oracle_elastic_block(n, k, nd))
        if perturb_eta0 and n == 0:
            for rep in reports:
                if rep.family == "eta":
                    rep.spectral_value *= 1 + perturb_eta0
                    rep.rel_err = relative_error(rep.spectral_value, rep.quadrature_value)
        return reports
    if job.kind == "torsional":
        spectrum = elastic_spectrum(n, k, nd)
        return [make_report("b", n, k, spectrum.b, oracle_torsional_single_layer(n, k, nd))]
    raise DomainError(f"unknown oracle job kind {job.kind!r}")


def build_jobs(n_values: Iterable[int], k_values: Iterable[complex], torsional: bool = True) -> List[OracleJob]:
    jobs = []
    for n in sorted(n_values):
        for k in k_values:
            jobs.append(OracleJob(n, complex(k), "helmholtz"))
            if n <= ELASTIC_MAX_N and abs(k) <= ELASTIC_MAX_K:
                jobs.append(OracleJob(n, complex(k), "elastic"))
                if torsional and n >= 1:
                    jobs.append(OracleJob(n, complex(k), "torsional"))
    return jobs


def run_oracle_suite(nd: NondimMedium, n_values: Iterable[int], k_values: Iterable[complex],
                     perturb_eta0: float = 0.0, torsional: bool = True) -> List[OracleReport]:
    """按任务并行执行，汇总时按 (族, n, Re k, Im k, 变体) 排序，与完成顺序无关"""
    jobs = build_jobs(n_values, list(k_values), torsional=torsional)
    logger.info(f"执行 {len(jobs)} 个校验任务")
    results = map_ordered(lambda job: run_job(job, nd, perturb_eta0), jobs)
    reports = [rep for batch in results for rep in batch]
    reports.sort(key=lambda r: (FAMILIES.index(r.family), r.n, r.k.real, r.k.imag, r.variant or ""))
    return reports


def summarize(reports: Sequence[OracleReport]) -> Dict[str, dict]:
    """
    每个族的最大相对误差

    ρ_n 与 𝔠_{2n} 对两种 traction 变体分别统计，族的结论取表现更好的变体。
    """
    summary: Dict[str, dict] = {}
    for family in FAMILIES:
        fam = [r for r in reports if r.family == family]
        if not fam:
            continue
        entry = {"max_rel_err": max(r.rel_err for r in fam), "tolerance": FAMILY_TOL[family], "count": len(fam)}
        if family in VARIANT_FAMILIES:
            per_variant = {}
            for r in fam:
                per_variant[r.variant] = max(per_variant.get(r.variant, 0.0), r.rel_err)
            best = min(per_variant, key=per_variant.get)
            entry.update(max_rel_err=per_variant[best], variants=per_variant, best_variant=best)
        entry["passed"] = entry["max_rel_err"] <= FAMILY_TOL[family]
        summary[family] = entry
    return summary


def convergence_study(family: str, n: int, k: complex, nd: Optional[NondimMedium] = None,
                      node_counts: Sequence[int] = (48, 96, 192)) -> List[float]:
    """固定 (n, k)，逐次加倍节点，返回相对误差序列"""
    k = complex(k)
    errs = []
    for q in node_counts:
        if family == "xi":
            spectrum = helmholtz_spectrum(n, k).xi
            quad = helmholtz_single_layer_pole(n, k, q) / pole_value(n)
        elif family == "zeta":
            spectrum = helmholtz_spectrum(n, k).zeta
            quad = _np_direct(n, k, q) / pole_value(n)
        elif family == "eta":
            if nd is None:
                raise DomainError("elastic convergence study needs a medium")
            spectrum = elastic_spectrum(n, k, nd).eta
            quad = _elastic_single_layer_pole(n, k, nd, q) / pole_value(n)
        else:
            raise DomainError(f"no convergence study for family {family!r}")
        errs.append(relative_error(spectrum, quad))
    logger.debug(f"{family}_{n}({k}) 收敛序列: {errs}")
    return errs
