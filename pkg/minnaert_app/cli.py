"""
命令行入口
==========

子命令：spectra | resonance | oracle | field | timedomain
通用参数：--config PATH  --out DIR  --tol FLOAT  --strict  --debug

退出码：0 正常；1 校验未通过；2 配置或数值前提错误（MinnaertError）
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from minnaert_app.config import RunConfig, get_config, get_config_value, load_config, set_config
from minnaert_app.emit import NOT_APPLICABLE, complex_cells, complex_columns, write_csv, write_json
from minnaert_core.errors import DomainError, MinnaertError
from minnaert_core.fields import incident_field, mode_contributions, modal_field
from minnaert_core.minnaert_logging import get_logger, set_console_level
from minnaert_core.quad_oracle import FAMILIES, run_oracle_suite, summarize
from minnaert_core.resonance import (
    closed_form_resonance,
    lambda_static,
    resonance_radius,
    resonance_winding,
    solve_first_order_resonance,
    static_resonances,
    symbol_sweep,
)
from minnaert_core.spectra import (
    elastic_spectrum,
    elastic_static_limits,
    helmholtz_spectrum,
    helmholtz_static_limits,
)
from minnaert_core.timedomain import (
    BandLimit,
    band_diagnostics,
    pulse_ft,
    structure_report,
    time_trace,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ORACLE_FAILED = 1
EXIT_ERROR = 2

ELASTIC_COLUMNS = ("b", "c1", "d1", "c2", "d2", "eta", "rho")
STATIC_ORDERS = 6


def _out_dir(config: RunConfig) -> Path:
    path = Path(get_config_value(config, "output", "directory", default="output"))
    path.mkdir(parents=True, exist_ok=True)
    return path


def _vector_columns(name: str) -> List[str]:
    return [col for axis in "xyz" for col in complex_columns(f"{name}_{axis}")]


def _vector_cells(vec) -> List[str]:
    if vec is None:
        return [NOT_APPLICABLE] * 6
    return [cell for comp in np.asarray(vec) for cell in complex_cells(comp)]


def _escalate(config: RunConfig, warnings: List[str]) -> None:
    for message in warnings:
        logger.warning(message)
    if warnings and get_config_value(config, "output", "strict", default=False):
        raise DomainError("; ".join(warnings))


# ========== spectra ==========

def cmd_spectra(config: RunConfig) -> int:
    """每个族一个 CSV，按 n 升序、k 升序"""
    nd, _ = config.validate_physics()
    out = _out_dir(config)
    sweep = config.sweep
    ks = sorted(sweep.k_values)
    orders = range(sweep.n_max + 1)

    helm_rows = []
    for n in orders:
        for k in ks:
            spectrum = helmholtz_spectrum(n, k)
            helm_rows.append([n, k, *complex_cells(spectrum.xi), *complex_cells(spectrum.zeta), *complex_cells(spectrum.zeta_alt)])
    write_csv(out / "spectra_helmholtz.csv",
              ["n", "k", *complex_columns("xi"), *complex_columns("zeta"), *complex_columns("zeta_alt")],
              helm_rows)

    elastic_rows = []
    for n in orders:
        for k in ks:
            spectrum = elastic_spectrum(n, k, nd, traction_variant=sweep.traction_variant)
            cells = [cell for name in ELASTIC_COLUMNS for cell in complex_cells(getattr(spectrum, name))]
            elastic_rows.append([n, k, *cells])
    write_csv(out / "spectra_elastic.csv",
              ["n", "k", *[col for name in ELASTIC_COLUMNS for col in complex_columns(name)]],
              elastic_rows, comments=[f"traction_variant: {sweep.traction_variant}"])

    static_rows = []
    for n in range(max(sweep.n_max, STATIC_ORDERS) + 1):
        xi0, zeta0 = helmholtz_static_limits(n)
        eta0, rho0 = elastic_static_limits(n, nd)
        static_rows.append([n, xi0, zeta0, eta0, rho0, lambda_static(n, nd)])
    write_csv(out / "spectra_static.csv", ["n", "xi_0", "zeta_0", "eta_0", "rho_0", "lambda_0"], static_rows)
    return EXIT_OK


# ========== resonance ==========

def cmd_resonance(config: RunConfig) -> int:
    nd, scene = config.validate_physics()
    out = _out_dir(config)
    eps = scene.epsilon
    closed = closed_form_resonance(nd)
    roots = solve_first_order_resonance(nd, eps)
    corrected = [r for r in roots if not r.removable][0]
    report = {
        "medium": {"delta": nd.delta, "tau": nd.tau, "lambda": nd.lam, "mu": nd.mu,
                   "c_b": nd.c_b, "gamma": nd.gamma, "c_s": nd.c_s, "c_p": nd.c_p},
        "epsilon": eps,
        "static": [r.as_dict() for r in static_resonances(nd)],
        "first_order": [r.as_dict() for r in roots],
        "closed_form": {"re_omega": closed.real, "im_omega": closed.imag},
        "im_omega0": -4 * nd.mu * nd.gamma / (4 * nd.mu + 3 * nd.delta * nd.tau ** 2),
        "root_vs_closed_form": abs(corrected.omega - closed) / abs(closed),
        "residual": corrected.residual,
        "radius": resonance_radius(nd).value,
        "winding_number": resonance_winding(nd, eps),
        "lambda_static": {str(n): lambda_static(n, nd) for n in range(STATIC_ORDERS + 1)},
    }
    write_json(out / "resonance.json", report)

    rows = symbol_sweep(range(config.sweep.n_max + 1), config.sweep.omegas(), nd, eps,
                        traction_variant=config.sweep.traction_variant)
    write_csv(out / "resonance_curve.csv",
              ["n", "omega", "abs_lambda", *complex_columns("lambda"), *complex_columns("lambda_truncated")],
              ([r["n"], r["omega"].real, abs(r["value"]), *complex_cells(r["value"]),
                *complex_cells(r["truncated"])] for r in rows))
    logger.info(f"✓ Ω₀ = {corrected.omega:.12g}, 共振半径 {report['radius']:.6g}")
    return EXIT_OK


# ========== oracle ==========

def cmd_oracle(config: RunConfig) -> int:
    """求积校验；所有族在容差内时返回 0"""
    nd, _ = config.validate_physics()
    out = _out_dir(config)
    oc = config.oracle
    reports = run_oracle_suite(nd, oc.n_values, oc.wavenumbers(),
                               perturb_eta0=oc.perturb_eta0, torsional=oc.torsional)
    summary = summarize(reports)
    tol = config.output.tol
    if tol is not None:
        for entry in summary.values():
            entry["tolerance"] = tol
            entry["passed"] = entry["max_rel_err"] <= tol
    passed = all(entry["passed"] for entry in summary.values())
    payload = {
        "passed": passed,
        "families": summary,
        "traction_variant": summary.get("rho", {}).get("best_variant"),
        "reports": [r.as_dict() for r in reports],
    }
    write_json(out / "oracle_report.json", payload)
    for family in FAMILIES:
        if family in summary:
            entry = summary[family]
            mark = "✓" if entry["passed"] else "✗"
            logger.info(f"{mark} {family}: max rel_err {entry['max_rel_err']:.3e} (tol {entry['tolerance']:.0e})")
    if not passed:
        logger.error("求积校验未通过")
        return EXIT_ORACLE_FAILED
    return EXIT_OK


# ========== field ==========

def cmd_field(config: RunConfig) -> int:
    """单频快照：各观测点的入射场、散射场与各阶贡献"""
    nd, scene = config.validate_physics()
    out = _out_dir(config)
    sweep = config.sweep
    omega = sweep.field_omega
    pulse = config.scene.pulse()
    f = pulse_ft(omega, pulse)
    points = np.array(config.scene.points, dtype=float)
    scattered = modal_field(scene, omega, nd, points, f, symbol=sweep.symbol,
                            traction_variant=sweep.traction_variant).total()
    incident = incident_field(scene, omega, f, points, nd)
    rows = []
    for x, u_in, u_sca in zip(points, incident, scattered):
        rows.append([*x, *_vector_cells(u_in), *_vector_cells(u_sca)])
    write_csv(out / "field_snapshot.csv", ["x", "y", "z", *_vector_columns("u_in"), *_vector_columns("u_sca")],
              rows, comments=[f"omega: {omega!r}", f"epsilon: {scene.epsilon!r}", f"n_trunc: {scene.n_trunc}"])

    mode_rows = []
    for idx, x in enumerate(points):
        for n, norm in mode_contributions(scene, omega, nd, x, f, symbol=sweep.symbol).items():
            mode_rows.append([idx, n, norm])
    write_csv(out / "field_modes.csv", ["point", "n", "norm"], mode_rows)
    return EXIT_OK


# ========== timedomain ==========

def cmd_timedomain(config: RunConfig) -> int:
    """每个观测点一个 CSV：t, P_ρ, 留数近似, 差值；元数据行给出 t₀⁻ 与 t₀⁺"""
    nd, scene = config.validate_physics()
    out = _out_dir(config)
    sweep = config.sweep
    pulse = config.scene.pulse()
    band = BandLimit(sweep.rho or resonance_radius(nd).value)
    _escalate(config, band_diagnostics(nd, pulse, band, config.scene.gamma1))

    summaries = []
    for idx, x in enumerate(config.scene.points):
        trace = time_trace(scene, nd, pulse, band, x, sweep.times(),
                           orientation=sweep.orientation, symbol=sweep.symbol, panels=sweep.panels,
                           with_arc=sweep.with_arc)
        rows = []
        for t, p, res in zip(trace.times, trace.p_rho, trace.residue):
            if t >= trace.windows.t_plus:
                rows.append([t, *_vector_cells(p), *_vector_cells(res), *_vector_cells(p - res)])
            else:
                rows.append([t, *_vector_cells(p), *_vector_cells(None), *_vector_cells(None)])
        comments = [
            f"x: {tuple(float(v) for v in trace.x)}",
            f"t0_minus: {trace.windows.t_minus!r}",
            f"t0_plus: {trace.windows.t_plus!r}",
            f"rho: {band.rho!r}",
            f"omega0: {closed_form_resonance(nd)!r}",
            f"orientation: {sweep.orientation}",
        ]
        write_csv(out / f"timedomain_point{idx}.csv",
                  ["t", *_vector_columns("p_rho"), *_vector_columns("residue"), *_vector_columns("diff")],
                  rows, comments=comments)
        stats = structure_report(trace, nd)
        stats.update(point=list(trace.x), t0_minus=trace.windows.t_minus, t0_plus=trace.windows.t_plus)
        summaries.append(stats)
    write_json(out / "timedomain_report.json", {"rho": band.rho, "points": summaries})
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "spectra": cmd_spectra,
    "resonance": cmd_resonance,
    "oracle": cmd_oracle,
    "field": cmd_field,
    "timedomain": cmd_timedomain,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="YAML 配置文件（默认 config/minnaert_config.yaml）")
    common.add_argument("--out", default=None, help="输出目录，覆盖 output.directory")
    common.add_argument("--tol", type=float, default=None, help="覆盖校验容差")
    common.add_argument("--strict", action="store_true", default=None, help="把前提条件警告升级为错误")
    common.add_argument("--debug", "-d", action="store_true", help="控制台输出 DEBUG 日志")

    parser = argparse.ArgumentParser(prog="minnaert", description="球形气泡声-弹散射的模态近似")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectra", parents=[common], help="单位球面上的层势谱表")
    sub.add_parser("resonance", parents=[common], help="Minnaert 共振与共振半径")
    sub.add_parser("oracle", parents=[common], help="谱公式与直接求积的对照")
    sub.add_parser("field", parents=[common], help="单频散射场快照")
    sub.add_parser("timedomain", parents=[common], help="截断逆 Fourier 变换与留数近似")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.debug:
        set_console_level(logging.DEBUG)
    try:
        config = load_config(args.config).with_overrides(out=args.out, tol=args.tol, strict=args.strict)
        set_config(config)
        logger.info(f"执行子命令: {args.command}")
        code = COMMANDS[args.command](get_config())
    except MinnaertError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
    if code == EXIT_OK:
        logger.info(f"✓ {args.command} 完成")
    return code


if __name__ == "__main__":
    sys.exit(main())
