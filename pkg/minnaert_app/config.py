"""
运行配置
========

YAML 配置文件 → pydantic 模型 → 数值层对象（NondimMedium、ScatterScene、Pulse ...）

- 字符串中的 ${VAR:-default} 在校验前展开
- 未指定配置文件时依次查找 config/minnaert_config.yaml、config/minnaert_config.example.yaml
- 全局配置通过 set_config / get_config 共享给各子命令
"""
import os
import re
from pathlib import Path
from typing import List, Literal, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from minnaert_core.errors import ConfigError, MinnaertError
from minnaert_core.fields import DEFAULT_N_TRUNC, ScatterScene
from minnaert_core.medium import NondimMedium, PhysicalMedium, nondimensionalize
from minnaert_core.minnaert_logging import get_logger
from minnaert_core.timedomain import SWEEP_PANELS, Pulse

logger = get_logger(__name__)

BASE_DIR = Path(__file__).parent.parent
CONFIG_PATH = BASE_DIR / "config" / "minnaert_config.yaml"
EXAMPLE_PATH = BASE_DIR / "config" / "minnaert_config.example.yaml"

_RUN_CONFIG: Optional["RunConfig"] = None


def expand_env_vars(obj):
    """
    递归展开 ${VAR_NAME:-default_value}

    环境变量未设置时取默认值；既无环境变量也无默认值时替换为空串并给出警告。
    """
    if isinstance(obj, dict):
        return {k: expand_env_vars(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [expand_env_vars(item) for item in obj]
    if isinstance(obj, str):
        def replace_env_var(match):
            full_match = match.group(1)
            if ":-" in full_match:
                var_name, default_value = full_match.split(":-", 1)
            else:
                var_name, default_value = full_match, ""
            env_value = os.getenv(var_name)
            if env_value is None:
                if default_value:
                    logger.debug(f"环境变量 {var_name} 未设置，使用默认值: {default_value}")
                else:
                    logger.warning(f"环境变量 {var_name} 未设置且没有默认值")
                return default_value
            return env_value

        return re.sub(r"\$\{([^}]+)\}", replace_env_var, obj)
    return obj


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


Vector = Tuple[float, float, float]


# ========== 介质 ==========

class PhysicalConfig(_Section):
    rho_b: float
    rho_e: float
    kappa: float
    gamma: float
    lame_lambda: float
    lame_mu: float


class MediumConfig(_Section):
    """
    两种写法二选一：
    - physical: SI 物理参数，经无量纲化
    - 直接给出无量纲 mu（λ 由 c_s + c_p = 1 决定）与 delta、tau、gamma、c_b
    """
    mu: Optional[float] = 0.2
    delta: Optional[float] = 1e-3
    tau: Optional[float] = 1.0
    gamma: Optional[float] = 0.5
    c_b: Optional[float] = 1.0
    physical: Optional[PhysicalConfig] = None

    def build(self) -> NondimMedium:
        if self.physical is not None:
            p = self.physical
            return nondimensionalize(PhysicalMedium(
                rho_b=p.rho_b, rho_e=p.rho_e, kappa=p.kappa, gamma=p.gamma,
                lame_lambda_tilde=p.lame_lambda, lame_mu_tilde=p.lame_mu))
        missing = [name for name in ("mu", "delta", "tau", "gamma", "c_b") if getattr(self, name) is None]
        if missing:
            raise ConfigError(f"medium section is missing {', '.join(missing)}")
        return NondimMedium.from_contrasts(mu=self.mu, delta=self.delta, tau=self.tau,
                                           gamma=self.gamma, c_b=self.c_b)


# ========== 场景 ==========

class SceneConfig(_Section):
    """气泡位置、半径、声源、极化与脉冲；epsilon 缺省时取 epsilon_ratio·|z-s|"""
    z: Vector = (0.0, 0.0, 0.0)
    s: Vector = (0.0, 0.0, 5.0)
    p_vec: Vector = (0.0, 0.0, 1.0)
    epsilon: Optional[float] = None
    epsilon_ratio: float = 1e-2
    n_trunc: int = Field(default=DEFAULT_N_TRUNC, ge=0)
    c1: float = Field(default=1.0, gt=0)
    gamma1: Optional[float] = None
    points: List[Vector] = Field(default_factory=lambda: [(0.0, 3.0, 0.0)])

    @model_validator(mode="after")
    def _check_radius(self):
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValueError("scene.epsilon must be positive")
        if not self.epsilon_ratio > 0:
            raise ValueError("scene.epsilon_ratio must be positive")
        return self

    def radius(self) -> float:
        if self.epsilon is not None:
            return self.epsilon
        distance = sum((a - b) ** 2 for a, b in zip(self.z, self.s)) ** 0.5
        return self.epsilon_ratio * distance

    def build(self) -> ScatterScene:
        return ScatterScene(z=self.z, epsilon=self.radius(), s=self.s, p_vec=self.p_vec, n_trunc=self.n_trunc)

    def pulse(self) -> Pulse:
        return Pulse(c1=self.c1)


# ========== 扫描范围 ==========

def _check_k_grid(values, label: str):
    for k in values:
        value = complex(*k) if isinstance(k, (list, tuple)) else complex(k)
        if value == 0:
            raise ValueError(f"{label} contains k = 0, where the Hankel function h_n^(1) has a pole")
    return values


class SweepConfig(_Section):
    """spectra / resonance / field / timedomain 共用的网格"""
    n_max: int = Field(default=4, ge=0)
    k_values: List[float] = Field(default_factory=lambda: [0.05, 0.1, 0.3, 0.7, 1.5])
    omega_min: float = 0.05
    omega_max: float = 2.0
    omega_points: int = Field(default=40, ge=1)
    traction_variant: Literal["printed", "mirrored"] = "printed"
    symbol: Literal["exact", "first_order"] = "exact"
    field_omega: float = 0.3
    t_start: float = 0.0
    t_stop: float = 20.0
    t_points: int = Field(default=81, ge=1)
    rho: Optional[float] = None
    panels: int = Field(default=SWEEP_PANELS, ge=1)
    orientation: Literal["clockwise", "printed"] = "clockwise"
    with_arc: bool = False

    @field_validator("k_values")
    @classmethod
    def _no_hankel_pole(cls, values):
        return _check_k_grid(values, "sweep.k_values")

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.omega_max < self.omega_min:
            raise ValueError("sweep.omega_max must not be smaller than sweep.omega_min")
        if self.omega_min <= 0 <= self.omega_max:
            raise ValueError("sweep omega range contains omega = 0, where k = 0 hits the Hankel pole")
        if self.t_stop < self.t_start:
            raise ValueError("sweep.t_stop must not be smaller than sweep.t_start")
        if self.rho is not None and not self.rho > 0:
            raise ValueError("sweep.rho must be positive")
        if self.field_omega == 0:
            raise ValueError("sweep.field_omega = 0 is the removable point of c(omega)")
        return self

    def omegas(self) -> List[float]:
        if self.omega_points == 1:
            return [self.omega_min]
        step = (self.omega_max - self.omega_min) / (self.omega_points - 1)
        return [self.omega_min + i * step for i in range(self.omega_points)]

    def times(self) -> List[float]:
        if self.t_points == 1:
            return [self.t_start]
        step = (self.t_stop - self.t_start) / (self.t_points - 1)
        return [self.t_start + i * step for i in range(self.t_points)]


class OracleConfig(_Section):
    n_values: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4])
    k_values: List[float] = Field(default_factory=lambda: [0.1, 0.3, 0.7])
    k_complex: List[Tuple[float, float]] = Field(default_factory=lambda: [(0.5, 0.1)])
    torsional: bool = True
    perturb_eta0: float = 0.0

    @field_validator("n_values")
    @classmethod
    def _non_negative(cls, values):
        if any(n < 0 for n in values):
            raise ValueError("oracle.n_values must be non-negative")
        return values

    @field_validator("k_values")
    @classmethod
    def _no_hankel_pole(cls, values):
        return _check_k_grid(values, "oracle.k_values")

    @field_validator("k_complex")
    @classmethod
    def _no_hankel_pole_complex(cls, values):
        return _check_k_grid(values, "oracle.k_complex")

    def wavenumbers(self) -> List[complex]:
        return [complex(k) for k in self.k_values] + [complex(re, im) for re, im in self.k_complex]


class OutputConfig(_Section):
    directory: str = "output"
    tol: Optional[float] = None
    strict: bool = False


class RunConfig(_Section):
    medium: MediumConfig = Field(default_factory=MediumConfig)
    scene: SceneConfig = Field(default_factory=SceneConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> "RunConfig":
        try:
            return cls.model_validate(expand_env_vars(data or {}))
        except ValidationError as e:
            raise ConfigError(f"invalid configuration: {e}") from e

    @classmethod
    def from_yaml(cls, text: str) -> "RunConfig":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError(f"configuration is not valid YAML: {e}") from e
        if data is not None and not isinstance(data, dict):
            raise ConfigError("configuration root must be a mapping")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, allow_unicode=True)

    def with_overrides(self, out: Optional[str] = None, tol: Optional[float] = None,
                       strict: Optional[bool] = None) -> "RunConfig":
        """命令行参数覆盖 output 段"""
        updates = {}
        if out is not None:
            updates["directory"] = out
        if tol is not None:
            if not tol > 0:
                raise ConfigError(f"--tol must be positive, got {tol!r}")
            updates["tol"] = tol
        if strict is not None:
            updates["strict"] = strict
        if not updates:
            return self
        return self.model_copy(update={"output": self.output.model_copy(update=updates)})

    def validate_physics(self) -> Tuple[NondimMedium, ScatterScene]:
        """计算前构造介质与场景，触发其不变量检查"""
        try:
            nd = self.medium.build()
            scene = self.scene.build()
        except ConfigError:
            raise
        except MinnaertError as e:
            raise ConfigError(f"configuration violates a physical constraint: {e}") from e
        for point in self.scene.points:
            try:
                scene.check_exterior(point)
            except MinnaertError as e:
                raise ConfigError(f"observation point {point} is not admissible: {e}") from e
        return nd, scene


def resolve_config_path(config_path: Optional[str] = None) -> Path:
    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise ConfigError(f"配置文件不存在: {path}")
        return path
    if CONFIG_PATH.exists():
        logger.info("使用配置文件: minnaert_config.yaml")
        return CONFIG_PATH
    if EXAMPLE_PATH.exists():
        logger.info("使用示例配置文件: minnaert_config.example.yaml")
        return EXAMPLE_PATH
    raise ConfigError(f"配置文件不存在: {CONFIG_PATH}")


def load_config(config_path: Optional[str] = None) -> RunConfig:
    path = resolve_config_path(config_path)
    with open(path, "r", encoding="utf-8") as f:
        config = RunConfig.from_yaml(f.read())
    logger.debug(f"已读取配置 {path}")
    return config


def set_config(config: RunConfig) -> None:
    global _RUN_CONFIG
    _RUN_CONFIG = config
    logger.info("✓ 配置已设置")


def get_config() -> Optional[RunConfig]:
    return _RUN_CONFIG


def get_config_value(config, *keys, default=None):
    """安全地获取嵌套配置值，config 可以是 RunConfig 或 dict"""
    if config is None:
        return default
    value = config.to_dict() if isinstance(config, RunConfig) else config
    for key in keys:
        if isinstance(value, dict) and key in value:
            value = value[key]
        else:
            return default
    return value


__all__ = [
    "MediumConfig", "SceneConfig", "SweepConfig", "OracleConfig", "OutputConfig", "RunConfig",
    "PhysicalConfig", "expand_env_vars", "load_config", "resolve_config_path",
    "set_config", "get_config", "get_config_value",
]
