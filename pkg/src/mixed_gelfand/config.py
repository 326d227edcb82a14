import hashlib
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .besov import BlockVariant, ScheduleVariant
from .bounds import BoundVariant
from .errors import ConfigError
from .models import SparsityMode
from .recovery import SolverConfig


class Subcommand(str, Enum):
    """Pipeline run by one invocation"""
    NORM = "norm"
    BOUNDS = "bounds"
    PACKING = "packing"
    WIDTH = "width"
    RECOVER = "recover"
    PHASE = "phase"
    BESOV_RATE = "besov-rate"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class DecoderName(str, Enum):
    GROUP_BP = "group_bp"
    BP = "bp"
    L2L1_BP = "l2l1_bp"
    BLOCK_IHT = "block_iht"


class ParamsModel(BaseModel):
    model_config = ConfigDict(extra="forbid", use_enum_values=False)


class SolverSettings(ParamsModel):
    """Douglas-Rachford settings"""
    feasibility_tol: float = Field(default=1e-7, gt=0, description="||Az-y|| <= tol·(1+||y||)")
    stop_tol: float = Field(default=1e-6, gt=0, description="Stopping tolerance on the splitting gap")
    max_iterations: int = Field(default=20000, ge=1, description="Iteration cap")
    step: float = Field(default=1.0, gt=0, description="Prox step in the scaled metric")
    greedy_step: Optional[float] = Field(
        default=None, gt=0, description="Fixed block_iht step; normalized step when omitted"
    )

    def to_solver_config(self) -> SolverConfig:
        return SolverConfig(**self.model_dump())


class NormParams(ParamsModel):
    """Mixed norm and best-term errors of one array"""
    b: int = Field(default=8, ge=1, description="Number of blocks")
    d: int = Field(default=4, ge=1, description="Block length")
    p: float = Field(default=1.0, gt=0, description="Outer exponent")
    q: float = Field(default=2.0, gt=0, description="Inner exponent")
    values: Optional[List[List[float]]] = Field(
        default=None, description="b×d array; a seeded Gaussian array when omitted"
    )
    s: int = Field(default=1, ge=0, description="Outer sparsity for the best-term error")
    t: int = Field(default=1, ge=0, description="Inner sparsity for the best-term error")

    @model_validator(mode="after")
    def check_shape(self):
        if self.values is not None:
            if len(self.values) != self.b or any(len(row) != self.d for row in self.values):
                raise ValueError(f"values must be a {self.b}×{self.d} array")
        if self.s > self.b or self.t > self.d:
            raise ValueError("s must be <= b and t must be <= d")
        return self


class BoundsParams(ParamsModel):
    """Sweep of closed-form bounds over m"""
    b: int = Field(default=64, ge=1)
    d: int = Field(default=16, ge=1)
    p: float = Field(default=1.0, gt=0, description="First exponent of the formula")
    q: float = Field(default=2.0, gt=0, description="Second exponent of the formula")
    m_grid: List[int] = Field(default_factory=lambda: [1, 4, 16, 64, 256, 1024])
    variants: List[BoundVariant] = Field(default_factory=lambda: [BoundVariant.OUTER])
    constant: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def check_grid(self):
        if not self.m_grid or not self.variants:
            raise ValueError("m_grid and variants must be nonempty")
        if any(not 1 <= m <= self.b * self.d for m in self.m_grid):
            raise ValueError(f"every m must lie in [1, {self.b * self.d}]")
        return self


class PackingParams(ParamsModel):
    """Constructive (2s,2t)-sparse packing"""
    b: int = Field(default=64, ge=8)
    d: int = Field(default=64, ge=8)
    s: int = Field(default=2, ge=1)
    t: int = Field(default=2, ge=1)
    norm_in: Tuple[float, float] = Field(default=(1.0, 2.0), description="(p, q) of the radius norm")
    measured_in: Tuple[float, float] = Field(default=(2.0, 2.0), description="(p, q) of the distance norm")
    code_size: Optional[int] = Field(default=None, ge=1)
    max_size: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def check_sparsity(self):
        if self.s > self.b // 8 or self.t > self.d // 8:
            raise ValueError("need s <= b/8 and t <= d/8")
        return self


class WidthParams(ParamsModel):
    """Monte Carlo Gaussian widths on a (b, d, s) grid"""
    grid: List[Tuple[int, int, int]] = Field(default_factory=lambda: [(16, 4, 2)])
    trials: int = Field(default=1000, ge=1)
    constant: float = Field(default=1.0, gt=0, description="Constant of the upper formula")

    @model_validator(mode="after")
    def check_grid(self):
        if not self.grid:
            raise ValueError("grid must be nonempty")
        for b, d, s in self.grid:
            if b < 1 or d < 1 or not 1 <= s <= b:
                raise ValueError(f"invalid grid point (b={b}, d={d}, s={s})")
        return self


class RecoveryParams(ParamsModel):
    b: int = Field(default=8, ge=1)
    d: int = Field(default=2, ge=1)
    mode: SparsityMode = Field(default=SparsityMode.OUTER)
    decoder: DecoderName = Field(default=DecoderName.GROUP_BP)
    inner_t: int = Field(default=1, ge=1, description="Inner count of the mixed mode")
    flat: bool = Field(default=False, description="±1 nonzeros instead of Gaussian ones")
    solver: SolverSettings = Field(default_factory=SolverSettings)

    def _check_common(self) -> None:
        if self.decoder == DecoderName.BLOCK_IHT and self.mode not in (SparsityMode.OUTER, SparsityMode.MIXED):
            raise ValueError("block_iht only handles outer or mixed sparsity")


class RecoverParams(RecoveryParams):
    """Independent recovery trials at one (sparsity, m)"""
    s_or_t: int = Field(default=1, ge=1)
    m: int = Field(default=8, ge=1)
    trials: int = Field(default=1, ge=1)
    perturbation: float = Field(default=0.0, ge=0, description="Dense N(0,σ²) perturbation of the signal")

    @model_validator(mode="after")
    def check_ranges(self):
        self._check_common()
        if self.m > self.b * self.d:
            raise ValueError(f"m must be <= {self.b * self.d}")
        return self


class PhaseParams(RecoveryParams):
    """Success-rate sweep over (sparsity, m)"""
    sparsity_grid: List[int] = Field(default_factory=lambda: [1])
    m_grid: List[int] = Field(default_factory=lambda: [4, 8, 16])
    trials: int = Field(default=10, ge=1)
    threshold: float = Field(default=1e-4, gt=0, description="Relative error counted as success")

    @model_validator(mode="after")
    def check_grids(self):
        self._check_common()
        if not self.sparsity_grid or not self.m_grid:
            raise ValueError("sparsity_grid and m_grid must be nonempty")
        if any(not 1 <= m <= self.b * self.d for m in self.m_grid):
            raise ValueError(f"every m must lie in [1, {self.b * self.d}]")
        return self


class BesovRateParams(ParamsModel):
    """Budget schedules and rate fit for s^r_{p0,q0}b -> s^0_{p1,q1}b"""
    d: int = Field(default=2, ge=1)
    r: float = Field(default=0.3, gt=0)
    p0: float = Field(default=2.0, gt=0)
    q0: float = Field(default=1.0, gt=0)
    p1: float = Field(default=2.0, gt=0)
    q1: float = Field(default=2.0, gt=0)
    J_range: List[int] = Field(default_factory=lambda: list(range(8, 19)))
    kappa: Optional[float] = Field(default=None, description="Middle-range exponent; midpoint rule when omitted")
    beta: Optional[float] = Field(default=None, description="Third-range exponent; midpoint rule when omitted")
    variant: Optional[ScheduleVariant] = Field(default=None, description="Derived from the exponents when omitted")
    block_variant: Optional[BlockVariant] = Field(default=None)

    @model_validator(mode="after")
    def check_range(self):
        if len(set(self.J_range)) < 4 or min(self.J_range) < 1:
            raise ValueError("J_range needs at least 4 distinct values >= 1")
        return self


PARAM_MODELS = {
    Subcommand.NORM: NormParams,
    Subcommand.BOUNDS: BoundsParams,
    Subcommand.PACKING: PackingParams,
    Subcommand.WIDTH: WidthParams,
    Subcommand.RECOVER: RecoverParams,
    Subcommand.PHASE: PhaseParams,
    Subcommand.BESOV_RATE: BesovRateParams,
}

AnyParams = Union[
    NormParams, BoundsParams, PackingParams, WidthParams, RecoverParams, PhaseParams, BesovRateParams
]


class RunConfig(BaseModel):
    """One validated invocation"""
    model_config = ConfigDict(extra="forbid")

    subcommand: Subcommand
    params: AnyParams
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    output: Optional[Path] = Field(default=None)
    format: OutputFormat = Field(default=OutputFormat.CSV)
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="before")
    @classmethod
    def select_params(cls, data: Any) -> Any:
        if isinstance(data, dict) and "subcommand" in data:
            model = PARAM_MODELS[Subcommand(data["subcommand"])]
            params = data.get("params") or {}
            if not isinstance(params, model):
                params = model.model_validate(params)
            data = {**data, "params": params}
        return data

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON dump; output path and threads excluded"""
        payload = self.model_dump(mode="json", exclude={"output", "threads"})
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ConfigManager:
    """Loads run configurations from JSON files"""

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = Path(config_path) if config_path else None

    def exists(self) -> bool:
        return self.config_path is not None and self.config_path.exists()

    def load_raw(self) -> Dict:
        """Raw JSON object, empty when no file was given"""
        if self.config_path is None:
            return {}
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"配置文件不存在: {self.config_path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"配置文件不是合法 JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError("配置文件顶层必须是 JSON 对象")
        return data

    def load(self, subcommand: Union[Subcommand, str], **overrides: Any) -> RunConfig:
        """Validate the file for ``subcommand``; non-None overrides win"""
        data = self.load_raw()
        try:
            subcommand = Subcommand(subcommand)
        except ValueError as e:
            raise ConfigError(f"未知子命令: {subcommand}") from e
        declared = data.pop("subcommand", subcommand.value)
        if declared != subcommand.value:
            raise ConfigError(f"配置文件属于子命令 {declared}, 不是 {subcommand.value}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        data["subcommand"] = subcommand.value
        try:
            return RunConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"配置校验失败:\n{e}") from e
