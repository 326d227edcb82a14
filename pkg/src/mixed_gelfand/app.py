import logging
import logging.handlers
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .besov import BesovParams, rate_fit
from .bounds import bound_table
from .config import (
    BesovRateParams,
    BoundsParams,
    NormParams,
    OutputFormat,
    PackingParams,
    PhaseParams,
    RecoverParams,
    RunConfig,
    Subcommand,
    WidthParams,
)
from .models import ExponentPair, MixedArray, MixedShape
from .norms import (
    mixed_norm,
    power_exponent,
    quasi_norm_constant,
    sigma_inner,
    sigma_outer,
    split_constant,
)
from .output import (
    PLOT_AXES,
    RunHeader,
    emit_plot_data,
    read_header,
    render_csv,
    render_json,
    write_all_atomic,
)
from .packing import build_sparse_packing
from .parallel import trial_rng
from .recovery import STABILITY_CALIBRATION, median_stability, phase_transition, recover_trials
from .widths import width_table

TYPICAL_CASE_NOTE = "typical-case evidence: random supports and Gaussian models, not worst-case"


def setup_logging(log_dir: Optional[Path] = None, verbose: bool = False) -> None:
    """配置日志系统

    - 输出到 stderr（stdout 留给数据）
    - 输出到文件（按天轮转，保留30天）
    """
    log_format = "%(asctime)s - %(levelname)s - %(message)s"
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG if verbose else logging.INFO)

    # 清除已有的 handlers（避免重复添加）
    root_logger.handlers.clear()

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(logging.Formatter(log_format))
    root_logger.addHandler(stream_handler)

    if log_dir:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.TimedRotatingFileHandler(
            filename=log_dir / "mixed-gelfand.log",
            when="midnight",      # 每天午夜轮转
            interval=1,
            backupCount=30,       # 保留30天
            encoding="utf-8"
        )
        file_handler.setFormatter(logging.Formatter(log_format))
        file_handler.suffix = "%Y-%m-%d"
        root_logger.addHandler(file_handler)


logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """Table produced by one pipeline"""
    columns: List[str]
    rows: List[Dict]
    summary: Optional[Dict] = None
    notes: Tuple[str, ...] = ()
    plot_key: Optional[str] = None


@dataclass
class RunArtifacts:
    main: Optional[Path]
    text: str
    extra: List[Path] = field(default_factory=list)


class Runner:
    """Runs exactly one pipeline for a validated RunConfig and writes its outputs"""

    def __init__(self, config: RunConfig, plot_data: Optional[Path] = None):
        self.config = config
        self.plot_data = Path(plot_data) if plot_data else None
        self._pipelines: Dict[Subcommand, Callable[[], RunResult]] = {
            Subcommand.NORM: self._run_norm,
            Subcommand.BOUNDS: self._run_bounds,
            Subcommand.PACKING: self._run_packing,
            Subcommand.WIDTH: self._run_width,
            Subcommand.RECOVER: self._run_recover,
            Subcommand.PHASE: self._run_phase,
            Subcommand.BESOV_RATE: self._run_besov,
        }

    @property
    def header(self) -> RunHeader:
        return RunHeader(__version__, self.config.seed, self.config.config_hash())

    def compute(self) -> RunResult:
        subcommand = self.config.subcommand
        logger.info(f"[{subcommand.value}] 开始运行, seed={self.config.seed}, threads={self.config.threads}")
        return self._pipelines[subcommand]()

    def render(self, result: RunResult) -> str:
        header = RunHeader(__version__, self.config.seed, self.config.config_hash(), result.notes)
        if self.config.format == OutputFormat.JSON:
            return render_json(result.rows, header, result.summary)
        return render_csv(result.rows, result.columns, header)

    def dispatch(self) -> RunArtifacts:
        """Compute, render and write every output; nothing is left behind on failure"""
        result = self.compute()
        text = self.render(result)
        pending: List[Tuple[Path, str]] = []
        out = self.config.output
        if out is not None:
            pending.append((Path(out), text))
            if result.summary is not None and self.config.format == OutputFormat.CSV:
                summary_text = render_json([], self.header, result.summary)
                pending.append((Path(out).with_suffix(".summary.json"), summary_text))
        if self.plot_data is not None:
            if result.plot_key is None:
                logger.warning(f"[{self.config.subcommand.value}] 该子命令没有绘图数据, 忽略 --plot-data")
            else:
                pending.append((self.plot_data, emit_plot_data(result.rows, PLOT_AXES[result.plot_key])))

        written = write_all_atomic(pending)
        for path in written:
            logger.info(f"[{self.config.subcommand.value}] 输出: {path}")
        return RunArtifacts(main=out, text=text, extra=[p for p in written if p != out])

    def _run_norm(self) -> RunResult:
        params: NormParams = self.config.params
        if params.values is not None:
            x = MixedArray.from_values(params.values)
        else:
            x = MixedArray(MixedShape(params.b, params.d),
                           trial_rng(self.config.seed).standard_normal((params.b, params.d)))
        e = ExponentPair(params.p, params.q)
        quantities = [
            ("mixed_norm", mixed_norm(x, e)),
            ("sigma_outer", sigma_outer(x, params.s, e)),
            ("sigma_inner", sigma_inner(x, params.t, e)),
            ("quasi_norm_constant", quasi_norm_constant(e)),
            ("power_exponent", power_exponent(e)),
            ("split_constant", split_constant(e)),
            ("split_constant_tight", split_constant(e, tight=True)),
        ]
        rows = [{"quantity": name, "value": value} for name, value in quantities]
        return RunResult(columns=["quantity", "value"], rows=rows)

    def _run_bounds(self) -> RunResult:
        params: BoundsParams = self.config.params
        rows = bound_table(
            MixedShape(params.b, params.d), params.m_grid, params.variants,
            params.p, params.q, params.constant,
        )
        columns = ["b", "d", "m", "p", "q", "variant", "constant", "regime", "value"]
        return RunResult(columns=columns, rows=rows, plot_key="bounds")

    def _run_packing(self) -> RunResult:
        params: PackingParams = self.config.params
        family = build_sparse_packing(
            params.b, params.d, params.s, params.t,
            norm_in=ExponentPair(*params.norm_in),
            measured_in=ExponentPair(*params.measured_in),
            seed=self.config.seed,
            code_size=params.code_size,
            max_size=params.max_size,
        )
        certificate = family.certificate
        row = {
            "b": params.b,
            "d": params.d,
            "s": params.s,
            "t": params.t,
            "cardinality": certificate.cardinality,
            "cardinality_floor": certificate.cardinality_floor,
            "min_distance": certificate.min_distance,
            "distance_floor": certificate.distance_floor,
            "max_radius": certificate.max_radius,
            "radius_cap": certificate.radius_cap,
            "exhaustive": certificate.exhaustive,
            "holds": certificate.holds,
            "seed": self.config.seed,
        }
        manifest = {
            "parameters": params.model_dump(mode="json"),
            "cardinality": certificate.cardinality,
            "certified": {
                "cardinality_floor": certificate.cardinality_floor,
                "distance_floor": certificate.distance_floor,
                "radius_cap": certificate.radius_cap,
                "min_distance": certificate.min_distance,
                "max_radius": certificate.max_radius,
                "exhaustive": certificate.exhaustive,
            },
            "seed": self.config.seed,
        }
        return RunResult(columns=list(row), rows=[row], summary=manifest)

    def _run_width(self) -> RunResult:
        params: WidthParams = self.config.params
        rows = width_table(params.grid, params.trials, self.config.seed, params.constant,
                           threads=self.config.threads)
        columns = ["b", "d", "s", "trials", "seed", "mean", "std_error", "upper_formula"]
        return RunResult(columns=columns, rows=rows, plot_key="width")

    def _run_recover(self) -> RunResult:
        params: RecoverParams = self.config.params
        records = recover_trials(
            MixedShape(params.b, params.d), params.mode, params.s_or_t, params.m,
            params.trials, params.decoder.value, self.config.seed,
            params.solver.to_solver_config(), params.inner_t, params.flat,
            params.perturbation, threads=self.config.threads,
        )
        median = median_stability(records)
        if median is not None:
            level = logging.WARNING if median > STABILITY_CALIBRATION else logging.INFO
            logger.log(level, f"[recover] 稳定性比值中位数 {median:.4g} (标定常数 {STABILITY_CALIBRATION:g})")
        rows = [r.as_row() for r in records]
        columns = ["b", "d", "mode", "s_or_t", "m", "decoder", "trial", "rel_error",
                   "iterations", "converged", "residual", "stability", "seed", "error"]
        return RunResult(columns=columns, rows=rows, notes=(TYPICAL_CASE_NOTE,))

    def _run_phase(self) -> RunResult:
        params: PhaseParams = self.config.params
        cells = phase_transition(
            MixedShape(params.b, params.d), params.mode, params.sparsity_grid, params.m_grid,
            params.trials, params.decoder.value, self.config.seed,
            params.solver.to_solver_config(), threads=self.config.threads,
            inner_t=params.inner_t, flat=params.flat, threshold=params.threshold,
        )
        columns = ["b", "d", "mode", "s_or_t", "m", "decoder", "trials", "successes",
                   "success_rate", "mean_rel_err", "seed"]
        return RunResult(columns=columns, rows=[c.as_row() for c in cells],
                         notes=(TYPICAL_CASE_NOTE,), plot_key="phase")

    def _run_besov(self) -> RunResult:
        params: BesovRateParams = self.config.params
        besov = BesovParams(d=params.d, r=params.r, p0=params.p0, q0=params.q0,
                            p1=params.p1, q1=params.q1)
        fit = rate_fit(besov, params.J_range, params.kappa, params.beta,
                       params.variant, params.block_variant)
        columns = ["J", "total_m", "aggregate", "variant", "slope_so_far"]
        return RunResult(columns=columns, rows=fit.rows, summary=fit.summary(), plot_key="besov-rate")


def verify_output(output: Path, config: RunConfig, rerun: bool = False) -> Sequence[str]:
    """Mismatches between an output file and the config that should have produced it"""
    problems = []
    header = read_header(output)
    expected = config.config_hash()
    if header.config_hash != expected:
        problems.append(f"config hash {header.config_hash} != {expected}")
    if header.seed != config.seed:
        problems.append(f"seed {header.seed} != {config.seed}")
    if rerun and not problems:
        runner = Runner(config.model_copy(update={"output": None}))
        if runner.render(runner.compute()) != Path(output).read_text(encoding="utf-8"):
            problems.append("rerun output differs from file contents")
    return problems
