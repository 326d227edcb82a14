from pathlib import Path

import click

from . import __version__
from .config import ConfigManager, OutputFormat, Subcommand
from .errors import ConfigError, MixedGelfandError

EXIT_MODULE_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_VERIFY_MISMATCH = 3


@click.group(name="mixed-gelfand", help="混合范数 Gelfand 宽度数值实验工具")
@click.option("--log-dir", type=click.Path(file_okay=False, path_type=Path), default=None, help="日志目录（按天轮转）")
@click.option("-v", "--verbose", is_flag=True, help="输出 DEBUG 级别日志")
def cli(log_dir, verbose):
    from .app import setup_logging
    setup_logging(log_dir, verbose)


@cli.command(help="显示版本信息")
def version():
    click.echo(f"mixed-gelfand {__version__}")


def run_options(func):
    """Options shared by every pipeline subcommand"""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path),
                     default=None, help="JSON 配置文件"),
        click.option("--seed", type=int, default=None, help="随机种子（覆盖配置文件）"),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="输出文件（缺省输出到 stdout）"),
        click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]),
                     default=None, help="输出格式"),
        click.option("--threads", type=int, default=None, help="并行线程数"),
        click.option("--plot-data", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="长格式绘图数据输出文件"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run(subcommand: Subcommand, config_path, seed, out, fmt, threads, plot_data) -> None:
    ctx = click.get_current_context()
    try:
        run_config = ConfigManager(config_path).load(
            subcommand, seed=seed, output=out, format=fmt, threads=threads
        )
    except ConfigError as e:
        click.echo(f"❌ {e}", err=True)
        ctx.exit(EXIT_CONFIG_ERROR)

    from .app import Runner
    try:
        artifacts = Runner(run_config, plot_data).dispatch()
    except MixedGelfandError as e:
        click.echo(f"❌ {subcommand.value} 运行失败: {e}", err=True)
        ctx.exit(EXIT_MODULE_ERROR)

    if artifacts.main is None:
        click.echo(artifacts.text, nl=False)
    else:
        click.echo(f"✅ 结果已保存到: {artifacts.main}")
    for path in artifacts.extra:
        click.echo(f"✅ 附加输出: {path}")


PIPELINE_HELP = {
    Subcommand.NORM: "计算混合范数与最佳逼近误差",
    Subcommand.BOUNDS: "计算 Gelfand 宽度的闭式上下界",
    Subcommand.PACKING: "构造并校验结构稀疏 packing",
    Subcommand.WIDTH: "Monte Carlo 估计高斯宽度",
    Subcommand.RECOVER: "运行恢复试验",
    Subcommand.PHASE: "扫描 (稀疏度, m) 的相变表",
    Subcommand.BESOV_RATE: "Besov 序列空间的预算分配与速率拟合",
}


def register_pipeline(subcommand: Subcommand, help_text: str) -> None:
    @cli.command(name=subcommand.value, help=help_text)
    @run_options
    def command(config_path, seed, out, fmt, threads, plot_data):
        _run(subcommand, config_path, seed, out, fmt, threads, plot_data)


for _subcommand, _help_text in PIPELINE_HELP.items():
    register_pipeline(_subcommand, _help_text)


@cli.command(help="校验输出文件的配置哈希")
@click.argument("output", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path),
              default=None, help="生成该输出时使用的 JSON 配置文件")
@click.option("--subcommand", type=click.Choice([s.value for s in Subcommand]), default=None,
              help="子命令（缺省读取配置文件中的 subcommand 字段）")
@click.option("--seed", type=int, default=None, help="随机种子（缺省读取输出文件头）")
@click.option("--rerun", is_flag=True, help="重新计算并逐字节比较")
def verify(output, config_path, subcommand, seed, rerun):
    from .app import verify_output
    from .output import read_header

    ctx = click.get_current_context()
    manager = ConfigManager(config_path)
    try:
        header = read_header(output)
        name = subcommand or manager.load_raw().get("subcommand")
        if name is None:
            raise ConfigError("无法确定子命令, 请使用 --subcommand 或在配置文件中写明 subcommand")
        fmt = OutputFormat.JSON if output.read_text(encoding="utf-8").lstrip().startswith("{") else OutputFormat.CSV
        run_config = manager.load(
            name, seed=header.seed if seed is None else seed, format=fmt.value
        )
    except ConfigError as e:
        click.echo(f"❌ {e}", err=True)
        ctx.exit(EXIT_CONFIG_ERROR)
    except MixedGelfandError as e:
        click.echo(f"❌ {e}", err=True)
        ctx.exit(EXIT_MODULE_ERROR)

    problems = verify_output(output, run_config, rerun=rerun)
    if problems:
        for problem in problems:
            click.echo(f"❌ {problem}", err=True)
        ctx.exit(EXIT_VERIFY_MISMATCH)
    click.echo(f"✅ 校验通过: {output} (config={header.config_hash[:12]}…)")
