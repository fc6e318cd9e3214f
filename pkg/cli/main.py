import json
import logging
from pathlib import Path
from typing import List, Optional

import typer
from dotenv import load_dotenv
from typing_extensions import Annotated

# Load environment variables from .env file
load_dotenv()
from pydantic import ValidationError
from rich.rule import Rule

from zolldisks.dataflows.config import get_config, reset_config, set_config
from zolldisks.dataflows.disk_files import load_disk
from zolldisks.dataflows.grid_files import save_boundaries, save_geodesic, save_grid
from zolldisks.dataflows.spec_files import load_spec
from zolldisks.errors import (
    DocilityRequired,
    SolverFailure,
    SpecFileError,
    UnknownConfigKey,
    ZollDisksError,
)
from zolldisks.moduli.lagrangian import is_monotone
from zolldisks.moduli.moduli_space import ModuliSpace
from zolldisks.moduli.sweep import grid_summary
from zolldisks.solver.disk import boundary_residual
from zolldisks.surface.docility import check_docility
from cli.models import Command, GeodesicMode, RunConfig
from cli.utils import (
    console,
    model_rows,
    parse_overrides,
    parse_p1,
    report_table,
    setup_logging,
    write_diagnostic,
)

logger = logging.getLogger("zolldisks.cli")

app = typer.Typer(
    name="zolldisks",
    help="zolldisks CLI: holomorphic disks and Zoll projective structures from docile surfaces",
    add_completion=True,
)

EXIT_OK = 0
EXIT_DOCILITY = 2
EXIT_SOLVER = 3
EXIT_INPUT = 4


def _write_json(path: Path, data) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=4, default=str)
    return path


# COMMAND HANDLERS =====================================================================


def run_check_docility(space: ModuliSpace, config: RunConfig) -> int:
    report = check_docility(space.spec)
    space.report = report
    _write_json(config.output_dir / "docility.json", report.model_dump())
    console.print(report_table("Docility", model_rows(report)))
    console.print(report.summary())
    if not report.passed:
        raise DocilityRequired(f"surface fails docility: {', '.join(report.failures)}", report=report)
    return EXIT_OK


def run_solve_disk(space: ModuliSpace, config: RunConfig) -> int:
    u0 = parse_p1(config.u0)
    disk = space.solve(u0, K=config.K)
    diagnostics = space.diagnose(disk)
    path = space.save_disk(disk, config.output_dir / "disk.json", diagnostics)
    console.print(report_table("Disk diagnostics", model_rows(diagnostics)))
    console.print(
        f"disk at {config.u0}: residual {disk.residual:.3e}, K={disk.K}, "
        f"Maslov {diagnostics.total_maslov} -> {path}"
    )
    return EXIT_OK


def run_sweep(space: ModuliSpace, config: RunConfig) -> int:
    grid = space.sweep(config.n, K=config.K, seed=config.seed)
    space.save(config.output_dir)
    summary = grid_summary(grid)
    summary["kappa_error"] = space.kappa_error()
    _write_json(config.output_dir / "sweep.json", summary)
    console.print(report_table("Sweep", list(summary.items())))
    console.print(
        f"{summary['disks']} disks, max residual {summary['max_residual']:.3e}, "
        f"kappa error {summary['kappa_error']:.3e}"
    )
    return EXIT_OK


def run_geodesic(space: ModuliSpace, config: RunConfig) -> int:
    space.certify()
    if config.grid_dir is not None:
        space.load(config.grid_dir)
    else:
        grid = space.sweep(config.n, K=config.K, seed=config.seed)
        save_grid(grid, config.output_dir / "grid")
        save_boundaries(grid, config.output_dir / "boundaries.csv")
    geodesic = space.trace(parse_p1(config.z), mode=config.mode.value)
    path = save_geodesic(geodesic, config.output_dir / "geodesic.csv")
    console.print(
        f"geodesic {'closed' if geodesic.closed else 'open'}: {len(geodesic.taus)} nodes, "
        f"arclength {geodesic.arclength:.4f}, closure gap {geodesic.closure_gap:.3e} -> {path}"
    )
    return EXIT_OK


def run_lagrangian(space: ModuliSpace, config: RunConfig) -> int:
    if config.ladder:
        ladder = space.lagrangian_ladder(config.m, seed=config.seed)
        rows = [(f"scale {s:g}", f"{r.max_im:.3e} ({r.verdict.value})") for s, r in ladder]
        monotone = is_monotone(ladder)
        rows.append(("monotone", monotone))
        _write_json(
            config.output_dir / "lagrangian_ladder.json",
            {"monotone": monotone, "reports": [{"scale": s, **r.model_dump()} for s, r in ladder]},
        )
        console.print(report_table("Lagrangian ladder", rows))
        console.print(f"max |Im Upsilon| along scales {'decreases' if monotone else 'is not monotone'}")
        return EXIT_OK

    report = space.lagrangian(config.m, seed=config.seed)
    _write_json(config.output_dir / "lagrangian.json", report.model_dump())
    console.print(report_table("Lagrangian test", model_rows(report)))
    console.print(report.summary())
    return EXIT_OK


def run_diagnostics(space: ModuliSpace, config: RunConfig) -> int:
    if config.disk_path is not None:
        disk, _ = load_disk(config.disk_path, space.spec)
        recomputed = boundary_residual(disk, space.spec.with_scale(disk.spec_scale))
        console.print(
            f"stored residual {disk.residual:.3e}, recomputed {recomputed:.3e} "
            f"(difference {abs(recomputed - disk.residual):.1e})"
        )
    else:
        disk = space.solve(parse_p1(config.u0), K=config.K)
    diagnostics = space.diagnose(disk)
    _write_json(config.output_dir / "diagnostics.json", diagnostics.model_dump())
    console.print(report_table("Disk diagnostics", model_rows(diagnostics)))
    console.print(diagnostics.summary())
    return EXIT_OK


COMMAND_HANDLERS = {
    Command.CHECK_DOCILITY: run_check_docility,
    Command.SOLVE_DISK: run_solve_disk,
    Command.SWEEP: run_sweep,
    Command.GEODESIC: run_geodesic,
    Command.LAGRANGIAN: run_lagrangian,
    Command.DIAGNOSTICS: run_diagnostics,
}


def run(config: RunConfig) -> int:
    """Dispatch a validated invocation; exceptions propagate to the caller."""
    reset_config()
    set_config(config.config_overrides())
    config.output_dir.mkdir(parents=True, exist_ok=True)
    spec = load_spec(config.spec_path)
    space = ModuliSpace(spec, progress=True)
    console.print(Rule(f"{config.command.value}: {config.spec_path.name}"))
    return COMMAND_HANDLERS[config.command](space, config)


def execute(command: Command, verbose: bool, set_options: Optional[List[str]], **options) -> int:
    """Build the RunConfig, run it and map failures to exit codes."""
    setup_logging(verbose)
    options = {key: value for key, value in options.items() if value is not None}
    output_dir = Path(options.get("output_dir", get_config()["results_dir"]))
    try:
        config = RunConfig(command=command, overrides=parse_overrides(set_options), **options)
        code = run(config)
    except (ValidationError, SpecFileError, UnknownConfigKey) as exc:
        console.print(f"[red]Invalid input:[/red] {exc}")
        code = EXIT_INPUT
        write_diagnostic(output_dir, command.value, exc)
    except DocilityRequired as exc:
        console.print(f"[red]Docility failure:[/red] {exc}")
        code = EXIT_DOCILITY
        write_diagnostic(output_dir, command.value, exc)
    except (SolverFailure, ZollDisksError) as exc:
        console.print(f"[red]Solver failure:[/red] {exc}")
        code = EXIT_SOLVER
        write_diagnostic(output_dir, command.value, exc)
    if code != EXIT_OK:
        raise typer.Exit(code)
    return code


# CLI SURFACE ==========================================================================

SpecArg = Annotated[Path, typer.Argument(help="Surface specification file (JSON)")]
OutputOpt = Annotated[
    Optional[Path], typer.Option("--output-dir", "-o", help="Directory for result files")
]
SetOpt = Annotated[
    Optional[List[str]],
    typer.Option("--set", help="Override a config value as key=value (repeatable)"),
]
VerboseOpt = Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")]
KOpt = Annotated[Optional[int], typer.Option("--K", help="Fourier truncation degree")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Lattice rotation seed")]
NOpt = Annotated[Optional[int], typer.Option("--n", help="Number of lattice points")]


@app.command("check-docility")
def check_docility_command(
    spec: SpecArg, output_dir: OutputOpt = None, set_: SetOpt = None, verbose: VerboseOpt = False
):
    """Certify that the surface is docile."""
    execute(Command.CHECK_DOCILITY, verbose, set_, spec_path=spec, output_dir=output_dir)


@app.command("solve-disk")
def solve_disk_command(
    spec: SpecArg,
    u0: Annotated[str, typer.Option("--u0", help='Base point as "re,im;re,im"')],
    K: KOpt = None,
    output_dir: OutputOpt = None,
    set_: SetOpt = None,
    verbose: VerboseOpt = False,
):
    """Solve the holomorphic disk through Pi(u0, u0)."""
    execute(Command.SOLVE_DISK, verbose, set_, spec_path=spec, u0=u0, K=K, output_dir=output_dir)


@app.command("sweep")
def sweep_command(
    spec: SpecArg,
    n: NOpt = None,
    K: KOpt = None,
    seed: SeedOpt = None,
    workers: Annotated[Optional[int], typer.Option("--workers", help="Worker processes")] = None,
    output_dir: OutputOpt = None,
    set_: SetOpt = None,
    verbose: VerboseOpt = False,
):
    """Solve one disk per lattice point and write the moduli grid."""
    execute(
        Command.SWEEP,
        verbose,
        set_,
        spec_path=spec,
        n=n,
        K=K,
        seed=seed,
        workers=workers,
        output_dir=output_dir,
    )


@app.command("geodesic")
def geodesic_command(
    spec: SpecArg,
    z: Annotated[str, typer.Option("--z", help='Surface point label u as "re,im;re,im"')],
    grid: Annotated[
        Optional[Path], typer.Option("--grid", help="Grid directory written by sweep")
    ] = None,
    mode: Annotated[GeodesicMode, typer.Option("--mode", help="Disk provider")] = GeodesicMode.EXACT,
    n: NOpt = None,
    K: KOpt = None,
    seed: SeedOpt = None,
    output_dir: OutputOpt = None,
    set_: SetOpt = None,
    verbose: VerboseOpt = False,
):
    """Trace the geodesic of all disks whose boundary passes through z."""
    execute(
        Command.GEODESIC,
        verbose,
        set_,
        spec_path=spec,
        z=z,
        grid_dir=grid,
        mode=mode,
        n=n,
        K=K,
        seed=seed,
        output_dir=output_dir,
    )


@app.command("lagrangian")
def lagrangian_command(
    spec: SpecArg,
    m: Annotated[Optional[int], typer.Option("--m", help="Number of samples")] = None,
    seed: SeedOpt = None,
    ladder: Annotated[
        bool, typer.Option("--ladder", help="Repeat at scales 1, 1/2, 1/4, 1/8, 0")
    ] = False,
    output_dir: OutputOpt = None,
    set_: SetOpt = None,
    verbose: VerboseOpt = False,
):
    """Test whether N is Lagrangian for Im Upsilon."""
    execute(
        Command.LAGRANGIAN,
        verbose,
        set_,
        spec_path=spec,
        m=m,
        seed=seed,
        ladder=ladder,
        output_dir=output_dir,
    )


@app.command("diagnostics")
def diagnostics_command(
    spec: SpecArg,
    disk: Annotated[Optional[Path], typer.Option("--disk", help="Disk file to check")] = None,
    u0: Annotated[Optional[str], typer.Option("--u0", help="Solve at this base point instead")] = None,
    K: KOpt = None,
    output_dir: OutputOpt = None,
    set_: SetOpt = None,
    verbose: VerboseOpt = False,
):
    """Maslov indices, areas and intersection checks for one disk."""
    execute(
        Command.DIAGNOSTICS,
        verbose,
        set_,
        spec_path=spec,
        disk_path=disk,
        u0=u0,
        K=K,
        output_dir=output_dir,
    )


if __name__ == "__main__":
    app()
