# zolldisks/moduli/moduli_space.py

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from zolldisks.dataflows.config import get_config, set_config
from zolldisks.dataflows.disk_files import save_disk
from zolldisks.dataflows.grid_files import load_grid, save_boundaries, save_geodesic, save_grid
from zolldisks.errors import DocilityRequired
from zolldisks.geometry.projective import P1Point
from zolldisks.solver.continuation import solve_disk
from zolldisks.solver.diagnostics import DiskDiagnostics, disk_diagnostics
from zolldisks.solver.disk import DiskSolution
from zolldisks.surface.docility import DocilityReport, check_docility
from zolldisks.surface.spec import SurfaceSpec
from .geodesics import Geodesic, trace_geodesic
from .lagrangian import LagrangianReport, lagrangian_report, scale_ladder
from .sweep import ModuliGrid, kappa_check, sweep

logger = logging.getLogger(__name__)


class ModuliSpace:
    """Owns a surface, its certification, its disk grid and the traced geodesics."""

    def __init__(self, spec: SurfaceSpec, config: Dict[str, Any] = None, progress: bool = False):
        """Initialize the moduli space of a surface.

        Args:
            spec: The surface in phi-normal form
            config: Configuration overrides. If None, the current config is used
            progress: Whether to show progress bars for sweeps and traces
        """
        if config:
            set_config(config)
        self.config = get_config()
        self.spec = spec
        self.progress = progress

        # State tracking
        self.report: Optional[DocilityReport] = None
        self.grid: Optional[ModuliGrid] = None
        self.geodesics: List[Geodesic] = []

    def certify(self) -> DocilityReport:
        """Run (once) the docility certification and raise if it fails."""
        if self.report is None:
            self.report = check_docility(self.spec)
        if not self.report.passed:
            raise DocilityRequired(
                f"surface fails docility: {', '.join(self.report.failures)}", report=self.report
            )
        return self.report

    def solve(self, u0: P1Point, K: Optional[int] = None) -> DiskSolution:
        self.certify()
        return solve_disk(self.spec, u0, K=K, certify=False)

    def diagnose(self, disk: DiskSolution) -> DiskDiagnostics:
        return disk_diagnostics(disk, self.spec)

    def sweep(self, n: int, K: Optional[int] = None, seed: Optional[int] = None) -> ModuliGrid:
        self.certify()
        self.grid = sweep(
            self.spec,
            n,
            K=K,
            seed=seed,
            workers=self.config["workers"],
            certify=False,
            progress=self.progress,
        )
        return self.grid

    def load(self, directory: Path) -> ModuliGrid:
        self.grid = load_grid(directory, self.spec)
        return self.grid

    def kappa_error(self) -> float:
        return kappa_check(self._require_grid())

    def trace(self, u: P1Point, mode: Optional[str] = None, direction: int = 1) -> Geodesic:
        geodesic = trace_geodesic(
            self.spec, self._require_grid(), u, mode=mode, direction=direction, progress=self.progress
        )
        self.geodesics.append(geodesic)
        return geodesic

    def lagrangian(self, m: int, seed: Optional[int] = None) -> LagrangianReport:
        return lagrangian_report(self.spec, m, seed=seed)

    def lagrangian_ladder(self, m: int, seed: Optional[int] = None):
        """Reports at scales 1, 1/2, 1/4, 1/8 and 0 of the same field."""
        return scale_ladder(self.spec, m, seed=seed)

    def save(self, directory: Path) -> Path:
        """Write the grid, its boundary polylines and every traced geodesic."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        if self.grid is not None:
            save_grid(self.grid, directory / "grid")
            save_boundaries(self.grid, directory / "boundaries.csv")
        for index, geodesic in enumerate(self.geodesics):
            save_geodesic(geodesic, directory / f"geodesic_{index:03d}.csv")
        logger.info("moduli data written to %s", directory)
        return directory

    def save_disk(self, disk: DiskSolution, path: Path, diagnostics: Optional[DiskDiagnostics] = None):
        return save_disk(disk, self.spec, path, diagnostics)

    def _require_grid(self) -> ModuliGrid:
        if self.grid is None:
            raise ValueError("no moduli grid: run sweep() or load() first")
        return self.grid
