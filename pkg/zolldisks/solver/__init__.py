from .disk import (
    DiskSolution,
    boundary_residual,
    canonical,
    recenter,
    round_disk,
    transport,
)
from .newton import newton_refine, pin_derivatives, predict_base_point
from .continuation import solve_disk
from .diagnostics import DiskDiagnostics, disk_diagnostics, maslov_lift_winding

__all__ = [
    "DiskSolution",
    "boundary_residual",
    "canonical",
    "recenter",
    "round_disk",
    "transport",
    "newton_refine",
    "pin_derivatives",
    "predict_base_point",
    "solve_disk",
    "DiskDiagnostics",
    "disk_diagnostics",
    "maslov_lift_winding",
]
