# zolldisks/moduli/__init__.py

from .moduli_space import ModuliSpace
from .sweep import ModuliGrid, kappa_check, sweep
from .geodesics import Geodesic, route_to_provider, trace_geodesic
from .lagrangian import LagrangianReport, Verdict, lagrangian_report, scale_ladder

__all__ = [
    "ModuliSpace",
    "ModuliGrid",
    "kappa_check",
    "sweep",
    "Geodesic",
    "route_to_provider",
    "trace_geodesic",
    "LagrangianReport",
    "Verdict",
    "lagrangian_report",
    "scale_ladder",
]
