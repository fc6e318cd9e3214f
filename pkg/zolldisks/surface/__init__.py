from .field import FieldTerm, SphereField
from .spec import (
    Direction,
    SurfaceSpec,
    embed_N,
    phi_apply,
    phi_points,
    phi_sphere,
    psi_apply,
    surface_frames,
)
from .docility import (
    DocilityReport,
    check_docility,
    check_docility_sampled,
    standard_rp2_frames,
)
from .kahler import (
    KahlerData,
    SpherePatch,
    diagonal_patch,
    factor_patch,
    graph_patch,
    omega_pullback_area,
)

__all__ = [
    "FieldTerm",
    "SphereField",
    "Direction",
    "SurfaceSpec",
    "embed_N",
    "phi_apply",
    "phi_points",
    "phi_sphere",
    "psi_apply",
    "surface_frames",
    "DocilityReport",
    "check_docility",
    "check_docility_sampled",
    "standard_rp2_frames",
    "KahlerData",
    "SpherePatch",
    "diagonal_patch",
    "factor_patch",
    "graph_patch",
    "omega_pullback_area",
]
