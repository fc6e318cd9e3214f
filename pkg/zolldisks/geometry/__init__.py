from .projective import (
    P1Point,
    P2Point,
    TangentLine,
    TangentFrame2,
    antipodal,
    chordal,
    conic_value,
    conj_c,
    pi_map,
    projective_transform,
    tangent_lines_through,
    upsilon_im_abs,
)
from .charts import Chart, Mobius, choose_pole, su2_between

__all__ = [
    "P1Point",
    "P2Point",
    "TangentLine",
    "TangentFrame2",
    "Chart",
    "Mobius",
    "antipodal",
    "chordal",
    "choose_pole",
    "conic_value",
    "conj_c",
    "pi_map",
    "projective_transform",
    "su2_between",
    "tangent_lines_through",
    "upsilon_im_abs",
]
