"""Disk solution files.

JSON documents with complex numbers written as "re,im" at 17 significant
digits, so coefficients survive a round trip bit for bit.
"""

import json
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from zolldisks.errors import SpecFileError
from zolldisks.geometry.charts import Chart
from zolldisks.geometry.projective import P1Point, P2Point
from zolldisks.solver.diagnostics import DiskDiagnostics
from zolldisks.solver.disk import DiskSolution
from zolldisks.surface.spec import SurfaceSpec

DISK_FORMAT = "zolldisks-disk"
DISK_VERSION = 1


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g},{z.imag:.17g}"


def parse_complex(text: str) -> complex:
    try:
        re, im = text.split(",")
        return complex(float(re), float(im))
    except ValueError as exc:
        raise SpecFileError(f"malformed complex number '{text}'") from exc


def format_vector(v: Sequence[complex]) -> list:
    return [format_complex(z) for z in v]


def parse_vector(items: Sequence[str]) -> np.ndarray:
    return np.array([parse_complex(item) for item in items], dtype=complex)


def disk_to_dict(
    disk: DiskSolution,
    spec: Union[SurfaceSpec, str],
    diagnostics: Optional[DiskDiagnostics] = None,
) -> Dict:
    """`spec` may be the surface itself or just its hash."""
    return {
        "format": DISK_FORMAT,
        "version": DISK_VERSION,
        "spec_hash": spec if isinstance(spec, str) else spec.spec_hash(),
        "spec_scale": float(disk.spec_scale),
        "u0": format_vector(disk.u0.v),
        "p": format_vector(disk.p.v),
        "chart_pole": format_vector(disk.chart.pole.v),
        "K": disk.K,
        "coeffs": format_vector(disk.coeffs),
        "residual": float(disk.residual),
        "diagnostics": diagnostics.model_dump() if diagnostics is not None else None,
    }


def disk_from_dict(data: Dict) -> Tuple[DiskSolution, Dict]:
    """The disk and the remaining metadata (spec hash, diagnostics)."""
    if data.get("format") != DISK_FORMAT or data.get("version") != DISK_VERSION:
        raise SpecFileError(
            f"unsupported disk file format {data.get('format')} v{data.get('version')}"
        )
    try:
        coeffs = parse_vector(data["coeffs"])
        if len(coeffs) != data["K"] + 1:
            raise SpecFileError(f"expected {data['K'] + 1} coefficients, found {len(coeffs)}")
        disk = DiskSolution(
            spec_scale=float(data["spec_scale"]),
            u0=P1Point(parse_vector(data["u0"])),
            p=P2Point(parse_vector(data["p"])),
            chart=Chart(P1Point(parse_vector(data["chart_pole"]))),
            coeffs=coeffs,
            residual=float(data["residual"]),
        )
    except KeyError as exc:
        raise SpecFileError(f"disk file lacks field {exc}") from exc
    meta = {"spec_hash": data.get("spec_hash"), "diagnostics": data.get("diagnostics")}
    return disk, meta


def save_disk(
    disk: DiskSolution,
    spec: Union[SurfaceSpec, str],
    path,
    diagnostics: Optional[DiskDiagnostics] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(disk_to_dict(disk, spec, diagnostics), f, indent=4)
    return path


def load_disk(path, spec: Optional[SurfaceSpec] = None) -> Tuple[DiskSolution, Dict]:
    """Read a disk file; with `spec` given, its hash must match the file's."""
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecFileError(f"cannot read disk file {path}: {exc}") from exc
    disk, meta = disk_from_dict(data)
    if spec is not None and meta["spec_hash"] != spec.spec_hash():
        raise SpecFileError(f"{path} was solved for a different surface")
    return disk, meta
