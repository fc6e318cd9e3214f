"""Moduli grid, boundary and geodesic files.

A grid directory holds one disk file per lattice point plus an index.csv
summarising them. Geodesics are CSV polylines with a JSON sidecar.
"""

import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Optional

import numpy as np
import pandas as pd

from zolldisks.errors import SpecFileError
from zolldisks.solver.disk import sphere_boundary
from zolldisks.surface.spec import SurfaceSpec
from .disk_files import format_complex, load_disk, save_disk

if TYPE_CHECKING:
    from zolldisks.moduli.geodesics import Geodesic
    from zolldisks.moduli.sweep import ModuliGrid

logger = logging.getLogger(__name__)

INDEX_FILE = "index.csv"
FLOAT_FORMAT = "%.17g"


def save_grid(grid: "ModuliGrid", directory) -> Path:
    """Write every disk of the grid and an index.csv describing them."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rows = []
    for index, disk in enumerate(grid.solutions):
        name = f"disk_{index:05d}.json"
        save_disk(disk, grid.spec_hash, directory / name)
        x, y, z = disk.u0.sphere()
        rows.append(
            {
                "file": name,
                "u0_1": format_complex(disk.u0.v[0]),
                "u0_2": format_complex(disk.u0.v[1]),
                "x": x,
                "y": y,
                "z": z,
                "residual": disk.residual,
                "K": disk.K,
                "spec_hash": grid.spec_hash,
                "grid_K": grid.K,
                "seed": -1 if grid.seed is None else grid.seed,
            }
        )
    pd.DataFrame(rows).to_csv(directory / INDEX_FILE, index=False, float_format=FLOAT_FORMAT)
    logger.info("wrote %d disks to %s", len(rows), directory)
    return directory


def load_grid(directory, spec: Optional[SurfaceSpec] = None) -> "ModuliGrid":
    """Read a grid directory; with `spec` given, its hash must match the index."""
    from zolldisks.moduli.sweep import ModuliGrid

    directory = Path(directory)
    index_path = directory / INDEX_FILE
    if not index_path.exists():
        raise SpecFileError(f"no {INDEX_FILE} in {directory}")
    index = pd.read_csv(index_path, dtype={"spec_hash": str, "file": str, "u0_1": str, "u0_2": str})
    if index.empty:
        raise SpecFileError(f"{index_path} lists no disks")

    hashes = index["spec_hash"].unique()
    if len(hashes) != 1:
        raise SpecFileError(f"{index_path} mixes {len(hashes)} surfaces")
    spec_hash = str(hashes[0])
    if spec is not None and spec_hash != spec.spec_hash():
        raise SpecFileError(f"{directory} was swept for a different surface")

    solutions = []
    for name in index["file"]:
        disk, meta = load_disk(directory / name)
        if meta["spec_hash"] != spec_hash:
            raise SpecFileError(f"{name} does not belong to the surface of {index_path}")
        solutions.append(disk)
    seed = int(index["seed"].iloc[0])
    return ModuliGrid(
        spec_hash,
        tuple(solutions),
        int(index["grid_K"].iloc[0]),
        None if seed < 0 else seed,
    )


def save_geodesic(geodesic: "Geodesic", path) -> Path:
    """CSV of the (u0, tau) nodes plus a .json sidecar with the trace summary."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    u0s = np.asarray(geodesic.u0s)
    sphere = geodesic.sphere_points()
    frame = pd.DataFrame(
        {
            "u0_1_re": u0s[:, 0].real,
            "u0_1_im": u0s[:, 0].imag,
            "u0_2_re": u0s[:, 1].real,
            "u0_2_im": u0s[:, 1].imag,
            "tau": geodesic.taus,
            "x": sphere[:, 0],
            "y": sphere[:, 1],
            "z": sphere[:, 2],
        }
    )
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    sidecar = {
        "z_label": [format_complex(c) for c in geodesic.z_label.v],
        "closed": bool(geodesic.closed),
        "arclength": float(geodesic.arclength),
        "closure_gap": geodesic.closure_gap,
        "nodes": len(frame),
    }
    with open(path.with_suffix(".json"), "w") as f:
        json.dump(sidecar, f, indent=4)
    return path


def save_boundaries(grid: "ModuliGrid", path, n_nodes: int = 128) -> Path:
    """Boundary loops of every grid disk on S^2, one row per node."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frames = []
    for index, disk in enumerate(grid.solutions):
        points = sphere_boundary(disk, n_nodes)
        frames.append(
            pd.DataFrame(
                {
                    "disk": index,
                    "node": np.arange(len(points)),
                    "x": points[:, 0],
                    "y": points[:, 1],
                    "z": points[:, 2],
                }
            )
        )
    pd.concat(frames, ignore_index=True).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path
