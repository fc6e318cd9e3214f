import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from zolldisks.default_config import DEFAULT_CONFIG


class Command(str, Enum):
    CHECK_DOCILITY = "check-docility"
    SOLVE_DISK = "solve-disk"
    SWEEP = "sweep"
    GEODESIC = "geodesic"
    LAGRANGIAN = "lagrangian"
    DIAGNOSTICS = "diagnostics"


class GeodesicMode(str, Enum):
    EXACT = "exact"
    INTERPOLATED = "interpolated"


class RunConfig(BaseModel):
    """One validated CLI invocation."""

    command: Command
    spec_path: Path
    output_dir: Path = Path(DEFAULT_CONFIG["results_dir"])
    K: Optional[int] = Field(default=None, ge=16, le=512)
    n: int = Field(default=400, ge=16)
    m: int = Field(default=1000, ge=16)
    u0: Optional[str] = None
    z: Optional[str] = None
    seed: Optional[int] = None
    workers: Optional[int] = Field(default=None, ge=1)
    grid_dir: Optional[Path] = None
    disk_path: Optional[Path] = None
    mode: GeodesicMode = GeodesicMode.EXACT
    ladder: bool = False
    overrides: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("spec_path")
    @classmethod
    def spec_exists(cls, path: Path):
        if not path.is_file():
            raise ValueError(f"surface specification {path} does not exist")
        return path

    @field_validator("grid_dir")
    @classmethod
    def grid_exists(cls, path: Optional[Path]):
        if path is not None and not path.is_dir():
            raise ValueError(f"grid directory {path} does not exist")
        return path

    @field_validator("disk_path")
    @classmethod
    def disk_exists(cls, path: Optional[Path]):
        if path is not None and not path.is_file():
            raise ValueError(f"disk file {path} does not exist")
        return path

    @model_validator(mode="before")
    @classmethod
    def lift_flag_overrides(cls, data: Any):
        """`--set K=..` and `--set workers=..` go through the same bounds as the flags."""
        if not isinstance(data, dict):
            return data
        overrides = dict(data.get("overrides") or {})
        data = dict(data)
        for key in ("K", "workers"):
            if key in overrides and data.get(key) is None:
                data[key] = overrides.pop(key)
        data["overrides"] = overrides
        return data

    @field_validator("overrides")
    @classmethod
    def known_keys(cls, overrides: Dict[str, Any]):
        unknown = set(overrides) - set(DEFAULT_CONFIG)
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        for key, value in overrides.items():
            default = DEFAULT_CONFIG[key]
            if key == "geodesic_mode":
                if value not in {mode.value for mode in GeodesicMode}:
                    raise ValueError(f"geodesic_mode must be one of {[m.value for m in GeodesicMode]}")
            elif isinstance(default, str):
                if not isinstance(value, str):
                    raise ValueError(f"{key} expects a string, got {value!r}")
            elif isinstance(default, int):
                if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                    raise ValueError(f"{key} expects a positive integer, got {value!r}")
            elif isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{key} expects a number, got {value!r}")
            elif not math.isfinite(value) or value <= 0:
                raise ValueError(f"{key} expects a positive finite number, got {value!r}")
        return overrides

    @model_validator(mode="after")
    def required_options(self):
        if self.command is Command.SOLVE_DISK and self.u0 is None:
            raise ValueError("solve-disk needs --u0")
        if self.command is Command.GEODESIC and self.z is None:
            raise ValueError("geodesic needs --z")
        if self.command is Command.DIAGNOSTICS and self.u0 is None and self.disk_path is None:
            raise ValueError("diagnostics needs --disk or --u0")
        return self

    def config_overrides(self) -> Dict[str, Any]:
        """Config keys set by this run, dedicated flags taking precedence over --set."""
        config = dict(self.overrides)
        config["results_dir"] = str(self.output_dir)
        config["geodesic_mode"] = self.mode.value
        if self.K is not None:
            config["K"] = self.K
        if self.workers is not None:
            config["workers"] = self.workers
        return config
