"""Surface specification files (JSON)."""

import json
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from zolldisks.errors import SpecFileError
from zolldisks.surface.field import SphereField
from zolldisks.surface.spec import SurfaceSpec

SPEC_VERSION = 1

THRESHOLD_KEYS = {
    "involution_tol",
    "fixed_point_gap",
    "orientation_margin",
    "fd_step",
}


class TermEntry(BaseModel):
    powers: List[int] = Field(min_length=3, max_length=3)
    coeff: List[float] = Field(min_length=3, max_length=3)

    @field_validator("powers")
    @classmethod
    def non_negative(cls, powers):
        if min(powers) < 0:
            raise ValueError("powers must be non-negative")
        return powers


class SpecFile(BaseModel):
    version: int = SPEC_VERSION
    degree: int = Field(ge=0, le=4)
    terms: List[TermEntry] = Field(default_factory=list)
    scale: float = Field(default=1.0, ge=0.0, le=1.0)
    flow_steps: int = Field(default=64, ge=1)
    thresholds: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_consistency(self):
        if self.version != SPEC_VERSION:
            raise ValueError(f"unsupported spec version {self.version}")
        for term in self.terms:
            if sum(term.powers) > self.degree:
                raise ValueError(f"term {term.powers} exceeds declared degree {self.degree}")
        unknown = set(self.thresholds) - THRESHOLD_KEYS
        if unknown:
            raise ValueError(f"unknown thresholds {sorted(unknown)}")
        return self

    def to_spec(self) -> SurfaceSpec:
        field = SphereField.from_pairs((t.powers, t.coeff) for t in self.terms)
        return SurfaceSpec(field, self.scale, self.flow_steps, self.thresholds)


def parse_spec(data: Dict) -> SurfaceSpec:
    try:
        return SpecFile.model_validate(data).to_spec()
    except ValidationError as exc:
        raise SpecFileError(f"invalid surface specification: {exc}") from exc
    except ValueError as exc:
        raise SpecFileError(str(exc)) from exc


def load_spec(path) -> SurfaceSpec:
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecFileError(f"cannot read surface specification {path}: {exc}") from exc
    return parse_spec(data)


def save_spec(spec: SurfaceSpec, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump({"version": SPEC_VERSION, **spec.to_dict()}, f, indent=4)
    return path


def standard_spec(scale: float = 0.0, flow_steps: Optional[int] = None) -> SurfaceSpec:
    """The zero field: phi is the antipodal map and N the standard RP^2 at every scale."""
    return SurfaceSpec(SphereField(), scale, flow_steps)
