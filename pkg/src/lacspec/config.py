"""Declarative run configuration: pydantic schema, YAML parsing, validation.

Configs are the scientific record of a run, so the format is plain YAML with
units spelled out in the key names (``_mhz``, ``_gauss``, ``_s``).  The same
models serve as the request schema of the HTTP service.
"""

from __future__ import annotations

import hashlib
import math
from typing import Literal, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .constants import THETA_TETRA, tilted_axis
from .spinops import AxialTensor
from .spectrum import FieldGrid
from .system import Nucleus, SpinCenter, SpinSystem

DEFAULT_TAU_S = 1e-4

Output = Literal["spectrum", "derivative", "crossings", "per_center"]


class ConfigError(ValueError):
    """A configuration could not be parsed or violates an invariant."""


class AxisAngles(BaseModel):
    """Axis given as polar/azimuthal angles instead of a vector."""

    model_config = ConfigDict(extra="forbid")

    polar_deg: float
    azimuth_deg: float = 0.0


AxisSpec = Union[list[float], AxisAngles, Literal["z", "tetrahedral_0", "tetrahedral_120", "tetrahedral_240"]]


def resolve_axis(axis: AxisSpec) -> tuple[float, float, float]:
    """Normalize an axis spec to a unit 3-vector (tuple for JSON stability)."""
    if isinstance(axis, str):
        if axis == "z":
            return (0.0, 0.0, 1.0)
        azimuth = {"tetrahedral_0": 0.0, "tetrahedral_120": 2 * math.pi / 3,
                   "tetrahedral_240": 4 * math.pi / 3}[axis]
        v = tilted_axis(THETA_TETRA, azimuth)
        return (float(v[0]), float(v[1]), float(v[2]))
    if isinstance(axis, AxisAngles):
        v = tilted_axis(math.radians(axis.polar_deg), math.radians(axis.azimuth_deg))
        return (float(v[0]), float(v[1]), float(v[2]))
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise ConfigError(f"axis must be a finite 3-vector, got {axis!r}")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ConfigError("axis vector must be nonzero")
    v = v / norm
    return (float(v[0]), float(v[1]), float(v[2]))


class NucleusConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    spin: float
    a_parallel_mhz: float
    a_perp_mhz: float
    axis: AxisSpec = "z"
    q_mhz: float = 0.0
    q_axis: AxisSpec | None = None  # defaults to the hyperfine axis

    @field_validator("spin")
    @classmethod
    def _half_integer(cls, v):
        if abs(2 * v - round(2 * v)) > 1e-9 or v < 0.5:
            raise ValueError(f"nuclear spin must be a positive half-integer, got {v}")
        return v

    def build(self) -> Nucleus:
        axis = resolve_axis(self.axis)
        q_axis = axis if self.q_axis is None else resolve_axis(self.q_axis)
        return Nucleus(
            spin=self.spin,
            hfc=AxialTensor(self.a_parallel_mhz, self.a_perp_mhz, np.array(axis)),
            quadrupole_q=self.q_mhz,
            quadrupole_axis=np.array(q_axis),
        )


class CenterConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    spin: float
    g_parallel: float
    g_perp: float
    d_mhz: float = 0.0
    axis: AxisSpec = "z"
    alpha: float = Field(default=0.0, ge=0.0, le=1.0)
    nuclei: list[NucleusConfig] = Field(default_factory=list)

    @model_validator(mode="after")
    def _consistent(self):
        if abs(2 * self.spin - round(2 * self.spin)) > 1e-9 or self.spin < 0.5:
            raise ValueError(f"electron spin must be a positive half-integer, got {self.spin}")
        if self.d_mhz != 0.0 and round(2 * self.spin) < 2:
            raise ValueError("zero-field splitting requires electron spin >= 1")
        if self.alpha > 0.0 and round(2 * self.spin) != 2:
            raise ValueError("alpha > 0 requires a spin-1 center")
        return self

    def build(self) -> SpinCenter:
        axis = np.array(resolve_axis(self.axis))
        return SpinCenter(
            spin=self.spin,
            g=AxialTensor(self.g_parallel, self.g_perp, axis),
            zfs_d_mhz=self.d_mhz,
            zfs_axis=axis,
            nuclei=tuple(n.build() for n in self.nuclei),
            alpha=self.alpha,
        )


class SystemConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    centers: list[CenterConfig] = Field(min_length=1, max_length=2)
    d_dd_mhz: float = 0.0
    n12: AxisSpec = "z"

    def build(self) -> SpinSystem:
        centers = [c.build() for c in self.centers]
        return SpinSystem(
            center1=centers[0],
            center2=centers[1] if len(centers) == 2 else None,
            d_dd_mhz=self.d_dd_mhz,
            n12=np.array(resolve_axis(self.n12)),
        )


class MemberConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    system: SystemConfig
    weight: float = Field(default=1.0, ge=0.0)


class GridConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    b_min_gauss: float = 0.0
    b_max_gauss: float = 1200.0
    n_points: int = Field(default=2401, ge=2)
    direction: AxisSpec = "z"

    @model_validator(mode="after")
    def _range(self):
        if not self.b_min_gauss < self.b_max_gauss:
            raise ValueError("b_min_gauss must be below b_max_gauss")
        if not (math.isfinite(self.b_min_gauss) and math.isfinite(self.b_max_gauss)):
            raise ValueError("field range must be finite")
        return self

    def build(self) -> FieldGrid:
        return FieldGrid(
            b_min_gauss=self.b_min_gauss,
            b_max_gauss=self.b_max_gauss,
            n_points=self.n_points,
            direction=np.array(resolve_axis(self.direction)),
        )


class RunConfig(BaseModel):
    """One complete simulation run: system ensemble, grid, time and outputs."""

    model_config = ConfigDict(extra="forbid")

    ensemble: list[MemberConfig] = Field(min_length=1)
    grid: GridConfig = Field(default_factory=GridConfig)
    tau_s: float = Field(default=DEFAULT_TAU_S, gt=0.0)
    outputs: list[Output] = Field(default_factory=lambda: ["spectrum"])
    output_path: str | None = None
    threads: int = Field(default=1, ge=1)
    seed: int | None = None
    label: str | None = None

    @model_validator(mode="after")
    def _finite_tau(self):
        if not math.isfinite(self.tau_s):
            raise ValueError("tau_s must be finite")
        return self

    def canonical_json(self) -> str:
        return self.model_dump_json(exclude_none=False)

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


def parse_config(text: str) -> RunConfig:
    """Parse and validate a YAML run configuration.

    Raises:
        ConfigError: With the YAML position for syntax errors, or the pydantic
            message naming the violated field for validation errors.
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a YAML mapping at the top level")
    try:
        return RunConfig.model_validate(raw)
    except Exception as exc:  # pydantic.ValidationError
        raise ConfigError(f"invalid configuration: {exc}") from exc


def dump_config(cfg: RunConfig) -> str:
    """Serialize a config to YAML, round-tripping through ``parse_config``."""
    data = cfg.model_dump(mode="json", exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False)


def load_config_file(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
