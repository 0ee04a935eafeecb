"""Request and response models of the HTTP service."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import GridConfig, Output, RunConfig


class SweepRequest(BaseModel):
    """A simulation request: either a preset name or a full configuration.

    Overrides, when given, replace the corresponding preset/config fields.
    """

    model_config = ConfigDict(extra="forbid")

    preset: str | None = None
    config: RunConfig | None = None
    grid: GridConfig | None = None
    tau_s: float | None = Field(default=None, gt=0.0)
    outputs: list[Output] | None = None
    threads: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.preset is None) == (self.config is None):
            raise ValueError("provide exactly one of 'preset' or 'config'")
        return self


class SpectrumPayload(BaseModel):
    fields_gauss: list[float]
    rho00: list[float]
    columns: dict[str, list[float]] = Field(default_factory=dict)
    meta: dict = Field(default_factory=dict)


class CrossingRecord(BaseModel):
    member: int
    field_gauss: float
    level_lo: int
    level_hi: int
    min_gap_mhz: float
    kind: str


class RunSummary(BaseModel):
    dim: int
    n_points: int
    n_members: int
    wall_time_s: float


class SweepResponse(BaseModel):
    spectrum: SpectrumPayload
    crossings: list[CrossingRecord] | None = None
    summary: RunSummary
    config: RunConfig


class CrossingsResponse(BaseModel):
    crossings: list[CrossingRecord]
    summary: RunSummary
    config: RunConfig


class HealthResponse(BaseModel):
    status: str
    version: str
