"""FastAPI service wrapping the simulation pipeline.

The service is stateless: every request builds its configuration (preset or
inline), runs the shared pipeline and returns the spectrum as JSON.
"""

import argparse

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..config import RunConfig
from ..pipeline import RunResult, run_config
from ..presets import load_preset, preset_names
from ..spectrum import SweepError
from .schemas import (
    CrossingRecord,
    CrossingsResponse,
    HealthResponse,
    RunSummary,
    SpectrumPayload,
    SweepRequest,
    SweepResponse,
)


def _resolve_config(req: SweepRequest) -> RunConfig:
    if req.preset is not None:
        try:
            cfg = load_preset(req.preset)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc.args[0])) from exc
    else:
        cfg = req.config
    data = cfg.model_dump()
    if req.grid is not None:
        data["grid"] = req.grid.model_dump()
    if req.tau_s is not None:
        data["tau_s"] = req.tau_s
    if req.outputs is not None:
        data["outputs"] = req.outputs
    if req.threads is not None:
        data["threads"] = req.threads
    return RunConfig.model_validate(data)


def _crossing_records(result: RunResult) -> list[CrossingRecord] | None:
    if result.crossings is None:
        return None
    return [
        CrossingRecord(
            member=member,
            field_gauss=c.field_gauss,
            level_lo=c.level_lo,
            level_hi=c.level_hi,
            min_gap_mhz=c.min_gap_mhz,
            kind=c.kind,
        )
        for member, c in result.crossings
    ]


def _run(cfg: RunConfig) -> RunResult:
    try:
        return run_config(cfg)
    except SweepError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="lacspec",
        version=__version__,
        description="Level anti-crossing spectra of coupled defect centers in diamond.",
    )

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.get("/presets", response_model=list[str])
    def presets():
        return preset_names()

    @app.get("/presets/{name}", response_model=RunConfig)
    def preset(name: str):
        try:
            return load_preset(name)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc.args[0])) from exc

    @app.post("/spectra", response_model=SweepResponse)
    def spectra(req: SweepRequest):
        cfg = _resolve_config(req)
        result = _run(cfg)
        spec = result.spectrum
        payload = SpectrumPayload(
            fields_gauss=spec.fields.tolist(),
            rho00=spec.values.tolist(),
            columns={name: col.tolist() for name, col in spec.columns.items()},
            meta=spec.meta,
        )
        return SweepResponse(
            spectrum=payload,
            crossings=_crossing_records(result),
            summary=RunSummary(**result.summary),
            config=cfg,
        )

    @app.post("/crossings", response_model=CrossingsResponse)
    def crossings(req: SweepRequest):
        cfg = _resolve_config(req)
        if "crossings" not in cfg.outputs:
            cfg = cfg.model_copy(update={"outputs": [*cfg.outputs, "crossings"]})
        result = _run(cfg)
        return CrossingsResponse(
            crossings=_crossing_records(result) or [],
            summary=RunSummary(**result.summary),
            config=cfg,
        )

    return app


app = create_app()


def main() -> None:
    import uvicorn

    parser = argparse.ArgumentParser(prog="lacspec-serve")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
