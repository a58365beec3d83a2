"""FastAPI wiring around the core package."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..catalog import load_catalog
from ..errors import CapacityError, SpecParseError
from . import handlers
from .models import (
    CheckRequest,
    CheckResponse,
    FamilyResponse,
    OracleRequest,
    OracleResponse,
    RemarkFamilyRequest,
    ReproduceResponse,
    RobustFamilyRequest,
    SweepRequest,
    SweepResponse,
    VerdictRequest,
    VerdictResponse,
    ZCertificateModel,
    ZCheckRequest,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="mincomp",
        version=__version__,
        description="Certificate checkers and an exhaustive oracle for "
        "non-minimal complements in finite groups and structured integer sets.",
    )

    @app.exception_handler(SpecParseError)
    @app.exception_handler(ValueError)
    async def _bad_request(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(CapacityError)
    async def _too_large(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=413, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: OracleRequest) -> OracleResponse:
        return handlers.run_oracle(req)

    @app.post("/check", response_model=CheckResponse)
    def check(req: CheckRequest) -> CheckResponse:
        return handlers.run_check(req)

    @app.post("/verdict", response_model=VerdictResponse)
    def verdict(req: VerdictRequest) -> VerdictResponse:
        return handlers.run_verdict(req)

    @app.post("/zcheck", response_model=ZCertificateModel)
    def zcheck(req: ZCheckRequest) -> ZCertificateModel:
        return handlers.run_zcheck(req)

    @app.post("/family/robust", response_model=FamilyResponse)
    def family_robust(req: RobustFamilyRequest) -> FamilyResponse:
        return handlers.run_robust_family(req)

    @app.post("/family/remark", response_model=FamilyResponse)
    def family_remark(req: RemarkFamilyRequest) -> FamilyResponse:
        return handlers.run_remark_family(req)

    @app.get("/reproduce/catalog")
    def reproduce_catalog() -> dict:
        return {"items": load_catalog()}

    @app.post("/reproduce", response_model=ReproduceResponse)
    def reproduce(item: str | None = None) -> ReproduceResponse:
        return handlers.run_reproduce(item)

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        return handlers.run_sweep_request(req)

    return app


app = create_app()
