"""
P-variation Lab - FastAPI Server

In-process HTTP access to the laboratory:
- Sample paths of symmetric stable Lévy motion
- Exact p-variation and the dyadic oscillation profile of posted paths
- Closed-form bound reports for a class envelope
- Envelope fits for posted tail grids
- Rate limiting

Batch experiments are run from the command line.
"""

import logging
import time
from collections import defaultdict
from contextlib import asynccontextmanager
from typing import Optional

from fastapi import FastAPI, HTTPException, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, field_validator
from starlette.middleware.base import BaseHTTPMiddleware

from bounds.report import build_bound_report
from config.settings import (
    ALLOWED_ORIGINS,
    DEBUG,
    DEFAULT_SEED,
    HOST,
    MAX_API_POINTS,
    PORT,
    RATE_LIMIT_REQUESTS,
    configure_logging,
)
from core.errors import LabError, format_error
from core.models import ClassEnvelope, SamplePath
from kernel.fit import fit_envelope
from kernel.models import TailCell, TailGrid
from pvar.exact import pvar_partition
from pvar.profile import dyadic_upper_bound
from simulate.models import MeshSpec, ProcessSpec
from simulate.paths import simulate_path

logger = logging.getLogger(__name__)

API_VERSION = "1.0.0"


# =============================================================================
# Rate Limiting Middleware
# =============================================================================

class RateLimitMiddleware(BaseHTTPMiddleware):
    """Per-client sliding one-minute window."""

    EXCLUDED_PATHS = ["/health", "/docs", "/openapi.json"]

    def __init__(self, app, requests_per_minute: int = 60):
        super().__init__(app)
        self.requests_per_minute = requests_per_minute
        self.requests = defaultdict(list)

    async def dispatch(self, request: Request, call_next):
        path = request.url.path
        if any(path.startswith(excluded) for excluded in self.EXCLUDED_PATHS):
            return await call_next(request)

        client_ip = request.client.host if request.client else "unknown"
        current_time = time.time()
        window_start = current_time - 60
        self.requests[client_ip] = [t for t in self.requests[client_ip] if t > window_start]

        if len(self.requests[client_ip]) >= self.requests_per_minute:
            return JSONResponse(
                status_code=status.HTTP_429_TOO_MANY_REQUESTS,
                content={"detail": "Too many requests. Please wait a moment and try again."},
            )

        self.requests[client_ip].append(current_time)
        return await call_next(request)


# =============================================================================
# Initialize FastAPI
# =============================================================================

@asynccontextmanager
async def lifespan(app: FastAPI):
    """Configure logging on startup."""
    configure_logging()
    logger.info("P-variation Lab API %s ready", API_VERSION)
    yield
    logger.info("P-variation Lab API shutting down")


app = FastAPI(
    title="P-variation Lab",
    description="Simulation and bound evaluation for the p-variation of Markov processes",
    version=API_VERSION,
    lifespan=lifespan,
)

app.add_middleware(RateLimitMiddleware, requests_per_minute=RATE_LIMIT_REQUESTS)

app.add_middleware(
    CORSMiddleware,
    allow_origins=ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["GET", "POST"],
    allow_headers=["Content-Type", "Authorization"],
)


@app.exception_handler(LabError)
async def lab_error_handler(request: Request, exc: LabError):
    return JSONResponse(status_code=status.HTTP_400_BAD_REQUEST, content=format_error(exc))


@app.exception_handler(Exception)
async def unexpected_error_handler(request: Request, exc: Exception):
    logger.exception("Unhandled error on %s", request.url.path)
    return JSONResponse(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, content=format_error(exc))


# =============================================================================
# Request Models
# =============================================================================

class SimulateRequest(BaseModel):
    alpha: float
    c: float = 0.5
    T: float = 1.0
    n: int
    seed: int = DEFAULT_SEED
    index: int = 0

    @field_validator("n")
    @classmethod
    def mesh_size(cls, v: int) -> int:
        if v < 1 or v > MAX_API_POINTS:
            raise ValueError(f"n must lie in [1, {MAX_API_POINTS}]")
        return v


class PvarRequest(BaseModel):
    values: list[float]
    times: Optional[list[float]] = None
    p: float
    a0: float = 1.0

    @field_validator("values")
    @classmethod
    def path_size(cls, v: list[float]) -> list[float]:
        if not v or len(v) > MAX_API_POINTS:
            raise ValueError(f"values must hold between 1 and {MAX_API_POINTS} points")
        return v


class BoundsRequest(BaseModel):
    K: float
    beta: float
    gamma: float
    a0: float = 1.0
    T: float = 1.0
    levels: Optional[list[int]] = None
    j_values: list[int] = [1, 2, 3]
    p: Optional[float] = None


class TailCellModel(BaseModel):
    h: float
    a: float
    alpha_hat: float
    n: int
    ci_low: float
    ci_high: float


class FitRequest(BaseModel):
    cells: list[TailCellModel]
    T: Optional[float] = None


# =============================================================================
# Routes
# =============================================================================

@app.get("/health")
async def health():
    """Health check endpoint."""
    return {"status": "ok", "version": API_VERSION}


@app.post("/simulate")
def simulate(request: SimulateRequest):
    """Simulate one path of the requested ensemble."""
    spec = ProcessSpec(alpha=request.alpha, c=request.c, T=request.T)
    path = simulate_path(spec, MeshSpec(request.n), request.seed, request.index)
    return {"spec": spec.to_dict(), "seed": request.seed, "index": request.index, **path.to_dict()}


@app.post("/pvar")
def pvar(request: PvarRequest):
    """Exact p-variation of a posted path with its dyadic profile."""
    if request.times is None:
        path = SamplePath.from_values(request.values)
    else:
        path = SamplePath(times=request.times, values=request.values)
    value, partition = pvar_partition(path, request.p)
    profile = dyadic_upper_bound(path, request.p, request.a0)
    return {
        "p": request.p,
        "pvar": value,
        "partition": partition.tolist(),
        "profile": profile.to_dict(),
    }


@app.post("/bounds")
def bounds(request: BoundsRequest):
    """Evaluate the closed-form bounds for an envelope."""
    envelope = ClassEnvelope(K=request.K, beta=request.beta, gamma=request.gamma, a0=request.a0)
    report = build_bound_report(envelope, request.T, request.levels, request.j_values, request.p)
    return report.to_dict()


@app.post("/fit-kernel")
def fit_kernel(request: FitRequest):
    """Fit the class envelope to posted tail estimates."""
    if not request.cells:
        raise HTTPException(status_code=400, detail="No tail cells provided")
    grid = TailGrid(cells=[TailCell(**cell.model_dump()) for cell in request.cells])
    return fit_envelope(grid, request.T).to_dict()


# =============================================================================
# Run Server
# =============================================================================

if __name__ == "__main__":
    import uvicorn

    uvicorn.run("app.fast_api_app:app", host=HOST, port=PORT, reload=DEBUG)
